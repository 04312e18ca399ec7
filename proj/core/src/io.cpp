#include "structlab/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace structlab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// comment-stripped statements: lines split further on ';'
std::vector<std::pair<int, std::string>> statements(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        for (const auto& part : split(line, ';')) {
            std::string t = trim(part);
            if (!t.empty()) out.emplace_back(lineno, t);
        }
    }
    return out;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
    throw StructureError("line " + std::to_string(lineno) + ": " + msg);
}

int parse_int(const std::string& s, int lineno) {
    if (s.empty()) fail(lineno, "expected a number");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(lineno, "bad number '" + s + "'");
    return std::stoi(s);
}

Signature parse_signature_line(const std::string& body, int lineno) {
    std::vector<RelationSpec> relations;
    std::optional<std::string> order_symbol;
    for (const auto& entry : split(body, ',')) {
        std::string t = trim(entry);
        if (t.empty()) fail(lineno, "empty signature entry");
        std::istringstream words(t);
        std::string head, flag;
        words >> head;
        auto colon = head.rfind(':');
        if (colon == std::string::npos) fail(lineno, "signature entry needs name:arity");
        RelationSpec spec;
        spec.name = head.substr(0, colon);
        spec.arity = parse_int(head.substr(colon + 1), lineno);
        while (words >> flag) {
            if (flag == "order")
                order_symbol = spec.name;
            else if (flag == "symmetric")
                spec.flags.symmetric = true;
            else if (flag == "antireflexive")
                spec.flags.antireflexive = true;
            else
                fail(lineno, "unknown flag '" + flag + "'");
        }
        relations.push_back(std::move(spec));
    }
    try {
        return Signature(std::move(relations), std::move(order_symbol));
    } catch (const StructureError& e) {
        fail(lineno, e.what());
    }
}

}  // namespace

FinStructure parse_structure(const std::string& text) {
    std::optional<Signature> sig;
    std::optional<int> domain;
    std::vector<Table> tables;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> pending_tables;

    for (const auto& [lineno, stmt] : statements(text)) {
        auto colon = stmt.find(':');
        if (colon == std::string::npos) fail(lineno, "expected '<keyword>:'");
        std::string head = trim(stmt.substr(0, colon));
        std::string body = trim(stmt.substr(colon + 1));
        if (head == "signature") {
            if (sig) fail(lineno, "duplicate signature");
            sig = parse_signature_line(body, lineno);
        } else if (head == "domain") {
            if (domain) fail(lineno, "duplicate domain");
            domain = parse_int(body, lineno);
        } else {
            std::string name = head;
            if (name.rfind("rel ", 0) == 0) name = trim(name.substr(4));
            pending_tables.emplace_back(lineno, std::make_pair(name, body));
        }
    }
    if (!sig) throw StructureError("missing signature declaration");
    if (!domain) throw StructureError("missing domain declaration");

    tables.resize(static_cast<size_t>(sig->relation_count()));
    for (const auto& [lineno, entry] : pending_tables) {
        int rel = sig->relation_index(entry.first);
        if (rel < 0) fail(lineno, "unknown relation '" + entry.first + "'");
        for (const auto& tuple_text : split(entry.second, ',')) {
            std::string t = trim(tuple_text);
            if (t.empty()) continue;
            Tuple tuple;
            std::istringstream words(t);
            std::string w;
            while (words >> w) tuple.push_back(parse_int(w, lineno));
            if (static_cast<int>(tuple.size()) != sig->relation(rel).arity)
                fail(lineno, "tuple arity mismatch for '" + entry.first + "'");
            tables[static_cast<size_t>(rel)].insert(std::move(tuple));
        }
    }
    return FinStructure(std::make_shared<Signature>(*sig), *domain, std::move(tables));
}

std::string print_structure(const FinStructure& s) {
    std::ostringstream out;
    const Signature& sig = s.signature();
    out << "signature: ";
    for (int r = 0; r < sig.relation_count(); ++r) {
        const auto& spec = sig.relation(r);
        if (r) out << ", ";
        out << spec.name << ":" << spec.arity;
        if (sig.order_index() == r) out << " order";
        if (spec.flags.symmetric) out << " symmetric";
        if (spec.flags.antireflexive) out << " antireflexive";
    }
    out << "\n";
    out << "domain: " << s.size() << "\n";
    for (int r = 0; r < sig.relation_count(); ++r) {
        if (s.table(r).empty()) continue;
        out << "rel " << sig.relation(r).name << ":";
        bool first = true;
        for (const Tuple& t : s.table(r)) {
            out << (first ? " " : ", ");
            first = false;
            for (size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
        }
        out << "\n";
    }
    return out.str();
}

namespace {

/// Section body: `name <path>` or `name { ... }` spanning multiple lines.
FinStructure parse_structure_section(const std::string& text, size_t& pos,
                                     const std::string& base_dir, const std::string& keyword) {
    size_t brace = text.find('{', pos);
    size_t eol = text.find('\n', pos);
    if (brace != std::string::npos && (eol == std::string::npos || brace < eol)) {
        size_t close = text.find('}', brace);
        if (close == std::string::npos)
            throw StructureError("family file: unterminated inline " + keyword);
        std::string inner = text.substr(brace + 1, close - brace - 1);
        pos = close + 1;
        return parse_structure(inner);
    }
    std::string ref = trim(text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                      : eol - pos));
    pos = eol == std::string::npos ? text.size() : eol + 1;
    if (ref.empty()) throw StructureError("family file: missing " + keyword + " reference");
    std::string path = ref;
    if (!base_dir.empty() && ref.front() != '/') path = base_dir + "/" + ref;
    return parse_structure(read_file(path));
}

}  // namespace

IndexedFamily parse_family(const std::string& text, const std::string& base_dir) {
    std::optional<FinStructure> index, target;
    std::vector<std::pair<int, Tuple>> entries;

    size_t pos = 0;
    int lineno = 1;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string raw = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) {
            pos = eol == std::string::npos ? text.size() : eol + 1;
            ++lineno;
            continue;
        }
        if (line.rfind("index", 0) == 0) {
            size_t body = pos + raw.find("index") + 5;
            index = parse_structure_section(text, body, base_dir, "index");
            pos = body;
            continue;
        }
        if (line.rfind("target", 0) == 0) {
            size_t body = pos + raw.find("target") + 6;
            target = parse_structure_section(text, body, base_dir, "target");
            pos = body;
            continue;
        }
        if (line.rfind("map:", 0) == 0) {
            std::string body = trim(line.substr(4));
            auto arrow = body.find("->");
            if (arrow == std::string::npos) fail(lineno, "map line needs '->'");
            int idx = parse_int(trim(body.substr(0, arrow)), lineno);
            Tuple image;
            std::istringstream words(body.substr(arrow + 2));
            std::string w;
            while (words >> w) image.push_back(parse_int(w, lineno));
            entries.emplace_back(idx, std::move(image));
            pos = eol == std::string::npos ? text.size() : eol + 1;
            ++lineno;
            continue;
        }
        fail(lineno, "unexpected family line '" + line + "'");
    }
    if (!index) throw StructureError("family file: missing index section");
    if (!target) throw StructureError("family file: missing target section");

    IndexedFamily fam{*index, *target, std::vector<Tuple>(static_cast<size_t>(index->size()))};
    std::vector<bool> seen(static_cast<size_t>(index->size()), false);
    for (auto& [i, image] : entries) {
        if (i < 0 || i >= index->size())
            throw StructureError("family file: map index " + std::to_string(i) + " out of range");
        if (seen[static_cast<size_t>(i)])
            throw StructureError("family file: duplicate map line for " + std::to_string(i));
        seen[static_cast<size_t>(i)] = true;
        fam.map[static_cast<size_t>(i)] = std::move(image);
    }
    for (int i = 0; i < index->size(); ++i)
        if (!seen[static_cast<size_t>(i)])
            throw StructureError("family file: missing map line for " + std::to_string(i));
    fam.validate();
    return fam;
}

std::string print_family(const IndexedFamily& fam) {
    std::ostringstream out;
    out << "index {\n" << print_structure(fam.index) << "}\n";
    out << "target {\n" << print_structure(fam.target) << "}\n";
    for (size_t i = 0; i < fam.map.size(); ++i) {
        out << "map: " << i << " ->";
        for (int v : fam.map[i]) out << " " << v;
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructureError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StructureError("cannot write file: " + path);
    out << content;
}

}  // namespace structlab
