#include "structlab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace structlab {

FormulaPtr Formula::rel(std::string name, Tuple vars) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::rel;
    f->rel_name = std::move(name);
    f->vars = std::move(vars);
    return f;
}
FormulaPtr Formula::eq(int i, int j) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::eq;
    f->vars = {i, j};
    return f;
}
FormulaPtr Formula::conj(std::vector<FormulaPtr> parts) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::and_;
    f->children = std::move(parts);
    return f;
}
FormulaPtr Formula::disj(std::vector<FormulaPtr> parts) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::or_;
    f->children = std::move(parts);
    return f;
}
FormulaPtr Formula::neg(FormulaPtr inner) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::not_;
    f->children = {std::move(inner)};
    return f;
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::implies;
    f->children = {std::move(a), std::move(b)};
    return f;
}
FormulaPtr Formula::exists(int var, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::exists;
    f->bound_var = var;
    f->children = {std::move(body)};
    return f;
}
FormulaPtr Formula::forall(int var, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::forall;
    f->bound_var = var;
    f->children = {std::move(body)};
    return f;
}

namespace {

void collect_free(const Formula& f, std::set<int>& bound, std::set<int>& free) {
    switch (f.kind) {
        case FormulaKind::rel:
        case FormulaKind::eq:
            for (int v : f.vars)
                if (!bound.count(v)) free.insert(v);
            break;
        case FormulaKind::exists:
        case FormulaKind::forall: {
            bool was = bound.count(f.bound_var) > 0;
            bound.insert(f.bound_var);
            collect_free(*f.children[0], bound, free);
            if (!was) bound.erase(f.bound_var);
            break;
        }
        default:
            for (const auto& c : f.children) collect_free(*c, bound, free);
    }
}

}  // namespace

int free_variable_span(const Formula& f) {
    std::set<int> bound, free;
    collect_free(f, bound, free);
    return free.empty() ? 0 : *free.rbegin() + 1;
}

bool evaluate(const Formula& f, const FinStructure& m, const Tuple& assignment) {
    switch (f.kind) {
        case FormulaKind::rel: {
            int rel = m.signature().relation_index(f.rel_name);
            if (rel < 0) throw StructureError("evaluate: unknown relation " + f.rel_name);
            Tuple elems(f.vars.size());
            for (size_t i = 0; i < f.vars.size(); ++i) {
                int v = f.vars[i];
                if (v < 0 || v >= static_cast<int>(assignment.size()) || assignment[static_cast<size_t>(v)] < 0)
                    throw StructureError("evaluate: unassigned variable x" + std::to_string(v + 1));
                elems[i] = assignment[static_cast<size_t>(v)];
            }
            return m.holds(rel, elems);
        }
        case FormulaKind::eq:
            return assignment.at(static_cast<size_t>(f.vars[0])) ==
                   assignment.at(static_cast<size_t>(f.vars[1]));
        case FormulaKind::and_:
            return std::all_of(f.children.begin(), f.children.end(),
                               [&](const FormulaPtr& c) { return evaluate(*c, m, assignment); });
        case FormulaKind::or_:
            return std::any_of(f.children.begin(), f.children.end(),
                               [&](const FormulaPtr& c) { return evaluate(*c, m, assignment); });
        case FormulaKind::not_:
            return !evaluate(*f.children[0], m, assignment);
        case FormulaKind::implies:
            return !evaluate(*f.children[0], m, assignment) ||
                   evaluate(*f.children[1], m, assignment);
        case FormulaKind::exists:
        case FormulaKind::forall: {
            Tuple inner = assignment;
            if (f.bound_var >= static_cast<int>(inner.size()))
                inner.resize(static_cast<size_t>(f.bound_var) + 1, -1);
            for (int d = 0; d < m.size(); ++d) {
                inner[static_cast<size_t>(f.bound_var)] = d;
                bool v = evaluate(*f.children[0], m, inner);
                if (f.kind == FormulaKind::exists && v) return true;
                if (f.kind == FormulaKind::forall && !v) return false;
            }
            return f.kind == FormulaKind::forall;
        }
    }
    return false;
}

std::string to_string(const Formula& f) {
    std::ostringstream out;
    auto var = [](int v) { return "x" + std::to_string(v + 1); };
    switch (f.kind) {
        case FormulaKind::rel: {
            out << "rel(" << f.rel_name;
            for (int v : f.vars) out << "," << var(v);
            out << ")";
            break;
        }
        case FormulaKind::eq:
            out << "eq(" << var(f.vars[0]) << "," << var(f.vars[1]) << ")";
            break;
        case FormulaKind::not_:
            out << "not(" << to_string(*f.children[0]) << ")";
            break;
        case FormulaKind::and_:
        case FormulaKind::or_:
        case FormulaKind::implies: {
            out << (f.kind == FormulaKind::and_ ? "and"
                    : f.kind == FormulaKind::or_ ? "or"
                                                 : "implies");
            out << "(";
            for (size_t i = 0; i < f.children.size(); ++i)
                out << (i ? "," : "") << to_string(*f.children[i]);
            out << ")";
            break;
        }
        case FormulaKind::exists:
        case FormulaKind::forall:
            out << (f.kind == FormulaKind::exists ? "exists" : "forall");
            out << "(" << var(f.bound_var) << "," << to_string(*f.children[0]) << ")";
            break;
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& text;
    const Signature& sig;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw StructureError("formula parse error at position " + std::to_string(pos) + ": " + msg);
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '<' || text[pos] == '>'))
            ++pos;
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }
    int variable() {
        std::string name = ident();
        if (name.size() < 2 || name[0] != 'x') fail("expected variable x<i>, got '" + name + "'");
        size_t digits = 1;
        if (name[1] == '_') digits = 2;
        int v = 0;
        if (digits >= name.size()) fail("expected variable index in '" + name + "'");
        for (size_t i = digits; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                fail("expected variable index in '" + name + "'");
            v = v * 10 + (name[i] - '0');
        }
        if (v < 1) fail("variable indices start at 1");
        return v - 1;
    }

    FormulaPtr formula() {
        std::string head = ident();
        if (head == "and" || head == "or") {
            expect('(');
            std::vector<FormulaPtr> parts;
            parts.push_back(formula());
            skip_ws();
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                parts.push_back(formula());
                skip_ws();
            }
            expect(')');
            return head == "and" ? Formula::conj(std::move(parts))
                                 : Formula::disj(std::move(parts));
        }
        if (head == "not") {
            expect('(');
            auto f = formula();
            expect(')');
            return Formula::neg(std::move(f));
        }
        if (head == "implies") {
            expect('(');
            auto a = formula();
            expect(',');
            auto b = formula();
            expect(')');
            return Formula::implies(std::move(a), std::move(b));
        }
        if (head == "exists" || head == "forall") {
            expect('(');
            int v = variable();
            expect(',');
            auto body = formula();
            expect(')');
            return head == "exists" ? Formula::exists(v, std::move(body))
                                    : Formula::forall(v, std::move(body));
        }
        if (head == "eq" || head == "lt") {
            expect('(');
            int a = variable();
            expect(',');
            int b = variable();
            expect(')');
            if (head == "eq") return Formula::eq(a, b);
            if (!sig.has_order()) fail("lt used but the signature has no order symbol");
            return Formula::rel(*sig.order_symbol(), {a, b});
        }
        if (head == "rel") {
            expect('(');
            std::string name = ident();
            int rel = sig.relation_index(name);
            if (rel < 0) fail("unknown relation '" + name + "'");
            Tuple vars;
            skip_ws();
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                vars.push_back(variable());
                skip_ws();
            }
            expect(')');
            if (static_cast<int>(vars.size()) != sig.relation(rel).arity)
                fail("relation '" + name + "' expects arity " +
                     std::to_string(sig.relation(rel).arity));
            return Formula::rel(name, std::move(vars));
        }
        fail("unknown head '" + head + "'");
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
    Parser p{text, sig};
    auto f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

int FormulaSet::max_arity() const {
    int m = 0;
    for (const auto& f : formulas) m = std::max(m, f.arity);
    return m;
}

FormulaSet parse_formula_set(const std::string& text, std::shared_ptr<const Signature> sig) {
    FormulaSet set{sig, {}};
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);

        int declared = -1;
        if (line.rfind("arity", 0) == 0) {
            size_t p = 5;
            while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
            size_t start = p;
            while (p < line.size() && std::isdigit(static_cast<unsigned char>(line[p]))) ++p;
            if (p == start || p >= line.size() || line[p] != ':')
                throw StructureError("formula file line " + std::to_string(lineno) +
                                     ": malformed arity prefix");
            declared = std::stoi(line.substr(start, p - start));
            line = line.substr(p + 1);
        }
        FormulaPtr f;
        try {
            f = parse_formula(line, *sig);
        } catch (const StructureError& e) {
            throw StructureError("formula file line " + std::to_string(lineno) + ": " + e.what());
        }
        int span = free_variable_span(*f);
        int arity = declared >= 0 ? declared : span;
        if (arity < span)
            throw StructureError("formula file line " + std::to_string(lineno) +
                                 ": declared arity below free-variable span");
        set.formulas.push_back({std::move(f), arity});
    }
    return set;
}

}  // namespace structlab
