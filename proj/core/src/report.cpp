#include "structlab/report.hpp"

#include <iomanip>
#include <sstream>

namespace structlab {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string content_hash(std::string_view data) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(data);
    return out.str();
}

void RunReport::print(std::ostream& out) const {
    out << "command: " << command << "\n";
    for (const auto& [name, hash] : inputs) out << "input: " << name << " " << hash << "\n";
    for (const auto& line : detail_lines) out << line << "\n";
    out << "@verdict " << verdict << "\n";
    for (const auto& line : certificate_lines) out << "@certificate " << line << "\n";
    out << "@timing ms=" << elapsed_ms << "\n";
}

int RunReport::exit_code() const {
    if (verdict == "holds" || verdict == "success") return 0;
    if (verdict == "fails") return 1;
    return 2;
}

}  // namespace structlab
