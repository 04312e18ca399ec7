#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace structlab {

std::uint64_t fnv1a(std::string_view data);
std::string content_hash(std::string_view data);  // fixed-width hex

/// A machine-readable run summary: `@verdict`, `@certificate` and `@timing`
/// lines plus free-form detail, stable across runs modulo timing.
struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // name, content hash
    std::string verdict;  // holds | fails | inconclusive | success
    std::vector<std::string> certificate_lines;
    std::vector<std::string> detail_lines;
    double elapsed_ms = 0.0;

    void print(std::ostream& out) const;
    int exit_code() const;  // 0 holds/success, 1 fails, 2 inconclusive
};

}  // namespace structlab
