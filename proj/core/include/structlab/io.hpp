#pragma once

#include <string>

#include "structlab/indiscernibles.hpp"
#include "structlab/structure.hpp"

namespace structlab {

/// Structure files: line-oriented, `#` comments, `;` also separates
/// statements. `signature:` declares `name:arity [order|symmetric|
/// antireflexive]*` entries; `domain: n`; `rel <name>: t1, t2, ...` with
/// space-separated vertex indices per tuple and comma-separated tuples.
FinStructure parse_structure(const std::string& text);

/// Canonical rendering; parse_structure(print_structure(s)) == s.
std::string print_structure(const FinStructure& s);

/// Family files: `index`/`target` sections giving either a file reference
/// (resolved against base_dir) or an inline structure in braces, then
/// `map: i -> m1 m2 ... ml` lines.
IndexedFamily parse_family(const std::string& text, const std::string& base_dir);

std::string print_family(const IndexedFamily& fam);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace structlab
