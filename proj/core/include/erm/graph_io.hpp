#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "erm/graph.hpp"

namespace erm {

// Edge-list text format:
//
//   # comment
//   n 3
//   0 1 1.0
//   0 2 2.5e-1
//
// The first non-comment line must be `n <count>`; each further line is one
// edge `i j c`. Blank lines are ignored. Errors carry the 1-based line number.
WeightedGraph parse_edge_list(std::string_view text);
WeightedGraph read_edge_list(const std::filesystem::path& path);

// Writes the canonical edge list with round-trip precision.
void write_edge_list(std::ostream& os, const WeightedGraph& g);

}  // namespace erm
