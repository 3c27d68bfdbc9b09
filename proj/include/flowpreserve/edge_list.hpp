#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flowpreserve/digraph.hpp"

namespace flowpreserve {

// Edge-list text format:
//
//   n m
//   tail head [cap]     (m lines, 0-indexed)
//
// The EdgeId of the i-th edge line is i-1. Lines starting with '#' are
// comments and are not counted in m. Output is ASCII with LF line endings.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

DiGraph parse_edge_list(std::string_view text);
CapGraph parse_cap_edge_list(std::string_view text);

// Present edges are written in ascending id order, so a graph with vacant ids
// comes back densely renumbered (see embed_subgraph to map it back).
std::string serialize_edge_list(const DiGraph& g);
std::string serialize_edge_list(const CapGraph& g);

}  // namespace flowpreserve
