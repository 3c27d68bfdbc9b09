#include "flowpreserve/edge_list.hpp"

#include <charconv>
#include <cstdint>
#include <optional>
#include <vector>

namespace flowpreserve {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct RawEdge {
  std::int64_t tail;
  std::int64_t head;
  std::int64_t cap;
};

struct RawGraph {
  std::size_t n = 0;
  std::vector<RawEdge> edges;
};

RawGraph parse_raw(std::string_view text, bool with_capacity) {
  RawGraph out;
  bool have_header = false;
  std::size_t expected = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() == '#') continue;
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (!have_header) {
      if (fields.size() != 2) throw ParseError("malformed header", line_no);
      auto n = to_int(fields[0]);
      auto m = to_int(fields[1]);
      if (!n || !m || *n < 0 || *m < 0) {
        throw ParseError("malformed header", line_no);
      }
      out.n = static_cast<std::size_t>(*n);
      expected = static_cast<std::size_t>(*m);
      out.edges.reserve(expected);
      have_header = true;
      continue;
    }

    const std::size_t want = with_capacity ? 3 : 2;
    if (fields.size() != want) throw ParseError("malformed line", line_no);
    if (out.edges.size() == expected) {
      throw ParseError("more edge lines than declared", line_no);
    }
    RawEdge e{0, 0, 1};
    auto tail = to_int(fields[0]);
    auto head = to_int(fields[1]);
    if (!tail || !head) throw ParseError("malformed line", line_no);
    if (*tail < 0 || *head < 0 || static_cast<std::uint64_t>(*tail) >= out.n ||
        static_cast<std::uint64_t>(*head) >= out.n) {
      throw ParseError("vertex index out of range", line_no);
    }
    e.tail = *tail;
    e.head = *head;
    if (with_capacity) {
      auto cap = to_int(fields[2]);
      if (!cap) throw ParseError("malformed line", line_no);
      if (*cap < 1) throw ParseError("nonpositive capacity", line_no);
      e.cap = *cap;
    }
    out.edges.push_back(e);
  }
  if (!have_header) throw ParseError("missing header", line_no);
  if (out.edges.size() != expected) {
    throw ParseError("fewer edge lines than declared", line_no);
  }
  return out;
}

DiGraph to_digraph(const RawGraph& raw) {
  DiGraphBuilder b(raw.n);
  for (const RawEdge& e : raw.edges) {
    b.add_edge(vertex_at(static_cast<std::size_t>(e.tail)),
               vertex_at(static_cast<std::size_t>(e.head)));
  }
  return std::move(b).build();
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(what + ", line " + std::to_string(line)),
      line_(line) {}

DiGraph parse_edge_list(std::string_view text) {
  return to_digraph(parse_raw(text, /*with_capacity=*/false));
}

CapGraph parse_cap_edge_list(std::string_view text) {
  RawGraph raw = parse_raw(text, /*with_capacity=*/true);
  CapGraph g{to_digraph(raw), {}};
  g.cap.reserve(raw.edges.size());
  for (const RawEdge& e : raw.edges) g.cap.push_back(e.cap);
  return g;
}

std::string serialize_edge_list(const DiGraph& g) {
  std::string out = std::to_string(g.num_vertices()) + ' ' +
                    std::to_string(g.num_edges()) + '\n';
  for (EdgeId e : g.edges()) {
    out += std::to_string(index_of(g.tail(e)));
    out += ' ';
    out += std::to_string(index_of(g.head(e)));
    out += '\n';
  }
  return out;
}

std::string serialize_edge_list(const CapGraph& g) {
  std::string out = std::to_string(g.base.num_vertices()) + ' ' +
                    std::to_string(g.base.num_edges()) + '\n';
  for (EdgeId e : g.base.edges()) {
    out += std::to_string(index_of(g.base.tail(e)));
    out += ' ';
    out += std::to_string(index_of(g.base.head(e)));
    out += ' ';
    out += std::to_string(g.capacity(e));
    out += '\n';
  }
  return out;
}

}  // namespace flowpreserve
