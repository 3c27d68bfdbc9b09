#pragma once

#include <cstddef>
#include <cstdint>
#include <type_traits>

namespace flowpreserve {

// Dense vertex index in [0, n).
enum class VertexId : std::uint32_t {};

// Positional edge identity. Parallel edges get distinct ids and deleting an
// edge never renumbers the survivors.
enum class EdgeId : std::uint32_t {};

inline constexpr VertexId kNoVertex{0xffffffffU};
inline constexpr EdgeId kNoEdge{0xffffffffU};

constexpr std::size_t index_of(VertexId v) noexcept {
  return static_cast<std::size_t>(v);
}
constexpr std::size_t index_of(EdgeId e) noexcept {
  return static_cast<std::size_t>(e);
}

constexpr VertexId vertex_at(std::size_t i) noexcept {
  return VertexId{static_cast<std::uint32_t>(i)};
}
constexpr EdgeId edge_at(std::size_t i) noexcept {
  return EdgeId{static_cast<std::uint32_t>(i)};
}

}  // namespace flowpreserve
