#include "flowpreserve/generators.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "flowpreserve/random.hpp"

namespace flowpreserve {
namespace {

std::size_t pow2(int e) { return std::size_t{1} << e; }

// Complete binary tree of `nodes` vertices (heap order) starting at `first`.
// Appends the tree edges in heap order and returns their ids, edge into node
// j stored at j-1.
std::vector<EdgeId> add_heap_tree(DiGraphBuilder& b,
                                  const std::vector<VertexId>& nodes) {
  std::vector<EdgeId> edges;
  edges.reserve(nodes.empty() ? 0 : nodes.size() - 1);
  for (std::size_t j = 1; j < nodes.size(); ++j)
    edges.push_back(b.add_edge(nodes[(j - 1) / 2], nodes[j]));
  return edges;
}

std::vector<VertexId> vertex_range(std::size_t first, std::size_t count) {
  std::vector<VertexId> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = vertex_at(first + i);
  return out;
}

// Sibling edges off the path from the root to heap node `node`.
std::vector<EdgeId> sibling_edges(const std::vector<EdgeId>& tree_edges,
                                  std::size_t node) {
  std::vector<EdgeId> out;
  while (node != 0) {
    std::size_t sibling = (node % 2 == 1) ? node + 1 : node - 1;
    out.push_back(tree_edges[sibling - 1]);
    node = (node - 1) / 2;
  }
  return out;
}

std::vector<std::uint32_t> ids_of(const std::vector<VertexId>& vs) {
  std::vector<std::uint32_t> out;
  out.reserve(vs.size());
  for (VertexId v : vs) out.push_back(index_of(v));
  return out;
}

std::vector<std::vector<std::uint32_t>> ids_of(
    const std::vector<std::vector<VertexId>>& groups) {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(ids_of(g));
  return out;
}

int ceil_log2(std::size_t x) {
  int u = 0;
  while (pow2(u) < x) ++u;
  return u;
}

}  // namespace

// ---------------------------------------------------------------------------

EdgeId LowerBoundInstance::bipartite_edge(std::size_t leaf,
                                          std::size_t sink) const {
  if (leaf >= leaves.size() || sink >= sinks.size())
    throw std::out_of_range("bipartite edge index out of range");
  std::size_t first = root_edges.size() +
                      tree_edges.size() * (pow2(k + 1) - 2);
  return edge_at(first + leaf * sinks.size() + sink);
}

LowerBoundInstance lower_bound_instance(int lambda, int k, std::size_t n) {
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (k < 0 || k > 24) throw std::invalid_argument("k out of range");
  const std::size_t tree_size = pow2(k + 1) - 1;
  const std::size_t need = 3 * static_cast<std::size_t>(lambda) * pow2(k);
  if (n < need)
    throw std::invalid_argument("n must be at least 3 * lambda * 2^k (" +
                                std::to_string(need) + ")");

  LowerBoundInstance inst;
  inst.lambda = lambda;
  inst.k = k;
  inst.source = vertex_at(0);
  const std::size_t in_trees = static_cast<std::size_t>(lambda) * tree_size;
  const std::size_t num_y = n - 1 - in_trees;

  DiGraphBuilder b(n);
  for (int i = 0; i < lambda; ++i) {
    inst.trees.push_back(vertex_range(1 + i * tree_size, tree_size));
    inst.roots.push_back(inst.trees.back().front());
  }
  inst.sinks = vertex_range(1 + in_trees, num_y);

  for (VertexId r : inst.roots)
    inst.root_edges.push_back(b.add_edge(inst.source, r));
  for (const auto& tree : inst.trees) {
    inst.tree_edges.push_back(add_heap_tree(b, tree));
    inst.leaves.insert(inst.leaves.end(), tree.end() - pow2(k), tree.end());
  }
  for (VertexId x : inst.leaves)
    for (VertexId y : inst.sinks) b.add_edge(x, y);

  inst.g = std::move(b).build();
  return inst;
}

std::vector<EdgeId> lower_bound_fault_set(const LowerBoundInstance& inst,
                                          std::size_t leaf) {
  if (leaf >= inst.leaves.size())
    throw std::out_of_range("leaf index out of range");
  const std::size_t per_tree = pow2(inst.k);
  auto out = sibling_edges(inst.tree_edges[leaf / per_tree],
                           per_tree - 1 + leaf % per_tree);
  std::sort(out.begin(), out.end());
  return out;
}

std::string layout_json(const LowerBoundInstance& inst) {
  nlohmann::ordered_json j;
  j["kind"] = "lower-bound";
  j["lambda"] = inst.lambda;
  j["k"] = inst.k;
  j["source"] = index_of(inst.source);
  j["roots"] = ids_of(inst.roots);
  j["trees"] = ids_of(inst.trees);
  j["leaves"] = ids_of(inst.leaves);
  j["sinks"] = ids_of(inst.sinks);
  j["forced_bipartite_edges"] = inst.num_bipartite_edges();
  return j.dump(2);
}

// ---------------------------------------------------------------------------

SetCoverInstance parse_set_cover(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string s(text);
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  auto numbers = [](const std::string& line, std::size_t lineno) {
    std::vector<std::size_t> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      if (*p == ' ' || *p == '\t') {
        ++p;
        continue;
      }
      std::size_t v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t'))
        throw std::invalid_argument("malformed set cover line " +
                                    std::to_string(lineno));
      out.push_back(v);
      p = next;
    }
    return out;
  };

  std::size_t i = 0;
  while (i < lines.size() && (lines[i].empty() || lines[i][0] == '#')) ++i;
  if (i == lines.size())
    throw std::invalid_argument("set cover input has no header");
  auto header = numbers(lines[i], i + 1);
  if (header.size() != 2)
    throw std::invalid_argument("malformed set cover header");
  SetCoverInstance sc;
  sc.universe_size = header[0];
  const std::size_t num_sets = header[1];
  ++i;
  for (; sc.sets.size() < num_sets; ++i) {
    if (i >= lines.size()) {
      // Trailing empty sets may have lost their blank lines.
      sc.sets.emplace_back();
      continue;
    }
    if (!lines[i].empty() && lines[i][0] == '#') continue;
    auto set = numbers(lines[i], i + 1);
    for (std::size_t x : set)
      if (x >= sc.universe_size)
        throw std::invalid_argument("element out of range on line " +
                                    std::to_string(i + 1));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    sc.sets.push_back(std::move(set));
  }
  for (; i < lines.size(); ++i)
    if (!lines[i].empty() && lines[i][0] != '#')
      throw std::invalid_argument("more set lines than declared");
  return sc;
}

bool is_cover(const SetCoverInstance& sc,
              std::span<const std::size_t> chosen) {
  std::vector<std::uint8_t> hit(sc.universe_size, 0);
  for (std::size_t w : chosen) {
    if (w >= sc.sets.size()) return false;
    for (std::size_t x : sc.sets[w]) hit[x] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; });
}

HardnessInstance hardness_instance(const SetCoverInstance& sc, int lambda) {
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (sc.universe_size == 0)
    throw std::invalid_argument("universe must be nonempty");
  std::vector<std::size_t> all(sc.sets.size());
  for (std::size_t w = 0; w < all.size(); ++w) all[w] = w;
  if (!is_cover(sc, all))
    throw std::invalid_argument("the sets do not cover the universe");

  HardnessInstance hi;
  hi.lambda = lambda;
  hi.u = ceil_log2(sc.universe_size);
  hi.k = hi.u + 1;
  hi.original_universe = sc.universe_size;
  hi.source = vertex_at(0);

  const std::size_t leaves = pow2(hi.u);
  hi.padded.universe_size = leaves;
  hi.padded.sets = sc.sets;
  for (auto& set : hi.padded.sets)
    for (std::size_t x = sc.universe_size; x < leaves; ++x) set.push_back(x);

  const std::size_t num_sets = hi.padded.sets.size();
  const std::size_t n_sinks =
      4 * static_cast<std::size_t>(lambda) * (num_sets + leaves);
  const std::size_t tree_size = 2 * leaves - 1;
  const std::size_t z_size = static_cast<std::size_t>(hi.u) + 1;
  const std::size_t block = tree_size + 2 * leaves + num_sets + z_size;

  DiGraphBuilder b(1 + n_sinks + lambda * block);
  hi.sinks = vertex_range(1, n_sinks);

  std::size_t next = 1 + n_sinks;
  for (int i = 0; i < lambda; ++i) {
    HardnessGadget gd;
    gd.tree = vertex_range(next, tree_size);
    next += tree_size;
    gd.root = gd.tree.front();
    gd.leaf.assign(gd.tree.end() - leaves, gd.tree.end());
    gd.left = vertex_range(next, leaves);
    next += leaves;
    gd.right = vertex_range(next, leaves);
    next += leaves;
    gd.set_vertex = vertex_range(next, num_sets);
    next += num_sets;
    gd.z = vertex_range(next, z_size);
    next += z_size;
    hi.gadgets.push_back(std::move(gd));
  }

  for (auto& gd : hi.gadgets) gd.root_edge = b.add_edge(hi.source, gd.root);
  for (auto& gd : hi.gadgets) {
    gd.tree_edges = add_heap_tree(b, gd.tree);
    for (std::size_t x = 0; x < leaves; ++x) {
      b.add_edge(gd.leaf[x], gd.left[x]);
      gd.leaf_to_right.push_back(b.add_edge(gd.leaf[x], gd.right[x]));
    }
    for (std::size_t x = 0; x < leaves; ++x)
      for (std::size_t w = 0; w < num_sets; ++w) {
        const auto& set = hi.padded.sets[w];
        if (std::binary_search(set.begin(), set.end(), x))
          b.add_edge(gd.left[x], gd.set_vertex[w]);
      }
    for (std::size_t x = 0; x < leaves; ++x)
      for (VertexId z : gd.z) b.add_edge(gd.right[x], z);
  }
  for (const auto& gd : hi.gadgets) {
    for (VertexId y : gd.set_vertex)
      for (VertexId v : hi.sinks) b.add_edge(y, v);
    for (VertexId z : gd.z)
      for (VertexId v : hi.sinks) b.add_edge(z, v);
  }
  hi.g = std::move(b).build();
  return hi;
}

std::vector<EdgeId> hardness_fault_set(const HardnessInstance& hi,
                                       std::size_t gadget,
                                       std::size_t element) {
  if (gadget >= hi.gadgets.size())
    throw std::out_of_range("gadget index out of range");
  const std::size_t leaves = pow2(hi.u);
  if (element >= leaves) throw std::out_of_range("element out of range");
  const auto& gd = hi.gadgets[gadget];
  auto out = sibling_edges(gd.tree_edges, leaves - 1 + element);
  out.push_back(gd.leaf_to_right[element]);
  std::sort(out.begin(), out.end());
  return out;
}

DiGraph cover_to_preserver(const HardnessInstance& hi,
                           std::span<const std::size_t> cover) {
  if (!is_cover(hi.padded, cover))
    throw std::invalid_argument("not a cover");
  std::vector<std::uint8_t> dropped(hi.padded.sets.size(), 1);
  for (std::size_t w : cover) dropped[w] = 0;

  DiGraphBuilder b(hi.g);
  for (const auto& gd : hi.gadgets)
    for (std::size_t w = 0; w < gd.set_vertex.size(); ++w) {
      if (!dropped[w]) continue;
      for (EdgeId e : hi.g.out_edges(gd.set_vertex[w])) b.remove_edge(e);
    }
  return std::move(b).build();
}

std::vector<std::size_t> preserver_to_cover(const HardnessInstance& hi,
                                            const DiGraph& h) {
  if (h.num_vertices() != hi.g.num_vertices())
    throw std::invalid_argument("preserver has the wrong vertex count");
  if (hi.sinks.empty()) return {};

  VertexId best = hi.sinks.front();
  for (VertexId v : hi.sinks)
    if (h.in_degree(v) < h.in_degree(best)) best = v;

  // y-vertex -> (gadget, set)
  std::unordered_map<std::uint32_t, std::pair<std::size_t, std::size_t>> role;
  for (std::size_t i = 0; i < hi.gadgets.size(); ++i)
    for (std::size_t w = 0; w < hi.gadgets[i].set_vertex.size(); ++w)
      role[index_of(hi.gadgets[i].set_vertex[w])] = {i, w};

  std::vector<std::vector<std::size_t>> candidates(hi.gadgets.size());
  for (EdgeId e : h.in_edges(best)) {
    auto it = role.find(index_of(h.tail(e)));
    if (it != role.end())
      candidates[it->second.first].push_back(it->second.second);
  }
  std::size_t pick = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& c = candidates[i];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.size() < candidates[pick].size()) pick = i;
  }
  return candidates[pick];
}

std::string layout_json(const HardnessInstance& hi) {
  nlohmann::ordered_json j;
  j["kind"] = "hardness";
  j["lambda"] = hi.lambda;
  j["k"] = hi.k;
  j["u"] = hi.u;
  j["universe"] = hi.original_universe;
  j["padded_universe"] = hi.padded.universe_size;
  j["padded_sets"] = hi.padded.sets;
  j["source"] = index_of(hi.source);
  j["sinks"] = ids_of(hi.sinks);
  auto gadgets = nlohmann::ordered_json::array();
  for (const auto& gd : hi.gadgets) {
    nlohmann::ordered_json o;
    o["root"] = index_of(gd.root);
    o["tree"] = ids_of(gd.tree);
    o["leaves"] = ids_of(gd.leaf);
    o["left"] = ids_of(gd.left);
    o["right"] = ids_of(gd.right);
    o["set_vertices"] = ids_of(gd.set_vertex);
    o["z"] = ids_of(gd.z);
    gadgets.push_back(std::move(o));
  }
  j["gadgets"] = std::move(gadgets);
  return j.dump(2);
}

// ---------------------------------------------------------------------------

namespace {

DiGraph draw_digraph(std::size_t n, std::size_t m, SplitMix64& rng) {
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("too many vertices");
  const std::uint64_t pairs =
      n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1);
  if (m > pairs)
    throw std::invalid_argument("m exceeds n(n-1) for a simple digraph");

  // Partial Fisher-Yates over [0, pairs) with only the displaced slots stored.
  std::unordered_map<std::uint64_t, std::uint64_t> moved;
  auto slot = [&](std::uint64_t i) {
    auto it = moved.find(i);
    return it == moved.end() ? i : it->second;
  };
  std::vector<std::uint64_t> picked;
  picked.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t j = i + rng.below(pairs - i);
    std::uint64_t vi = slot(i), vj = slot(j);
    moved[j] = vi;
    moved[i] = vj;
    picked.push_back(vj);
  }
  std::sort(picked.begin(), picked.end());

  DiGraphBuilder b(n);
  for (std::uint64_t p : picked) {
    std::uint64_t tail = p / (n - 1), r = p % (n - 1);
    std::uint64_t head = r >= tail ? r + 1 : r;
    b.add_edge(vertex_at(tail), vertex_at(head));
  }
  return std::move(b).build();
}

}  // namespace

DiGraph random_digraph(std::size_t n, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return draw_digraph(n, m, rng);
}

CapGraph random_capgraph(std::size_t n, std::size_t m, std::int64_t cmax,
                         std::uint64_t seed) {
  if (cmax < 1) throw std::invalid_argument("cmax must be at least 1");
  SplitMix64 rng(seed);
  CapGraph cg;
  cg.base = draw_digraph(n, m, rng);
  cg.cap.assign(cg.base.edge_id_bound(), 0);
  for (EdgeId e : cg.base.edges())
    cg.cap[index_of(e)] =
        1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cmax)));
  return cg;
}

}  // namespace flowpreserve
