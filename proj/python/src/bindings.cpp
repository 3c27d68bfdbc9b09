#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "flowpreserve/digraph.hpp"
#include "flowpreserve/edge_list.hpp"
#include "flowpreserve/flow.hpp"
#include "flowpreserve/generators.hpp"
#include "flowpreserve/oracle.hpp"
#include "flowpreserve/preserver.hpp"
#include "flowpreserve/random.hpp"
#include "flowpreserve/transform.hpp"
#include "flowpreserve/verify.hpp"

namespace py = pybind11;
namespace fp = flowpreserve;

namespace {

using IdList = std::vector<std::uint32_t>;

fp::VertexId vid(std::uint32_t v) { return fp::vertex_at(v); }

std::vector<fp::EdgeId> eids(const IdList& ids) {
  std::vector<fp::EdgeId> out;
  out.reserve(ids.size());
  for (auto i : ids) out.push_back(fp::edge_at(i));
  return out;
}

template <typename Id>
IdList plain(const std::vector<Id>& ids) {
  IdList out;
  out.reserve(ids.size());
  for (Id i : ids) out.push_back(fp::index_of(i));
  return out;
}

fp::DiGraph graph_from(std::size_t n,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  fp::DiGraphBuilder b(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw py::index_error("edge endpoint out of range");
    b.add_edge(vid(u), vid(v));
  }
  return std::move(b).build();
}

py::dict cut_dict(const fp::Cut& c) {
  py::dict d;
  d["a_side"] = plain(c.a_side);
  d["crossing"] = plain(c.crossing);
  d["value"] = c.value;
  return d;
}

std::optional<py::dict> violation_dict(const std::optional<fp::Violation>& v) {
  if (!v) return std::nullopt;
  py::dict d;
  d["faults"] = plain(v->faults);
  d["dest"] = fp::index_of(v->dest);
  d["flow_in_g"] = v->flow_in_g;
  d["flow_in_h"] = v->flow_in_h;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fault-tolerant bounded-flow preservers for directed graphs";

  py::register_exception<fp::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<fp::BudgetExceeded>(m, "BudgetExceeded",
                                             PyExc_RuntimeError);
  py::register_exception<fp::OracleLoadError>(m, "OracleLoadError",
                                              PyExc_ValueError);

  py::class_<fp::DiGraph>(m, "DiGraph")
      .def(py::init(&graph_from), py::arg("n"), py::arg("edges"))
      .def_static("from_text", [](const std::string& t) { return fp::parse_edge_list(t); })
      .def("to_text", [](const fp::DiGraph& g) { return fp::serialize_edge_list(g); })
      .def_property_readonly("num_vertices", &fp::DiGraph::num_vertices)
      .def_property_readonly("num_edges", &fp::DiGraph::num_edges)
      .def("edges",
           [](const fp::DiGraph& g) {
             std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> out;
             for (fp::EdgeId e : g.edges())
               out.emplace_back(fp::index_of(e), fp::index_of(g.tail(e)),
                                fp::index_of(g.head(e)));
             return out;
           },
           "(id, tail, head) for every present edge")
      .def("has_edge", [](const fp::DiGraph& g, std::uint32_t e) {
        return g.has_edge(fp::edge_at(e));
      })
      .def("in_degree", [](const fp::DiGraph& g, std::uint32_t v) {
        return g.in_degree(vid(v));
      })
      .def("out_degree", [](const fp::DiGraph& g, std::uint32_t v) {
        return g.out_degree(vid(v));
      })
      .def("remove_edges", [](const fp::DiGraph& g, const IdList& f) {
        return fp::remove_edges(g, eids(f));
      })
      .def("__eq__", [](const fp::DiGraph& a, const fp::DiGraph& b) { return a == b; })
      .def("__repr__", [](const fp::DiGraph& g) {
        return "<DiGraph n=" + std::to_string(g.num_vertices()) +
               " m=" + std::to_string(g.num_edges()) + ">";
      });

  py::class_<fp::CapGraph>(m, "CapGraph")
      .def_static("from_text", [](const std::string& t) { return fp::parse_cap_edge_list(t); })
      .def("to_text", [](const fp::CapGraph& g) { return fp::serialize_edge_list(g); })
      .def_property_readonly("base", [](const fp::CapGraph& g) { return g.base; })
      .def("capacity", [](const fp::CapGraph& g, std::uint32_t e) {
        return g.capacity(fp::edge_at(e));
      });

  m.def("max_flow",
        [](const fp::DiGraph& g, std::uint32_t s, std::uint32_t t,
           std::optional<int> cap) { return fp::max_flow(g, vid(s), vid(t), cap).value; },
        py::arg("g"), py::arg("s"), py::arg("t"), py::arg("cap") = std::nullopt);
  m.def("nearest_min_cut", [](const fp::DiGraph& g, std::uint32_t s, std::uint32_t t) {
    return cut_dict(fp::nearest_min_cut(g, vid(s), vid(t)));
  });
  m.def("farthest_min_cut", [](const fp::DiGraph& g, std::uint32_t s, std::uint32_t t) {
    return cut_dict(fp::farthest_min_cut(g, vid(s), vid(t)));
  });

  m.def("ftbfp_single_dest",
        [](const fp::DiGraph& g, std::uint32_t s, std::uint32_t t, int lambda, int k) {
          return plain(fp::ftbfp_single_dest(g, vid(s), vid(t), lambda, k));
        });

  py::class_<fp::PreserverResult>(m, "PreserverResult")
      .def_readonly("h", &fp::PreserverResult::h)
      .def_property_readonly("total_edges", &fp::PreserverResult::total_edges)
      .def_property_readonly("kept_in_edges",
                             [](const fp::PreserverResult& r) {
                               std::vector<IdList> out;
                               for (const auto& v : r.kept_in_edges) out.push_back(plain(v));
                               return out;
                             })
      .def_property_readonly("audit", [](const fp::PreserverResult& r) {
        py::list out;
        for (const auto& a : r.audit) {
          py::dict d;
          d["vertex"] = fp::index_of(a.vertex);
          d["kept_in_degree"] = a.kept_in_degree;
          d["f_observed"] = a.f_observed;
          out.append(d);
        }
        return out;
      });

  m.def("ftbfp",
        [](const fp::DiGraph& g, std::uint32_t s, int lambda, int k) {
          return fp::ftbfp(g, vid(s), lambda, k);
        },
        py::arg("g"), py::arg("s"), py::arg("lambda_"), py::arg("k"));
  m.def("capacitated_ftbfp",
        [](const fp::CapGraph& g, std::uint32_t s, int lambda, int k) {
          return fp::capacitated_ftbfp(g, vid(s), lambda, k);
        });

  m.def("verify_ftbfp",
        [](const fp::DiGraph& g, const fp::DiGraph& h, std::uint32_t s, int lambda,
           int k, std::uint64_t budget, unsigned workers) {
          std::optional<fp::Violation> v;
          {
            py::gil_scoped_release release;
            v = fp::verify_ftbfp(g, h, vid(s), lambda, k, {budget, workers});
          }
          return violation_dict(v);
        },
        py::arg("g"), py::arg("h"), py::arg("s"), py::arg("lambda_"), py::arg("k"),
        py::arg("budget") = fp::kDefaultVerifyBudget, py::arg("workers") = 1U);

  m.def("audit_bounds", [](const fp::DiGraph& h, int lambda, int k) {
    auto r = fp::audit_bounds(h, lambda, k);
    py::dict d;
    d["max_in_degree"] = r.max_in_degree;
    d["total_edges"] = r.total_edges;
    d["in_degree_bound"] = r.in_degree_bound;
    d["edge_bound"] = r.edge_bound;
    d["slack"] = r.slack();
    d["passed"] = r.passed;
    return d;
  });

  m.def("bounded_outdegree_transform",
        [](const fp::DiGraph& g, std::uint32_t s, std::uint32_t t) {
          auto tg = fp::bounded_outdegree_transform(g, vid(s), vid(t));
          return py::make_tuple(tg.h, fp::index_of(tg.source), fp::index_of(tg.sink));
        },
        "Returns (h, source_in_h, sink_in_h).");

  m.def("random_digraph", &fp::random_digraph, py::arg("n"), py::arg("m"),
        py::arg("seed"));
  m.def("random_capgraph", &fp::random_capgraph, py::arg("n"), py::arg("m"),
        py::arg("cmax"), py::arg("seed"));
  m.def("splitmix64", [](std::uint64_t seed, std::size_t count) {
    fp::SplitMix64 rng(seed);
    std::vector<std::uint64_t> out(count);
    for (auto& x : out) x = rng.next();
    return out;
  });

  m.def("lower_bound_instance", [](int lambda, int k, std::size_t n) {
    auto inst = fp::lower_bound_instance(lambda, k, n);
    py::dict d;
    d["graph"] = inst.g;
    d["source"] = fp::index_of(inst.source);
    d["leaves"] = plain(inst.leaves);
    d["sinks"] = plain(inst.sinks);
    d["layout"] = fp::layout_json(inst);
    return d;
  });
  m.def("hardness_graph", [](const std::string& set_cover_text, int lambda) {
    auto hi = fp::hardness_instance(fp::parse_set_cover(set_cover_text), lambda);
    py::dict d;
    d["graph"] = hi.g;
    d["source"] = fp::index_of(hi.source);
    d["k"] = hi.k;
    d["sinks"] = plain(hi.sinks);
    d["layout"] = fp::layout_json(hi);
    return d;
  });

  py::class_<fp::ReachabilityOracle>(m, "ReachabilityOracle")
      .def_property_readonly("lambda_", &fp::ReachabilityOracle::lambda)
      .def_property_readonly("k", &fp::ReachabilityOracle::k)
      .def_property_readonly("graph_hash", &fp::ReachabilityOracle::graph_hash)
      .def_property_readonly("stored_edges", &fp::ReachabilityOracle::stored_edges)
      .def("query",
           [](const fp::ReachabilityOracle& o, std::uint32_t x, std::uint32_t y,
              const IdList& faults) {
             auto a = o.query(vid(x), vid(y), eids(faults));
             return py::make_tuple(a.value, std::string(fp::tag_name(a.tag)));
           },
           py::arg("x"), py::arg("y"), py::arg("faults") = IdList{})
      .def("save", [](const fp::ReachabilityOracle& o) {
        std::ostringstream out;
        fp::save_oracle(o, out);
        return out.str();
      })
      .def_static("load", [](const std::string& text) {
        std::istringstream in(text);
        return fp::load_oracle(in);
      });

  m.def("build_oracle", &fp::build_oracle, py::arg("g"), py::arg("lambda_"),
        py::arg("k"), py::arg("workers") = 1U,
        py::call_guard<py::gil_scoped_release>());
}
