// Python bindings for the main operations: parameter derivation, instance
// sampling, exploration analysis, exact feedback arc set, and the coloring
// reduction.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "acyclab/core.hpp"
#include "acyclab/distance.hpp"
#include "acyclab/exploration.hpp"
#include "acyclab/instances.hpp"
#include "acyclab/reduction.hpp"

namespace py = pybind11;
using namespace acyclab;

namespace {

std::shared_ptr<const HiddenInstance> make_instance(std::uint32_t n, std::uint32_t d,
                                                    std::uint64_t seed) {
    Params p = derive_params(n, d);
    RandomStream rs(seed);
    RandomStream ps = rs.child(0);
    return std::make_shared<const HiddenInstance>(sample_partition(p, ps));
}

std::vector<std::vector<VertexId>> sample_graph(const std::string& dist, std::uint32_t n,
                                                std::uint32_t d, std::uint64_t seed) {
    auto h = make_instance(n, d, seed);
    RandomStream rs(seed);
    std::unique_ptr<VertexOracle> oracle;
    if (dist == "perm")
        oracle = std::make_unique<PermOracle>(h, RandomStream(seed).child(1));
    else if (dist == "dag")
        oracle = std::make_unique<DagOracle>(h, RandomStream(seed).child(1));
    else
        throw std::invalid_argument("distribution must be perm or dag");
    return materialize(*oracle).adj;
}

std::vector<std::string> sample_labels(std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
    auto h = make_instance(n, d, seed);
    std::vector<std::string> out;
    for (const auto& lab : h->labels) out.push_back(lab.to_string());
    return out;
}

Digraph from_adjacency(const std::vector<std::vector<VertexId>>& adj) {
    Digraph g(static_cast<std::uint32_t>(adj.size()));
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : adj[u]) g.add_arc(u, v);
    return g;
}

Transcript explore(const std::string& dist, const std::string& strategy, std::uint32_t n,
                   std::uint32_t d, std::uint32_t queries, std::uint64_t seed) {
    auto h = make_instance(n, d, seed);
    std::unique_ptr<VertexOracle> oracle;
    if (dist == "perm")
        oracle = std::make_unique<PermOracle>(h, RandomStream(seed).child(1));
    else if (dist == "dag")
        oracle = std::make_unique<DagOracle>(h, RandomStream(seed).child(1));
    else
        throw std::invalid_argument("distribution must be perm or dag");
    RandomStream strat = RandomStream(seed).child(2);
    Transcript t = run_strategy(*oracle, parse_strategy(strategy), queries, strat);
    t.seed = seed;
    t.params = h->params;
    return t;
}

}  // namespace

PYBIND11_MODULE(_acyclab, m) {
    m.doc() = "hidden-order digraph instances, exploration and reduction toolkit";

    py::class_<Params>(m, "Params")
        .def_readonly("n", &Params::n)
        .def_readonly("N", &Params::N)
        .def_readonly("d", &Params::d)
        .def_readonly("d_B", &Params::d_B)
        .def_readonly("d_R", &Params::d_R)
        .def_readonly("T", &Params::T)
        .def_readonly("L", &Params::L)
        .def_readonly("layer_sizes", &Params::layer_sizes);

    m.def("derive_params", &derive_params, py::arg("n"), py::arg("d"));

    m.def("sample_graph", &sample_graph, py::arg("distribution"), py::arg("n"), py::arg("d"),
          py::arg("seed"), "materialized adjacency lists of one sampled instance");
    m.def("sample_labels", &sample_labels, py::arg("n"), py::arg("d"), py::arg("seed"),
          "hidden partition labels ('B' or 'R<i>') of the same instance");

    m.def(
        "topological_order",
        [](const std::vector<std::vector<VertexId>>& adj) {
            return topological_order(from_adjacency(adj));
        },
        py::arg("adj"), "vertex order with no backward arcs, or None if cyclic");

    py::class_<QueryRecord>(m, "QueryRecord")
        .def_readonly("v", &QueryRecord::v)
        .def_readonly("answer", &QueryRecord::answer);

    py::class_<Transcript>(m, "Transcript")
        .def_readonly("queries", &Transcript::queries)
        .def_readonly("seed", &Transcript::seed)
        .def_readonly("truncated", &Transcript::truncated)
        .def("label", [](const Transcript& t, VertexId v) { return t.labels.at(v).to_string(); });

    m.def("explore", &explore, py::arg("distribution"), py::arg("strategy"), py::arg("n"),
          py::arg("d"), py::arg("queries"), py::arg("seed"));
    m.def("surprises", &surprises, py::arg("transcript"));
    m.def(
        "cycle_detected",
        [](const Transcript& t) { return cycle_detected(t, static_cast<std::uint32_t>(t.queries.size())); },
        py::arg("transcript"));
    m.def(
        "closure_steps",
        [](const Transcript& t, std::uint32_t q, VertexId u) {
            ClosureResult res = closure(t, q, u);
            return std::make_pair(std::vector<VertexId>(res.A.begin(), res.A.end()), res.H);
        },
        py::arg("transcript"), py::arg("q"), py::arg("u"),
        "(full blue ancestor set, closure step count)");

    m.def(
        "min_feedback_edges",
        [](const std::vector<std::vector<VertexId>>& adj) {
            FeedbackResult res = min_feedback_edges_dp(from_adjacency(adj));
            return std::make_pair(res.size, res.witness);
        },
        py::arg("adj"), "(minimum deletion count, witness arcs)");

    m.def(
        "reduce_coloring",
        [](std::uint32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges,
           std::uint32_t Delta, std::uint32_t t, std::uint32_t r) {
            SourceGraph h(n, Delta, edges);
            ReductionParams p;
            p.Delta = Delta;
            p.t = t;
            p.r = r;
            p.d = t * Delta + 2 * r;
            return reduce(h, p).adj;
        },
        py::arg("n"), py::arg("edges"), py::arg("Delta"), py::arg("t"), py::arg("r"),
        "adjacency lists of the acyclicity instance built from a coloring instance");
    m.def(
        "assignment_distance",
        [](std::uint32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges,
           std::uint32_t Delta, std::uint32_t t) {
            return assignment_distance(SourceGraph(n, Delta, edges), t);
        },
        py::arg("n"), py::arg("edges"), py::arg("Delta"), py::arg("t"));
    m.def(
        "three_color_audit",
        [](std::uint32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges,
           std::uint32_t Delta) { return three_color_audit(SourceGraph(n, Delta, edges)); },
        py::arg("n"), py::arg("edges"), py::arg("Delta"));
}
