#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acyclab/core.hpp"
#include "acyclab/instances.hpp"

namespace acyclab {

// Bounded-degree undirected graph with canonical edge storage (u < v, sorted
// lexicographically) and the neighbor oracle view f_H(v, i).
struct SourceGraph {
    std::uint32_t n = 0;
    std::uint32_t Delta = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;  // canonical, sorted
    std::vector<std::vector<VertexId>> adj;            // sorted neighbor lists

    SourceGraph() = default;
    // Normalizes arbitrary endpoint pairs; rejects self-loops, duplicates and
    // degree violations.
    SourceGraph(std::uint32_t n, std::uint32_t Delta,
                std::vector<std::pair<VertexId, VertexId>> edge_list);

    std::uint32_t m() const { return static_cast<std::uint32_t>(edges.size()); }
    // i-th neighbor slot (1-based), none past the degree.
    std::optional<VertexId> f(VertexId v, std::uint32_t i) const;
    // rank of the canonical edge {u,v} in the sorted edge list
    std::uint32_t edge_rank(VertexId u, VertexId v) const;
};

SourceGraph read_source_graph(const std::string& path, std::uint32_t Delta);
void write_source_graph(const std::string& path, const SourceGraph& h);

struct ReductionParams {
    std::uint32_t Delta = 0;
    Rational delta;
    std::uint32_t t = 0, r = 0, d = 0;
    Rational eps1, eps2;
};

// r = max(2, ceil(2*t*Delta/delta)), d = t*Delta + 2r,
// eps1 = 1/(3d(1+r)), eps2 = (2 + delta/2)/(6d(1 + r + t*Delta/2)).
ReductionParams gap_params(std::uint32_t Delta, const Rational& delta, std::uint32_t t);

// Structured vertex label of the output graph. Dense index layout is the
// block order [Y | X | A | B | S], each block lexicographic in its tuple:
//   Y(v,i)       -> 3v + (i-1)
//   X(v,i)       -> 3n + 3v + (i-1)
//   A(e,i,l)     -> 6n + 3t*e + t*(i-1) + (l-1)              (l in [t])
//   B(e,i,l)     -> 6n + 3t*m + 3t*e + t*(i-1) + (l-1)
//   S(v,i,j,l)   -> 6n + 6t*m + 6r*v + r*pair(i,j) + (l-1)   (l in [r])
// with pair(i,j) ranking the six ordered pairs i != j lexicographically.
struct GadgetId {
    enum class Kind { Y, X, A, B, S } kind;
    std::uint32_t v = 0;  // vertex id (Y/X/S) or edge id (A/B)
    std::uint32_t i = 0;  // color, 1..3
    std::uint32_t j = 0;  // second color (S only), 1..3, j != i
    std::uint32_t l = 0;  // copy index, 1..t (A/B) or 1..r (S)

    bool operator==(const GadgetId&) const = default;
    std::string name() const;  // e.g. "y(2,1)", "s(0,1,3,2)"
};

std::uint32_t gadget_count(std::uint32_t n, std::uint32_t m, std::uint32_t t, std::uint32_t r);
VertexId gadget_index(const GadgetId& id, std::uint32_t n, std::uint32_t m, std::uint32_t t,
                      std::uint32_t r);
GadgetId gadget_decode(VertexId idx, std::uint32_t n, std::uint32_t m, std::uint32_t t,
                       std::uint32_t r);

// Materializes the whole reduction output. Arcs: y(v,i)->x(v,i);
// x(u,i)->a(e,i,l)->y(v,i) and x(v,i)->b(e,i,l)->y(u,i) for each canonical
// edge e={u,v}, u<v; x(v,i)->s(v,i,j,l)->y(v,j). The adjacency order of
// x(v,i) lists the s-targets in lexicographic (j,l), then edge targets in
// lexicographic (w,l) over sorted neighbors w.
Digraph reduce(const SourceGraph& h, const ReductionParams& p);

// Lazy per-vertex view of reduce(h, p), answering from f_H with a per-source
// cache. Counts the f_H probes spent.
class ReductionSimulator {
public:
    ReductionSimulator(const SourceGraph& h, const ReductionParams& p) : h_(h), p_(p) {}

    // answer list of the given gadget plus the number of fresh f_H probes used
    std::pair<std::vector<VertexId>, std::uint32_t> simulate_query(const GadgetId& id);
    std::pair<std::vector<VertexId>, std::uint32_t> simulate_query(VertexId idx);

    std::uint64_t total_h_queries() const { return total_; }

private:
    const std::vector<VertexId>& neighbors(VertexId v, std::uint32_t& used);

    const SourceGraph& h_;
    ReductionParams p_;
    std::unordered_map<VertexId, std::vector<VertexId>> cache_;
    std::uint64_t total_ = 0;
};

// Selection arcs removed by a proper 3-coloring c (1-based colors); exactly
// 2n arcs, and reduce(h,p) minus them is verified acyclic.
std::vector<std::pair<VertexId, VertexId>> completeness_witness(const SourceGraph& h,
                                                                const std::vector<std::uint32_t>& c,
                                                                const ReductionParams& p);

// min over assignments c: V -> {1,2,3,none} of
//   2n + #{unassigned} + t * #{edges with both ends assigned the same color}.
std::uint64_t assignment_distance(const SourceGraph& h, std::uint32_t t);

// Exhaustive 3-coloring audit: (3-colorable?, minimum monochromatic edges).
std::pair<bool, std::uint64_t> three_color_audit(const SourceGraph& h);

}  // namespace acyclab
