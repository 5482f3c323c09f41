#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "acyclab/core.hpp"
#include "acyclab/instances.hpp"

namespace acyclab {

struct FeedbackResult {
    std::uint64_t size = 0;
    std::vector<std::pair<VertexId, VertexId>> witness;  // arcs whose removal leaves a DAG
    std::string method;
};

// Exact minimum feedback edge set as min over vertex orderings of backward
// arcs, by subset DP. Rejects n > 20.
FeedbackResult min_feedback_edges_dp(const Digraph& g);

// Independently exact: enumerates arc subsets in increasing size. Rejects m > 22.
FeedbackResult min_feedback_edges_bruteforce(const Digraph& g);

// true iff the minimum feedback edge set has size >= eps * d * n (exact
// rational comparison).
bool eps_far(const Digraph& g, const Rational& eps, std::uint32_t d);

// Weighted variant over arc multiplicities: cost of an ordering is the total
// weight of backward arcs. arcs[i] = (u, v, w). Self-loops contribute their
// weight unconditionally. Rejects n > 24.
struct WeightedArc {
    VertexId u, v;
    std::uint64_t w;
};
std::uint64_t min_feedback_weight_dp(std::uint32_t n, const std::vector<WeightedArc>& arcs);

// Exact distance to acyclicity of large sparse graphs whose in-degree-1 /
// out-degree-1 chains can be contracted: repeatedly replaces p -> v -> s
// (v with unit in- and out-degree, no self-loop) by p -> s with weight
// min(w_in, w_out), merging parallel arcs by weight addition and charging
// self-loop weights as fixed cost, then runs the weighted subset DP.
std::uint64_t min_feedback_edges_contracted(const Digraph& g);

}  // namespace acyclab
