#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace acyclab {

using VertexId = std::uint32_t;

// Ordered adjacency-list digraph. Neighbor order is significant and preserved.
struct Digraph {
    std::uint32_t n = 0;
    std::vector<std::vector<VertexId>> adj;

    explicit Digraph(std::uint32_t n_ = 0) : n(n_), adj(n_) {}

    void add_arc(VertexId u, VertexId v);
    std::size_t arc_count() const;
};

// Partition label: blue, or red of layer in [1, L].
struct PartitionLabel {
    std::uint32_t layer = 0;  // 0 = blue, >=1 = red layer index

    bool is_blue() const { return layer == 0; }
    bool is_red() const { return layer != 0; }

    static PartitionLabel blue() { return {0}; }
    static PartitionLabel red(std::uint32_t layer) { return {layer}; }

    bool operator==(const PartitionLabel&) const = default;

    std::string to_string() const;                         // "B" or "R<i>"
    static PartitionLabel parse(const std::string& text);  // inverse
};

// Instance parameters shared by both hard distributions.
struct Params {
    std::uint32_t n = 0, N = 0, d = 0, d_B = 0, d_R = 0, T = 0, L = 0;
    std::vector<std::uint32_t> layer_sizes;  // size L; layer i (1-based) has layer_sizes[i-1] vertices
};

// n = 3N, T = floor(N^{1/3}), L = 2T, d_B = floor(d/2), d_R = d - d_B,
// layer sizes a+1 for the first b layers of each half and a otherwise,
// where N = aT + b. Rejects n not divisible by 3 and d < 2.
Params derive_params(std::uint32_t n, std::uint32_t d);

// Topological order with zero backward edges iff g is acyclic; nullopt iff g
// has a directed cycle (self-loops count).
std::optional<std::vector<VertexId>> topological_order(const Digraph& g);

// Number of arcs (u -> v) such that ordering places v before u (or v == u).
// ordering must be a permutation of the vertices.
std::uint64_t backward_edge_count(const Digraph& g, std::span<const VertexId> ordering);

// Text format: first line "n m", then m lines "u v" (0-based); adjacency
// order = file order.
void write_graph(std::ostream& out, const Digraph& g);
Digraph read_graph(std::istream& in);
void write_graph_file(const std::string& path, const Digraph& g);
Digraph read_graph_file(const std::string& path);

// Sidecar label file: one "v label" line per vertex, label "B" or "R<i>".
void write_labels_file(const std::string& path, const std::vector<PartitionLabel>& labels);
std::vector<PartitionLabel> read_labels_file(const std::string& path);

}  // namespace acyclab
