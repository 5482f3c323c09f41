#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "acyclab/core.hpp"
#include "acyclab/rng.hpp"

namespace acyclab {

using Rational = boost::multiprecision::cpp_rational;

// Hidden partition shared by both hard distributions.
struct HiddenInstance {
    Params params;
    std::vector<PartitionLabel> labels;            // size n
    std::vector<VertexId> blue;                    // the N blue vertices
    std::vector<std::vector<VertexId>> layers;     // layers[i-1] = vertices of R_i
};

// Uniform partition with the fixed layer sizes; deterministic given stream.
HiddenInstance sample_partition(const Params& params, RandomStream& stream);

// Whole-vertex outneighbor oracle with revealed labels (strengthened model).
class VertexOracle {
public:
    virtual ~VertexOracle() = default;
    virtual std::uint32_t n() const = 0;
    virtual const std::vector<VertexId>& query(VertexId v) = 0;  // idempotent
    virtual PartitionLabel label(VertexId v) const = 0;
};

// Oracle over an already materialized graph.
class MaterializedOracle final : public VertexOracle {
public:
    MaterializedOracle(Digraph g, std::vector<PartitionLabel> labels)
        : g_(std::move(g)), labels_(std::move(labels)) {}

    std::uint32_t n() const override { return g_.n; }
    const std::vector<VertexId>& query(VertexId v) override { return g_.adj.at(v); }
    PartitionLabel label(VertexId v) const override { return labels_.at(v); }

private:
    Digraph g_;
    std::vector<PartitionLabel> labels_;
};

// Lazy oracle for the permutation blue-core distribution. Blue-to-blue edges
// are images of d_B independent uniform permutations of B, realized as
// injective partial maps with uniform draws from the unused images.
class PermOracle final : public VertexOracle {
public:
    PermOracle(std::shared_ptr<const HiddenInstance> hidden, RandomStream stream);

    std::uint32_t n() const override { return hidden_->params.n; }
    const std::vector<VertexId>& query(VertexId v) override;
    PartitionLabel label(VertexId v) const override { return hidden_->labels[v]; }

    const HiddenInstance& hidden() const { return *hidden_; }
    RandomStream& stream() { return stream_; }

    // Primitives used by the coupled run.
    bool image_known(std::uint32_t j, VertexId v) const;
    VertexId image(std::uint32_t j, VertexId v) const;
    VertexId draw_image(std::uint32_t j, VertexId v, RandomStream& rs);  // records the draw
    bool answered(VertexId v) const { return cache_.count(v) != 0; }
    void install_answer(VertexId v, std::vector<VertexId> answer);

private:
    std::shared_ptr<const HiddenInstance> hidden_;
    RandomStream stream_;
    std::vector<std::unordered_map<VertexId, VertexId>> pi_;     // per-j partial map
    std::vector<std::unordered_set<VertexId>> used_;             // per-j used images
    std::unordered_map<VertexId, std::vector<VertexId>> cache_;  // answered vertices
};

// Lazy oracle for the acyclic hidden-order distribution. The order sigma is
// assigned rank by rank: a queried blue vertex receives a uniform unused
// rank, then d_B distinct uniform ranks greater than it, each mapped to a
// lazily assigned blue vertex.
class DagOracle final : public VertexOracle {
public:
    static constexpr std::uint32_t kNoRank = 0xffffffffu;

    DagOracle(std::shared_ptr<const HiddenInstance> hidden, RandomStream stream);

    std::uint32_t n() const override { return hidden_->params.n; }
    const std::vector<VertexId>& query(VertexId v) override;
    PartitionLabel label(VertexId v) const override { return hidden_->labels[v]; }

    const HiddenInstance& hidden() const { return *hidden_; }
    RandomStream& stream() { return stream_; }

    // Primitives used by the coupled run and tests.
    std::uint32_t rank_of(VertexId v) const;  // kNoRank if unassigned
    std::uint32_t ensure_rank(VertexId v, RandomStream& rs);
    bool rank_assigned(std::uint32_t rank) const { return vertex_of_[rank] != kNoVertex; }
    VertexId vertex_at(std::uint32_t rank) const { return vertex_of_[rank]; }
    // Uniform unassigned blue vertex, recorded at the given rank.
    VertexId assign_fresh_vertex(std::uint32_t rank, RandomStream& rs);
    void assign_vertex(std::uint32_t rank, VertexId v);  // record externally chosen vertex
    bool answered(VertexId v) const { return cache_.count(v) != 0; }
    void install_answer(VertexId v, std::vector<VertexId> answer);

private:
    static constexpr VertexId kNoVertex = 0xffffffffu;

    std::shared_ptr<const HiddenInstance> hidden_;
    RandomStream stream_;
    std::vector<std::uint32_t> rank_of_;   // dense over all vertices; blue only
    std::vector<VertexId> vertex_of_;      // dense over ranks [0, N)
    std::uint32_t assigned_ = 0;
    std::unordered_map<VertexId, std::vector<VertexId>> cache_;
};

// Shared red-edge rules of both distributions.
// Answer for a red vertex of the given 1-based layer (empty if layer > L/2):
// each out-edge picks a uniform layer in {i+1, ..., i+L/2} then a uniform
// vertex there, distinct within the answer.
std::vector<VertexId> red_layer_answer(const HiddenInstance& h, std::uint32_t layer, RandomStream& rs);
// count distinct uniform vertices of R_{<=L/2}.
std::vector<VertexId> blue_red_targets(const HiddenInstance& h, RandomStream& rs);

// Queries every vertex once and assembles the full digraph. Rejects n > limit.
Digraph materialize(VertexOracle& oracle, std::uint32_t limit = 1u << 20);

// Per-query coupling flags: the boundary events that force the two simulated
// oracles to stop sharing draws.
struct CoupledFlags {
    bool surprise_perm = false;
    bool surprise_dag = false;
    bool blue_self_loop = false;
    bool repeated_blue = false;
    bool sigma_tail = false;  // queried vertex among the last d_B ranks

    bool anomaly() const { return blue_self_loop || repeated_blue || sigma_tail; }
    bool any() const { return surprise_perm || surprise_dag || anomaly(); }
};

struct CoupledAnswer {
    std::vector<VertexId> perm;
    std::vector<VertexId> dag;
    CoupledFlags flags;
};

// One permutation-core run and one order-core run on the same hidden
// partition, sharing randomness so that answer lists coincide on every
// prefix free of surprises and anomalies. Both marginals are exact: shared
// draws are used only where the two conditional laws provably agree.
class CoupledRun {
public:
    CoupledRun(std::shared_ptr<const HiddenInstance> hidden, RandomStream stream);

    CoupledAnswer coupled_query(VertexId v);

    bool diverged() const { return diverged_; }
    const std::vector<CoupledFlags>& flag_log() const { return flag_log_; }
    PermOracle& perm() { return perm_; }
    DagOracle& dag() { return dag_; }
    PartitionLabel label(VertexId v) const { return hidden_->labels[v]; }
    std::uint32_t n() const { return hidden_->params.n; }

private:
    bool seen_perm(VertexId v) const { return seen_perm_.count(v) != 0; }
    bool seen_dag(VertexId v) const { return seen_dag_.count(v) != 0; }
    void note_seen(VertexId q, const CoupledAnswer& ans);

    std::shared_ptr<const HiddenInstance> hidden_;
    RandomStream shared_;
    PermOracle perm_;
    DagOracle dag_;
    std::unordered_set<VertexId> seen_perm_, seen_dag_;
    std::unordered_map<VertexId, CoupledAnswer> cache_;
    bool diverged_ = false;
    std::vector<CoupledFlags> flag_log_;
};

// Exact conditional distribution of the blue outneighbor set of u in the
// order core, given that every vertex of P precedes u and the boundary event
// does not occur. Enumerates all N! orders; exact rational arithmetic.
// Blue vertices are identified with 0..N-1; subsets are bitmasks.
std::map<std::uint64_t, Rational> cancellation_enumerate(std::uint32_t N, std::uint32_t d_B,
                                                         const std::vector<std::uint32_t>& P,
                                                         std::uint32_t u);

}  // namespace acyclab
