#include "acyclab/instances.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace acyclab {

namespace {

constexpr int kRejectionCap = 64;

// Uniform element of pool \ chosen, by rejection with an exact enumeration
// fallback once the cap is hit.
template <class Pred>
VertexId draw_excluding(const std::vector<VertexId>& pool, Pred excluded, RandomStream& rs) {
    for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
        VertexId v = pool[rs.below(pool.size())];
        if (!excluded(v)) return v;
    }
    std::vector<VertexId> avail;
    for (VertexId v : pool)
        if (!excluded(v)) avail.push_back(v);
    if (avail.empty()) throw std::logic_error("draw_excluding: pool exhausted");
    return avail[rs.below(avail.size())];
}

}  // namespace

HiddenInstance sample_partition(const Params& params, RandomStream& stream) {
    HiddenInstance h;
    h.params = params;
    std::vector<VertexId> verts(params.n);
    std::iota(verts.begin(), verts.end(), 0);
    stream.shuffle(verts);

    h.labels.assign(params.n, PartitionLabel::blue());
    h.blue.assign(verts.begin(), verts.begin() + params.N);
    h.layers.resize(params.L);
    std::size_t pos = params.N;
    for (std::uint32_t i = 1; i <= params.L; ++i) {
        std::uint32_t sz = params.layer_sizes[i - 1];
        h.layers[i - 1].assign(verts.begin() + pos, verts.begin() + pos + sz);
        for (std::uint32_t k = 0; k < sz; ++k) h.labels[verts[pos + k]] = PartitionLabel::red(i);
        pos += sz;
    }
    if (pos != params.n) throw std::logic_error("sample_partition: sizes inconsistent");
    return h;
}

std::vector<VertexId> red_layer_answer(const HiddenInstance& h, std::uint32_t layer, RandomStream& rs) {
    const Params& p = h.params;
    if (layer > p.L / 2) return {};
    // Window of target layers {layer+1, ..., layer+L/2} (1-based).
    std::uint32_t lo = layer + 1, hi = layer + p.L / 2;
    std::uint64_t capacity = 0;
    for (std::uint32_t i = lo; i <= hi; ++i) capacity += p.layer_sizes[i - 1];
    std::uint32_t want = static_cast<std::uint32_t>(std::min<std::uint64_t>(p.d, capacity));

    std::vector<VertexId> out;
    out.reserve(want);
    auto chosen = [&](VertexId v) { return std::find(out.begin(), out.end(), v) != out.end(); };
    while (out.size() < want) {
        bool placed = false;
        for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
            std::uint32_t tl = lo + static_cast<std::uint32_t>(rs.below(hi - lo + 1));
            const auto& lay = h.layers[tl - 1];
            VertexId v = lay[rs.below(lay.size())];
            if (!chosen(v)) {
                out.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            // Exact fallback: remaining window vertices weighted by 1/|layer|.
            std::vector<VertexId> avail;
            std::vector<double> w;
            double total = 0;
            for (std::uint32_t i = lo; i <= hi; ++i)
                for (VertexId v : h.layers[i - 1])
                    if (!chosen(v)) {
                        avail.push_back(v);
                        w.push_back(1.0 / h.layers[i - 1].size());
                        total += w.back();
                    }
            double x = rs.unit() * total;
            std::size_t k = 0;
            while (k + 1 < avail.size() && x > w[k]) x -= w[k], ++k;
            out.push_back(avail[k]);
        }
    }
    return out;
}

std::vector<VertexId> blue_red_targets(const HiddenInstance& h, RandomStream& rs) {
    const Params& p = h.params;
    // R_{<=L/2} has exactly N vertices; draw d_R distinct uniformly.
    std::uint32_t want = std::min(p.d_R, p.N);
    std::vector<VertexId> out;
    out.reserve(want);
    auto chosen = [&](VertexId v) { return std::find(out.begin(), out.end(), v) != out.end(); };
    std::uint64_t capacity = p.N;
    while (out.size() < want) {
        bool placed = false;
        for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
            std::uint64_t r = rs.below(capacity);
            std::uint32_t i = 0;
            while (r >= h.layers[i].size()) r -= h.layers[i].size(), ++i;
            VertexId v = h.layers[i][r];
            if (!chosen(v)) {
                out.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            std::vector<VertexId> avail;
            for (std::uint32_t i = 0; i < p.L / 2; ++i)
                for (VertexId v : h.layers[i])
                    if (!chosen(v)) avail.push_back(v);
            out.push_back(avail[rs.below(avail.size())]);
        }
    }
    return out;
}

// ---------------------------------------------------------------- PermOracle

PermOracle::PermOracle(std::shared_ptr<const HiddenInstance> hidden, RandomStream stream)
    : hidden_(std::move(hidden)),
      stream_(std::move(stream)),
      pi_(hidden_->params.d_B),
      used_(hidden_->params.d_B) {}

bool PermOracle::image_known(std::uint32_t j, VertexId v) const { return pi_[j].count(v) != 0; }

VertexId PermOracle::image(std::uint32_t j, VertexId v) const { return pi_[j].at(v); }

VertexId PermOracle::draw_image(std::uint32_t j, VertexId v, RandomStream& rs) {
    if (image_known(j, v)) throw std::logic_error("draw_image: already drawn");
    const std::uint32_t N = hidden_->params.N;
    VertexId img;
    if (used_[j].size() <= N / 2) {
        img = draw_excluding(hidden_->blue, [&](VertexId w) { return used_[j].count(w) != 0; }, rs);
    } else {
        std::vector<VertexId> avail;
        for (VertexId w : hidden_->blue)
            if (!used_[j].count(w)) avail.push_back(w);
        img = avail[rs.below(avail.size())];
    }
    pi_[j].emplace(v, img);
    used_[j].insert(img);
    return img;
}

void PermOracle::install_answer(VertexId v, std::vector<VertexId> answer) {
    cache_.emplace(v, std::move(answer));
}

const std::vector<VertexId>& PermOracle::query(VertexId v) {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;

    const Params& p = hidden_->params;
    PartitionLabel lab = hidden_->labels[v];
    std::vector<VertexId> answer;
    if (lab.is_red()) {
        answer = red_layer_answer(*hidden_, lab.layer, stream_);
    } else {
        for (std::uint32_t j = 0; j < p.d_B; ++j)
            answer.push_back(image_known(j, v) ? image(j, v) : draw_image(j, v, stream_));
        for (VertexId r : blue_red_targets(*hidden_, stream_)) answer.push_back(r);
        stream_.shuffle(answer);
    }
    return cache_.emplace(v, std::move(answer)).first->second;
}

// ----------------------------------------------------------------- DagOracle

DagOracle::DagOracle(std::shared_ptr<const HiddenInstance> hidden, RandomStream stream)
    : hidden_(std::move(hidden)),
      stream_(std::move(stream)),
      rank_of_(hidden_->params.n, kNoRank),
      vertex_of_(hidden_->params.N, kNoVertex) {}

std::uint32_t DagOracle::rank_of(VertexId v) const { return rank_of_[v]; }

std::uint32_t DagOracle::ensure_rank(VertexId v, RandomStream& rs) {
    if (rank_of_[v] != kNoRank) return rank_of_[v];
    const std::uint32_t N = hidden_->params.N;
    std::uint32_t rank;
    if (assigned_ <= N / 2) {
        for (;;) {
            rank = static_cast<std::uint32_t>(rs.below(N));
            if (!rank_assigned(rank)) break;
        }
    } else {
        std::vector<std::uint32_t> avail;
        for (std::uint32_t r = 0; r < N; ++r)
            if (!rank_assigned(r)) avail.push_back(r);
        rank = avail[rs.below(avail.size())];
    }
    assign_vertex(rank, v);
    return rank;
}

VertexId DagOracle::assign_fresh_vertex(std::uint32_t rank, RandomStream& rs) {
    VertexId v =
        draw_excluding(hidden_->blue, [&](VertexId w) { return rank_of_[w] != kNoRank; }, rs);
    assign_vertex(rank, v);
    return v;
}

void DagOracle::assign_vertex(std::uint32_t rank, VertexId v) {
    if (rank_assigned(rank) || rank_of_[v] != kNoRank)
        throw std::logic_error("DagOracle::assign_vertex: already assigned");
    vertex_of_[rank] = v;
    rank_of_[v] = rank;
    ++assigned_;
}

void DagOracle::install_answer(VertexId v, std::vector<VertexId> answer) {
    cache_.emplace(v, std::move(answer));
}

const std::vector<VertexId>& DagOracle::query(VertexId v) {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;

    const Params& p = hidden_->params;
    PartitionLabel lab = hidden_->labels[v];
    std::vector<VertexId> answer;
    if (lab.is_red()) {
        answer = red_layer_answer(*hidden_, lab.layer, stream_);
    } else {
        std::uint32_t r = ensure_rank(v, stream_);
        std::uint32_t greater = p.N - 1 - r;
        std::uint32_t want = std::min(p.d_B, greater);
        std::vector<std::uint32_t> ranks;
        if (want == greater) {
            for (std::uint32_t q = r + 1; q < p.N; ++q) ranks.push_back(q);
        } else {
            while (ranks.size() < want) {
                std::uint32_t q = r + 1 + static_cast<std::uint32_t>(stream_.below(greater));
                if (std::find(ranks.begin(), ranks.end(), q) == ranks.end()) ranks.push_back(q);
            }
        }
        for (std::uint32_t q : ranks)
            answer.push_back(rank_assigned(q) ? vertex_at(q) : assign_fresh_vertex(q, stream_));
        for (VertexId red : blue_red_targets(*hidden_, stream_)) answer.push_back(red);
        stream_.shuffle(answer);
    }
    return cache_.emplace(v, std::move(answer)).first->second;
}

// ---------------------------------------------------------------- Materialize

Digraph materialize(VertexOracle& oracle, std::uint32_t limit) {
    if (oracle.n() > limit) throw std::invalid_argument("materialize: n exceeds limit");
    Digraph g(oracle.n());
    for (VertexId v = 0; v < oracle.n(); ++v) g.adj[v] = oracle.query(v);
    return g;
}

// ----------------------------------------------------------------- CoupledRun

CoupledRun::CoupledRun(std::shared_ptr<const HiddenInstance> hidden, RandomStream stream)
    : hidden_(hidden),
      shared_(stream.child(0)),
      perm_(hidden, stream.child(1)),
      dag_(hidden, stream.child(2)) {}

void CoupledRun::note_seen(VertexId q, const CoupledAnswer& ans) {
    seen_perm_.insert(q);
    seen_dag_.insert(q);
    for (VertexId w : ans.perm) seen_perm_.insert(w);
    for (VertexId w : ans.dag) seen_dag_.insert(w);
}

CoupledAnswer CoupledRun::coupled_query(VertexId v) {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;

    const Params& p = hidden_->params;
    PartitionLabel lab = hidden_->labels[v];
    CoupledAnswer ans;

    if (diverged_) {
        ans.perm = perm_.query(v);
        ans.dag = dag_.query(v);
        for (VertexId w : ans.perm)
            if (seen_perm(w)) ans.flags.surprise_perm = true;
        for (VertexId w : ans.dag)
            if (seen_dag(w)) ans.flags.surprise_dag = true;
    } else if (lab.is_red()) {
        // The red rule is identical under both distributions and independent
        // of the transcript, so one draw serves both sides.
        std::vector<VertexId> a = red_layer_answer(*hidden_, lab.layer, shared_);
        for (VertexId w : a) {
            if (seen_perm(w)) ans.flags.surprise_perm = true;
            if (seen_dag(w)) ans.flags.surprise_dag = true;
        }
        perm_.install_answer(v, a);
        dag_.install_answer(v, a);
        ans.perm = a;
        ans.dag = std::move(a);
    } else {
        // Blue query. The order side first fixes the rank of v.
        std::uint32_t rank = dag_.ensure_rank(v, dag_.stream());
        std::uint32_t greater = p.N - 1 - rank;
        ans.flags.sigma_tail = greater < p.d_B;

        std::vector<VertexId> blue_perm, blue_dag;
        bool sharing = !ans.flags.sigma_tail;

        if (ans.flags.sigma_tail) {
            // Boundary case: the order side takes all remaining later ranks.
            for (std::uint32_t q = rank + 1; q < p.N; ++q)
                blue_dag.push_back(dag_.rank_assigned(q) ? dag_.vertex_at(q)
                                                         : dag_.assign_fresh_vertex(q, dag_.stream()));
            for (VertexId w : blue_dag)
                if (seen_dag(w)) ans.flags.surprise_dag = true;
        }

        std::vector<std::uint32_t> dag_ranks;
        for (std::uint32_t j = 0; j < p.d_B; ++j) {
            // Permutation side: next image, uniform over the unused images.
            VertexId img = perm_.draw_image(j, v, perm_.stream());
            bool perm_good = true;
            if (seen_perm(img)) ans.flags.surprise_perm = true, perm_good = false;
            if (img == v) ans.flags.blue_self_loop = true, perm_good = false;
            if (std::find(blue_perm.begin(), blue_perm.end(), img) != blue_perm.end())
                ans.flags.repeated_blue = true, perm_good = false;
            blue_perm.push_back(img);

            if (ans.flags.sigma_tail) continue;  // order side already resolved

            // Order side: next rank, uniform over unchosen ranks above v's.
            std::uint32_t q;
            for (;;) {
                q = rank + 1 + static_cast<std::uint32_t>(dag_.stream().below(greater));
                if (std::find(dag_ranks.begin(), dag_ranks.end(), q) == dag_ranks.end()) break;
            }
            dag_ranks.push_back(q);
            if (dag_.rank_assigned(q)) {
                // Assigned ranks belong to already seen blue vertices.
                blue_dag.push_back(dag_.vertex_at(q));
                ans.flags.surprise_dag = true;
                sharing = false;
            } else if (sharing && perm_good) {
                // Both sub-steps landed in the fresh region, where the two
                // conditional laws coincide: reuse the permutation image.
                dag_.assign_vertex(q, img);
                blue_dag.push_back(img);
            } else {
                blue_dag.push_back(dag_.assign_fresh_vertex(q, dag_.stream()));
                sharing = false;
            }
            if (!perm_good) sharing = false;
        }

        bool identical_blue = blue_perm == blue_dag;
        if (identical_blue && !ans.flags.any()) {
            std::vector<VertexId> reds = blue_red_targets(*hidden_, shared_);
            for (VertexId w : reds) {
                if (seen_perm(w)) ans.flags.surprise_perm = true;
                if (seen_dag(w)) ans.flags.surprise_dag = true;
            }
            ans.perm = blue_perm;
            for (VertexId w : reds) ans.perm.push_back(w);
            shared_.shuffle(ans.perm);
            ans.dag = ans.perm;
        } else {
            ans.perm = std::move(blue_perm);
            for (VertexId w : blue_red_targets(*hidden_, perm_.stream())) {
                if (seen_perm(w)) ans.flags.surprise_perm = true;
                ans.perm.push_back(w);
            }
            perm_.stream().shuffle(ans.perm);
            ans.dag = std::move(blue_dag);
            for (VertexId w : blue_red_targets(*hidden_, dag_.stream())) {
                if (seen_dag(w)) ans.flags.surprise_dag = true;
                ans.dag.push_back(w);
            }
            dag_.stream().shuffle(ans.dag);
        }
        perm_.install_answer(v, ans.perm);
        dag_.install_answer(v, ans.dag);
    }

    if (ans.flags.any()) diverged_ = true;
    note_seen(v, ans);
    flag_log_.push_back(ans.flags);
    cache_.emplace(v, ans);
    return ans;
}

// --------------------------------------------------- cancellation_enumerate

std::map<std::uint64_t, Rational> cancellation_enumerate(std::uint32_t N, std::uint32_t d_B,
                                                         const std::vector<std::uint32_t>& P,
                                                         std::uint32_t u) {
    if (N > 8) throw std::invalid_argument("cancellation_enumerate: N > 8");
    if (u >= N) throw std::invalid_argument("cancellation_enumerate: u out of range");
    for (std::uint32_t p : P)
        if (p >= N || p == u) throw std::invalid_argument("cancellation_enumerate: bad P");

    std::vector<std::uint32_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);

    // binom table
    std::vector<std::vector<std::uint64_t>> C(N + 1, std::vector<std::uint64_t>(N + 1, 0));
    for (std::uint32_t i = 0; i <= N; ++i) {
        C[i][0] = 1;
        for (std::uint32_t k = 1; k <= i; ++k)
            C[i][k] = C[i - 1][k - 1] + (k <= i - 1 ? C[i - 1][k] : 0);
    }

    std::map<std::uint64_t, Rational> weight;
    Rational total = 0;
    do {
        // perm[pos] = vertex at rank pos; sigma(v) = rank
        std::vector<std::uint32_t> rank(N);
        for (std::uint32_t pos = 0; pos < N; ++pos) rank[perm[pos]] = pos;
        bool ok = true;
        for (std::uint32_t p : P)
            if (rank[p] >= rank[u]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<std::uint32_t> later;
        for (std::uint32_t w = 0; w < N; ++w)
            if (rank[w] > rank[u]) later.push_back(w);
        std::uint32_t m = static_cast<std::uint32_t>(later.size());
        if (m < d_B) continue;  // boundary event excluded

        Rational per_subset = Rational(1, C[m][d_B]);
        // enumerate d_B-subsets of `later`
        std::vector<std::uint32_t> idx(d_B);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::uint64_t mask = 0;
            for (std::uint32_t i : idx) mask |= (1ull << later[i]);
            weight[mask] += per_subset;
            total += per_subset;
            // next combination
            int i = static_cast<int>(d_B) - 1;
            while (i >= 0 && idx[i] == m - d_B + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (std::uint32_t k = i + 1; k < d_B; ++k) idx[k] = idx[k - 1] + 1;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (auto& [mask, w] : weight) w /= total;
    return weight;
}

}  // namespace acyclab
