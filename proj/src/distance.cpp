#include "acyclab/distance.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace acyclab {

namespace {

std::vector<std::pair<VertexId, VertexId>> backward_arcs(const Digraph& g,
                                                         const std::vector<VertexId>& order) {
    std::vector<std::uint32_t> pos(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) pos[order[i]] = i;
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (pos[v] <= pos[u]) out.emplace_back(u, v);
    return out;
}

}  // namespace

FeedbackResult min_feedback_edges_dp(const Digraph& g) {
    if (g.n > 20) throw std::invalid_argument("min_feedback_edges_dp: n > 20");
    const std::uint32_t n = g.n;
    const std::size_t full = std::size_t{1} << n;

    // cost[v][S] = arcs from v into S plus self-loops of v, i.e. the backward
    // arcs created by appending v to a prefix S.
    std::vector<std::vector<std::uint16_t>> into(n, std::vector<std::uint16_t>(full, 0));
    // incremental: into[v][S] = into[v][S without lowest bit] + arcs v->that bit
    std::vector<std::vector<std::uint16_t>> arc_cnt(n, std::vector<std::uint16_t>(n, 0));
    std::vector<std::uint16_t> self_loops(n, 0);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v : g.adj[u])
            if (v == u)
                ++self_loops[u];
            else
                ++arc_cnt[u][v];
    for (VertexId v = 0; v < n; ++v) {
        into[v][0] = self_loops[v];
        for (std::size_t S = 1; S < full; ++S) {
            std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(S));
            into[v][S] = static_cast<std::uint16_t>(into[v][S & (S - 1)] + arc_cnt[v][b]);
        }
    }

    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dp(full, kInf);
    std::vector<std::uint8_t> last(full, 0);
    dp[0] = 0;
    for (std::size_t S = 1; S < full; ++S) {
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!(S >> v & 1)) continue;
            std::size_t prev = S & ~(std::size_t{1} << v);
            std::uint32_t cand = dp[prev] + into[v][prev];
            if (cand < dp[S]) {
                dp[S] = cand;
                last[S] = static_cast<std::uint8_t>(v);
            }
        }
    }

    std::vector<VertexId> order(n);
    std::size_t S = full - 1;
    for (std::uint32_t i = n; i-- > 0;) {
        order[i] = last[S];
        S &= ~(std::size_t{1} << last[S]);
    }

    FeedbackResult res;
    res.size = dp[full - 1];
    res.witness = backward_arcs(g, order);
    res.method = "subset_dp";
    if (res.witness.size() != res.size)
        throw std::logic_error("min_feedback_edges_dp: witness mismatch");
    return res;
}

FeedbackResult min_feedback_edges_bruteforce(const Digraph& g) {
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u]) arcs.emplace_back(u, v);
    const std::uint32_t m = static_cast<std::uint32_t>(arcs.size());
    if (m > 22) throw std::invalid_argument("min_feedback_edges_bruteforce: m > 22");

    for (std::uint32_t k = 0; k <= m; ++k) {
        // enumerate k-subsets of arcs
        std::vector<std::uint32_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            Digraph h(g.n);
            std::uint32_t next = 0;
            for (std::uint32_t i = 0; i < m; ++i) {
                if (next < k && idx[next] == i)
                    ++next;
                else
                    h.add_arc(arcs[i].first, arcs[i].second);
            }
            if (topological_order(h)) {
                FeedbackResult res;
                res.size = k;
                for (std::uint32_t i : idx) res.witness.push_back(arcs[i]);
                res.method = "edge_bruteforce";
                return res;
            }
            if (k == 0) break;
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw std::logic_error("min_feedback_edges_bruteforce: unreachable");
}

bool eps_far(const Digraph& g, const Rational& eps, std::uint32_t d) {
    FeedbackResult res;
    if (g.n <= 20)
        res = min_feedback_edges_dp(g);
    else
        res = min_feedback_edges_bruteforce(g);  // throws if also too large
    return Rational(res.size) >= eps * d * g.n;
}

std::uint64_t min_feedback_weight_dp(std::uint32_t n, const std::vector<WeightedArc>& arcs) {
    if (n > 22) throw std::invalid_argument("min_feedback_weight_dp: n > 22");
    std::uint64_t fixed = 0;
    std::vector<std::vector<std::uint64_t>> w(n, std::vector<std::uint64_t>(n, 0));
    for (const auto& a : arcs) {
        if (a.u == a.v)
            fixed += a.w;  // self-loops are backward under every ordering
        else
            w[a.u][a.v] += a.w;
    }
    const std::size_t full = std::size_t{1} << n;
    constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> dp(full, kInf);
    dp[0] = 0;
    for (std::size_t S = 1; S < full; ++S) {
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!(S >> v & 1)) continue;
            std::size_t prev = S & ~(std::size_t{1} << v);
            if (dp[prev] == kInf) continue;
            std::uint64_t cost = dp[prev];
            for (std::uint32_t u = 0; u < n; ++u)
                if (prev >> u & 1) cost += w[v][u];
            dp[S] = std::min(dp[S], cost);
        }
    }
    return fixed + dp[full - 1];
}

std::uint64_t min_feedback_edges_contracted(const Digraph& g) {
    // weighted multigraph as arc-weight maps
    std::vector<std::map<VertexId, std::uint64_t>> out(g.n), in(g.n);
    std::uint64_t fixed = 0;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u]) {
            if (u == v) {
                ++fixed;  // must be deleted regardless
                continue;
            }
            ++out[u][v];
            ++in[v][u];
        }

    std::vector<bool> alive(g.n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v = 0; v < g.n; ++v) {
            if (!alive[v]) continue;
            // sources and sinks lie on no cycle: strip them
            if (in[v].empty() || out[v].empty()) {
                for (const auto& [s, wt] : out[v]) in[s].erase(v);
                for (const auto& [p, wt] : in[v]) out[p].erase(v);
                in[v].clear();
                out[v].clear();
                alive[v] = false;
                changed = true;
                continue;
            }
            if (in[v].size() != 1 || out[v].size() != 1) continue;
            VertexId p = in[v].begin()->first, s = out[v].begin()->first;
            std::uint64_t wmin = std::min(in[v].begin()->second, out[v].begin()->second);
            out[p].erase(v);
            in[s].erase(v);
            in[v].clear();
            out[v].clear();
            alive[v] = false;
            if (p == s) {
                fixed += wmin;  // p -> v -> p collapses to a mandatory cut
            } else {
                out[p][s] += wmin;
                in[s][p] += wmin;
            }
            changed = true;
        }
    }

    std::vector<VertexId> remap(g.n, 0);
    std::uint32_t k = 0;
    for (VertexId v = 0; v < g.n; ++v)
        if (alive[v]) remap[v] = k++;
    if (k > 22) throw std::invalid_argument("min_feedback_edges_contracted: too large after contraction");
    std::vector<WeightedArc> arcs;
    for (VertexId u = 0; u < g.n; ++u)
        if (alive[u])
            for (const auto& [v, wt] : out[u]) arcs.push_back({remap[u], remap[v], wt});
    return fixed + min_feedback_weight_dp(k, arcs);
}

}  // namespace acyclab
