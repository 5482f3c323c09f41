#include "acyclab/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace acyclab {

using nlohmann::json;

// ------------------------------------------------------------ transcript I/O

void write_transcript(const std::string& path, const Transcript& t) {
    json j;
    j["queries"] = json::array();
    for (const auto& q : t.queries) j["queries"].push_back({{"v", q.v}, {"answer", q.answer}});
    json labels = json::object();
    for (const auto& [v, lab] : t.labels) labels[std::to_string(v)] = lab.to_string();
    j["labels"] = std::move(labels);
    j["seed"] = t.seed;
    if (t.params) j["params"] = {{"n", t.params->n}, {"d", t.params->d}};
    j["truncated"] = t.truncated;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

Transcript read_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j = json::parse(in);
    Transcript t;
    for (const auto& q : j.at("queries"))
        t.queries.push_back({q.at("v").get<VertexId>(), q.at("answer").get<std::vector<VertexId>>()});
    for (const auto& [k, v] : j.at("labels").items())
        t.labels.emplace(static_cast<VertexId>(std::stoul(k)), PartitionLabel::parse(v.get<std::string>()));
    t.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("params"))
        t.params = derive_params(j["params"].at("n").get<std::uint32_t>(),
                                 j["params"].at("d").get<std::uint32_t>());
    t.truncated = j.value("truncated", false);
    return t;
}

// ------------------------------------------------------------------ strategy

Strategy parse_strategy(const std::string& name) {
    if (name == "bfs_frontier") return Strategy::bfs_frontier;
    if (name == "uniform_fresh") return Strategy::uniform_fresh;
    if (name == "restart_walk") return Strategy::restart_walk;
    throw std::invalid_argument("unknown strategy: " + name);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::bfs_frontier: return "bfs_frontier";
        case Strategy::uniform_fresh: return "uniform_fresh";
        case Strategy::restart_walk: return "restart_walk";
    }
    throw std::logic_error("bad strategy");
}

namespace {

VertexId pick_fresh(std::uint32_t n, const std::unordered_set<VertexId>& queried,
                    RandomStream& rs) {
    for (;;) {
        VertexId v = static_cast<VertexId>(rs.below(n));
        if (!queried.count(v)) return v;
    }
}

}  // namespace

Transcript run_strategy(VertexOracle& oracle, Strategy strategy, std::uint32_t Q,
                        RandomStream& stream) {
    if (Q < 1) throw std::invalid_argument("run_strategy: Q must be >= 1");
    const std::uint32_t n = oracle.n();
    Transcript t;
    std::unordered_set<VertexId> queried;
    std::deque<VertexId> frontier;            // bfs_frontier
    std::optional<VertexId> walk;             // restart_walk current position

    auto record = [&](VertexId v) -> const std::vector<VertexId>& {
        const auto& answer = oracle.query(v);
        queried.insert(v);
        t.queries.push_back({v, answer});
        t.labels.emplace(v, oracle.label(v));
        for (VertexId w : answer) t.labels.emplace(w, oracle.label(w));
        return answer;
    };

    for (std::uint32_t step = 0; step < Q; ++step) {
        if (queried.size() == n) {
            t.truncated = true;
            break;
        }
        VertexId v;
        switch (strategy) {
            case Strategy::uniform_fresh:
                v = pick_fresh(n, queried, stream);
                break;
            case Strategy::bfs_frontier: {
                while (!frontier.empty() && queried.count(frontier.front())) frontier.pop_front();
                v = frontier.empty() ? pick_fresh(n, queried, stream) : frontier.front();
                if (!frontier.empty()) frontier.pop_front();
                break;
            }
            case Strategy::restart_walk:
                v = walk ? *walk : pick_fresh(n, queried, stream);
                break;
        }
        const auto& answer = record(v);
        if (strategy == Strategy::bfs_frontier) {
            std::vector<VertexId> fresh;
            for (VertexId w : answer)
                if (!queried.count(w) && std::find(fresh.begin(), fresh.end(), w) == fresh.end())
                    fresh.push_back(w);
            std::sort(fresh.begin(), fresh.end());  // FIFO, ties by vertex id
            for (VertexId w : fresh) frontier.push_back(w);
        } else if (strategy == Strategy::restart_walk) {
            std::vector<VertexId> fresh;
            for (VertexId w : answer)
                if (!queried.count(w)) fresh.push_back(w);
            walk = fresh.empty() ? std::nullopt
                                 : std::optional<VertexId>(fresh[stream.below(fresh.size())]);
        }
    }
    return t;
}

// ----------------------------------------------------------------- analysis

std::vector<std::uint32_t> surprises(const Transcript& t) {
    std::vector<std::uint32_t> out;
    std::unordered_set<VertexId> seen;
    for (std::uint32_t q = 1; q <= t.queries.size(); ++q) {
        const auto& rec = t.queries[q - 1];
        // the queried vertex is seen at query time, before its answer arrives,
        // so a self-loop in the answer counts as a repeat
        seen.insert(rec.v);
        bool hit = false;
        for (VertexId w : rec.answer)
            if (seen.count(w)) {
                hit = true;
                break;
            }
        if (hit) out.push_back(q);
        for (VertexId w : rec.answer) seen.insert(w);
    }
    return out;
}

std::unordered_set<VertexId> seen_after(const Transcript& t, std::uint32_t q) {
    std::unordered_set<VertexId> seen;
    for (std::uint32_t i = 0; i < q && i < t.queries.size(); ++i) {
        seen.insert(t.queries[i].v);
        for (VertexId w : t.queries[i].answer) seen.insert(w);
    }
    return seen;
}

ExplorationStats epochs(const Transcript& t, std::uint32_t T) {
    if (T < 1) throw std::invalid_argument("epochs: T must be >= 1");
    ExplorationStats st;
    st.surprise_times = surprises(t);
    const std::uint32_t Q = static_cast<std::uint32_t>(t.queries.size());
    std::unordered_set<std::uint32_t> surp(st.surprise_times.begin(), st.surprise_times.end());
    std::uint32_t start = 1;
    while (start <= Q) {
        std::uint32_t end = std::min(Q, start + T - 1);
        bool ended_by_surprise = false;
        for (std::uint32_t q = start; q <= end; ++q)
            if (surp.count(q)) {
                end = q;
                ended_by_surprise = true;
                break;
            }
        st.epoch_bounds.emplace_back(start, end);
        // surprise-free portion: drop a trailing surprise query
        std::uint32_t b = ended_by_surprise ? end - 1 : end;
        st.max_blue_path.push_back(b >= start ? longest_all_blue_path(t, start, b) : 0);
        start = end + 1;
    }
    st.E = static_cast<std::uint32_t>(st.epoch_bounds.size());
    if (t.params) {
        st.h = 4.0 * std::log2(static_cast<double>(t.params->N));
        st.D = (st.h + 1.0) * st.E;
    }
    return st;
}

Forest nonsurprise_forest(const Transcript& t, std::uint32_t q) {
    if (q > t.queries.size()) throw std::invalid_argument("nonsurprise_forest: q out of range");
    Forest f;
    std::unordered_set<VertexId> seen;
    for (std::uint32_t i = 0; i < q; ++i) {
        const auto& rec = t.queries[i];
        seen.insert(rec.v);
        if (t.is_blue(rec.v)) f.vertices.insert(rec.v);
        for (VertexId w : rec.answer) {
            if (t.is_blue(rec.v) && t.is_blue(w) && !seen.count(w)) f.parent.emplace(w, rec.v);
            if (t.is_blue(w)) f.vertices.insert(w);
            seen.insert(w);
        }
    }
    return f;
}

std::set<VertexId> forest_ancestors(const Forest& f, VertexId v) {
    if (!f.contains(v)) throw std::invalid_argument("forest_ancestors: vertex absent");
    std::set<VertexId> out{v};
    auto it = f.parent.find(v);
    while (it != f.parent.end()) {
        if (!out.insert(it->second).second) throw std::logic_error("forest has a cycle");
        it = f.parent.find(it->second);
    }
    return out;
}

namespace {

// Revealed blue-to-blue arcs in the first q queries, tagged with query time.
struct BlueArcs {
    struct Arc {
        VertexId tail, head;
        std::uint32_t time;  // 1-based query index of the tail
    };
    std::vector<Arc> arcs;
    std::unordered_map<VertexId, std::uint32_t> query_time;  // queried blue vertices
};

BlueArcs blue_arcs(const Transcript& t, std::uint32_t q) {
    BlueArcs ba;
    for (std::uint32_t i = 0; i < q; ++i) {
        const auto& rec = t.queries[i];
        if (!t.is_blue(rec.v)) continue;
        ba.query_time.emplace(rec.v, i + 1);
        for (VertexId w : rec.answer)
            if (t.is_blue(w)) ba.arcs.push_back({rec.v, w, i + 1});
    }
    return ba;
}

}  // namespace

ClosureResult closure(const Transcript& t, std::uint32_t q, VertexId u) {
    if (q > t.queries.size()) throw std::invalid_argument("closure: q out of range");
    if (!t.is_blue(u)) throw std::invalid_argument("closure: u is not blue");
    auto seen = seen_after(t, q);
    if (!seen.count(u)) throw std::invalid_argument("closure: u not in the revealed graph");

    BlueArcs ba = blue_arcs(t, q);
    Forest f = nonsurprise_forest(t, q);
    ClosureResult res;
    res.A.insert(u);

    std::size_t max_import = 0;
    for (;;) {
        VertexId best = 0;
        std::uint32_t best_time = 0;
        bool found = false;
        for (const auto& arc : ba.arcs) {
            if (!res.A.count(arc.head) || res.A.count(arc.tail)) continue;
            if (!found || arc.time < best_time) {
                best = arc.tail;
                best_time = arc.time;
                found = true;
            }
        }
        if (!found) break;
        auto anc = forest_ancestors(f, best);
        max_import = std::max(max_import, anc.size());
        res.A.insert(anc.begin(), anc.end());
        res.selected.emplace_back(best, best_time);
        ++res.H;
    }
    if (res.A.size() > 1 + static_cast<std::size_t>(res.H) * std::max<std::size_t>(max_import, 1))
        throw std::logic_error("closure: growth bound violated");
    return res;
}

std::set<VertexId> ancestors_bruteforce(const Transcript& t, std::uint32_t q, VertexId u) {
    if (q > t.queries.size()) throw std::invalid_argument("ancestors_bruteforce: q out of range");
    if (!t.is_blue(u)) throw std::invalid_argument("ancestors_bruteforce: u is not blue");
    auto seen = seen_after(t, q);
    if (!seen.count(u)) throw std::invalid_argument("ancestors_bruteforce: u not revealed");

    std::unordered_map<VertexId, std::vector<VertexId>> rev;  // head -> tails
    for (const auto& arc : blue_arcs(t, q).arcs) rev[arc.head].push_back(arc.tail);

    std::set<VertexId> out;
    std::vector<VertexId> stack{u};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (!out.insert(v).second) continue;
        auto it = rev.find(v);
        if (it != rev.end())
            for (VertexId w : it->second) stack.push_back(w);
    }
    return out;
}

std::uint32_t longest_all_blue_path(const Transcript& t, std::uint32_t a, std::uint32_t b) {
    if (a < 1 || b > t.queries.size()) throw std::invalid_argument("longest_all_blue_path: range");
    std::unordered_map<VertexId, std::vector<VertexId>> adj;
    std::unordered_set<VertexId> verts;
    for (std::uint32_t i = a; i <= b; ++i) {
        const auto& rec = t.queries[i - 1];
        if (!t.is_blue(rec.v)) continue;
        verts.insert(rec.v);
        for (VertexId w : rec.answer)
            if (t.is_blue(w)) {
                adj[rec.v].push_back(w);
                verts.insert(w);
            }
    }
    // arc-count longest path by memoized DFS; the revealed portion must be
    // acyclic (surprise-free queries reveal fresh heads only)
    std::unordered_map<VertexId, std::uint32_t> memo;
    std::unordered_set<VertexId> onstack;
    auto dfs = [&](auto&& self, VertexId v) -> std::uint32_t {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        if (!onstack.insert(v).second)
            throw std::logic_error("longest_all_blue_path: cycle in surprise-free portion");
        std::uint32_t best = 0;
        auto jt = adj.find(v);
        if (jt != adj.end())
            for (VertexId w : jt->second) best = std::max(best, 1 + self(self, w));
        onstack.erase(v);
        return memo.emplace(v, best).first->second;
    };
    std::uint32_t best = 0;
    for (VertexId v : verts) best = std::max(best, dfs(dfs, v));
    return best;
}

std::optional<std::vector<VertexId>> cycle_detected(const Transcript& t, std::uint32_t q) {
    if (q > t.queries.size()) throw std::invalid_argument("cycle_detected: q out of range");
    std::unordered_map<VertexId, std::vector<VertexId>> adj;
    std::vector<VertexId> verts;
    for (std::uint32_t i = 0; i < q; ++i) {
        const auto& rec = t.queries[i];
        adj[rec.v] = rec.answer;
        verts.push_back(rec.v);
    }
    // iterative DFS with colors; reconstruct the cycle from the stack
    std::unordered_map<VertexId, int> color;  // 0 unseen, 1 active, 2 done
    for (VertexId root : verts) {
        if (color[root] == 2) continue;
        std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
        std::vector<VertexId> path{root};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            auto it = adj.find(v);
            if (it != adj.end() && idx < it->second.size()) {
                VertexId w = it->second[idx++];
                int c = color.count(w) ? color[w] : 0;
                if (c == 1) {
                    // cycle: suffix of path starting at w
                    auto pos = std::find(path.begin(), path.end(), w);
                    return std::vector<VertexId>(pos, path.end());
                }
                if (c == 0 && adj.count(w)) {
                    color[w] = 1;
                    stack.emplace_back(w, 0);
                    path.push_back(w);
                } else if (c == 0) {
                    color[w] = 2;  // unqueried leaf, no outgoing arcs known
                }
            } else {
                color[v] = 2;
                stack.pop_back();
                path.pop_back();
            }
        }
    }
    return std::nullopt;
}

}  // namespace acyclab
