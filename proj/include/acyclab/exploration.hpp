#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "acyclab/core.hpp"
#include "acyclab/instances.hpp"
#include "acyclab/rng.hpp"

namespace acyclab {

struct QueryRecord {
    VertexId v;
    std::vector<VertexId> answer;
};

// Full record of an oracle interaction: queries in order, their answers, and
// the revealed labels of every vertex that appeared.
struct Transcript {
    std::vector<QueryRecord> queries;
    std::map<VertexId, PartitionLabel> labels;  // revealed labels of seen vertices
    std::uint64_t seed = 0;
    std::optional<Params> params;
    bool truncated = false;  // oracle exhausted before the requested query count

    bool is_blue(VertexId v) const {
        auto it = labels.find(v);
        return it != labels.end() && it->second.is_blue();
    }
};

void write_transcript(const std::string& path, const Transcript& t);
Transcript read_transcript(const std::string& path);

enum class Strategy { bfs_frontier, uniform_fresh, restart_walk };
Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

// Runs Q distinct-vertex queries against the oracle. Deterministic given the
// stream. If every vertex gets queried before Q, the transcript is truncated
// and flagged.
Transcript run_strategy(VertexOracle& oracle, Strategy strategy, std::uint32_t Q,
                        RandomStream& stream);

// 1-based indices q whose answer intersects the set of vertices seen before q.
std::vector<std::uint32_t> surprises(const Transcript& t);

// Seen set after the first q queries (queried vertices plus answer members).
std::unordered_set<VertexId> seen_after(const Transcript& t, std::uint32_t q);

struct ExplorationStats {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> epoch_bounds;  // 1-based inclusive
    std::vector<std::uint32_t> surprise_times;
    std::vector<std::uint32_t> max_blue_path;  // per epoch, surprise query excluded
    double h = 0;                              // 4*log2(N), if params known
    std::uint32_t E = 0;                       // epoch count
    double D = 0;                              // (h+1)*E
};

// Partitions [1,Q] into epochs closing at the first surprise or after T
// queries, whichever comes first.
ExplorationStats epochs(const Transcript& t, std::uint32_t T);

// Blue in-forest of non-surprise edges: parent of w is the queried blue
// vertex whose answer first revealed w (blue-to-blue arcs only; the parent
// pointer is frozen at w's first appearance).
struct Forest {
    std::unordered_map<VertexId, VertexId> parent;  // only vertices with a parent
    std::unordered_set<VertexId> vertices;          // all blue vertices appeared

    bool contains(VertexId v) const { return vertices.count(v) != 0; }
};

Forest nonsurprise_forest(const Transcript& t, std::uint32_t q);

// v plus the parent chain above it. Errors if v is absent from the forest.
std::set<VertexId> forest_ancestors(const Forest& f, VertexId v);

struct ClosureResult {
    std::set<VertexId> A;
    std::uint32_t H = 0;
    std::vector<std::pair<VertexId, std::uint32_t>> selected;  // (x_i, query time)
};

// Closure process: A0 = {u}; while some queried blue x outside A has a
// revealed blue arc into A, pick the eligible x with the smallest query time
// and merge its frozen forest-ancestor set. Returns the fixed point.
ClosureResult closure(const Transcript& t, std::uint32_t q, VertexId u);

// Reverse-reachability certifier: blue vertices with a revealed all-blue
// directed path to u within the first q queries (includes u).
std::set<VertexId> ancestors_bruteforce(const Transcript& t, std::uint32_t q, VertexId u);

// Longest directed all-blue path revealed by queries a..b (1-based,
// inclusive); a trailing surprise query should be excluded by the caller.
std::uint32_t longest_all_blue_path(const Transcript& t, std::uint32_t a, std::uint32_t b);

// Directed cycle of the revealed graph after q queries, if any.
std::optional<std::vector<VertexId>> cycle_detected(const Transcript& t, std::uint32_t q);

}  // namespace acyclab
