#include <doctest.h>

#include <cstdio>
#include <memory>
#include <numeric>

#include "acyclab/exploration.hpp"

using namespace acyclab;

namespace {

std::shared_ptr<const HiddenInstance> instance(std::uint32_t n, std::uint32_t d,
                                               std::uint64_t seed) {
    Params p = derive_params(n, d);
    RandomStream rs(seed);
    RandomStream ps = rs.child(0);
    return std::make_shared<const HiddenInstance>(sample_partition(p, ps));
}

// all-blue synthetic transcript from explicit query/answer pairs
Transcript synthetic(std::initializer_list<QueryRecord> queries) {
    Transcript t;
    for (const auto& q : queries) {
        t.queries.push_back(q);
        t.labels.emplace(q.v, PartitionLabel::blue());
        for (VertexId w : q.answer) t.labels.emplace(w, PartitionLabel::blue());
    }
    return t;
}

}  // namespace

TEST_CASE("run_strategy basics") {
    auto h = instance(24, 8, 2);
    for (Strategy s : {Strategy::bfs_frontier, Strategy::uniform_fresh, Strategy::restart_walk}) {
        PermOracle oracle(h, RandomStream(2).child(1));
        RandomStream strat = RandomStream(2).child(2);
        Transcript t = run_strategy(oracle, s, 1, strat);
        CHECK(t.queries.size() == 1);
        CHECK(!t.truncated);
    }
    // Q = n: every vertex queried exactly once
    PermOracle oracle(h, RandomStream(2).child(1));
    RandomStream strat = RandomStream(2).child(2);
    Transcript t = run_strategy(oracle, Strategy::restart_walk, 24, strat);
    CHECK(t.queries.size() == 24);
    std::set<VertexId> seen;
    for (const auto& q : t.queries) seen.insert(q.v);
    CHECK(seen.size() == 24);
    // one more query than vertices -> truncated
    PermOracle oracle2(h, RandomStream(2).child(1));
    RandomStream strat2 = RandomStream(2).child(2);
    CHECK(run_strategy(oracle2, Strategy::uniform_fresh, 25, strat2).truncated);
}

TEST_CASE("strategy transcripts agree with the oracle's cached answers") {
    auto h = instance(24, 8, 9);
    PermOracle oracle(h, RandomStream(9).child(1));
    RandomStream strat = RandomStream(9).child(2);
    Transcript t = run_strategy(oracle, Strategy::bfs_frontier, 12, strat);
    Digraph g = materialize(oracle);  // completes the same oracle
    for (const auto& q : t.queries) CHECK(g.adj[q.v] == q.answer);
}

TEST_CASE("seen set growth bound") {
    auto h = instance(48, 8, 3);
    PermOracle oracle(h, RandomStream(3).child(1));
    RandomStream strat = RandomStream(3).child(2);
    Transcript t = run_strategy(oracle, Strategy::bfs_frontier, 20, strat);
    for (std::uint32_t q = 1; q <= t.queries.size(); ++q)
        CHECK(seen_after(t, q).size() <= std::size_t(8 + 1) * q);
}

TEST_CASE("surprises basics") {
    Transcript fresh = synthetic({{0, {1}}, {2, {3}}});
    CHECK(surprises(fresh).empty());
    Transcript hit = synthetic({{0, {1}}, {2, {0}}});
    CHECK(surprises(hit) == std::vector<std::uint32_t>{2});
}

TEST_CASE("epochs partition the query range") {
    Transcript fresh = synthetic({{0, {1}}, {2, {3}}, {4, {5}}, {6, {7}}});
    ExplorationStats st = epochs(fresh, 2);
    REQUIRE(st.E == 2);
    CHECK(st.epoch_bounds[0] == std::pair<std::uint32_t, std::uint32_t>{1, 2});
    CHECK(st.epoch_bounds[1] == std::pair<std::uint32_t, std::uint32_t>{3, 4});

    Transcript early = synthetic({{0, {0}}, {2, {3}}});  // surprise at query 1
    ExplorationStats st2 = epochs(early, 5);
    CHECK(st2.epoch_bounds[0] == std::pair<std::uint32_t, std::uint32_t>{1, 1});

    // E <= Q/T + #surprises always (random transcripts)
    auto h = instance(60, 8, 12);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PermOracle oracle(h, RandomStream(seed).child(1));
        RandomStream strat = RandomStream(seed).child(2);
        Transcript t = run_strategy(oracle, Strategy::uniform_fresh, 15, strat);
        for (std::uint32_t T : {1u, 3u, 5u}) {
            ExplorationStats st3 = epochs(t, T);
            CHECK(st3.E <= t.queries.size() / T + surprises(t).size() + 1);
            std::uint32_t expect = 1;
            for (auto [a, b] : st3.epoch_bounds) {
                CHECK(a == expect);
                CHECK(b - a + 1 <= T);
                expect = b + 1;
            }
            CHECK(expect == t.queries.size() + 1);
        }
    }
}

TEST_CASE("nonsurprise forest structure") {
    // surprise-free: every revealed blue arc joins the forest
    Transcript fresh = synthetic({{0, {1, 2}}, {3, {4}}});
    Forest f = nonsurprise_forest(fresh, 2);
    CHECK(f.parent.at(1) == 0);
    CHECK(f.parent.at(2) == 0);
    CHECK(f.parent.at(4) == 3);
    CHECK(forest_ancestors(f, 0) == std::set<VertexId>{0});  // root

    // vertex revealed twice: second arc is not a forest arc
    Transcript twice = synthetic({{0, {1}}, {2, {1}}});
    Forest f2 = nonsurprise_forest(twice, 2);
    CHECK(f2.parent.at(1) == 0);

    // self-loop never becomes a parent arc
    Transcript loop = synthetic({{0, {0}}});
    Forest f3 = nonsurprise_forest(loop, 1);
    CHECK(f3.parent.count(0) == 0);

    CHECK_THROWS(forest_ancestors(f3, 99));
}

TEST_CASE("forest ancestors chain") {
    // chain b(3) -> a(2) -> x(1)
    Transcript t = synthetic({{3, {2}}, {2, {1}}});
    Forest f = nonsurprise_forest(t, 2);
    CHECK(forest_ancestors(f, 1) == std::set<VertexId>{1, 2, 3});
}

TEST_CASE("forest parents are frozen over time") {
    auto h = instance(48, 8, 21);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        PermOracle oracle(h, RandomStream(seed).child(1));
        RandomStream strat = RandomStream(seed).child(2);
        Transcript t = run_strategy(oracle, Strategy::bfs_frontier, 16, strat);
        const std::uint32_t Q = static_cast<std::uint32_t>(t.queries.size());
        Forest final_forest = nonsurprise_forest(t, Q);
        for (std::uint32_t q = 1; q < Q; ++q) {
            Forest fq = nonsurprise_forest(t, q);
            for (const auto& [v, parent] : fq.parent) {
                CHECK(final_forest.parent.at(v) == parent);
                CHECK(forest_ancestors(fq, v) == forest_ancestors(final_forest, v));
            }
        }
    }
}

TEST_CASE("closure: worked example with two imports") {
    // forest chain b(3)->a(2)->x(1); w(4) hits x by surprise; x hits u(0) by
    // surprise; closure of u imports {x,a,b} then {w}
    Transcript t = synthetic({
        {3, {2}},  // b -> a
        {2, {1}},  // a -> x
        {4, {1}},  // w -> x  (surprise)
        {0, {}},   // u queried
        {1, {0}},  // x -> u  (surprise)
    });
    ClosureResult res = closure(t, 5, 0);
    CHECK(res.A == std::set<VertexId>{0, 1, 2, 3, 4});
    CHECK(res.H == 2);
    REQUIRE(res.selected.size() == 2);
    CHECK(res.selected[0].first == 1);  // x first (smallest eligible query time)
    CHECK(res.selected[1].first == 4);  // then w

    // no blue arc into {u}: fixed point immediately
    ClosureResult none = closure(t, 4, 0);
    CHECK(none.A == std::set<VertexId>{0});
    CHECK(none.H == 0);
}

TEST_CASE("closure equals reverse-DFS ancestors on random transcripts") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::uint32_t n = 24 + 3 * (seed % 20);
        auto h = instance(n, 8, seed);
        Strategy strat_kind = Strategy(seed % 3);
        PermOracle oracle(h, RandomStream(seed).child(1));
        RandomStream strat = RandomStream(seed).child(2);
        Transcript t = run_strategy(oracle, strat_kind, std::min(n, 20u), strat);
        for (std::uint32_t q = 1; q <= t.queries.size(); ++q)
            for (std::uint32_t i = 0; i < q; ++i) {
                VertexId u = t.queries[i].v;
                if (!t.is_blue(u)) continue;
                CHECK(closure(t, q, u).A == ancestors_bruteforce(t, q, u));
            }
    }
}

TEST_CASE("ancestors_bruteforce basics") {
    Transcript t = synthetic({{2, {1}}, {1, {0}}, {0, {}}});
    CHECK(ancestors_bruteforce(t, 3, 0) == std::set<VertexId>{0, 1, 2});
    Transcript iso = synthetic({{5, {}}});
    CHECK(ancestors_bruteforce(iso, 1, 5) == std::set<VertexId>{5});
}

TEST_CASE("longest_all_blue_path") {
    Transcript t = synthetic({{0, {1}}, {1, {2}}});
    CHECK(longest_all_blue_path(t, 1, 2) == 2);
    CHECK(longest_all_blue_path(t, 1, 1) == 1);

    Transcript red;
    red.queries.push_back({0, {1}});
    red.labels.emplace(0, PartitionLabel::red(1));
    red.labels.emplace(1, PartitionLabel::red(2));
    CHECK(longest_all_blue_path(red, 1, 1) == 0);
}

TEST_CASE("cycle_detected") {
    Transcript fresh = synthetic({{0, {1}}, {2, {3}}});
    CHECK(!cycle_detected(fresh, 2));

    Transcript loop = synthetic({{0, {0}}});
    auto c1 = cycle_detected(loop, 1);
    REQUIRE(c1);
    CHECK(*c1 == std::vector<VertexId>{0});

    // 0 -> 1 -> 2 -> 0
    Transcript tri = synthetic({{0, {1}}, {1, {2}}, {2, {0}}});
    auto c3 = cycle_detected(tri, 3);
    REQUIRE(c3);
    CHECK(c3->size() == 3);
    CHECK(!cycle_detected(tri, 2));
}

TEST_CASE("transcript JSON roundtrip") {
    auto h = instance(24, 8, 14);
    PermOracle oracle(h, RandomStream(14).child(1));
    RandomStream strat = RandomStream(14).child(2);
    Transcript t = run_strategy(oracle, Strategy::uniform_fresh, 6, strat);
    t.seed = 14;
    t.params = h->params;

    std::string path = "transcript_roundtrip_test.json";
    write_transcript(path, t);
    Transcript back = read_transcript(path);
    std::remove(path.c_str());

    REQUIRE(back.queries.size() == t.queries.size());
    for (std::size_t i = 0; i < t.queries.size(); ++i) {
        CHECK(back.queries[i].v == t.queries[i].v);
        CHECK(back.queries[i].answer == t.queries[i].answer);
    }
    CHECK(back.labels == t.labels);
    CHECK(back.seed == t.seed);
    REQUIRE(back.params);
    CHECK(back.params->N == t.params->N);
}
