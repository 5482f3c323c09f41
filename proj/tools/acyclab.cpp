// Command-line front end: instance sampling, exploration, exact feedback
// arc set, the coloring reduction, its query simulator, and the experiment
// engine.
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acyclab/core.hpp"
#include "acyclab/distance.hpp"
#include "acyclab/exploration.hpp"
#include "acyclab/harness.hpp"
#include "acyclab/instances.hpp"
#include "acyclab/reduction.hpp"

using namespace acyclab;

namespace {

struct SampleArgs {
    std::uint32_t n = 24, d = 8, limit = 1u << 20;
    std::uint64_t seed = 1;
    bool pad = false;
    std::string materialize_path, labels_path;
};

void add_sample(CLI::App& app, const std::string& name, const std::string& desc,
                std::shared_ptr<SampleArgs> args, bool perm) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->add_option("--n", args->n, "vertex count (divisible by 3)");
    cmd->add_option("--d", args->d, "outdegree bound (>= 2)");
    cmd->add_option("--seed", args->seed, "random seed");
    cmd->add_option("--materialize", args->materialize_path, "write the full graph to this file");
    cmd->add_option("--labels", args->labels_path, "write the partition labels to this file");
    cmd->add_option("--limit", args->limit, "materialization size guard");
    cmd->add_flag("--pad", args->pad,
                  "build on the largest multiple of 3 below n; leftover vertices stay isolated");
    cmd->callback([args, perm] {
        std::uint32_t n_eff = args->pad ? args->n - args->n % 3 : args->n;
        std::uint32_t n_pad = args->n - n_eff;
        Params p = derive_params(n_eff, args->d);
        RandomStream rs(args->seed);
        RandomStream ps = rs.child(0);
        auto h = std::make_shared<const HiddenInstance>(sample_partition(p, ps));
        std::unique_ptr<VertexOracle> oracle;
        if (perm)
            oracle = std::make_unique<PermOracle>(h, rs.child(1));
        else
            oracle = std::make_unique<DagOracle>(h, rs.child(1));
        if (!args->materialize_path.empty()) {
            Digraph g = materialize(*oracle, args->limit);
            g.n += n_pad;  // padded vertices are isolated
            g.adj.resize(g.n);
            write_graph_file(args->materialize_path, g);
            std::cout << "wrote " << args->materialize_path << " (n=" << g.n
                      << ", m=" << g.arc_count() << ")\n";
        } else {
            std::cout << "params: n=" << p.n << " N=" << p.N << " d=" << p.d << " d_B=" << p.d_B
                      << " d_R=" << p.d_R << " T=" << p.T << " L=" << p.L << '\n';
        }
        if (!args->labels_path.empty()) {
            std::vector<PartitionLabel> labels = h->labels;
            // padded vertices are labeled as top-layer red: the empty-answer class
            labels.resize(labels.size() + n_pad, PartitionLabel::red(p.L));
            write_labels_file(args->labels_path, labels);
            std::cout << "wrote " << args->labels_path << '\n';
        }
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden-order digraph instances, exploration and reduction toolkit"};
    app.require_subcommand(1);

    auto perm_args = std::make_shared<SampleArgs>();
    auto dag_args = std::make_shared<SampleArgs>();
    add_sample(app, "sample-perm", "sample the permutation-core distribution", perm_args, true);
    add_sample(app, "sample-dag", "sample the acyclic hidden-order distribution", dag_args, false);

    // explore
    auto ex = std::make_shared<SampleArgs>();
    auto ex_dist = std::make_shared<std::string>("perm");
    auto ex_strategy = std::make_shared<std::string>("uniform_fresh");
    auto ex_queries = std::make_shared<std::uint32_t>(10);
    auto ex_out = std::make_shared<std::string>();
    {
        auto* cmd = app.add_subcommand("explore", "run a query strategy and dump the transcript");
        cmd->add_option("--dist", *ex_dist, "perm|dag")->check(CLI::IsMember({"perm", "dag"}));
        cmd->add_option("--strategy", *ex_strategy, "bfs_frontier|uniform_fresh|restart_walk");
        cmd->add_option("--n", ex->n, "vertex count");
        cmd->add_option("--d", ex->d, "outdegree bound");
        cmd->add_option("--seed", ex->seed, "random seed");
        cmd->add_option("--queries", *ex_queries, "number of queries");
        cmd->add_option("--out", *ex_out, "transcript JSON path")->required();
        cmd->callback([=] {
            Params p = derive_params(ex->n, ex->d);
            RandomStream rs(ex->seed);
            RandomStream ps = rs.child(0);
            auto h = std::make_shared<const HiddenInstance>(sample_partition(p, ps));
            std::unique_ptr<VertexOracle> oracle;
            if (*ex_dist == "perm")
                oracle = std::make_unique<PermOracle>(h, rs.child(1));
            else
                oracle = std::make_unique<DagOracle>(h, rs.child(1));
            RandomStream strat = rs.child(2);
            Transcript t = run_strategy(*oracle, parse_strategy(*ex_strategy), *ex_queries, strat);
            t.seed = ex->seed;
            t.params = p;
            write_transcript(*ex_out, t);
            auto st = surprises(t);
            std::cout << "wrote " << *ex_out << " (" << t.queries.size() << " queries, "
                      << st.size() << " surprises)\n";
        });
    }

    // fas
    auto fas_in = std::make_shared<std::string>();
    {
        auto* cmd = app.add_subcommand("fas", "exact minimum feedback edge set of a graph file");
        cmd->add_option("input", *fas_in, "graph file")->required();
        cmd->callback([=] {
            Digraph g = read_graph_file(*fas_in);
            if (g.n <= 20) {
                FeedbackResult res = min_feedback_edges_dp(g);
                std::cout << "size " << res.size << " (" << res.method << ")\n";
                for (auto [u, v] : res.witness) std::cout << u << ' ' << v << '\n';
                return;
            }
            // larger graphs: contraction + weighted order DP (count only)
            std::cout << "size " << min_feedback_edges_contracted(g) << " (contracted)\n";
        });
    }

    // reduce
    auto rd_in = std::make_shared<std::string>();
    auto rd_out = std::make_shared<std::string>();
    auto rd_labels = std::make_shared<std::string>();
    auto rd_t = std::make_shared<std::uint32_t>(1);
    auto rd_r = std::make_shared<std::uint32_t>(0);
    auto rd_delta = std::make_shared<double>(0.1);
    auto rd_Delta = std::make_shared<std::uint32_t>(3);
    {
        auto* cmd = app.add_subcommand("reduce", "build the coloring-to-acyclicity instance");
        cmd->add_option("--input", *rd_in, "undirected edge list (n m header)")->required();
        cmd->add_option("--t", *rd_t, "edge gadget copies");
        cmd->add_option("--r", *rd_r, "color gadget copies (0 = derive from delta)");
        cmd->add_option("--delta", *rd_delta, "soundness slack in (0,1]");
        cmd->add_option("--Delta", *rd_Delta, "degree bound of the input");
        cmd->add_option("--out", *rd_out, "output graph path")->required();
        cmd->add_option("--labels", *rd_labels, "gadget-name sidecar path");
        cmd->callback([=] {
            SourceGraph h = read_source_graph(*rd_in, *rd_Delta);
            Rational delta(static_cast<long long>(*rd_delta * 1000000), 1000000);
            ReductionParams p = gap_params(*rd_Delta, delta, *rd_t);
            if (*rd_r != 0) {
                p.r = *rd_r;  // explicit override for small instances
                p.d = p.t * p.Delta + 2 * p.r;
                p.eps1 = Rational(1, 3ull * p.d * (1 + p.r));
                p.eps2 = (2 + delta / 2) /
                         Rational(6ull * p.d * (2 + 2 * p.r + p.t * p.Delta), 2);
            }
            Digraph g = reduce(h, p);
            write_graph_file(*rd_out, g);
            std::cout << "wrote " << *rd_out << " (n=" << g.n << ", m=" << g.arc_count()
                      << ", d=" << p.d << ", eps1=" << p.eps1 << ", eps2=" << p.eps2 << ")\n";
            if (!rd_labels->empty()) {
                std::ofstream out(*rd_labels);
                for (VertexId v = 0; v < g.n; ++v)
                    out << v << ' ' << gadget_decode(v, h.n, h.m(), p.t, p.r).name() << '\n';
                std::cout << "wrote " << *rd_labels << '\n';
            }
        });
    }

    // simulate
    auto sm_in = std::make_shared<std::string>();
    auto sm_t = std::make_shared<std::uint32_t>(1);
    auto sm_r = std::make_shared<std::uint32_t>(2);
    auto sm_Delta = std::make_shared<std::uint32_t>(3);
    auto sm_queries = std::make_shared<std::vector<std::uint32_t>>();
    {
        auto* cmd = app.add_subcommand("simulate",
                                       "answer reduction-graph queries from the edge oracle");
        cmd->add_option("--input", *sm_in, "undirected edge list")->required();
        cmd->add_option("--t", *sm_t, "edge gadget copies");
        cmd->add_option("--r", *sm_r, "color gadget copies");
        cmd->add_option("--Delta", *sm_Delta, "degree bound");
        cmd->add_option("--query", *sm_queries, "vertex ids to query")->required();
        cmd->callback([=] {
            SourceGraph h = read_source_graph(*sm_in, *sm_Delta);
            ReductionParams p;
            p.Delta = *sm_Delta;
            p.t = *sm_t;
            p.r = *sm_r;
            p.d = p.t * p.Delta + 2 * p.r;
            ReductionSimulator sim(h, p);
            for (std::uint32_t idx : *sm_queries) {
                auto [answer, used] = sim.simulate_query(static_cast<VertexId>(idx));
                std::cout << idx << " (" << gadget_decode(idx, h.n, h.m(), p.t, p.r).name()
                          << "):";
                for (VertexId w : answer) std::cout << ' ' << w;
                std::cout << "  [" << used << " edge-oracle probes]\n";
            }
            std::cout << "total edge-oracle probes: " << sim.total_h_queries() << '\n';
        });
    }

    // experiment
    auto xp_kind = std::make_shared<std::string>();
    auto xp_cfg = std::make_shared<std::string>();
    auto xp_csv = std::make_shared<std::string>();
    {
        auto* cmd = app.add_subcommand("experiment", "run a Monte Carlo experiment to CSV");
        cmd->add_option("--kind", *xp_kind, "surprise|cycle|htail|coupling|distinguish")
            ->required()
            ->check(CLI::IsMember({"surprise", "cycle", "htail", "coupling", "distinguish"}));
        cmd->add_option("--config", *xp_cfg, "config JSON")->required();
        cmd->add_option("--csv", *xp_csv, "output CSV")->required();
        cmd->callback([=] {
            ExperimentConfig cfg = read_experiment_config(*xp_cfg);
            ExperimentTable table = run_experiment(*xp_kind, cfg);
            write_csv(*xp_csv, table);
            std::cout << "wrote " << *xp_csv << " (" << table.rows.size() << " rows)\n";
            if (!table.assertions_ok) throw std::runtime_error("hard invariant check failed");
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
