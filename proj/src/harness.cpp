#include "acyclab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace acyclab {

using nlohmann::json;

ExperimentConfig read_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j = json::parse(in);
    ExperimentConfig cfg;
    cfg.distribution = j.value("distribution", cfg.distribution);
    cfg.n_grid = j.at("n_grid").get<std::vector<std::uint32_t>>();
    cfg.d = j.value("d", cfg.d);
    cfg.q_grid = j.at("q_grid").get<std::vector<std::uint32_t>>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.strategy = parse_strategy(j.value("strategy", std::string("uniform_fresh")));
    cfg.seed = j.value("seed", cfg.seed);
    cfg.statistic = j.value("statistic", cfg.statistic);
    cfg.threads = j.value("threads", cfg.threads);
    if (cfg.n_grid.empty() || cfg.q_grid.empty() || cfg.trials < 1)
        throw std::invalid_argument("experiment config: empty grid or no trials");
    return cfg;
}

void write_csv(const std::string& path, const ExperimentTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    out.precision(12);
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

namespace {

void parallel_for(std::uint32_t count, std::uint32_t threads, const std::function<void(std::uint32_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::uint32_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    for (std::uint32_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::uint32_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

std::shared_ptr<const HiddenInstance> trial_partition(std::uint32_t n, std::uint32_t d,
                                                      RandomStream& trial_stream) {
    Params p = derive_params(n, d);
    RandomStream ps = trial_stream.child(0);
    return std::make_shared<const HiddenInstance>(sample_partition(p, ps));
}

std::unique_ptr<VertexOracle> make_oracle(const std::string& dist,
                                          std::shared_ptr<const HiddenInstance> h,
                                          RandomStream stream) {
    if (dist == "perm") return std::make_unique<PermOracle>(std::move(h), std::move(stream));
    if (dist == "dag") return std::make_unique<DagOracle>(std::move(h), std::move(stream));
    throw std::invalid_argument("unknown distribution: " + dist);
}

// one transcript per trial, shared across Q cells (paired prefixes)
Transcript trial_transcript(const ExperimentConfig& cfg, const std::string& dist, std::uint32_t n,
                            std::uint32_t q_max, std::uint32_t n_idx, std::uint32_t trial) {
    RandomStream rs(cfg.seed, {n_idx, trial});
    auto h = trial_partition(n, cfg.d, rs);
    auto oracle = make_oracle(dist, h, rs.child(1));
    RandomStream strat = rs.child(2);
    Transcript t = run_strategy(*oracle, cfg.strategy, q_max, strat);
    t.seed = cfg.seed;
    t.params = h->params;
    return t;
}

double mean(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return xs.empty() ? 0 : s / xs.size();
}

double stderr_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0;
    double m = mean(xs), s2 = 0;
    for (double x : xs) s2 += (x - m) * (x - m);
    return std::sqrt(s2 / (xs.size() - 1) / xs.size());
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) return 0;
    std::sort(xs.begin(), xs.end());
    std::size_t idx = static_cast<std::size_t>(q * (xs.size() - 1) + 0.5);
    return xs[std::min(idx, xs.size() - 1)];
}

// Presents the perm side of a coupled run as a plain oracle so the standard
// strategies can drive it.
class CoupledPermView final : public VertexOracle {
public:
    explicit CoupledPermView(CoupledRun& run) : run_(run) {}
    std::uint32_t n() const override { return run_.n(); }
    PartitionLabel label(VertexId v) const override { return run_.label(v); }
    const std::vector<VertexId>& query(VertexId v) override {
        auto it = answers_.find(v);
        if (it != answers_.end()) return it->second;
        CoupledAnswer a = run_.coupled_query(v);
        return answers_.emplace(v, std::move(a.perm)).first->second;
    }

private:
    CoupledRun& run_;
    std::unordered_map<VertexId, std::vector<VertexId>> answers_;
};

}  // namespace

ExperimentTable exp_surprise_curve(const ExperimentConfig& cfg) {
    ExperimentTable table;
    table.columns = {"n", "Q", "mean_surprises", "stderr_mean", "frac_ge1"};
    const std::uint32_t q_max = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
    for (std::uint32_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const std::uint32_t n = cfg.n_grid[ni];
        std::vector<std::vector<std::uint32_t>> surprise_times(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint32_t trial) {
            Transcript t = trial_transcript(cfg, cfg.distribution, n, q_max, ni, trial);
            surprise_times[trial] = surprises(t);
        });
        for (std::uint32_t Q : cfg.q_grid) {
            std::vector<double> counts;
            double ge1 = 0;
            for (const auto& st : surprise_times) {
                double c = static_cast<double>(
                    std::upper_bound(st.begin(), st.end(), Q) - st.begin());
                counts.push_back(c);
                if (c > 0) ge1 += 1;
            }
            table.rows.push_back({double(n), double(Q), mean(counts), stderr_of(counts),
                                  ge1 / cfg.trials});
        }
    }
    return table;
}

ExperimentTable exp_cycle_probe(const ExperimentConfig& cfg) {
    ExperimentTable table;
    table.columns = {"n", "Q", "frac_cycle", "stderr"};
    const std::uint32_t q_max = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
    for (std::uint32_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const std::uint32_t n = cfg.n_grid[ni];
        // first prefix length at which a cycle is visible (monotone event)
        std::vector<std::uint32_t> first_cycle(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint32_t trial) {
            Transcript t = trial_transcript(cfg, cfg.distribution, n, q_max, ni, trial);
            std::uint32_t first = q_max + 1;
            for (std::uint32_t Q : cfg.q_grid)
                if (Q <= t.queries.size() && cycle_detected(t, Q)) {
                    first = Q;
                    break;
                }
            first_cycle[trial] = first;
        });
        for (std::uint32_t Q : cfg.q_grid) {
            std::vector<double> hit;
            for (std::uint32_t f : first_cycle) hit.push_back(f <= Q ? 1.0 : 0.0);
            table.rows.push_back({double(n), double(Q), mean(hit), stderr_of(hit)});
        }
    }
    return table;
}

ExperimentTable exp_h_tail(const ExperimentConfig& cfg) {
    ExperimentTable table;
    table.columns = {"n", "Q", "count", "h_p50", "h_p90", "h_p99", "h_max"};
    std::atomic<bool> ok{true};
    const std::uint32_t q_max = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
    for (std::uint32_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const std::uint32_t n = cfg.n_grid[ni];
        std::vector<std::vector<std::pair<std::uint32_t, double>>> hs(cfg.trials);  // (q, H)
        parallel_for(cfg.trials, cfg.threads, [&](std::uint32_t trial) {
            Transcript t = trial_transcript(cfg, cfg.distribution, n, q_max, ni, trial);
            std::uint32_t checks = 0;
            for (std::uint32_t q = 1; q <= t.queries.size(); ++q) {
                VertexId u = t.queries[q - 1].v;
                if (!t.is_blue(u)) continue;
                ClosureResult res = closure(t, q, u);
                hs[trial].emplace_back(q, double(res.H));
                // spot check against the reverse-DFS certifier
                if (checks < 2 && res.H > 0) {
                    ++checks;
                    if (res.A != ancestors_bruteforce(t, q, u)) ok = false;
                }
            }
        });
        for (std::uint32_t Q : cfg.q_grid) {
            std::vector<double> vals;
            for (const auto& trial_hs : hs)
                for (auto [q, h] : trial_hs)
                    if (q <= Q) vals.push_back(h);
            table.rows.push_back({double(n), double(Q), double(vals.size()),
                                  quantile(vals, 0.50), quantile(vals, 0.90),
                                  quantile(vals, 0.99),
                                  vals.empty() ? 0 : *std::max_element(vals.begin(), vals.end())});
        }
    }
    table.assertions_ok = ok;
    return table;
}

ExperimentTable exp_coupling(const ExperimentConfig& cfg) {
    ExperimentTable table;
    table.columns = {"n", "Q", "frac_identical", "frac_anomaly"};
    std::atomic<bool> ok{true};
    const std::uint32_t q_max = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
    for (std::uint32_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const std::uint32_t n = cfg.n_grid[ni];
        // 1-based query index of first differing answer / first anomaly
        std::vector<std::uint32_t> first_diff(cfg.trials), first_anom(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint32_t trial) {
            RandomStream rs(cfg.seed, {ni, trial});
            auto h = trial_partition(n, cfg.d, rs);
            CoupledRun run(h, rs.child(1));
            CoupledPermView view(run);
            RandomStream strat = rs.child(2);
            Transcript t = run_strategy(view, cfg.strategy, q_max, strat);

            std::uint32_t diff = q_max + 1, anom = q_max + 1;
            bool flagged = false;
            for (std::uint32_t q = 1; q <= t.queries.size(); ++q) {
                const CoupledAnswer& a = run.coupled_query(t.queries[q - 1].v);  // cached
                if (a.flags.anomaly() && anom > q_max) anom = q;
                if (a.perm != a.dag && diff > q_max) diff = q;
                // identical strictly before the first flagged query (hard
                // invariant); divergence may start at the flagged query itself
                if (a.flags.any()) flagged = true;
                if (!flagged && a.perm != a.dag) ok = false;
            }
            first_diff[trial] = diff;
            first_anom[trial] = anom;
        });
        for (std::uint32_t Q : cfg.q_grid) {
            double ident = 0, anom = 0;
            for (std::uint32_t i = 0; i < cfg.trials; ++i) {
                if (first_diff[i] > Q) ident += 1;
                if (first_anom[i] <= Q) anom += 1;
            }
            table.rows.push_back({double(n), double(Q), ident / cfg.trials, anom / cfg.trials});
        }
    }
    table.assertions_ok = ok;
    return table;
}

ExperimentTable exp_distinguish(const ExperimentConfig& cfg) {
    if (cfg.statistic != "cycle_found" && cfg.statistic != "surprise_count_threshold")
        throw std::invalid_argument("exp_distinguish: unknown statistic " + cfg.statistic);
    ExperimentTable table;
    table.columns = {"n", "Q", "p_perm", "p_dag", "gap", "stderr"};
    const std::uint32_t q_max = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
    for (std::uint32_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const std::uint32_t n = cfg.n_grid[ni];
        // per trial and side: first prefix length at which the statistic fires
        std::vector<std::array<std::uint32_t, 2>> first(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint32_t trial) {
            const char* dists[2] = {"perm", "dag"};
            for (int side = 0; side < 2; ++side) {
                Transcript t = trial_transcript(cfg, dists[side], n, q_max, ni, trial);
                std::uint32_t f = q_max + 1;
                if (cfg.statistic == "surprise_count_threshold") {
                    auto st = surprises(t);
                    if (!st.empty()) f = st.front();
                } else {
                    for (std::uint32_t Q : cfg.q_grid)
                        if (Q <= t.queries.size() && cycle_detected(t, Q)) {
                            f = Q;
                            break;
                        }
                }
                first[trial][side] = f;
            }
        });
        for (std::uint32_t Q : cfg.q_grid) {
            double p[2] = {0, 0};
            for (const auto& f : first)
                for (int side = 0; side < 2; ++side)
                    if (f[side] <= Q) p[side] += 1;
            p[0] /= cfg.trials;
            p[1] /= cfg.trials;
            double se = std::sqrt((p[0] * (1 - p[0]) + p[1] * (1 - p[1])) / cfg.trials);
            table.rows.push_back({double(n), double(Q), p[0], p[1], std::abs(p[1] - p[0]), se});
        }
    }
    return table;
}

ExperimentTable run_experiment(const std::string& kind, const ExperimentConfig& cfg) {
    if (kind == "surprise") return exp_surprise_curve(cfg);
    if (kind == "cycle") return exp_cycle_probe(cfg);
    if (kind == "htail") return exp_h_tail(cfg);
    if (kind == "coupling") return exp_coupling(cfg);
    if (kind == "distinguish") return exp_distinguish(cfg);
    throw std::invalid_argument("unknown experiment kind: " + kind);
}

}  // namespace acyclab
