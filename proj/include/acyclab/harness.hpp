#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acyclab/core.hpp"
#include "acyclab/exploration.hpp"
#include "acyclab/instances.hpp"

namespace acyclab {

struct ExperimentConfig {
    std::string distribution = "perm";  // perm | dag | coupled
    std::vector<std::uint32_t> n_grid;
    std::uint32_t d = 8;
    std::vector<std::uint32_t> q_grid;
    std::uint32_t trials = 100;
    Strategy strategy = Strategy::uniform_fresh;
    std::uint64_t seed = 1;
    std::string statistic = "cycle_found";  // exp_distinguish only
    std::uint32_t threads = 0;              // 0 = hardware default
};

ExperimentConfig read_experiment_config(const std::string& path);

// Flat CSV table: fixed column names, one row per (n, Q) cell.
struct ExperimentTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    bool assertions_ok = true;  // hard invariant checks (closure spot checks,
                                // identical-prefix) observed during the run
};

void write_csv(const std::string& path, const ExperimentTable& table);

// Mean surprise count and fraction of runs with at least one surprise per
// (n, Q) cell. Q cells are prefixes of one transcript per trial (paired).
ExperimentTable exp_surprise_curve(const ExperimentConfig& cfg);

// Fraction of transcripts whose revealed graph contains a directed cycle.
ExperimentTable exp_cycle_probe(const ExperimentConfig& cfg);

// Closure step counts H at query time for every queried blue vertex;
// quantiles per cell, with periodic equality spot checks against the
// reverse-DFS certifier.
ExperimentTable exp_h_tail(const ExperimentConfig& cfg);

// Coupled runs: fraction with fully identical transcripts and fraction with
// any anomaly flag; asserts the identical-until-first-flag invariant.
ExperimentTable exp_coupling(const ExperimentConfig& cfg);

// |P_dag[statistic fires] - P_perm[statistic fires]| with stderr, per cell.
// statistics: cycle_found (a cycle is revealed), surprise_count_threshold
// (at least one surprise).
ExperimentTable exp_distinguish(const ExperimentConfig& cfg);

ExperimentTable run_experiment(const std::string& kind, const ExperimentConfig& cfg);

}  // namespace acyclab
