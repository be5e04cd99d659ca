// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: expands the sweep axes into points, runs each point,
// and writes one per-iteration CSV per point plus a single summary.csv.
// Exit status: 0 when every point converged, 2 when any point hit max_iter
// without reaching the tolerance (errors surface as exceptions).
#pragma once

#include <string>
#include <vector>

#include "stdd/config.hpp"

namespace stdd {

struct RunSummary {
    std::string config_hash;
    std::string out_dir;
    std::vector<std::string> files;  // every emitted file, summary.csv first
    int exit_status = 0;
    int n_points = 0;
    double seconds_total = 0.0;
};

RunSummary run_experiment(const ExperimentConfig& cfg);

// Writes nodes.csv / source.csv / exact.csv for a manufactured problem.
std::vector<std::string> emit_manufactured(const ExperimentConfig& cfg, const std::string& id,
                                           const std::string& dir);

// Wide-format field CSV used by both emit and the file source kind.
void write_field_csv(const std::string& path, const SpaceTimeField& field, const TimeGrid& grid);
SpaceTimeField read_field_csv(const std::string& path, const TimeGrid& grid, std::size_t cols);

}  // namespace stdd
