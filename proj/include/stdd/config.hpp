// SPDX-License-Identifier: Apache-2.0
//
// JSON experiment configuration: one human-readable file drives mesh, time
// window, source, iteration parameters, and sweep axes. Invalid fields are
// reported by name. The config hash (FNV-1a over the canonical effective
// JSON) is stable across replays.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stdd/iterations.hpp"

namespace stdd {

struct ExperimentConfig {
    // mesh
    int dim = 2;
    double lx = 1.0, ly = 1.0;
    int nx = 16, ny = 16;
    double alpha = 0.5;
    // time window (padding extends the periodic window with zeros)
    std::size_t n_t = 64;
    double t_end = 8.0;
    int padding = 2;
    // source
    std::string source_kind = "manufactured";  // manufactured | file
    std::string source_id = "bump-sine";
    double amplitude = 1.0;
    std::string source_path;
    // iteration
    IterationConfig iter;
    // sweep axes; empty means "single point from the scalar above"
    std::vector<double> sweep_s, sweep_phi;
    std::vector<int> sweep_cells;
    std::vector<std::size_t> sweep_n_t;
    // output
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int workers = 1;

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);

    std::string to_canonical_json() const;  // effective config, sorted keys
    std::string hash() const;               // 16-hex-digit FNV-1a 64
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);
std::string guess_name(InitialGuess g);
InitialGuess guess_from_name(const std::string& name);

}  // namespace stdd
