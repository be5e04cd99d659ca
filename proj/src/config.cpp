// SPDX-License-Identifier: Apache-2.0

#include "stdd/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stdd/errors.hpp"

namespace stdd {

using nlohmann::json;

std::string method_name(Method m)
{
    switch (m) {
        case Method::robin_robin: return "robin_robin";
        case Method::modified_robin_robin: return "modified_robin_robin";
        case Method::dirichlet_neumann: return "dirichlet_neumann";
        case Method::neumann_neumann: return "neumann_neumann";
        case Method::direct: return "direct";
    }
    return "?";
}

Method method_from_name(const std::string& name)
{
    if (name == "robin_robin") return Method::robin_robin;
    if (name == "modified_robin_robin") return Method::modified_robin_robin;
    if (name == "dirichlet_neumann") return Method::dirichlet_neumann;
    if (name == "neumann_neumann") return Method::neumann_neumann;
    if (name == "direct") return Method::direct;
    throw ParamError("iteration.method: unknown method '" + name + "'");
}

std::string guess_name(InitialGuess g)
{
    switch (g) {
        case InitialGuess::zero: return "zero";
        case InitialGuess::random: return "random";
        case InitialGuess::exact: return "exact";
    }
    return "?";
}

InitialGuess guess_from_name(const std::string& name)
{
    if (name == "zero") return InitialGuess::zero;
    if (name == "random") return InitialGuess::random;
    if (name == "exact") return InitialGuess::exact;
    throw ParamError("iteration.initial_guess: unknown kind '" + name + "'");
}

namespace {

template <class T>
T take(const json& j, const char* section, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParamError(std::string(section) + "." + key + ": wrong type");
    }
}

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok) throw ParamError(field + ": " + what);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParamError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParamError(std::string("config: invalid JSON: ") + e.what());
    }

    ExperimentConfig c;
    const json mesh = j.value("mesh", json::object());
    c.dim = take(mesh, "mesh", "dim", c.dim);
    c.lx = take(mesh, "mesh", "lx", c.lx);
    c.ly = take(mesh, "mesh", "ly", c.ly);
    c.nx = take(mesh, "mesh", "nx", c.nx);
    c.ny = take(mesh, "mesh", "ny", c.ny);
    c.alpha = take(mesh, "mesh", "alpha", c.alpha);
    require(c.dim == 1 || c.dim == 2, "mesh.dim", "must be 1 or 2");
    require(c.lx > 0 && (c.dim == 1 || c.ly > 0), "mesh.lx/ly", "must be positive");
    require(c.nx >= 3 && (c.dim == 1 || c.ny >= 3), "mesh.nx/ny", "must be at least 3");
    require(c.alpha > 0 && c.alpha < c.lx, "mesh.alpha", "must lie inside (0, lx)");

    const json time = j.value("time", json::object());
    c.n_t = take<std::size_t>(time, "time", "n_t", c.n_t);
    c.t_end = take(time, "time", "t_end", c.t_end);
    c.padding = take(time, "time", "padding", c.padding);
    require(c.t_end > 0, "time.t_end", "must be positive");
    require(c.padding >= 1, "time.padding", "must be >= 1");

    const json src = j.value("source", json::object());
    c.source_kind = take<std::string>(src, "source", "kind", c.source_kind);
    c.source_id = take<std::string>(src, "source", "id", c.source_id);
    c.amplitude = take(src, "source", "amplitude", c.amplitude);
    c.source_path = take<std::string>(src, "source", "path", c.source_path);
    require(c.source_kind == "manufactured" || c.source_kind == "file", "source.kind",
            "must be 'manufactured' or 'file'");

    const json it = j.value("iteration", json::object());
    c.iter.method = method_from_name(take<std::string>(it, "iteration", "method",
                                                       method_name(c.iter.method)));
    c.iter.s = take(it, "iteration", "s", c.iter.s);
    c.iter.phi = take(it, "iteration", "phi", c.iter.phi);
    c.iter.s0 = take(it, "iteration", "s0", c.iter.s0);
    c.iter.s1 = take(it, "iteration", "s1", c.iter.s1);
    c.iter.s2 = take(it, "iteration", "s2", c.iter.s2);
    c.iter.tol = take(it, "iteration", "tol", c.iter.tol);
    c.iter.max_iter = take(it, "iteration", "max_iter", c.iter.max_iter);
    c.iter.initial_guess = guess_from_name(take<std::string>(it, "iteration", "initial_guess",
                                                             guess_name(c.iter.initial_guess)));
    require(c.iter.tol > 0, "iteration.tol", "must be positive");
    require(c.iter.max_iter >= 1, "iteration.max_iter", "must be >= 1");

    const json sweep = j.value("sweep", json::object());
    c.sweep_s = take(sweep, "sweep", "s", c.sweep_s);
    c.sweep_phi = take(sweep, "sweep", "phi", c.sweep_phi);
    c.sweep_cells = take(sweep, "sweep", "cells", c.sweep_cells);
    c.sweep_n_t = take(sweep, "sweep", "n_t", c.sweep_n_t);

    c.out_dir = take<std::string>(j, "config", "out_dir", c.out_dir);
    c.seed = take<std::uint64_t>(j, "config", "seed", c.seed);
    c.workers = take(j, "config", "workers", c.workers);
    require(c.workers >= 1, "workers", "must be >= 1");
    c.iter.seed = c.seed;
    return c;
}

std::string ExperimentConfig::to_canonical_json() const
{
    json j;
    j["mesh"] = {{"dim", dim}, {"lx", lx}, {"ly", ly}, {"nx", nx}, {"ny", ny}, {"alpha", alpha}};
    j["time"] = {{"n_t", n_t}, {"t_end", t_end}, {"padding", padding}};
    j["source"] = {{"kind", source_kind}, {"id", source_id}, {"amplitude", amplitude},
                   {"path", source_path}};
    j["iteration"] = {{"method", method_name(iter.method)}, {"s", iter.s}, {"phi", iter.phi},
                      {"s0", iter.s0}, {"s1", iter.s1}, {"s2", iter.s2}, {"tol", iter.tol},
                      {"max_iter", iter.max_iter},
                      {"initial_guess", guess_name(iter.initial_guess)}};
    j["sweep"] = {{"s", sweep_s}, {"phi", sweep_phi}, {"cells", sweep_cells}, {"n_t", sweep_n_t}};
    // out_dir and workers are execution details, not part of the experiment
    // identity; replays into another directory must hash identically
    j["seed"] = seed;
    return j.dump();  // nlohmann objects keep keys sorted
}

std::string ExperimentConfig::hash() const
{
    // FNV-1a 64
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : to_canonical_json()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace stdd
