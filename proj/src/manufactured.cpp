// SPDX-License-Identifier: Apache-2.0

#include "stdd/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "stdd/errors.hpp"
#include "stdd/fractime.hpp"

namespace stdd {

namespace {

std::vector<double> sine_profile(const SpaceMesh& mesh, double& lambda)
{
    constexpr double pi = std::numbers::pi;
    std::vector<double> x(mesh.n_free());
    if (mesh.dim == 1) {
        lambda = pi * pi / (mesh.lx * mesh.lx);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = std::sin(pi * mesh.node_x[i] / mesh.lx);
    } else {
        lambda = pi * pi / (mesh.lx * mesh.lx) + pi * pi / (mesh.ly * mesh.ly);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = std::sin(pi * mesh.node_x[i] / mesh.lx)
                   * std::sin(pi * mesh.node_y[i] / mesh.ly);
    }
    return x;
}

TimeSignal bump_window(const TimeGrid& grid, double t0, double t1)
{
    if (t0 <= 0.0) t0 = grid.period() / 8.0;
    if (t1 <= 0.0) t1 = grid.period() / 2.0;
    TimeSignal w(grid);
    for (std::size_t j = 0; j < grid.n_t; ++j) {
        const double tau = (2.0 * grid.time(j) - (t0 + t1)) / (t1 - t0);
        w.values[j] = std::abs(tau) < 1.0 ? std::exp(-1.0 / (1.0 - tau * tau)) : 0.0;
    }
    return w;
}

}  // namespace

bool manufactured_id_known(const std::string& id)
{
    return id == "zero" || id == "eigen" || id == "bump-sine";
}

ManufacturedCase manufactured_case(const SpaceMesh& mesh, const TimeGrid& grid,
                                   const std::string& id, double amplitude, double t_lo,
                                   double t_hi)
{
    ManufacturedCase out;
    out.f = SpaceTimeField(grid, mesh.n_free());
    out.u_exact = SpaceTimeField(grid, mesh.n_free());
    if (id == "zero") return out;

    double lambda = 0.0;
    const std::vector<double> profile = sine_profile(mesh, lambda);

    if (id == "eigen") {
        // f = d/dt u - Laplacian u = lambda * u for the time-constant sine
        for (std::size_t t = 0; t < grid.n_t; ++t)
            for (std::size_t i = 0; i < profile.size(); ++i) {
                out.u_exact.at(t, i) = amplitude * profile[i];
                out.f.at(t, i) = amplitude * lambda * profile[i];
            }
        return out;
    }
    if (id == "bump-sine") {
        const TimeSignal w = bump_window(grid, t_lo, t_hi);
        const TimeSignal wdot = spectral_derivative(w);
        for (std::size_t t = 0; t < grid.n_t; ++t) {
            const double tw = amplitude * w.values[t];
            const double tf = amplitude * (wdot.values[t] + lambda * w.values[t]);
            for (std::size_t i = 0; i < profile.size(); ++i) {
                out.u_exact.at(t, i) = tw * profile[i];
                out.f.at(t, i) = tf * profile[i];
            }
        }
        return out;
    }
    throw ParamError("manufactured: unknown id '" + id + "'");
}

}  // namespace stdd
