#pragma once

// Independent check of the atomic spectra: the cloud is cut into slices, the
// local atomic response is obtained by inverting the small Heisenberg-Langevin
// matrix numerically, the probe is propagated slice to slice with exact
// exponential steps, and every slice carries its own white Langevin sources
// (piecewise constant, variance D / (N dz) in units of L). The collective spin
// is the sum over slices. Nothing here uses the closed-form spatial integrals.
// The error is second order in |alpha|/slices; optically deep clouds need
// proportionally more slices.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "spinmem/atomic_spectra.hpp"
#include "spinmem/core_model.hpp"
#include "spinmem/numerics.hpp"

namespace spinmem
{

namespace oracle
{

// Local linear model: M y = drive X + sum_k e_k f_k,
// dX/dx = i omega T X + couple . y, readout J density = readout . y.
struct LocalModel
{
    std::size_t n = 0;
    std::array<std::array<cplx, 2>, 2> m{};
    std::array<cplx, 2> drive{};
    std::array<cplx, 2> couple{};
    std::array<cplx, 2> readout{};
    struct Source
    {
        std::array<cplx, 2> entry{};
        double diffusion = 0.0;
        bool decoherence = false; // false: spontaneous emission / pumping channel
    };
    std::vector<Source> sources;
};

inline std::array<cplx, 2> solve(const LocalModel& lm, const std::array<cplx, 2>& rhs)
{
    if(lm.n == 1) return {rhs[0] / lm.m[0][0], 0.0};
    // 2x2 elimination with partial pivoting
    auto a = lm.m;
    auto b = rhs;
    if(std::abs(a[1][0]) > std::abs(a[0][0]))
    {
        std::swap(a[0], a[1]);
        std::swap(b[0], b[1]);
    }
    const cplx f = a[1][0] / a[0][0];
    a[1][1] -= f * a[0][1];
    b[1] -= f * b[0];
    const cplx y1 = b[1] / a[1][1];
    const cplx y0 = (b[0] - a[0][1] * y1) / a[0][0];
    return {y0, y1};
}

inline cplx dot(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) { return a[0] * b[0] + a[1] * b[1]; }

inline LocalModel build_model(double omega, const ValidatedParams& v)
{
    const auto& p = v.params;
    const double n_atoms = p.n_atoms;
    const cplx iw = I * omega;
    LocalModel lm;
    if(is_raman(v.scheme))
    {
        const double gr = v.raman_rate();
        const double g = std::sqrt(p.g2n / n_atoms) * p.omega_rabi / p.delta1;
        lm.n = 1;
        lm.m[0][0] = gr + p.gamma0 - iw;
        lm.drive = {g / 2.0, 0.0};
        lm.couple = {-2.0 * g * n_atoms * p.transit, 0.0};
        lm.readout = {1.0, 0.0};
        lm.sources.push_back({{1.0, 0.0}, gr / 2.0, false});
        if(p.gamma0 > 0.0) lm.sources.push_back({{1.0, 0.0}, p.gamma0 / 2.0, true});
        return lm;
    }
    // y = (sigma_y, j_x)
    const double g = std::sqrt(p.g2n / n_atoms);
    lm.n = 2;
    lm.m = {{{p.gamma - iw, -p.omega_rabi}, {p.omega_rabi, p.gamma0 - iw}}};
    lm.drive = {g / 2.0, 0.0};
    lm.couple = {-2.0 * g * n_atoms * p.transit, 0.0};
    lm.readout = {0.0, 1.0};
    lm.sources.push_back({{1.0, 0.0}, p.gamma / 2.0, false});
    if(p.gamma0 > 0.0) lm.sources.push_back({{0.0, 1.0}, p.gamma0 / 2.0, true});
    return lm;
}

inline SpinSpectrumBreakdown slice_spectrum(double omega, const ValidatedParams& v, std::size_t slices)
{
    const auto& p = v.params;
    const double n_atoms = p.n_atoms;
    const double h = 1.0 / static_cast<double>(slices);
    const auto lm = build_model(omega, v);

    // local response of the state to a unit field and the field's decay rate
    const auto y_field = solve(lm, lm.drive);
    const cplx kappa = -(I * omega * p.transit + dot(lm.couple, y_field));
    const cplx j_per_field = dot(lm.readout, y_field);
    const cplx step = std::exp(-kappa * h);
    const cplx mean_in = phi1(kappa * h);               // slice average of an entering field
    const cplx mean_gen = phi2(kappa * h); // slice average of field generated in-slice, per (s h)

    // Collective J per unit field entering slice k, accumulated from the exit.
    auto downstream = [&](std::size_t first, cplx x_enter) {
        cplx acc = 0.0;
        cplx x = x_enter;
        for(std::size_t k = first; k < slices; ++k)
        {
            acc += n_atoms * h * j_per_field * x * mean_in;
            x *= step;
        }
        return acc;
    };

    SpinSpectrumBreakdown out;
    out.omega = omega;
    const cplx a_in = downstream(0, 1.0);
    const double norm = 4.0 / n_atoms;
    out.b_f = norm * std::norm(a_in) * p.transit;

    for(const auto& src : lm.sources)
    {
        const auto y_src = solve(lm, src.entry);
        const cplx s = dot(lm.couple, y_src); // field source strength per unit f
        const cplx j_local = dot(lm.readout, y_src);
        double acc = 0.0;
        for(std::size_t k = 0; k < slices; ++k)
        {
            // own slice: direct atomic response plus the field it radiates inside the slice
            cplx a = n_atoms * h * (j_local + j_per_field * s * h * mean_gen);
            a += downstream(k + 1, s * h * phi1(kappa * h));
            acc += std::norm(a) * src.diffusion / (n_atoms * h);
        }
        (src.decoherence ? out.b_spin : out.b_coh) += norm * acc;
    }
    return out;
}

} // namespace oracle

struct OracleResult
{
    std::vector<SpinSpectrumBreakdown> points;
    double max_relative_change = 0.0; // slices vs 2*slices, total coherent-input spectrum
    bool converged = true;
    std::vector<std::string> warnings;
};

inline OracleResult grid_oracle_spin_spectrum(std::span<const double> omegas, const ValidatedParams& v,
                                              std::size_t slices = 400, bool check_convergence = true)
{
    require_single_pass(v);
    if(slices < 100) throw Error("grid oracle needs at least 100 slices, got " + std::to_string(slices));

    OracleResult r;
    r.points.resize(omegas.size());
    std::vector<double> refined(check_convergence ? omegas.size() : 0);
    parallel_for(omegas.size(), [&](std::size_t i) {
        r.points[i] = oracle::slice_spectrum(omegas[i], v, slices);
        if(check_convergence) refined[i] = oracle::slice_spectrum(omegas[i], v, 2 * slices).normalized(1.0);
    });
    if(check_convergence)
    {
        for(std::size_t i = 0; i < omegas.size(); ++i)
        {
            const double base = r.points[i].normalized(1.0);
            const double change = std::abs(refined[i] - base) / std::max(std::abs(refined[i]), 1e-300);
            r.max_relative_change = std::max(r.max_relative_change, change);
        }
        r.converged = r.max_relative_change <= 5e-3;
        if(!r.converged)
            r.warnings.push_back("oracle not converged: doubling slices changed the spectrum by " +
                                 std::to_string(100.0 * r.max_relative_change) + "%");
    }
    return r;
}

} // namespace spinmem
