#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "spinmem/grid_oracle.hpp"

using namespace spinmem;

namespace
{
std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> g;
    for(int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
    return g;
}
} // namespace

TEST(GridOracle, MatchesAnalyticSpectrum)
{
    const auto grid = log_grid(1e-3, 10.0, 12);
    for(const auto& v : {fixtures::fig2(), fixtures::fig4(), fixtures::eit(20.0, 1.0, 0.05), fixtures::raman(60.0, 0.003, 0.0)})
    {
        const auto r = grid_oracle_spin_spectrum(grid, v, 400);
        EXPECT_TRUE(r.converged) << r.max_relative_change;
        for(std::size_t i = 0; i < grid.size(); ++i)
        {
            const auto a = spin_breakdown(grid[i], v);
            const auto& o = r.points[i];
            EXPECT_NEAR(o.normalized(0.5), a.normalized(0.5), 1e-2 * a.normalized(0.5)) << "omega=" << grid[i];
            EXPECT_NEAR(o.b_f, a.b_f, 1e-2 * a.normalized(1.0));
            EXPECT_NEAR(o.b_coh, a.b_coh, 1e-2 * a.normalized(1.0));
            EXPECT_NEAR(o.b_spin, a.b_spin, 1e-2 * a.normalized(1.0));
        }
    }
}

TEST(GridOracle, ConvergesAtLeastFirstOrder)
{
    const auto v = fixtures::fig2();
    for(double w : {0.3, 1.0, 3.0})
    {
        const double s1 = oracle::slice_spectrum(w, v, 100).normalized(1.0);
        const double s2 = oracle::slice_spectrum(w, v, 200).normalized(1.0);
        const double s3 = oracle::slice_spectrum(w, v, 400).normalized(1.0);
        const double rate = std::log2(std::abs(s2 - s1) / std::abs(s3 - s2));
        EXPECT_GE(rate, 0.9) << "omega=" << w;
    }
}

TEST(GridOracle, DecoupledSpinIsBareAtomSpectrum)
{
    // g -> 0: no field feedback, the spin shows the bare three-level noise;
    // with Omega -> 0 as well it is the decoherence Lorentzian of width gamma0.
    MediumParams p;
    p.g2n = 1e-10;
    p.transit = 1e-2;
    p.gamma0 = 0.02;
    p.omega_rabi = 1e-4;
    const auto v = validate(p, Scheme::SinglePassEIT);
    const std::vector<double> grid{0.0, 0.01, 0.02, 0.1};
    const auto r = grid_oracle_spin_spectrum(grid, v, 100, false);
    for(std::size_t i = 0; i < grid.size(); ++i)
    {
        const double w = grid[i];
        const double lorentz = 2.0 * p.gamma0 / (p.gamma0 * p.gamma0 + w * w);
        EXPECT_NEAR(r.points[i].normalized(0.5), lorentz, 1e-3 * lorentz);
        EXPECT_LT(r.points[i].b_f, 1e-9);
    }
}

TEST(GridOracle, CoherentInputIntegratesToOne)
{
    for(const auto& v : {fixtures::fig2(), fixtures::fig4()})
    {
        auto opt = spectral_quadrature(v);
        opt.rel_tol = 1e-5;
        const auto r = integrate_infinite([&](double w) { return oracle::slice_spectrum(w, v, 200).normalized(1.0); }, opt);
        EXPECT_NEAR(r.value, 1.0, 1e-2);
    }
}

TEST(GridOracle, RejectsCoarseGridAndCavity)
{
    const std::vector<double> grid{0.1};
    EXPECT_THROW(grid_oracle_spin_spectrum(grid, fixtures::fig2(), 50), Error);
    EXPECT_THROW(grid_oracle_spin_spectrum(grid, fixtures::cavity(Scheme::CavityRaman, 10.0, 0.01, 0.0)), UnsupportedScheme);
}

TEST(GridOracle, FlagsUnconvergedSpectrum)
{
    // optical depth 300 leaves 0.75 e-folds per slice at 400 slices
    const std::vector<double> grid{1e-3};
    const auto r = grid_oracle_spin_spectrum(grid, fixtures::raman(300.0, 0.003, 0.0), 400);
    EXPECT_FALSE(r.converged);
    EXPECT_FALSE(r.warnings.empty());
}
