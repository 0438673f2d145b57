#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "spinmem/atomic_spectra.hpp"
#include "spinmem/field_spectra.hpp"
#include "spinmem/grid_oracle.hpp"

using namespace spinmem;

namespace
{

// Draws parameter sets log-uniformly over the ranges where the model applies.
struct ParamGen
{
    std::mt19937_64 rng;
    explicit ParamGen(std::uint64_t seed) : rng(seed) {}

    double log_uniform(double lo, double hi)
    {
        std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
        return std::exp(u(rng));
    }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

    ValidatedParams eit()
    {
        const double g0 = uniform(0.0, 1.0) < 0.2 ? 0.0 : log_uniform(1e-5, 1e-1);
        return fixtures::eit(log_uniform(1.0, 2000.0), log_uniform(0.1, 50.0), g0, log_uniform(1e2, 1e6));
    }
    ValidatedParams raman()
    {
        const double g0 = uniform(0.0, 1.0) < 0.2 ? 0.0 : log_uniform(1e-5, 1e-2);
        return fixtures::raman(log_uniform(1.0, 2000.0), log_uniform(1e-4, 0.05), g0, log_uniform(1e2, 1e6));
    }
    ValidatedParams any() { return uniform(0.0, 1.0) < 0.5 ? eit() : raman(); }
    double omega() { return (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * log_uniform(1e-5, 1e3); }
};

double noise_width(const ValidatedParams& v)
{
    auto f = [&](double w) {
        const auto n = noise_contributions(w, v);
        return n.b_coh + n.b_spin;
    };
    const double half = 0.5 * f(0.0);
    return *first_crossing([&](double w) { return f(w) - half; }, 1e-6, 1e6);
}

} // namespace

TEST(Properties, AbsorptionIsNonNegativeAndConjugateSymmetric)
{
    ParamGen gen(1);
    for(int i = 0; i < 400; ++i)
    {
        const auto v = gen.any();
        const double w = gen.omega();
        const cplx a = alpha(w, v);
        const cplx b = alpha(-w, v);
        EXPECT_GE(a.real(), 0.0);
        EXPECT_LT(std::abs(b - std::conj(a)), 1e-12 * std::abs(a) + 1e-300);
    }
}

TEST(Properties, SpectraAreEven)
{
    ParamGen gen(2);
    for(int i = 0; i < 200; ++i)
    {
        const auto v = gen.any();
        const double w = gen.omega();
        const double s = gen.log_uniform(0.05, 3.0);
        EXPECT_EQ(s_out(w, s, v), s_out(-w, s, v));
        const double a = spin_spectrum_normalized(w, s, v);
        EXPECT_NEAR(spin_spectrum_normalized(-w, s, v), a, 1e-12 * a);
    }
}

TEST(Properties, OutputInterpolatesBetweenInputAndShotNoise)
{
    ParamGen gen(3);
    for(int i = 0; i < 300; ++i)
    {
        const auto v = gen.any();
        const double s = gen.log_uniform(0.01, 100.0);
        const double out = s_out(gen.omega(), s, v);
        EXPECT_GE(out, std::min(s, 1.0) - 1e-15);
        EXPECT_LE(out, std::max(s, 1.0) + 1e-15);
    }
}

TEST(Properties, UncertaintyProductPreserved)
{
    ParamGen gen(4);
    for(int i = 0; i < 300; ++i)
    {
        const auto v = gen.any();
        const double w = gen.omega();
        const double s = gen.log_uniform(0.01, 1.0);
        EXPECT_GE(s_out(w, s, v) * conjugate_quadrature_spectrum(w, s, v), 1.0 - 1e-12);
    }
}

TEST(Properties, SmallFrequencyExpansion)
{
    // alpha(omega) = A - i omega (L/v_g) + O(omega^2)
    ParamGen gen(5);
    for(int i = 0; i < 50; ++i)
    {
        const auto v = gen.eit();
        const auto gv = group_velocity(v);
        const double slope = gv.excess_delay + v.params.transit;
        const double a0 = absorption_zero_freq(v);
        auto residual = [&](double h) { return std::abs(alpha_eit(h, v) - (a0 - I * h * slope)); };
        const double h = 1e-4 * std::min(v.gamma_e, 1.0);
        const double ratio = residual(h) / residual(h / 2.0);
        EXPECT_NEAR(ratio, 4.0, 0.2) << "C=" << v.cooperativity << " gamma0=" << v.params.gamma0;
    }
}

TEST(Properties, DimensionalRescaling)
{
    // rates x k, times / k, g2n x k^2 leave C fixed and map omega -> k omega
    ParamGen gen(6);
    for(int i = 0; i < 10; ++i)
    {
        const auto v = gen.any();
        const double k = gen.log_uniform(0.1, 10.0);
        MediumParams q = v.params;
        q.gamma *= k;
        q.gamma0 *= k;
        q.omega_rabi *= k;
        q.delta1 *= k;
        q.g2n *= k * k;
        q.transit /= k;
        const auto s = validate(q, v.scheme);
        const double w = gen.omega();
        EXPECT_NEAR(s_out(k * w, 0.5, s), s_out(w, 0.5, v), 1e-10);
        EXPECT_NEAR(k * b_f(k * w, s), b_f(w, v), 1e-9 * b_f(w, v));
        EXPECT_NEAR(efficiency_exact(s), efficiency_exact(v), 1e-6);
    }
}

TEST(Properties, SumRuleOnRandomParameters)
{
    ParamGen gen(7);
    for(int i = 0; i < 30; ++i)
    {
        const auto v = gen.any();
        EXPECT_NEAR(sum_rule(v).value, 1.0, 1e-3)
            << to_string(v.scheme) << " C=" << v.cooperativity << " gamma0=" << v.params.gamma0;
    }
}

TEST(Properties, EfficiencyGrowsWithCooperativity)
{
    // Without ground-state decay both schemes improve monotonically with C. With
    // gamma0 > 0 only the Raman scheme does: the EIT penalty C gamma0/Gamma_E grows with C.
    double e_prev = 0.0, r_prev = 0.0, rd_prev = 0.0;
    for(double c : {2.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0})
    {
        const double e = efficiency_exact(fixtures::eit(c, 10.0, 0.0));
        const double r = efficiency_exact(fixtures::raman(c, 0.01, 0.0));
        const double rd = efficiency_exact(fixtures::raman(c, 0.01, 1e-3));
        EXPECT_GT(e, e_prev) << c;
        EXPECT_GT(r, r_prev) << c;
        EXPECT_GT(rd, rd_prev) << c;
        e_prev = e;
        r_prev = r;
        rd_prev = rd;
    }
    EXPECT_LT(efficiency_exact(fixtures::eit(1000.0, 10.0, 1e-3)), efficiency_exact(fixtures::eit(500.0, 10.0, 1e-3)));
}

TEST(Properties, EfficiencyFallsWithDecoherence)
{
    for(const auto make : {+[](double g0) { return fixtures::eit(100.0, 10.0, g0); },
                           +[](double g0) { return fixtures::raman(100.0, 0.01, g0); }})
    {
        double prev = 1.0;
        for(double g0 : {0.0, 1e-4, 1e-3, 1e-2})
        {
            const double eta = efficiency_exact(make(g0));
            EXPECT_LT(eta, prev);
            prev = eta;
        }
    }
}

TEST(Properties, NoiseWidthScaling)
{
    // EIT spin noise narrows as Gamma_E/sqrt(C); the Raman spin noise widens as sqrt(C) Gamma_R.
    const double eit_ratio = noise_width(fixtures::eit(100.0, 10.0, 0.0)) / noise_width(fixtures::eit(400.0, 10.0, 0.0));
    const double raman_ratio =
        noise_width(fixtures::raman(400.0, 0.01, 0.0)) / noise_width(fixtures::raman(100.0, 0.01, 0.0));
    EXPECT_NEAR(eit_ratio, 2.0, 0.2);
    EXPECT_NEAR(raman_ratio, 2.0, 0.2);
}

TEST(Properties, OracleAgreesOnRandomParameters)
{
    ParamGen gen(8);
    for(int i = 0; i < 6; ++i)
    {
        const auto v = gen.any();
        const double scale = spectral_quadrature(v).scale;
        const std::vector<double> grid{0.1 * scale, scale, 5.0 * scale};
        const auto r = grid_oracle_spin_spectrum(grid, v, 800, false);
        for(std::size_t k = 0; k < grid.size(); ++k)
        {
            const double a = spin_spectrum_normalized(grid[k], 0.5, v);
            EXPECT_NEAR(r.points[k].normalized(0.5), a, 1e-2 * a)
                << to_string(v.scheme) << " C=" << v.cooperativity << " omega=" << grid[k];
        }
    }
}
