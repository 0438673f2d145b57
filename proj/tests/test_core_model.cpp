#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spinmem/core_model.hpp"

using namespace spinmem;

TEST(CoreModel, NegativeGroundDecayIsRejected)
{
    MediumParams p;
    p.gamma0 = -0.1;
    EXPECT_THROW(validate(p, Scheme::SinglePassEIT), NonPositiveParameter);
}

TEST(CoreModel, SignConstraints)
{
    auto bad = [](auto mutate) {
        MediumParams p;
        mutate(p);
        return p;
    };
    EXPECT_THROW(validate(bad([](MediumParams& p) { p.omega_rabi = 0.0; }), Scheme::SinglePassEIT), NonPositiveParameter);
    EXPECT_THROW(validate(bad([](MediumParams& p) { p.g2n = -1.0; }), Scheme::SinglePassEIT), NonPositiveParameter);
    EXPECT_THROW(validate(bad([](MediumParams& p) { p.gamma = 0.0; }), Scheme::SinglePassEIT), NonPositiveParameter);
    EXPECT_THROW(validate(bad([](MediumParams& p) { p.n_atoms = 0.5; }), Scheme::SinglePassEIT), NonPositiveParameter);
    // zero transit leaves no single-pass cooperativity
    EXPECT_THROW(validate(bad([](MediumParams& p) { p.transit = 0.0; }), Scheme::SinglePassEIT), NonPositiveParameter);
}

TEST(CoreModel, CooperativityIsProduct)
{
    MediumParams p;
    p.g2n = 1000.0;
    p.transit = 0.1;
    EXPECT_NEAR(validate(p, Scheme::SinglePassEIT).cooperativity, 100.0, 1e-12);
}

TEST(CoreModel, CooperativityLinearInCouplingAndTransit)
{
    MediumParams p;
    p.g2n = 500.0;
    p.transit = 0.02;
    const double c = cooperativity(p, Scheme::SinglePassEIT);
    p.g2n *= 2.0;
    EXPECT_NEAR(cooperativity(p, Scheme::SinglePassEIT), 2.0 * c, 1e-12);
    p.transit *= 3.0;
    EXPECT_NEAR(cooperativity(p, Scheme::SinglePassEIT), 6.0 * c, 1e-12);
}

TEST(CoreModel, CavityNeedsTransmission)
{
    MediumParams p;
    EXPECT_THROW(validate(p, Scheme::CavityEIT), MissingCavityTransmission);
    p.cavity_T = 0.1;
    p.g2n = 10.0;
    EXPECT_NEAR(validate(p, Scheme::CavityEIT).cooperativity, 100.0, 1e-12);
    p.cavity_T = 1.5;
    EXPECT_THROW(validate(p, Scheme::CavityEIT), NonPositiveParameter);
}

TEST(CoreModel, RamanNeedsDetuning)
{
    MediumParams p;
    EXPECT_THROW(validate(p, Scheme::SinglePassRaman), MissingDetuning);
    EXPECT_THROW(gamma_r(p), MissingDetuning);
    EXPECT_FALSE(validate(p, Scheme::SinglePassEIT).gamma_r.has_value());
}

TEST(CoreModel, PumpingRates)
{
    MediumParams p;
    p.omega_rabi = std::sqrt(10.0);
    EXPECT_NEAR(gamma_e(p), 10.0, 1e-12);
    p.omega_rabi = 1.0;
    p.delta1 = 10.0;
    const auto r = pumping_rates(p);
    EXPECT_NEAR(r.raman, 0.01, 1e-15);
    EXPECT_NEAR(r.eit, 1.0, 1e-15);
    p.omega_rabi = 1e-9;
    EXPECT_LT(pumping_rates(p).eit, 1e-17);
    EXPECT_LT(pumping_rates(p).raman, 1e-19);
}

TEST(CoreModel, Fig2ParametersSitOnTheRegimeBoundary)
{
    // Gamma_E/sqrt(C) = gamma exactly, so the strict upper inequality fails.
    const auto v = fixtures::fig2();
    EXPECT_FALSE(v.flags.eit_transfer);
    EXPECT_FALSE(v.warnings.empty());
    const auto inside = fixtures::eit(400.0, 10.0, 1e-3);
    EXPECT_TRUE(inside.flags.eit_transfer);
    EXPECT_TRUE(inside.warnings.empty());
}

TEST(CoreModel, RamanFlags)
{
    const auto v = fixtures::fig4();
    EXPECT_TRUE(v.flags.raman_large_detuning);
    EXPECT_TRUE(v.flags.raman_weak_pumping);
    EXPECT_TRUE(v.flags.raman_transfer); // 0.001 < 0.1 < 1
}

TEST(CoreModel, DerivedRatesScaleWithUnits)
{
    // Rescaling every rate by k and every time by 1/k: C invariant, rates scale by k.
    MediumParams p;
    p.gamma0 = 1e-3;
    p.omega_rabi = 2.0;
    p.delta1 = 15.0;
    p.g2n = 3000.0;
    p.transit = 0.02;
    const auto base = validate(p, Scheme::SinglePassRaman);
    for(double k : {0.5, 3.0, 1e3})
    {
        MediumParams q = p;
        q.gamma *= k;
        q.gamma0 *= k;
        q.omega_rabi *= k;
        q.delta1 *= k;
        q.g2n *= k * k;
        q.transit /= k;
        const auto s = validate(q, Scheme::SinglePassRaman);
        EXPECT_NEAR(s.cooperativity, base.cooperativity, 1e-9 * base.cooperativity);
        EXPECT_NEAR(s.gamma_e, k * base.gamma_e, 1e-12 * k * base.gamma_e);
        EXPECT_NEAR(*s.gamma_r, k * *base.gamma_r, 1e-12 * k * *base.gamma_r);
    }
}

TEST(CoreModel, DecibelConversion)
{
    EXPECT_NEAR(db_to_linear(3.0103), 0.5, 1e-5);
    EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
    for(double db : {-6.0, 0.0, 0.5, 3.0103, 10.0, 20.0}) EXPECT_NEAR(linear_to_db(db_to_linear(db)), db, 1e-12);
    EXPECT_NEAR(spectrum_db(0.5), -3.0103, 1e-4);
}

TEST(CoreModel, InputFieldCompanion)
{
    EXPECT_DOUBLE_EQ(InputField(0.5).phase_spectrum(), 2.0);
    EXPECT_THROW(InputField(0.0), NonPositiveParameter);
}

TEST(CoreModel, SchemeNames)
{
    for(auto s : {Scheme::SinglePassEIT, Scheme::SinglePassRaman, Scheme::CavityEIT, Scheme::CavityRaman})
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_THROW(parse_scheme("ladder"), ConfigError);
}
