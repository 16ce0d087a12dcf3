#include <gtest/gtest.h>

#include <random>

#include "edm_emu/dirac_core.hpp"
#include "edm_emu/units.hpp"
#include "oracles.hpp"

using namespace edm_emu;

TEST(Units, ConversionRoundTrips)
{
    const auto& k = constants();
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = oracle::log_uniform(rng, 1e-30, 1e30);
        const double trips[] = {
            k.joule_to_ev(k.ev_to_joule(x)),
            k.cm_to_ecm(k.ecm_to_cm(x)),
            k.em_to_ecm(k.ecm_to_em(x)),
            k.v_per_m_to_mv_per_cm(k.mv_per_cm_to_v_per_m(x)),
        };
        for (double y : trips) {
            worst = std::max(worst, std::abs(y - x) / x);
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Units, NaturalRoundTrip)
{
    std::mt19937_64 rng(11);
    UnitSystem u{UnitMode::physical, 1e-19, 3e8, 1e9};
    for (int i = 0; i < 1000; ++i) {
        DiracParams p = oracle::random_params(rng, 1e-3, 1e3);
        const DiracParams back = to_physical(to_natural(p, u), u);
        EXPECT_NEAR(back.mass_energy, p.mass_energy, 1e-12 * p.mass_energy);
        EXPECT_NEAR(back.c_sim, p.c_sim, 1e-12 * p.c_sim);
        EXPECT_NEAR(back.edm, p.edm, 1e-12 * std::abs(p.edm));
        EXPECT_NEAR(back.mdm, p.mdm, 1e-12 * std::abs(p.mdm));
        EXPECT_NEAR(back.momentum[0], p.momentum[0], 1e-12 * std::abs(p.momentum[0]));
        EXPECT_NEAR(back.e_field[0], p.e_field[0], 1e-12 * std::abs(p.e_field[0]));
    }
}

TEST(Units, IdentityScale)
{
    DiracParams p;
    p.mass_energy = 1.0;
    const UnitSystem u{UnitMode::physical, 1.0, 1.0, 1.0};
    EXPECT_DOUBLE_EQ(to_natural(p, u).mass_energy, 1.0);
}

TEST(Units, CouplingScalesToOne)
{
    DiracParams p;
    p.e_field = {1.0, 0.0, 0.0};
    p.edm = 1e-19; // e m, so d E = 1e-19 eV
    const UnitSystem u{UnitMode::physical, 1e-19, 1.0, 1.0};
    EXPECT_NEAR(to_natural(p, u).edm_coupling(), 1.0, 1e-15);
}

TEST(Units, PhysicalCouplingsAreInvariantUnderScaling)
{
    // (d E), (mu / c) E and c p are energies and must scale only by energy_scale.
    DiracParams p = oracle::example_params();
    p.mdm = 0.3;
    const UnitSystem u{UnitMode::physical, 2.0, 5.0, 7.0};
    const DiracParams n = to_natural(p, u);
    EXPECT_NEAR(n.edm_coupling(), p.edm_coupling() / 2.0, 1e-15);
    EXPECT_NEAR(n.mdm_coupling(), p.mdm_coupling() / 2.0, 1e-15);
    EXPECT_NEAR(n.kinetic(), p.kinetic() / 2.0, 1e-15);
    EXPECT_NEAR(splitting_exact(n), splitting_exact(p) / 2.0, 1e-15);
}

TEST(Units, NonFiniteRejected)
{
    DiracParams p;
    p.edm = std::nan("");
    EXPECT_THROW(to_natural(p, UnitSystem{}), ValidationError);
    EXPECT_THROW(to_natural(DiracParams{}, UnitSystem{UnitMode::physical, 0.0, 1.0, 1.0}), ValidationError);
}

TEST(Units, NeutronFieldCoupling)
{
    // 1e-26 e cm in 10 MV/cm: d E = 1e-26 * 1e7 eV = 1e-19 eV, splitting 2 d E.
    const auto& k = constants();
    const double field = k.mv_per_cm_to_v_per_m(10.0);
    EXPECT_NEAR(k.ecm_to_em(1e-26) * field, 1e-19, 1e-31);
    EXPECT_NEAR(neutron_estimate(field, 1e-26).splitting_ev, 2e-19, 1e-31);
}

TEST(Units, NeutronEstimatesOrderOfMagnitude)
{
    const double field = constants().mv_per_cm_to_v_per_m(10.0);
    const auto upper = neutron_estimate(field, 1e-26);
    const auto sm = neutron_estimate(field, 1e-32);
    const auto within_decade = [](double x, double ref) { return x >= ref / 10.0 && x <= ref * 10.0; };
    EXPECT_TRUE(within_decade(upper.splitting_ev, 1e-19));
    EXPECT_TRUE(within_decade(upper.omega, 1e-4));
    EXPECT_TRUE(within_decade(sm.splitting_ev, 1e-25));
    EXPECT_TRUE(within_decade(sm.omega, 1e-10));
    EXPECT_NEAR(upper.period, 2.0 * kPi / upper.omega, 1e-12 * upper.period);
}

TEST(Units, NeutronEstimateZeroEdm)
{
    const auto est = neutron_estimate(1e9, 0.0);
    EXPECT_EQ(est.splitting_ev, 0.0);
    EXPECT_EQ(est.omega, 0.0);
    EXPECT_TRUE(est.period_infinite());
}

TEST(Units, NeutronEstimateLinear)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const double e = oracle::log_uniform(rng, 1e3, 1e10);
        const double d = oracle::log_uniform(rng, 1e-34, 1e-20);
        const auto base = neutron_estimate(e, d);
        const auto twice_e = neutron_estimate(2.0 * e, d);
        const auto twice_d = neutron_estimate(e, 2.0 * d);
        EXPECT_EQ(twice_e.splitting_ev, 2.0 * base.splitting_ev);
        EXPECT_EQ(twice_e.omega, 2.0 * base.omega);
        EXPECT_EQ(twice_d.splitting_ev, 2.0 * base.splitting_ev);
        EXPECT_EQ(twice_d.omega, 2.0 * base.omega);
    }
}

TEST(Units, NeutronEstimateRejectsBadInput)
{
    EXPECT_THROW(neutron_estimate(0.0, 1e-26), ValidationError);
    EXPECT_THROW(neutron_estimate(1e9, -1.0), ValidationError);
}
