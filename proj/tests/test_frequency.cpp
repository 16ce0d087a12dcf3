#include <gtest/gtest.h>

#include <random>

#include "edm_emu/dirac_core.hpp"
#include "edm_emu/frequency.hpp"
#include "oracles.hpp"

using namespace edm_emu;

namespace {

std::vector<double> sample(const std::vector<double>& times, double omega, double phase, double offset)
{
    std::vector<double> v;
    v.reserve(times.size());
    for (double t : times) {
        v.push_back(offset + std::cos(omega * t + phase));
    }
    return v;
}

} // namespace

TEST(ExtractFrequency, SyntheticCosine)
{
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> w(0.1, 20.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    for (int i = 0; i < 100; ++i) {
        const double omega = w(rng);
        const double periods = 5.0 + 10.0 * ph(rng) / (2.0 * kPi);
        const auto times = linear_grid(0.0, periods * 2.0 * kPi / omega, static_cast<std::size_t>(periods * 32) + 1);
        const auto est = extract_frequency(times, sample(times, omega, ph(rng), 0.3));
        EXPECT_NEAR(est.omega, omega, 1e-3 * omega);
        EXPECT_LT(est.uncertainty, 0.02 * omega);
        EXPECT_NEAR(est.amplitude, 1.0, 0.1);
    }
}

TEST(ExtractFrequency, ConstantSeries)
{
    const auto times = linear_grid(0.0, 10.0, 200);
    try {
        extract_frequency(times, std::vector<double>(200, 0.42));
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("no oscillation detected"), std::string::npos);
    }
}

TEST(ExtractFrequency, AnalyticPrecession)
{
    std::mt19937_64 rng(83);
    for (int i = 0; i < 20; ++i) {
        DiracParams p = oracle::random_params(rng, 1e-2, 1.0, false);
        p.mass_energy = 1.0;
        const double r = 1.0 / std::sqrt(2.0);
        const PositiveEnergySuperposition st(r, r, p);
        const double omega = precession_frequency(p);
        const auto times = linear_grid(0.0, 8.0 * 2.0 * kPi / omega, 8 * 32 + 1);
        const auto series = analytic_spin_series(st, times);
        const auto est = extract_frequency(series, "S_y");
        EXPECT_NEAR(est.omega, omega, 5e-3 * omega);
    }
}

TEST(ExtractFrequency, PreconditionsChecked)
{
    const double omega = 1.0;
    // too few periods
    const auto short_t = linear_grid(0.0, 1.5 * 2.0 * kPi, 400);
    EXPECT_THROW(extract_frequency(short_t, sample(short_t, omega, 0.0, 0.0)), NumericalError);
    // undersampled
    const auto coarse = linear_grid(0.0, 40.0 * 2.0 * kPi / omega, 400);
    EXPECT_THROW(extract_frequency(coarse, sample(coarse, omega, 0.0, 0.0)), NumericalError);
    // non-uniform grid
    std::vector<double> uneven = linear_grid(0.0, 30.0, 300);
    uneven[100] += 0.03;
    EXPECT_THROW(extract_frequency(uneven, sample(uneven, omega, 0.0, 0.0)), ValidationError);
    EXPECT_THROW(extract_frequency({0.0, 1.0}, {0.0, 1.0}), ValidationError);
}
