#pragma once

// Closed-form physics of the 1D extended Dirac Hamiltonian
//
//   H = c alpha_x p_x + beta m c^2 + 2 d_a beta S_x E_x + i (mu_a / c) beta alpha_x E_x
//
// in natural units (hbar = 1).

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dirac_matrices.hpp"
#include "dirac_params.hpp"
#include "linalg.hpp"
#include "time_series.hpp"

namespace edm_emu {

struct Spectrum {
    double e_plus_up = 0.0;
    double e_plus_down = 0.0;
    double e_minus_up = 0.0;
    double e_minus_down = 0.0;
    double splitting = 0.0;

    /// Ascending order, matching the numeric diagonalizer when d_a E_x >= 0.
    [[nodiscard]] std::array<double, 4> sorted() const
    {
        std::array<double, 4> e{e_minus_up, e_minus_down, e_plus_down, e_plus_up};
        std::sort(e.begin(), e.end());
        return e;
    }
};

inline Spectrum free_energies(const DiracParams& p)
{
    validate(p);
    if (p.e_field != Vec3{0.0, 0.0, 0.0}) {
        throw ValidationError("free_energies: e_field must be zero");
    }
    const double cp = p.c_sim * std::hypot(p.momentum[0], p.momentum[1], p.momentum[2]);
    const double e = std::hypot(cp, p.mass_energy);
    return {e, e, -e, -e, 0.0};
}

namespace detail {

// sqrt(x^2 + y^2 + z^2) without intermediate overflow
inline double norm3(double x, double y, double z) { return std::hypot(x, y, z); }

// E_+^up - E_+^down written as 4 m c^2 d_a E_x / (E_+^up + E_+^down), which is
// algebraically identical to the difference of square roots and avoids the
// cancellation when the splitting is many orders below m c^2.
inline double stable_splitting(double mass, double edm_e, double e_up, double e_down)
{
    const double sum = e_up + e_down;
    if (sum == 0.0) {
        return 0.0;
    }
    return 4.0 * mass * edm_e / sum;
}

} // namespace detail

inline Spectrum edm_spectrum(const DiracParams& p)
{
    validate_1d(p);
    const double cp = p.kinetic();
    const double mdm_e = p.mdm_coupling();
    const double up = detail::norm3(cp, mdm_e, p.mass_energy + p.edm_coupling());
    const double down = detail::norm3(cp, mdm_e, p.mass_energy - p.edm_coupling());
    return {up, down, -up, -down, detail::stable_splitting(p.mass_energy, p.edm_coupling(), up, down)};
}

inline double splitting_exact(const DiracParams& p) { return edm_spectrum(p).splitting; }

/// Second-order expansion 2 E_x d_a - ((mu_a E_x)^2 / c^2) d_a E_x / (m c^2)^2.
/// Valid when both d_a E_x and (mu_a / c) E_x are small against m c^2; the
/// ratio threshold guards that.
inline double splitting_taylor(const DiracParams& p, double ratio_threshold = 1e-2)
{
    validate_1d(p);
    if (!(p.mass_energy > 0.0)) {
        throw DomainError("splitting_taylor: requires mass_energy > 0");
    }
    const double mass = p.mass_energy;
    const double edm_e = p.edm_coupling();
    const double mdm_e = p.mdm_coupling();
    const double edm_ratio = std::abs(edm_e) / mass;
    const double mdm_ratio = std::abs(mdm_e) / mass;
    if (edm_ratio > ratio_threshold) {
        throw DomainError("splitting_taylor: ratio d_a*E_x/mc^2 = " + std::to_string(edm_ratio) +
                          " exceeds threshold " + std::to_string(ratio_threshold));
    }
    if (mdm_ratio > ratio_threshold) {
        throw DomainError("splitting_taylor: ratio (mu_a/c)*E_x/mc^2 = " + std::to_string(mdm_ratio) +
                          " exceeds threshold " + std::to_string(ratio_threshold));
    }
    return 2.0 * edm_e - mdm_e * mdm_e / (mass * mass) * edm_e;
}

/// lambda = ((mu_a / c) E_x / m c^2)^2, the size of the MDM reduction of the splitting.
inline double lambda_ratio(const DiracParams& p)
{
    validate(p);
    if (!(p.mass_energy > 0.0)) {
        throw DomainError("lambda_ratio: requires mass_energy > 0");
    }
    const double r = p.mdm_coupling() / p.mass_energy;
    return r * r;
}

enum class Branch { plus_up, plus_down, minus_up, minus_down };

inline const char* to_string(Branch b)
{
    switch (b) {
    case Branch::plus_up: return "+up";
    case Branch::plus_down: return "+down";
    case Branch::minus_up: return "-up";
    case Branch::minus_down: return "-down";
    }
    return "?";
}

struct EigenPair {
    Branch branch;
    Spinor4 spinor;
    double energy;
};

namespace detail {

// Root v of v^2 - 2 w v - 1 = 0 whose eigenvalue c p (v - w) has the sign
// `energy_sign`. The two roots are w +/- sqrt(1 + w^2) with product -1, so the
// small one is taken as -1/large to keep full relative precision.
inline double spinor_root(double w, double cp, double energy_sign)
{
    const double r = std::hypot(1.0, w);
    const double dir = energy_sign * (cp > 0.0 ? 1.0 : -1.0);
    const double wsign = w >= 0.0 ? 1.0 : -1.0;
    if (dir == wsign) {
        return w + dir * r;
    }
    return -1.0 / (w + wsign * r);
}

} // namespace detail

/// Closed-form eigenspinors for mu_a = 0, ordered (+up, +down, -up, -down):
///
///   |+-up>   = (v, v, 1, 1) / N,    w_up   = (mc^2 + E_x d_a) / (c p_x)
///   |+-down> = (v, -v, -1, 1) / N,  w_down = (mc^2 - E_x d_a) / (c p_x)
///
/// with v = w +- sqrt(1 + w^2) and N = sqrt(2 + 2|v|^2). For c p_x < 0 the
/// root that carries the positive energy is w - sqrt(1 + w^2); the branch is
/// chosen by energy sign so the labels hold for either direction of motion.
inline std::array<EigenPair, 4> eigenspinors(const DiracParams& p)
{
    validate_1d(p);
    if (p.mdm != 0.0) {
        throw DomainError("eigenspinors: closed forms require mu_a = 0; use dirac_numeric::diagonalize");
    }
    const double cp = p.kinetic();
    if (cp == 0.0) {
        throw DomainError("eigenspinors: p_x = 0 makes w diverge; use dirac_numeric::diagonalize");
    }
    const Spectrum s = edm_spectrum(p);
    const double w_up = (p.mass_energy + p.edm_coupling()) / cp;
    const double w_down = (p.mass_energy - p.edm_coupling()) / cp;

    const auto up = [&](double sign) {
        const double v = detail::spinor_root(w_up, cp, sign);
        return Spinor4(v, v, 1.0, 1.0).normalize();
    };
    const auto down = [&](double sign) {
        const double v = detail::spinor_root(w_down, cp, sign);
        return Spinor4(v, -v, -1.0, 1.0).normalize();
    };
    return {{
        {Branch::plus_up, up(+1.0), s.e_plus_up},
        {Branch::plus_down, down(+1.0), s.e_plus_down},
        {Branch::minus_up, up(-1.0), s.e_minus_up},
        {Branch::minus_down, down(-1.0), s.e_minus_down},
    }};
}

/// <S_x>, <S_y>, <S_z> with S_j = diag(sigma_j, sigma_j) / 2.
inline Vec3 spin_expectation(const Spinor4& s)
{
    if (!s.is_normalized(1e-10)) {
        throw ValidationError("spin_expectation: spinor is not normalized (norm = " + std::to_string(s.norm()) + ")");
    }
    const auto& m = DiracMatrixSet::standard();
    Vec3 out{};
    for (int j = 0; j < 3; ++j) {
        out[j] = s.vec().dot(m.spin[j] * s.vec()).real();
    }
    return out;
}

/// omega = (E_+^up - E_+^down) / hbar.
inline double precession_frequency(const DiracParams& p) { return splitting_exact(p); }

/// b_up |+up> + b_down |+down> at fixed momentum.
class PositiveEnergySuperposition {
public:
    PositiveEnergySuperposition(cplx b_up, cplx b_down, DiracParams params)
        : b_up_(b_up), b_down_(b_down), params_(params)
    {
        const double n = std::norm(b_up) + std::norm(b_down);
        if (std::abs(n - 1.0) > 1e-12) {
            throw ValidationError("PositiveEnergySuperposition: |b_up|^2 + |b_down|^2 = " + std::to_string(n) +
                                  ", expected 1");
        }
    }

    [[nodiscard]] cplx b_up() const { return b_up_; }
    [[nodiscard]] cplx b_down() const { return b_down_; }
    [[nodiscard]] const DiracParams& params() const { return params_; }

    [[nodiscard]] Spinor4 initial_spinor() const
    {
        const auto pairs = eigenspinors(params_);
        return Spinor4(b_up_ * pairs[0].spinor.vec() + b_down_ * pairs[1].spinor.vec());
    }

private:
    cplx b_up_;
    cplx b_down_;
    DiracParams params_;
};

struct AnalyticState {
    Spinor4 spinor;
    Vec3 spin;
};

/// Three-term spin precession formula:
///
///   <S_j>(t) = |b_up|^2 <up+|S_j|+up> + |b_down|^2 <down+|S_j|+down>
///            + 2 Re[ b_up^* b_down <up+|S_j|+down> e^{i omega t} ]
///
/// The matrix elements are evaluated from the closed-form eigenspinors.
class SpinPrecession {
public:
    explicit SpinPrecession(const PositiveEnergySuperposition& state)
        : state_(state), pairs_(eigenspinors(state.params())), omega_(pairs_[0].energy - pairs_[1].energy)
    {
        const auto& m = DiracMatrixSet::standard();
        const auto& up = pairs_[0].spinor.vec();
        const auto& down = pairs_[1].spinor.vec();
        for (int j = 0; j < 3; ++j) {
            up_up_[j] = up.dot(m.spin[j] * up).real();
            down_down_[j] = down.dot(m.spin[j] * down).real();
            up_down_[j] = up.dot(m.spin[j] * down);
        }
    }

    [[nodiscard]] double omega() const { return omega_; }

    [[nodiscard]] Vec3 spin(double t) const
    {
        const cplx bu = state_.b_up();
        const cplx bd = state_.b_down();
        const cplx phase = std::polar(1.0, omega_ * t);
        Vec3 out{};
        for (int j = 0; j < 3; ++j) {
            out[j] = std::norm(bu) * up_up_[j] + std::norm(bd) * down_down_[j] +
                     2.0 * (std::conj(bu) * bd * up_down_[j] * phase).real();
        }
        return out;
    }

    [[nodiscard]] Spinor4 spinor(double t) const
    {
        const cplx pu = std::polar(1.0, -pairs_[0].energy * t);
        const cplx pd = std::polar(1.0, -pairs_[1].energy * t);
        return Spinor4(state_.b_up() * pu * pairs_[0].spinor.vec() + state_.b_down() * pd * pairs_[1].spinor.vec());
    }

private:
    PositiveEnergySuperposition state_;
    std::array<EigenPair, 4> pairs_;
    double omega_;
    Vec3 up_up_{};
    Vec3 down_down_{};
    std::array<cplx, 3> up_down_{};
};

inline AnalyticState evolve_analytic(const PositiveEnergySuperposition& state, double t)
{
    const SpinPrecession prec(state);
    return {prec.spinor(t), prec.spin(t)};
}

/// Analytic spin series sampled on `times`; populations come from the evolved spinor.
inline SpinTimeSeries analytic_spin_series(const PositiveEnergySuperposition& state, const std::vector<double>& times)
{
    validate_time_grid(times);
    const SpinPrecession prec(state);
    SpinTimeSeries out;
    out.times = times;
    for (double t : times) {
        out.spin.push_back(prec.spin(t));
        const Spinor4 s = prec.spinor(t);
        std::array<double, 4> pop{};
        for (int k = 0; k < 4; ++k) {
            pop[k] = std::norm(s[k]);
        }
        out.populations.push_back(pop);
    }
    return out;
}

} // namespace edm_emu
