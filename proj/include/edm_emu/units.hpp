#pragma once

// Physical constants and the conversion between laboratory units and the
// dimensionless convention used by every solver in this library.

#include <cmath>
#include <limits>

#include "dirac_params.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace edm_emu {

/// CODATA 2018 exact / recommended values. All constants live here.
struct PhysicalConstants {
    const double hbar_eVs = 6.582119569e-16;   // eV s
    const double hbar_Js = 1.054571817e-34;    // J s
    const double c_light = 299792458.0;        // m / s
    const double e_charge = 1.602176634e-19;   // C
    const double amu = 1.66053906660e-27;      // kg
    const double seconds_per_year = 365.25 * 86400.0;

    [[nodiscard]] double ev_to_joule(double ev) const { return ev * e_charge; }
    [[nodiscard]] double joule_to_ev(double j) const { return j / e_charge; }

    // e cm -> C m
    [[nodiscard]] double ecm_to_cm(double d) const { return d * e_charge * 1e-2; }
    [[nodiscard]] double cm_to_ecm(double d) const { return d / (e_charge * 1e-2); }

    // e cm -> e m
    [[nodiscard]] double ecm_to_em(double d) const { return d * 1e-2; }
    [[nodiscard]] double em_to_ecm(double d) const { return d * 1e2; }

    // MV / cm -> V / m
    [[nodiscard]] double mv_per_cm_to_v_per_m(double e) const { return e * 1e8; }
    [[nodiscard]] double v_per_m_to_mv_per_cm(double e) const { return e * 1e-8; }
};

inline const PhysicalConstants& constants()
{
    static const PhysicalConstants k{};
    return k;
}

enum class UnitMode { physical, natural };

/// Maps laboratory quantities to dimensionless ones with hbar = 1.
///
/// Physical DiracParams carry: mass_energy [eV], c_sim [m/s], momentum [eV s/m]
/// (so c p is in eV), e_field [V/m], edm [e m] (so d E is in eV) and
/// mdm [e m^2/s] (so (mu/c) E is in eV). Natural values are those divided by
/// energy_scale, speed_scale and field_scale as appropriate.
struct UnitSystem {
    UnitMode mode = UnitMode::natural;
    double energy_scale = 1.0; ///< eV per natural energy unit
    double speed_scale = 1.0;  ///< m/s per natural speed unit
    double field_scale = 1.0;  ///< V/m per natural field unit

    /// Natural time unit in seconds (hbar / energy_scale).
    [[nodiscard]] double time_unit() const { return constants().hbar_eVs / energy_scale; }
};

inline void validate(const UnitSystem& u)
{
    const auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!ok(u.energy_scale) || !ok(u.speed_scale) || !ok(u.field_scale)) {
        throw ValidationError("UnitSystem: scales must be positive and finite");
    }
}

inline DiracParams to_natural(const DiracParams& phys, const UnitSystem& u)
{
    validate(u);
    validate(phys);
    const double s = u.energy_scale;
    DiracParams n;
    n.mass_energy = phys.mass_energy / s;
    n.c_sim = phys.c_sim / u.speed_scale;
    n.edm = phys.edm * u.field_scale / s;
    n.mdm = phys.mdm / u.speed_scale * u.field_scale / s;
    for (int j = 0; j < 3; ++j) {
        n.e_field[j] = phys.e_field[j] / u.field_scale;
        n.momentum[j] = phys.momentum[j] * u.speed_scale / s;
    }
    validate(n);
    return n;
}

inline DiracParams to_physical(const DiracParams& nat, const UnitSystem& u)
{
    validate(u);
    validate(nat);
    const double s = u.energy_scale;
    DiracParams p;
    p.mass_energy = nat.mass_energy * s;
    p.c_sim = nat.c_sim * u.speed_scale;
    p.edm = nat.edm * s / u.field_scale;
    p.mdm = nat.mdm * s / u.field_scale * u.speed_scale;
    for (int j = 0; j < 3; ++j) {
        p.e_field[j] = nat.e_field[j] * u.field_scale;
        p.momentum[j] = nat.momentum[j] * s / u.speed_scale;
    }
    return p;
}

/// Natural angular frequency -> rad/s.
inline double omega_to_physical(double omega_natural, const UnitSystem& u) { return omega_natural / u.time_unit(); }

struct NeutronEstimate {
    double splitting_ev = 0.0;
    double omega = 0.0;  ///< rad/s
    double period = 0.0; ///< s, +inf when there is no splitting
    [[nodiscard]] bool period_infinite() const { return std::isinf(period); }
};

/// Leading-order splitting 2 d E (MDM neglected) and the resulting precession.
inline NeutronEstimate neutron_estimate(double e_field_v_per_m, double edm_e_cm)
{
    if (!std::isfinite(e_field_v_per_m) || !(e_field_v_per_m > 0.0)) {
        throw ValidationError("neutron_estimate: field must be positive and finite");
    }
    if (!std::isfinite(edm_e_cm) || edm_e_cm < 0.0) {
        throw ValidationError("neutron_estimate: edm must be >= 0 and finite");
    }
    const auto& k = constants();
    NeutronEstimate est;
    est.splitting_ev = 2.0 * k.ecm_to_em(edm_e_cm) * e_field_v_per_m;
    est.omega = est.splitting_ev / k.hbar_eVs;
    est.period = est.omega > 0.0 ? 2.0 * kPi / est.omega : std::numeric_limits<double>::infinity();
    return est;
}

} // namespace edm_emu
