#pragma once

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace edm_emu {

using Vec3 = std::array<double, 3>;

/// Parameters of the extended Dirac Hamiltonian for a neutral particle with
/// electric (edm) and magnetic (mdm) dipole moments in a static electric field.
///
/// Inside the library every field is dimensionless (hbar = 1); see units.hpp
/// for the conversion from laboratory units.
struct DiracParams {
    double mass_energy = 1.0; ///< m c^2
    double c_sim = 1.0;       ///< simulated speed of light
    double edm = 0.0;         ///< d_a
    double mdm = 0.0;         ///< mu_a
    Vec3 e_field{0.0, 0.0, 0.0};
    Vec3 momentum{0.0, 0.0, 0.0};

    [[nodiscard]] double edm_coupling() const { return edm * e_field[0]; }          // d_a E_x
    [[nodiscard]] double mdm_coupling() const { return mdm / c_sim * e_field[0]; }  // (mu_a / c) E_x
    [[nodiscard]] double kinetic() const { return c_sim * momentum[0]; }             // c p_x

    [[nodiscard]] bool operator==(const DiracParams&) const = default;
};

inline void validate(const DiracParams& p)
{
    const auto finite = [](double x) { return std::isfinite(x); };
    bool ok = finite(p.mass_energy) && finite(p.c_sim) && finite(p.edm) && finite(p.mdm);
    for (int k = 0; k < 3; ++k) {
        ok = ok && finite(p.e_field[k]) && finite(p.momentum[k]);
    }
    if (!ok) {
        throw ValidationError("DiracParams: non-finite field");
    }
    if (p.mass_energy < 0.0) {
        throw ValidationError("DiracParams: mass_energy must be >= 0");
    }
    if (!(p.c_sim > 0.0)) {
        throw ValidationError("DiracParams: c_sim must be > 0");
    }
}

/// The 1D model only admits x-components of field and momentum.
inline void validate_1d(const DiracParams& p)
{
    validate(p);
    if (p.e_field[1] != 0.0 || p.e_field[2] != 0.0 || p.momentum[1] != 0.0 || p.momentum[2] != 0.0) {
        throw ValidationError("DiracParams: 1D model requires y/z components of e_field and momentum to be zero");
    }
}

} // namespace edm_emu
