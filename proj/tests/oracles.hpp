#pragma once

// Test-only reference computations, kept independent of the library's
// builders and solvers.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "edm_emu/dirac_params.hpp"

namespace edm_emu::oracle {

using cplx = std::complex<double>;

/// The 1D Hamiltonian written out entry by entry in the standard representation.
inline Eigen::Matrix4cd explicit_h1d(double mass, double cp, double edm_e, double mdm_e)
{
    const cplx i{0.0, 1.0};
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(0, 0) = mass;
    h(1, 1) = mass;
    h(2, 2) = -mass;
    h(3, 3) = -mass;
    h(0, 1) = h(1, 0) = edm_e;
    h(2, 3) = h(3, 2) = -edm_e;
    h(0, 3) = h(1, 2) = cp + i * mdm_e;
    h(3, 0) = h(2, 1) = cp - i * mdm_e;
    return h;
}

inline Eigen::Matrix4cd explicit_h1d(const DiracParams& p)
{
    return explicit_h1d(p.mass_energy, p.kinetic(), p.edm_coupling(), p.mdm_coupling());
}

/// Eigenvalues through the general (non-Hermitian) complex eigensolver, real parts ascending.
inline std::array<double, 4> oracle_eigenvalues(const Eigen::Matrix4cd& h)
{
    const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(h, false);
    std::array<double, 4> out{};
    for (int k = 0; k < 4; ++k) {
        out[k] = solver.eigenvalues()(k).real();
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// Energy-scale couplings c p_x, mc^2, d_a E_x, (mu_a/c) E_x each log-uniform in
/// [lo, hi]; c and E_x log-uniform in [0.1, 10]; p_x sign random.
inline DiracParams random_params(std::mt19937_64& rng, double lo = 1e-6, double hi = 1e2, bool with_mdm = true)
{
    DiracParams p;
    p.c_sim = log_uniform(rng, 0.1, 10.0);
    const double ex = log_uniform(rng, 0.1, 10.0);
    p.e_field = {ex, 0.0, 0.0};
    const double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    p.momentum = {sign * log_uniform(rng, lo, hi) / p.c_sim, 0.0, 0.0};
    p.mass_energy = log_uniform(rng, lo, hi);
    p.edm = log_uniform(rng, lo, hi) / ex;
    p.mdm = with_mdm ? log_uniform(rng, lo, hi) * p.c_sim / ex : 0.0;
    return p;
}

inline DiracParams example_params()
{
    DiracParams p;
    p.mass_energy = 1.0;
    p.c_sim = 1.0;
    p.momentum = {1.0, 0.0, 0.0};
    p.e_field = {1.0, 0.0, 0.0};
    p.edm = 0.1;
    p.mdm = 0.0;
    return p;
}

} // namespace edm_emu::oracle
