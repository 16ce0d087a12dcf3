#pragma once

// Trapped-ion side of the emulation: four internal levels a, b, c, d coupled to
// one truncated motional mode. Natural units, hbar = 1.
//
// Basis ordering of every OperatorMatrix and QuantumState is |level> (x) |n>,
// flat index = level * n_max + n.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dirac_core.hpp"
#include "dirac_matrices.hpp"
#include "dirac_numeric.hpp"
#include "dirac_params.hpp"
#include "linalg.hpp"
#include "time_series.hpp"

namespace edm_emu {

enum class Level : int { a = 0, b = 1, c = 2, d = 3 };
enum class Axis : int { x = 0, y = 1, z = 2 };

struct LevelPair {
    Level first;
    Level second;
};

inline std::string to_string(LevelPair p)
{
    return {static_cast<char>('a' + static_cast<int>(p.first)), static_cast<char>('a' + static_cast<int>(p.second))};
}

namespace pairs {
inline constexpr LevelPair ab{Level::a, Level::b};
inline constexpr LevelPair ac{Level::a, Level::c};
inline constexpr LevelPair ad{Level::a, Level::d};
inline constexpr LevelPair bc{Level::b, Level::c};
inline constexpr LevelPair bd{Level::b, Level::d};
inline constexpr LevelPair cd{Level::c, Level::d};
} // namespace pairs

inline void validate(LevelPair p)
{
    if (p.first == p.second) {
        throw ValidationError("level pair must name two distinct levels");
    }
}

/// |first><second|. The first-named level is the upper one: sigma_z^{pq} = +1 on p.
inline Matrix4c raising(LevelPair p)
{
    validate(p);
    Matrix4c m = Matrix4c::Zero();
    m(static_cast<int>(p.first), static_cast<int>(p.second)) = 1.0;
    return m;
}

inline Matrix4c lowering(LevelPair p) { return raising(p).adjoint(); }

/// sigma_x = s+ + s-, sigma_y = -i (s+ - s-), sigma_z = |p><p| - |q><q|, zero off the pair.
inline Matrix4c pauli_pair(LevelPair p, Axis axis)
{
    validate(p);
    const Matrix4c up = raising(p);
    const Matrix4c down = lowering(p);
    switch (axis) {
    case Axis::x: return up + down;
    case Axis::y: return -kI * (up - down);
    case Axis::z: return up * down - down * up;
    }
    throw ValidationError("pauli_pair: bad axis");
}

struct FockConfig {
    int n_max = 64;
    double delta_spread = 1.0; ///< ground-state position spread Delta

    [[nodiscard]] int dim() const { return 4 * n_max; }
};

inline void validate(const FockConfig& cfg)
{
    if (cfg.n_max < 2) {
        throw ValidationError("FockConfig: n_max must be >= 2");
    }
    if (!(cfg.delta_spread > 0.0) || !std::isfinite(cfg.delta_spread)) {
        throw ValidationError("FockConfig: delta_spread must be positive and finite");
    }
}

struct LadderOperators {
    OperatorMatrix a;
    OperatorMatrix a_dag;
};

/// Truncated a|n> = sqrt(n)|n-1> on the motional factor alone (n_max x n_max).
inline LadderOperators ladder_operators(const FockConfig& cfg)
{
    validate(cfg);
    OperatorMatrix a = OperatorMatrix::Zero(cfg.n_max, cfg.n_max);
    for (int n = 1; n < cfg.n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return {a, a.adjoint()};
}

/// p = i hbar (a^dag - a) / (2 Delta) on the motional factor.
inline OperatorMatrix momentum_operator(const FockConfig& cfg)
{
    const auto [a, a_dag] = ladder_operators(cfg);
    return (kI / (2.0 * cfg.delta_spread)) * (a_dag - a);
}

/// Detuned red sideband on `pair`:
/// eta Omega (s+ a e^{i phi_r} + s- a^dag e^{-i phi_r}) + delta sigma_z.
inline OperatorMatrix jc_hamiltonian(LevelPair pair, const FockConfig& cfg, double omega_tilde, double eta,
                                     double detuning, double phi_r)
{
    const auto [a, a_dag] = ladder_operators(cfg);
    const cplx phase = std::polar(eta * omega_tilde, phi_r);
    const OperatorMatrix id = OperatorMatrix::Identity(cfg.n_max, cfg.n_max);
    return kron(phase * raising(pair), a) + kron(std::conj(phase) * lowering(pair), a_dag) +
           kron(detuning * pauli_pair(pair, Axis::z), id);
}

/// Detuned blue sideband on `pair`:
/// eta Omega (s+ a^dag e^{i phi_b} + s- a e^{-i phi_b}) + delta sigma_z.
inline OperatorMatrix ajc_hamiltonian(LevelPair pair, const FockConfig& cfg, double omega_tilde, double eta,
                                      double detuning, double phi_b)
{
    const auto [a, a_dag] = ladder_operators(cfg);
    const cplx phase = std::polar(eta * omega_tilde, phi_b);
    const OperatorMatrix id = OperatorMatrix::Identity(cfg.n_max, cfg.n_max);
    return kron(phase * raising(pair), a_dag) + kron(std::conj(phase) * lowering(pair), a) +
           kron(detuning * pauli_pair(pair, Axis::z), id);
}

/// Omega (s+ e^{i phi} + s- e^{-i phi}) on the internal levels.
/// phi = 0 gives Omega sigma_x, phi = pi/2 gives -Omega sigma_y.
inline Matrix4c carrier_hamiltonian(LevelPair pair, double rabi, double phi)
{
    const cplx phase = std::polar(rabi, phi);
    return phase * raising(pair) + std::conj(phase) * lowering(pair);
}

/// Trapped-ion control parameters. Frequencies in natural units (hbar = 1).
struct IonParams {
    double eta = 0.1;            ///< Lamb-Dicke parameter
    double delta_spread = 1.0;   ///< Delta
    double omega_tilde = 5.0;    ///< sideband Rabi frequency
    double detuning = 0.5;       ///< delta, sets mc^2 = 2 delta
    double omega1 = 0.0;         ///< EDM carrier, d_a E_x = 2 Omega1
    double omega2 = 0.0;         ///< MDM carrier, (mu_a/c) E_x = 2 Omega2
    double phi_r = 3.0 * kPi / 2.0;
    double phi_b = kPi / 2.0;
    double phi_edm_ab = 0.0;
    double phi_edm_cd = kPi;
    double phi_mdm = kPi / 2.0;
    double trap_freq = 1.0;      ///< nu
    double ion_mass = 0.5;       ///< M; Delta = sqrt(hbar / (2 M nu))
};

inline void validate(const IonParams& ion)
{
    const double fields[] = {ion.eta,    ion.delta_spread, ion.omega_tilde, ion.detuning, ion.omega1,   ion.omega2,
                             ion.phi_r,  ion.phi_b,        ion.phi_edm_ab,  ion.phi_edm_cd, ion.phi_mdm, ion.trap_freq,
                             ion.ion_mass};
    for (double f : fields) {
        if (!std::isfinite(f)) {
            throw ValidationError("IonParams: non-finite field");
        }
    }
    if (!(ion.eta > 0.0)) {
        throw ValidationError("IonParams: eta must be > 0");
    }
    if (ion.omega_tilde < 0.0) {
        throw ValidationError("IonParams: omega_tilde must be >= 0");
    }
    if (!(ion.trap_freq > 0.0)) {
        throw ValidationError("IonParams: trap_freq must be > 0");
    }
    if (!(ion.delta_spread > 0.0)) {
        throw ValidationError("IonParams: delta_spread must be > 0");
    }
}

/// Delta = sqrt(hbar / (2 M nu)).
inline double ground_state_spread(double ion_mass, double trap_freq, double hbar = 1.0)
{
    if (!(ion_mass > 0.0) || !(trap_freq > 0.0)) {
        throw ValidationError("ground_state_spread: mass and trap frequency must be > 0");
    }
    return std::sqrt(hbar / (2.0 * ion_mass * trap_freq));
}

namespace detail {

inline void require_same_spread(const IonParams& ion, const FockConfig& cfg)
{
    if (std::abs(ion.delta_spread - cfg.delta_spread) > 1e-12 * ion.delta_spread) {
        throw ValidationError("IonParams.delta_spread and FockConfig.delta_spread disagree");
    }
}

} // namespace detail

/// 1D emulation Hamiltonian assembled from the laser interactions:
///
///   JC + AJC on (a,d) and (b,c) at phi_r, phi_b   -> 2 eta Delta Omega~ (s_x^ad + s_x^bc) p + 2 delta (s_z^ad + s_z^bc)
///   carriers (a,b) phi=0 and (c,d) phi=pi          -> 2 Omega1 (s_x^ab - s_x^cd)
///   carriers (a,d) and (b,c) at phi=pi/2           -> -2 Omega2 (s_y^ad + s_y^bc)
///
/// Each carrier is driven at Rabi frequency 2 Omega so the sum reproduces the
/// factor of two in the target operator.
inline OperatorMatrix assemble_h1d_ion(const IonParams& ion, const FockConfig& cfg)
{
    validate(ion);
    validate(cfg);
    detail::require_same_spread(ion, cfg);
    OperatorMatrix h = jc_hamiltonian(pairs::ad, cfg, ion.omega_tilde, ion.eta, ion.detuning, ion.phi_r) +
                       ajc_hamiltonian(pairs::ad, cfg, ion.omega_tilde, ion.eta, ion.detuning, ion.phi_b) +
                       jc_hamiltonian(pairs::bc, cfg, ion.omega_tilde, ion.eta, ion.detuning, ion.phi_r) +
                       ajc_hamiltonian(pairs::bc, cfg, ion.omega_tilde, ion.eta, ion.detuning, ion.phi_b);
    const Matrix4c carriers = carrier_hamiltonian(pairs::ab, 2.0 * ion.omega1, ion.phi_edm_ab) +
                              carrier_hamiltonian(pairs::cd, 2.0 * ion.omega1, ion.phi_edm_cd) +
                              carrier_hamiltonian(pairs::ad, 2.0 * ion.omega2, ion.phi_mdm) +
                              carrier_hamiltonian(pairs::bc, 2.0 * ion.omega2, ion.phi_mdm);
    h += kron(carriers, OperatorMatrix::Identity(cfg.n_max, cfg.n_max));
    return h;
}

/// Same operator written term by term from pauli_pair and momentum_operator.
inline OperatorMatrix h1d_ion_from_terms(const IonParams& ion, const FockConfig& cfg)
{
    validate(ion);
    validate(cfg);
    detail::require_same_spread(ion, cfg);
    using enum Axis;
    const OperatorMatrix p = momentum_operator(cfg);
    const OperatorMatrix id = OperatorMatrix::Identity(cfg.n_max, cfg.n_max);
    const double c = 2.0 * ion.eta * ion.delta_spread * ion.omega_tilde;
    const Matrix4c internal = 2.0 * ion.detuning * (pauli_pair(pairs::ad, z) + pauli_pair(pairs::bc, z)) +
                              2.0 * ion.omega1 * (pauli_pair(pairs::ab, x) - pauli_pair(pairs::cd, x)) -
                              2.0 * ion.omega2 * (pauli_pair(pairs::ad, y) + pauli_pair(pairs::bc, y));
    return kron(c * (pauli_pair(pairs::ad, x) + pauli_pair(pairs::bc, x)), p) + kron(internal, id);
}

/// build_h1d with the scalar p_x replaced by the truncated momentum operator.
inline OperatorMatrix lift_h1d(const DiracParams& dirac, const FockConfig& cfg)
{
    DiracParams rest = dirac;
    rest.momentum = {0.0, 0.0, 0.0};
    const Matrix4c kinetic = dirac.c_sim * DiracMatrixSet::standard().alpha[0];
    return kron(kinetic, momentum_operator(cfg)) +
           kron(build_h1d(rest), OperatorMatrix::Identity(cfg.n_max, cfg.n_max));
}

/// Ion -> Dirac parameters:
///   c = 2 eta Delta Omega~,  mc^2 = 2 delta,  d_a E_x = 2 Omega1,  (mu_a/c) E_x = 2 Omega2.
///
/// Only the products with E_x are fixed by the ion, so the field strength is an
/// input; d_a and mu_a are recovered from it.
inline DiracParams map_params(const IonParams& ion, double e_field_x = 1.0, double momentum_x = 0.0)
{
    validate(ion);
    DiracParams d;
    d.c_sim = 2.0 * ion.eta * ion.delta_spread * ion.omega_tilde;
    if (!(d.c_sim > 0.0)) {
        throw DomainError("map_params: 2 eta Delta Omega~ must be > 0");
    }
    d.mass_energy = 2.0 * ion.detuning;
    if (d.mass_energy < 0.0) {
        throw DomainError("map_params: detuning must be >= 0 (mc^2 = 2 delta)");
    }
    d.e_field = {e_field_x, 0.0, 0.0};
    d.momentum = {momentum_x, 0.0, 0.0};
    if (e_field_x == 0.0) {
        if (ion.omega1 != 0.0 || ion.omega2 != 0.0) {
            throw DomainError("map_params: nonzero carrier Rabi frequencies require a nonzero field");
        }
        return d;
    }
    d.edm = 2.0 * ion.omega1 / e_field_x;
    d.mdm = 2.0 * ion.omega2 * d.c_sim / e_field_x;
    return d;
}

/// Dirac -> ion parameters for a chosen eta and Delta; Omega~ follows from c.
inline IonParams map_params_inv(const DiracParams& dirac, double eta, double delta_spread)
{
    if (!(dirac.c_sim > 0.0)) {
        throw DomainError("map_params_inv: c must be > 0 to fix the sideband Rabi frequency");
    }
    validate_1d(dirac);
    if (!(eta > 0.0) || !(delta_spread > 0.0)) {
        throw DomainError("map_params_inv: eta and delta_spread must be > 0");
    }
    IonParams ion;
    ion.eta = eta;
    ion.delta_spread = delta_spread;
    ion.omega_tilde = dirac.c_sim / (2.0 * eta * delta_spread);
    ion.detuning = 0.5 * dirac.mass_energy;
    ion.omega1 = 0.5 * dirac.edm_coupling();
    ion.omega2 = 0.5 * dirac.mdm_coupling();
    return ion;
}

/// omega = 2 sqrt(eta^2 Delta^2 Omega~^2 p^2 + (delta + Omega1)^2)
///       - 2 sqrt(eta^2 Delta^2 Omega~^2 p^2 + (delta - Omega1)^2)
inline double ion_precession_frequency(const IonParams& ion, double momentum_x, double hbar = 1.0)
{
    const double k = ion.eta * ion.delta_spread * ion.omega_tilde * momentum_x / hbar;
    const double up = std::hypot(k, ion.detuning + ion.omega1);
    const double down = std::hypot(k, ion.detuning - ion.omega1);
    const double sum = up + down;
    // 2 (up - down) = 2 (up^2 - down^2) / (up + down) = 8 delta Omega1 / (up + down)
    return sum == 0.0 ? 0.0 : 8.0 * ion.detuning * ion.omega1 / sum;
}

// ---------------------------------------------------------------------------
// 3D operator-level mapping

enum class TermFamily { momentum, mass, edm, mdm, full };

inline const char* to_string(TermFamily f)
{
    switch (f) {
    case TermFamily::momentum: return "momentum";
    case TermFamily::mass: return "mass";
    case TermFamily::edm: return "edm";
    case TermFamily::mdm: return "mdm";
    case TermFamily::full: return "full";
    }
    return "?";
}

/// Internal-level operator combinations realizing each Dirac term per axis,
/// without the 2 eta Delta Omega~, 2 delta, 2 Omega1, 2 Omega2 prefactors.
struct IonTermTable {
    std::array<Matrix4c, 3> momentum; // c alpha_j
    Matrix4c mass;                    // beta
    std::array<Matrix4c, 3> edm;      // 2 beta S_j
    std::array<Matrix4c, 3> mdm;      // i beta alpha_j
};

inline IonTermTable ion_term_table()
{
    using enum Axis;
    using namespace pairs;
    IonTermTable t;
    t.momentum = {pauli_pair(ad, x) + pauli_pair(bc, x), pauli_pair(ad, y) - pauli_pair(bc, y),
                  pauli_pair(ac, x) - pauli_pair(bd, x)};
    t.mass = pauli_pair(ad, z) + pauli_pair(bc, z);
    t.edm = {pauli_pair(ab, x) - pauli_pair(cd, x), pauli_pair(ab, y) - pauli_pair(cd, y),
             pauli_pair(ab, z) - pauli_pair(cd, z)};
    // i beta alpha_y = s_x^ad - s_x^bc in the standard representation.
    t.mdm = {-pauli_pair(ad, y) - pauli_pair(bc, y), pauli_pair(ad, x) - pauli_pair(bc, x),
             pauli_pair(bd, y) - pauli_pair(ac, y)};
    return t;
}

struct MappingRow {
    TermFamily family;
    int axis; ///< 0..2, or -1 for axis-free terms
    double deviation;
    bool passed;
};

struct MappingReport {
    std::vector<MappingRow> rows;
    double tolerance = 1e-13;

    [[nodiscard]] bool passed() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const MappingRow& r) { return r.passed; });
    }

    [[nodiscard]] std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        for (const auto& r : rows) {
            if (!r.passed) {
                out.push_back(std::string(to_string(r.family)) +
                              (r.axis >= 0 ? std::string(1, static_cast<char>('x' + r.axis)) : std::string()) +
                              ": deviation " + std::to_string(r.deviation));
            }
        }
        return out;
    }
};

/// Term-by-term comparison of the ion operator sums against the Dirac terms
/// c alpha.p, beta mc^2, 2 d_a beta S.E, i (mu_a/c) beta alpha.E under the
/// parameter mapping, with p and E treated as scalar placeholders per axis.
/// The final `full` row compares the complete build_h3d matrix for the given
/// field and momentum vectors against the ion sum.
inline MappingReport verify_mapping_3d(const IonParams& ion, const Vec3& e_field, const Vec3& momentum,
                                       double tolerance = 1e-13)
{
    validate(ion);
    const auto& m = DiracMatrixSet::standard();
    const IonTermTable t = ion_term_table();

    const double c = 2.0 * ion.eta * ion.delta_spread * ion.omega_tilde;
    const double mass = 2.0 * ion.detuning;
    const double edm = 2.0 * ion.omega1;        // d_a for a unit field
    const double mdm_over_c = 2.0 * ion.omega2; // mu_a / c for a unit field

    MappingReport report;
    report.tolerance = tolerance;
    const auto add = [&](TermFamily f, int axis, const Matrix4c& ion_side, const Matrix4c& dirac_side) {
        const double dev = max_abs(ion_side - dirac_side);
        report.rows.push_back({f, axis, dev, dev < tolerance});
    };
    for (int j = 0; j < 3; ++j) {
        add(TermFamily::momentum, j, c * t.momentum[j], c * m.alpha[j]);
    }
    add(TermFamily::mass, -1, mass * t.mass, mass * m.beta);
    for (int j = 0; j < 3; ++j) {
        add(TermFamily::edm, j, edm * t.edm[j], 2.0 * edm * m.beta * m.spin[j]);
    }
    for (int j = 0; j < 3; ++j) {
        add(TermFamily::mdm, j, mdm_over_c * t.mdm[j], kI * mdm_over_c * m.beta * m.alpha[j]);
    }

    DiracParams d;
    d.c_sim = c;
    d.mass_energy = mass;
    d.edm = edm;
    d.mdm = mdm_over_c * c;
    d.e_field = e_field;
    d.momentum = momentum;
    Matrix4c ion_sum = mass * t.mass;
    for (int j = 0; j < 3; ++j) {
        ion_sum += c * momentum[j] * t.momentum[j] + edm * e_field[j] * t.edm[j] + mdm_over_c * e_field[j] * t.mdm[j];
    }
    add(TermFamily::full, -1, ion_sum, build_h3d(d));
    return report;
}

// ---------------------------------------------------------------------------
// States and dynamics

struct QuantumState {
    Eigen::VectorXcd amplitudes;
    int n_max = 0;

    [[nodiscard]] double norm() const { return amplitudes.norm(); }

    [[nodiscard]] double fock_population(int n) const
    {
        double s = 0.0;
        for (int l = 0; l < 4; ++l) {
            s += std::norm(amplitudes(l * n_max + n));
        }
        return s;
    }
};

inline QuantumState product_state(const Spinor4& internal, const Eigen::VectorXcd& motional)
{
    return {kron(internal.vec(), motional), static_cast<int>(motional.size())};
}

/// Truncated coherent state |alpha>, renormalized.
inline Eigen::VectorXcd coherent_state(int n_max, cplx alpha)
{
    Eigen::VectorXcd c(n_max);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < n_max; ++n) {
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return c / c.norm();
}

inline cplx expectation(const OperatorMatrix& op, const Eigen::VectorXcd& v) { return v.dot(op * v); }

/// spinor (x) |alpha> with alpha = i p Delta / hbar, which has <p> = p and the
/// ground-state momentum spread hbar / (2 Delta).
inline QuantumState prepare_wavepacket(const FockConfig& cfg, double target_p, const Spinor4& spinor,
                                       double tail_bound = 1e-8)
{
    validate(cfg);
    if (!spinor.is_normalized(1e-10)) {
        throw ValidationError("prepare_wavepacket: spinor is not normalized");
    }
    const cplx alpha = kI * target_p * cfg.delta_spread;
    const double amp = std::abs(alpha);
    if (!(amp * amp + 5.0 * amp < cfg.n_max)) {
        throw ConfigError("prepare_wavepacket: coherent amplitude |alpha| = " + std::to_string(amp) +
                          " is not contained by n_max = " + std::to_string(cfg.n_max) + "; increase n_max");
    }
    const Eigen::VectorXcd motional = coherent_state(cfg.n_max, alpha);

    const int tail_start = cfg.n_max - std::max(1, cfg.n_max / 10);
    const double tail = motional.tail(cfg.n_max - tail_start).squaredNorm();
    if (tail > tail_bound) {
        throw ConfigError("prepare_wavepacket: truncation tail population " + std::to_string(tail) +
                          " exceeds bound; increase n_max");
    }
    const double achieved = expectation(momentum_operator(cfg), motional).real();
    const double err = std::abs(achieved - target_p);
    if (err > 1e-6 * std::max(std::abs(target_p), 1e-300) && err > 1e-12) {
        throw ConfigError("prepare_wavepacket: achieved <p> = " + std::to_string(achieved) +
                          " misses target; increase n_max");
    }
    return product_state(spinor, motional);
}

/// Exact propagation by eigendecomposition of the dense ion Hamiltonian. At each
/// sample the motional factor is traced out to give level populations and spin
/// expectations; per-Fock-level populations and the norm are recorded too.
inline SpinTimeSeries simulate_ion(const QuantumState& state0, const OperatorMatrix& h, const std::vector<double>& times)
{
    validate_time_grid(times);
    if (h.rows() != h.cols() || h.rows() != state0.amplitudes.size() || state0.amplitudes.size() != 4 * state0.n_max) {
        throw ValidationError("simulate_ion: dimension mismatch between Hamiltonian and state");
    }
    if (std::abs(state0.norm() - 1.0) > 1e-10) {
        throw ValidationError("simulate_ion: initial state is not normalized");
    }
    const int n = state0.n_max;
    const SpectralPropagator<OperatorMatrix> prop(h);
    const Eigen::VectorXcd coeffs = prop.to_eigenbasis(state0.amplitudes);
    const auto& spin_ops = DiracMatrixSet::standard().spin;

    SpinTimeSeries out;
    out.times = times;
    for (double t : times) {
        const Eigen::VectorXcd psi = prop.evolve_coefficients(coeffs, t);
        // reduced internal density matrix rho_lm = sum_n psi_{l n} psi_{m n}^*
        const Eigen::Map<const Eigen::MatrixXcd> grid(psi.data(), n, 4); // column l = level l
        const Matrix4c rho = grid.transpose() * grid.conjugate();
        std::array<double, 4> pop{};
        for (int l = 0; l < 4; ++l) {
            pop[l] = rho(l, l).real();
        }
        Vec3 spin{};
        for (int j = 0; j < 3; ++j) {
            spin[j] = (rho * spin_ops[j]).trace().real();
        }
        std::vector<double> fock(n);
        for (int k = 0; k < n; ++k) {
            fock[k] = grid.row(k).squaredNorm();
        }
        out.spin.push_back(spin);
        out.populations.push_back(pop);
        out.norms.push_back(psi.norm());
        out.fock_populations.push_back(std::move(fock));
    }
    return out;
}

} // namespace edm_emu
