#pragma once

// Dense 4x4 construction, diagonalization and exact propagation of the
// extended Dirac Hamiltonian at fixed momentum. This is the brute-force
// reference for the closed forms in dirac_core.hpp.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "dirac_core.hpp"
#include "dirac_matrices.hpp"
#include "dirac_params.hpp"
#include "linalg.hpp"
#include "time_series.hpp"

namespace edm_emu {

/// c alpha_x p_x + beta mc^2 + 2 d_a beta S_x E_x + i (mu_a / c) beta alpha_x E_x
inline Matrix4c build_h1d(const DiracParams& p)
{
    validate_1d(p);
    const auto& m = DiracMatrixSet::standard();
    const double ex = p.e_field[0];
    return p.kinetic() * m.alpha[0] + p.mass_energy * m.beta + (2.0 * p.edm * ex) * (m.beta * m.spin[0]) +
           (kI * (p.mdm / p.c_sim * ex)) * (m.beta * m.alpha[0]);
}

/// Block form at B = 0:
///
///   [ mc^2 + d_a sigma.E                  c sigma.p + i (mu_a/c) sigma.E ]
///   [ c sigma.p - i (mu_a/c) sigma.E      -mc^2 - d_a sigma.E            ]
///
/// Assembled from Pauli blocks directly, independently of build_h1d.
inline Matrix4c build_h3d(const DiracParams& p)
{
    validate(p);
    Matrix2c sigma_e = Matrix2c::Zero();
    Matrix2c sigma_p = Matrix2c::Zero();
    for (int j = 0; j < 3; ++j) {
        sigma_e += p.e_field[j] * pauli(j);
        sigma_p += p.momentum[j] * pauli(j);
    }
    const Matrix2c diag = p.mass_energy * Matrix2c::Identity() + p.edm * sigma_e;
    const Matrix2c kinetic = p.c_sim * sigma_p;
    const Matrix2c mdm = (kI * (p.mdm / p.c_sim)) * sigma_e;
    return block2x2(diag, kinetic + mdm, kinetic - mdm, -diag);
}

struct Eigensystem4 {
    Eigen::Vector4d values;           // ascending
    std::array<Spinor4, 4> vectors;   // orthonormal, vectors[k] belongs to values[k]
};

/// Hermitian 4x4 eigendecomposition with deterministic labeling: eigenvalues
/// ascending, and inside a (near-)degenerate group the basis is rotated to
/// diagonalize S_x and ordered by <S_x> descending.
inline Eigensystem4 diagonalize(const Matrix4c& h, double degeneracy_tol = 1e-12)
{
    require_hermitian(h, 1e-12, "diagonalize");
    const Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("diagonalize: eigensolver did not converge");
    }
    Eigen::Vector4d values = solver.eigenvalues();
    Matrix4c vectors = solver.eigenvectors();

    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const Matrix4c& sx = DiracMatrixSet::standard().spin[0];
    int start = 0;
    while (start < 4) {
        int stop = start + 1;
        while (stop < 4 && values(stop) - values(start) <= degeneracy_tol * scale) {
            ++stop;
        }
        const int size = stop - start;
        if (size > 1) {
            const Eigen::MatrixXcd block = vectors.middleCols(start, size);
            const Eigen::MatrixXcd projected = block.adjoint() * sx * block;
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(0.5 * (projected + projected.adjoint()));
            // ascending <S_x>; reverse so the largest comes first
            const Eigen::MatrixXcd rotated = block * inner.eigenvectors().rowwise().reverse();
            vectors.middleCols(start, size) = rotated;
        }
        start = stop;
    }

    Eigensystem4 out{values, {}};
    for (int k = 0; k < 4; ++k) {
        out.vectors[k] = Spinor4(Eigen::Vector4cd(vectors.col(k)));
    }
    return out;
}

/// exp(-i H t) through a cached eigendecomposition. Works for the 4x4 Dirac
/// block and for the dense ion operators alike.
template <typename MatrixT>
class SpectralPropagator {
public:
    using Vector = Eigen::Matrix<cplx, MatrixT::RowsAtCompileTime, 1>;

    explicit SpectralPropagator(const MatrixT& h)
    {
        require_hermitian(h, 1e-12, "SpectralPropagator");
        const Eigen::SelfAdjointEigenSolver<MatrixT> solver(h);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("SpectralPropagator: eigensolver did not converge");
        }
        values_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    }

    [[nodiscard]] Eigen::Index dim() const { return values_.size(); }

    /// Coefficients of `state` in the eigenbasis.
    [[nodiscard]] Vector to_eigenbasis(const Vector& state) const { return vectors_.adjoint() * state; }

    [[nodiscard]] Vector evolve_coefficients(const Vector& coeffs, double t) const
    {
        Vector phased = coeffs;
        for (Eigen::Index k = 0; k < values_.size(); ++k) {
            phased(k) *= std::polar(1.0, -values_(k) * t);
        }
        return vectors_ * phased;
    }

    [[nodiscard]] Vector apply(const Vector& state, double t) const
    {
        return evolve_coefficients(to_eigenbasis(state), t);
    }

private:
    Eigen::Matrix<double, MatrixT::RowsAtCompileTime, 1> values_;
    MatrixT vectors_;
};

inline Spinor4 propagate(const Spinor4& state, const Matrix4c& h, double t)
{
    if (!state.is_normalized(1e-10)) {
        throw ValidationError("propagate: state is not normalized");
    }
    const SpectralPropagator<Matrix4c> prop(h);
    return Spinor4(prop.apply(state.vec(), t));
}

inline SpinTimeSeries spin_series(const Spinor4& state0, const Matrix4c& h, const std::vector<double>& times)
{
    validate_time_grid(times);
    if (!state0.is_normalized(1e-10)) {
        throw ValidationError("spin_series: state is not normalized");
    }
    const SpectralPropagator<Matrix4c> prop(h);
    const Eigen::Vector4cd coeffs = prop.to_eigenbasis(state0.vec());
    SpinTimeSeries out;
    out.times = times;
    out.spin.reserve(times.size());
    out.populations.reserve(times.size());
    for (double t : times) {
        const Spinor4 s(prop.evolve_coefficients(coeffs, t));
        out.spin.push_back(spin_expectation(s));
        std::array<double, 4> pop{};
        for (int k = 0; k < 4; ++k) {
            pop[k] = std::norm(s[k]);
        }
        out.populations.push_back(pop);
    }
    return out;
}

} // namespace edm_emu
