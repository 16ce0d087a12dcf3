#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"

namespace edm_emu {

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using OperatorMatrix = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Four complex amplitudes (u_a, u_b, u_c, u_d). In the Dirac picture these are
/// the bispinor components in the standard representation; on the ion side
/// they are the amplitudes of the internal levels a, b, c, d.
class Spinor4 {
public:
    Spinor4() : v_(Eigen::Vector4cd::Zero()) {}
    explicit Spinor4(const Eigen::Vector4cd& v) : v_(v) {}
    Spinor4(cplx a, cplx b, cplx c, cplx d) { v_ << a, b, c, d; }

    [[nodiscard]] const Eigen::Vector4cd& vec() const { return v_; }
    [[nodiscard]] cplx operator[](int i) const { return v_(i); }
    [[nodiscard]] double norm() const { return v_.norm(); }

    [[nodiscard]] bool is_normalized(double tol = 1e-10) const { return std::abs(v_.norm() - 1.0) < tol; }

    Spinor4& normalize()
    {
        const double n = v_.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw ValidationError("cannot normalize a zero or non-finite spinor");
        }
        v_ /= n;
        return *this;
    }

    [[nodiscard]] Spinor4 normalized() const { return Spinor4(*this).normalize(); }

private:
    Eigen::Vector4cd v_;
};

inline double max_abs(const Eigen::MatrixXcd& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Eigen::MatrixXcd& m)
{
    return max_abs(m - m.adjoint());
}

/// Kronecker product, internal factor first: index = i_internal * dim(b) + i_b.
inline OperatorMatrix kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline void require_hermitian(const Eigen::MatrixXcd& m, double tol, const char* what)
{
    if (m.rows() != m.cols()) {
        throw ValidationError(std::string(what) + ": matrix is not square");
    }
    const double defect = hermiticity_defect(m);
    const double scale = std::max(1.0, max_abs(m));
    if (!(defect <= tol * scale)) {
        throw ValidationError(std::string(what) + ": matrix is not Hermitian (max |H - H^dag| = " +
                              std::to_string(defect) + ")");
    }
}

} // namespace edm_emu
