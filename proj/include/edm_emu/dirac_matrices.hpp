#pragma once

#include <array>

#include "linalg.hpp"

namespace edm_emu {

using Matrix2c = Eigen::Matrix2cd;

inline Matrix2c pauli(int axis)
{
    Matrix2c s;
    switch (axis) {
    case 0: s << 0.0, 1.0, 1.0, 0.0; break;
    case 1: s << 0.0, -kI, kI, 0.0; break;
    case 2: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw ValidationError("pauli: axis must be 0, 1 or 2");
    }
    return s;
}

inline Matrix4c block2x2(const Matrix2c& tl, const Matrix2c& tr, const Matrix2c& bl, const Matrix2c& br)
{
    Matrix4c m;
    m.topLeftCorner<2, 2>() = tl;
    m.topRightCorner<2, 2>() = tr;
    m.bottomLeftCorner<2, 2>() = bl;
    m.bottomRightCorner<2, 2>() = br;
    return m;
}

/// Dirac matrices in the standard representation, beta = diag(1, 1, -1, -1),
/// alpha_j = offdiag(sigma_j, sigma_j).
///
/// The relativistic spin operator is S = -(i/4) alpha x alpha. Expanding the
/// cross product, (alpha x alpha)_x = [alpha_y, alpha_z] = 2i diag(sigma_x, sigma_x),
/// so S_j = diag(sigma_j, sigma_j) / 2. spin[] is evaluated from the cross
/// product of the stored alphas, not written down from the block form.
struct DiracMatrixSet {
    std::array<Matrix4c, 3> alpha;
    Matrix4c beta;
    std::array<Matrix4c, 3> spin;

    static const DiracMatrixSet& standard()
    {
        static const DiracMatrixSet set = make_standard();
        return set;
    }

private:
    static DiracMatrixSet make_standard()
    {
        DiracMatrixSet s;
        const Matrix2c zero = Matrix2c::Zero();
        const Matrix2c one = Matrix2c::Identity();
        for (int j = 0; j < 3; ++j) {
            s.alpha[j] = block2x2(zero, pauli(j), pauli(j), zero);
        }
        s.beta = block2x2(one, zero, zero, -one);
        for (int j = 0; j < 3; ++j) {
            const int k = (j + 1) % 3;
            const int l = (j + 2) % 3;
            const Matrix4c cross = s.alpha[k] * s.alpha[l] - s.alpha[l] * s.alpha[k];
            s.spin[j] = -0.25 * kI * cross;
        }
        return s;
    }
};

} // namespace edm_emu
