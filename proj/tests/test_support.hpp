#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "nmwm/matrix.hpp"
#include "nmwm/synth.hpp"

namespace nmwm::testing {

inline RealMatrix random_symmetric(std::size_t n, std::uint64_t seed)
{
    return symmetric_part(random_matrix(n, n, seed));
}

inline RealMatrix random_skew(std::size_t n, std::uint64_t seed)
{
    return skew_part(random_matrix(n, n, seed));
}

inline RealMatrix image_matrix(std::size_t n, std::uint64_t seed)
{
    return to_real(uniform_image(n, n, seed));
}

/// ||Q^T Q - I||_F, an upper bound on the spectral-norm deviation.
inline double orthogonality_error(const RealMatrix& q)
{
    return frobenius_norm(multiply(transpose(q), q) - RealMatrix::identity(q.cols()));
}

inline double unitarity_error(const ComplexMatrix& q)
{
    ComplexMatrix g = multiply(adjoint(q), q);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return frobenius_norm(g);
}

/// Roots of the characteristic cubic of a symmetric 3x3 matrix by the
/// trigonometric formula, sorted descending. Shares no code with Jacobi.
inline std::array<double, 3> cubic_eigenvalues(const RealMatrix& a)
{
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) + (a(2, 2) - q) * (a(2, 2) - q) +
                      2.0 * p1;
    if (p2 == 0.0) return {q, q, q};
    const double p = std::sqrt(p2 / 6.0);
    double b[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = (a(i, j) - (i == j ? q : 0.0)) / p;
    const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    const double r = std::clamp(det / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    std::array<double, 3> out{e1, 3.0 * q - e1 - e3, e3};
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

} // namespace nmwm::testing
