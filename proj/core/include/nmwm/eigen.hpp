#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmwm/matrix.hpp"

namespace nmwm {

/// Thrown when a Jacobi iteration does not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double off_norm)
        : std::runtime_error(what + " (off-diagonal norm " + std::to_string(off_norm) + ")"),
          off_norm_(off_norm)
    {}
    double off_norm() const noexcept { return off_norm_; }

private:
    double off_norm_;
};

struct JacobiOptions {
    double tol = 1e-12;       // relative to the input Frobenius norm
    std::size_t max_sweeps = 64;
};

/// Eigendecomposition of a real symmetric matrix. Columns of `vectors` are
/// eigenvectors; values are ordered by non-ascending magnitude.
struct SymEigen {
    std::vector<double> values;
    RealMatrix vectors;
};

/// Eigendecomposition of a real skew-symmetric matrix. The eigenvalue in
/// slot k is i * imag_values[k]. Slots hold conjugate pairs (+b, -b), larger
/// |b| first; the vector of a -b slot is the conjugate of its +b partner.
struct SkewEigen {
    std::vector<double> imag_values;
    ComplexMatrix vectors;
};

struct SvdResult {
    RealMatrix u;
    std::vector<double> s;
    RealMatrix v;
};

SymEigen eig_sym(const RealMatrix& s, const JacobiOptions& opts = {});
SkewEigen eig_skew(const RealMatrix& c, const JacobiOptions& opts = {});

// Spectra alone, in the same canonical order as the full decompositions,
// without accumulating eigenvectors. Singular values come from the Gram
// eigenvalues, so tiny ones carry an absolute error near eps * s_max.
std::vector<double> eigvals_sym(const RealMatrix& s, const JacobiOptions& opts = {});
std::vector<double> eigvals_skew(const RealMatrix& c, const JacobiOptions& opts = {});
std::vector<double> singular_values(const RealMatrix& a, const JacobiOptions& opts = {});

/// A = U diag(s) V^T through the eigendecomposition of A^T A.
SvdResult svd(const RealMatrix& a, const JacobiOptions& opts = {});

/// Sorts by |value| descending (ties: larger signed value first, then the
/// original slot), permutes columns to match and makes the dominant entry of
/// every column positive.
SymEigen canonicalize(SymEigen e);

/// Pairs the spectrum of a real skew matrix into conjugate slots, sorts the
/// pairs by |b| descending and fixes the phase of each +b vector so its
/// dominant entry is positive real. The null space, if any, is rebuilt from a
/// real basis so its slots pair up the same way.
SkewEigen canonicalize(SkewEigen e);

// Reassembly helpers used by tests and diagnostics.
RealMatrix reassemble(const SymEigen& e);
ComplexMatrix reassemble(const SkewEigen& e);
RealMatrix reassemble(const SvdResult& r);

} // namespace nmwm
