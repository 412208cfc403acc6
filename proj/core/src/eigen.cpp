#include "nmwm/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nmwm {

namespace {

double conj_of(double x) { return x; }
Complex conj_of(const Complex& z) { return std::conj(z); }
double real_of(double x) { return x; }
double real_of(const Complex& z) { return z.real(); }

template <typename T>
double off_diagonal_norm(const Matrix<T>& a)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

template <typename T>
double norm_of(const Matrix<T>& a)
{
    double s = 0.0;
    for (const T& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

// Plain complex product; std::complex's operator* guards against
// inf/nan corner cases with a slow library call.
inline double mul(double a, double b) { return a * b; }
inline Complex mul(const Complex& a, const Complex& b)
{
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Cyclic row-sweep Jacobi for a Hermitian (or real symmetric) matrix.
// On return `a` is diagonal to within tol * ||a||_F and `v` holds the
// accumulated rotations, so that a_in = v * diag(a) * v^*.
// Passing no `v` skips the accumulation.
template <typename T>
void jacobi_hermitian(Matrix<T>& a, Matrix<T>* v, const JacobiOptions& opts, const char* what)
{
    const std::size_t n = a.rows();
    // Rotations are accumulated into the rows of v^T, which keeps every
    // update loop on contiguous memory.
    Matrix<T> vt = v ? Matrix<T>::identity(n) : Matrix<T>();
    const double target = opts.tol * norm_of(a);

    for (std::size_t sweep = 0;; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off <= target) break;
        if (sweep == opts.max_sweeps) throw ConvergenceError(std::string(what) + ": Jacobi did not converge", off);

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                // The phase turns a_pq real and positive; the real rotation
                // then annihilates it.
                const T phase = conj_of(apq) / mag;
                const double app = real_of(a(p, p));
                const double aqq = real_of(a(q, q));
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = [[c, s], [-s*phase, c*phase]] acting on columns p, q.
                // Rows p and q of G^* A G are updated in place; the columns
                // follow by Hermitian symmetry.
                const T gqp = -s * phase;
                const T gqq = c * phase;
                const T cgqp = conj_of(gqp);
                const T cgqq = conj_of(gqq);
                T* rp = &a(p, 0);
                T* rq = &a(q, 0);
                for (std::size_t r = 0; r < n; ++r) {
                    const T apr = rp[r];
                    const T aqr = rq[r];
                    rp[r] = c * apr + mul(cgqp, aqr);
                    rq[r] = s * apr + mul(cgqq, aqr);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    a(r, p) = conj_of(rp[r]);
                    a(r, q) = conj_of(rq[r]);
                }
                a(p, q) = T{};
                a(q, p) = T{};
                a(p, p) = T{app - t * mag};
                a(q, q) = T{aqq + t * mag};

                if (!v) continue;
                T* vp = &vt(p, 0);
                T* vq = &vt(q, 0);
                for (std::size_t r = 0; r < n; ++r) {
                    const T vrp = vp[r];
                    const T vrq = vq[r];
                    vp[r] = c * vrp + mul(vrq, gqp);
                    vq[r] = s * vrp + mul(vrq, gqq);
                }
            }
        }
    }
    if (!v) return;
    *v = Matrix<T>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) (*v)(j, i) = vt(i, j);
}

void require_finite(const RealMatrix& m, const char* what)
{
    if (!all_finite(m)) throw std::invalid_argument(std::string(what) + ": input has non-finite entries");
}

// Index of the first entry of largest magnitude in column k.
template <typename T>
std::size_t dominant_row(const Matrix<T>& m, std::size_t k)
{
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double mag = std::abs(m(r, k));
        if (mag > best_mag) {
            best_mag = mag;
            best = r;
        }
    }
    return best;
}

void fix_sign(RealMatrix& m, std::size_t k)
{
    if (m.rows() == 0 || m(dominant_row(m, k), k) >= 0.0) return;
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, k) = -m(r, k);
}

void fix_phase(ComplexMatrix& m, std::size_t k)
{
    if (m.rows() == 0) return;
    const Complex lead = m(dominant_row(m, k), k);
    const double mag = std::abs(lead);
    if (mag == 0.0) return;
    const Complex rot = std::conj(lead) / mag;
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, k) *= rot;
}

// Modified Gram-Schmidt of `candidate` against the first `count` columns
// of `basis`. Returns the residual norm before normalization.
double orthonormalize_against(std::vector<double>& candidate, const RealMatrix& basis, std::size_t count)
{
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < count; ++k) {
            double dot = 0.0;
            for (std::size_t r = 0; r < candidate.size(); ++r) dot += basis(r, k) * candidate[r];
            for (std::size_t r = 0; r < candidate.size(); ++r) candidate[r] -= dot * basis(r, k);
        }
    }
    double norm = 0.0;
    for (double x : candidate) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (double& x : candidate) x /= norm;
    return norm;
}

struct SkewPair {
    double mag;
    std::size_t source; // slot of the +b member
};

struct SkewPairing {
    std::vector<SkewPair> pairs; // by magnitude, descending
    std::vector<std::size_t> null_slots;
};

// Pairs the i-th largest value with the i-th smallest. Pairs whose
// half-difference is negligible join the null group, as does the middle
// value of an odd spectrum.
SkewPairing pair_skew_spectrum(const std::vector<double>& b)
{
    const std::size_t n = b.size();
    double scale = 0.0;
    for (double x : b) scale += x * x;
    const double zero_tol = 1e-11 * std::sqrt(scale);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return b[x] > b[y]; });

    SkewPairing out;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t top = order[i];
        const std::size_t bottom = order[n - 1 - i];
        const double mag = (b[top] - b[bottom]) / 2.0;
        if (mag > zero_tol) {
            out.pairs.push_back({mag, top});
        } else {
            out.null_slots.push_back(top);
            out.null_slots.push_back(bottom);
        }
    }
    if (n % 2 == 1) out.null_slots.push_back(order[n / 2]);
    std::stable_sort(out.pairs.begin(), out.pairs.end(),
                     [](const SkewPair& x, const SkewPair& y) { return x.mag > y.mag; });
    return out;
}

std::vector<double> paired_values(const SkewPairing& p, std::size_t n)
{
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < p.pairs.size(); ++k) {
        out[2 * k] = p.pairs[k].mag;
        out[2 * k + 1] = -p.pairs[k].mag;
    }
    return out;
}

} // namespace

SymEigen canonicalize(SymEigen e)
{
    const std::size_t n = e.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(e.values[a]);
        const double mb = std::abs(e.values[b]);
        if (ma != mb) return ma > mb;
        return e.values[a] > e.values[b];
    });

    SymEigen out{std::vector<double>(n), RealMatrix(e.vectors.rows(), n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = e.values[order[k]];
        for (std::size_t r = 0; r < e.vectors.rows(); ++r) out.vectors(r, k) = e.vectors(r, order[k]);
        fix_sign(out.vectors, k);
    }
    return out;
}

SkewEigen canonicalize(SkewEigen e)
{
    const std::size_t n = e.imag_values.size();
    const std::size_t rows = e.vectors.rows();
    const SkewPairing pairing = pair_skew_spectrum(e.imag_values);
    const auto& pairs = pairing.pairs;
    const auto& null_slots = pairing.null_slots;

    SkewEigen out{std::vector<double>(n, 0.0), ComplexMatrix(rows, n)};
    std::size_t slot = 0;
    for (const SkewPair& p : pairs) {
        for (std::size_t r = 0; r < rows; ++r) out.vectors(r, slot) = e.vectors(r, p.source);
        fix_phase(out.vectors, slot);
        for (std::size_t r = 0; r < rows; ++r) out.vectors(r, slot + 1) = std::conj(out.vectors(r, slot));
        out.imag_values[slot] = p.mag;
        out.imag_values[slot + 1] = -p.mag;
        slot += 2;
    }

    // The null space of a real matrix has a real basis; rebuild it from the
    // real and imaginary parts of whatever complex basis Jacobi produced.
    const std::size_t z = null_slots.size();
    if (z > 0) {
        RealMatrix basis(rows, z);
        std::size_t found = 0;
        for (std::size_t idx : null_slots) {
            for (int part = 0; part < 2 && found < z; ++part) {
                std::vector<double> cand(rows);
                for (std::size_t r = 0; r < rows; ++r) {
                    cand[r] = part == 0 ? e.vectors(r, idx).real() : e.vectors(r, idx).imag();
                }
                if (orthonormalize_against(cand, basis, found) > 1e-6) {
                    for (std::size_t r = 0; r < rows; ++r) basis(r, found) = cand[r];
                    ++found;
                }
            }
        }
        if (found < z) throw std::runtime_error("eig_skew: could not build a real null-space basis");

        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t j = 0; j + 1 < z; j += 2) {
            for (std::size_t r = 0; r < rows; ++r) {
                out.vectors(r, slot) = Complex(basis(r, j), basis(r, j + 1)) * inv_sqrt2;
            }
            fix_phase(out.vectors, slot);
            for (std::size_t r = 0; r < rows; ++r) out.vectors(r, slot + 1) = std::conj(out.vectors(r, slot));
            slot += 2;
        }
        if (z % 2 == 1) {
            RealMatrix lone(rows, 1);
            for (std::size_t r = 0; r < rows; ++r) lone(r, 0) = basis(r, z - 1);
            fix_sign(lone, 0);
            for (std::size_t r = 0; r < rows; ++r) out.vectors(r, slot) = Complex(lone(r, 0), 0.0);
            ++slot;
        }
    }
    return out;
}

SymEigen eig_sym(const RealMatrix& s, const JacobiOptions& opts)
{
    if (!s.square()) throw std::invalid_argument("eig_sym: matrix is not square");
    require_finite(s, "eig_sym");
    if (!is_symmetric(s)) throw std::invalid_argument("eig_sym: matrix is not symmetric");

    RealMatrix a = s;
    RealMatrix v;
    jacobi_hermitian(a, &v, opts, "eig_sym");
    SymEigen e{std::vector<double>(s.rows()), std::move(v)};
    for (std::size_t i = 0; i < s.rows(); ++i) e.values[i] = a(i, i);
    return canonicalize(std::move(e));
}

SkewEigen eig_skew(const RealMatrix& c, const JacobiOptions& opts)
{
    if (!c.square()) throw std::invalid_argument("eig_skew: matrix is not square");
    require_finite(c, "eig_skew");
    if (!is_skew_symmetric(c)) throw std::invalid_argument("eig_skew: matrix is not skew-symmetric");

    // H = iC is Hermitian with eigenvalues mu = -b where C's are i*b.
    const std::size_t n = c.rows();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = Complex(0.0, c(i, j));
    ComplexMatrix v;
    jacobi_hermitian(h, &v, opts, "eig_skew");
    SkewEigen e{std::vector<double>(n), std::move(v)};
    for (std::size_t i = 0; i < n; ++i) e.imag_values[i] = -h(i, i).real();
    return canonicalize(std::move(e));
}

std::vector<double> eigvals_sym(const RealMatrix& s, const JacobiOptions& opts)
{
    if (!s.square()) throw std::invalid_argument("eigvals_sym: matrix is not square");
    require_finite(s, "eigvals_sym");
    if (!is_symmetric(s)) throw std::invalid_argument("eigvals_sym: matrix is not symmetric");

    RealMatrix a = s;
    jacobi_hermitian<double>(a, nullptr, opts, "eigvals_sym");
    std::vector<double> values(s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) values[i] = a(i, i);
    std::stable_sort(values.begin(), values.end(), [](double x, double y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
        return x > y;
    });
    return values;
}

std::vector<double> eigvals_skew(const RealMatrix& c, const JacobiOptions& opts)
{
    if (!c.square()) throw std::invalid_argument("eigvals_skew: matrix is not square");
    require_finite(c, "eigvals_skew");
    if (!is_skew_symmetric(c)) throw std::invalid_argument("eigvals_skew: matrix is not skew-symmetric");

    const std::size_t n = c.rows();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = Complex(0.0, c(i, j));
    jacobi_hermitian<Complex>(h, nullptr, opts, "eigvals_skew");
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = -h(i, i).real();
    return paired_values(pair_skew_spectrum(b), n);
}

std::vector<double> singular_values(const RealMatrix& a, const JacobiOptions& opts)
{
    if (!a.square()) throw std::invalid_argument("singular_values: matrix is not square");
    require_finite(a, "singular_values");
    std::vector<double> s = eigvals_sym(multiply(transpose(a), a), opts);
    for (double& x : s) x = std::sqrt(std::max(x, 0.0));
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

SvdResult svd(const RealMatrix& a, const JacobiOptions& opts)
{
    if (!a.square()) throw std::invalid_argument("svd: matrix is not square");
    require_finite(a, "svd");
    const std::size_t n = a.rows();

    SymEigen gram = eig_sym(multiply(transpose(a), a), opts);

    // ||A v_k|| is the singular value; it is more accurate for small s_k
    // than the square root of the Gram eigenvalue.
    RealMatrix av = multiply(a, gram.vectors);
    std::vector<double> norms(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) s2 += av(r, k) * av(r, k);
        norms[k] = std::sqrt(s2);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SvdResult out{RealMatrix(n, n), std::vector<double>(n), RealMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.s[k] = norms[order[k]];
        for (std::size_t r = 0; r < n; ++r) out.v(r, k) = gram.vectors(r, order[k]);
    }

    const double rank_tol = n > 0 ? 1e-12 * out.s[0] : 0.0;
    std::size_t filled = 0;
    for (std::size_t k = 0; k < n && out.s[k] > rank_tol; ++k) {
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = av(r, order[k]) / out.s[k];
        orthonormalize_against(col, out.u, filled);
        for (std::size_t r = 0; r < n; ++r) out.u(r, filled) = col[r];
        ++filled;
    }
    const std::size_t rank = filled;
    for (std::size_t k = rank; k < n; ++k) out.s[k] = std::max(out.s[k], 0.0);
    for (std::size_t e = 0; e < n && filled < n; ++e) {
        std::vector<double> col(n, 0.0);
        col[e] = 1.0;
        if (orthonormalize_against(col, out.u, filled) > 1e-8) {
            for (std::size_t r = 0; r < n; ++r) out.u(r, filled) = col[r];
            ++filled;
        }
    }
    return out;
}

RealMatrix reassemble(const SymEigen& e) { return scale_columns_product(e.vectors, e.values, e.vectors); }

ComplexMatrix reassemble(const SkewEigen& e)
{
    std::vector<Complex> d(e.imag_values.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = Complex(0.0, e.imag_values[k]);
    return scale_columns_product(e.vectors, d);
}

RealMatrix reassemble(const SvdResult& r) { return scale_columns_product(r.u, r.s, r.v); }

} // namespace nmwm
