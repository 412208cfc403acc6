#include "nmwm/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace nmwm {

namespace {

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
    }
}

void require_square(const RealMatrix& m, const char* what)
{
    if (!m.square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

std::size_t triangle_size(std::size_t n, bool include_diagonal)
{
    return include_diagonal ? n * (n + 1) / 2 : n * (n - 1) / 2;
}

template <typename T>
Matrix<T> multiply_impl(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out_row = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            auto b_row = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
        }
    }
    return out;
}

} // namespace

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b)
{
    require_same_shape(a, b, "add");
    RealMatrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += bd[i];
    return out;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b)
{
    require_same_shape(a, b, "subtract");
    RealMatrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bd[i];
    return out;
}

RealMatrix operator*(double s, const RealMatrix& a)
{
    RealMatrix out = a;
    for (double& v : out.data()) v *= s;
    return out;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) { return multiply_impl(a, b); }
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply_impl(a, b); }

RealMatrix transpose(const RealMatrix& a)
{
    RealMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a)
{
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix to_complex(const RealMatrix& a)
{
    ComplexMatrix out(a.rows(), a.cols());
    auto o = out.data();
    auto src = a.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = Complex(src[i], 0.0);
    return out;
}

RealMatrix real_part(const ComplexMatrix& a)
{
    RealMatrix out(a.rows(), a.cols());
    auto o = out.data();
    auto src = a.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = src[i].real();
    return out;
}

RealMatrix imag_part(const ComplexMatrix& a)
{
    RealMatrix out(a.rows(), a.cols());
    auto o = out.data();
    auto src = a.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = src[i].imag();
    return out;
}

RealMatrix scale_columns_product(const RealMatrix& u, std::span<const double> d, const RealMatrix& v)
{
    if (u.cols() != d.size() || v.cols() != d.size()) {
        throw std::invalid_argument("scale_columns_product: dimension mismatch");
    }
    RealMatrix ud = u;
    for (std::size_t i = 0; i < ud.rows(); ++i)
        for (std::size_t k = 0; k < ud.cols(); ++k) ud(i, k) *= d[k];
    return multiply(ud, transpose(v));
}

ComplexMatrix scale_columns_product(const ComplexMatrix& u, std::span<const Complex> d)
{
    if (u.cols() != d.size()) throw std::invalid_argument("scale_columns_product: dimension mismatch");
    ComplexMatrix ud = u;
    for (std::size_t i = 0; i < ud.rows(); ++i)
        for (std::size_t k = 0; k < ud.cols(); ++k) ud(i, k) *= d[k];
    return multiply(ud, adjoint(u));
}

double frobenius_norm(const RealMatrix& a)
{
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a)
{
    double s = 0.0;
    for (const Complex& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double frobenius_inner(const RealMatrix& a, const RealMatrix& b)
{
    require_same_shape(a, b, "frobenius_inner");
    double s = 0.0;
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < ad.size(); ++i) s += ad[i] * bd[i];
    return s;
}

double max_abs(const RealMatrix& a)
{
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b)
{
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < ad.size(); ++i) m = std::max(m, std::abs(ad[i] - bd[i]));
    return m;
}

bool all_finite(const RealMatrix& a)
{
    return std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); });
}

RealMatrix symmetric_part(const RealMatrix& m)
{
    require_square(m, "symmetric_part");
    const std::size_t n = m.rows();
    RealMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = (m(i, j) + m(j, i)) / 2.0;
    return out;
}

RealMatrix skew_part(const RealMatrix& m)
{
    require_square(m, "skew_part");
    const std::size_t n = m.rows();
    RealMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = (m(i, j) - m(j, i)) / 2.0;
    return out;
}

bool is_symmetric(const RealMatrix& m, double rel_tol)
{
    if (!m.square()) return false;
    const double bound = rel_tol * std::max(frobenius_norm(m), 1.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > bound) return false;
    return true;
}

bool is_skew_symmetric(const RealMatrix& m, double rel_tol)
{
    if (!m.square()) return false;
    const double bound = rel_tol * std::max(frobenius_norm(m), 1.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) + m(j, i)) > bound) return false;
    return true;
}

std::vector<double> upper_triangle(const RealMatrix& m, bool include_diagonal)
{
    require_square(m, "upper_triangle");
    std::vector<double> out;
    out.reserve(triangle_size(m.rows(), include_diagonal));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = include_diagonal ? i : i + 1; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

RealMatrix reconstruct_from_sym(const RealMatrix& sym, std::span<const double> strict_upper)
{
    require_square(sym, "reconstruct_from_sym");
    if (!is_symmetric(sym)) throw std::invalid_argument("reconstruct_from_sym: input is not symmetric");
    const std::size_t n = sym.rows();
    if (strict_upper.size() != triangle_size(n, false)) {
        throw std::invalid_argument("reconstruct_from_sym: reference triangle has the wrong length");
    }
    RealMatrix y(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        y(i, i) = sym(i, i);
        for (std::size_t j = i + 1; j < n; ++j) y(i, j) = strict_upper[k++];
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y(i, j) = 2.0 * sym(i, j) - y(j, i);
    return y;
}

RealMatrix reconstruct_from_skew(const RealMatrix& skew, std::span<const double> upper_with_diag)
{
    require_square(skew, "reconstruct_from_skew");
    if (!is_skew_symmetric(skew)) {
        throw std::invalid_argument("reconstruct_from_skew: input is not skew-symmetric");
    }
    const std::size_t n = skew.rows();
    if (upper_with_diag.size() != triangle_size(n, true)) {
        throw std::invalid_argument("reconstruct_from_skew: reference triangle has the wrong length");
    }
    RealMatrix y(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) y(i, j) = upper_with_diag[k++];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y(i, j) = 2.0 * skew(i, j) + y(j, i);
    return y;
}

std::uint8_t quantize_pixel(double v)
{
    if (!(v > 0.0)) return 0; // also maps NaN to 0
    const double r = std::round(v); // half away from zero
    return r >= 255.0 ? 255 : static_cast<std::uint8_t>(r);
}

ImageU8 quantize_u8(const RealMatrix& m)
{
    ImageU8 out(m.rows(), m.cols());
    auto o = out.data();
    auto src = m.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = quantize_pixel(src[i]);
    return out;
}

RealMatrix to_real(const ImageU8& img)
{
    RealMatrix out(img.rows(), img.cols());
    auto o = out.data();
    auto src = img.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = static_cast<double>(src[i]);
    return out;
}

} // namespace nmwm
