#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace nmwm {

using Complex = std::complex<double>;

/// Dense row-major matrix. Used for real images (double), complex
/// eigenvector sets (Complex) and 8-bit images (std::uint8_t).
template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("matrix data length does not match its shape");
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using ImageU8 = Matrix<std::uint8_t>;

// Elementwise arithmetic and products.
RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(double s, const RealMatrix& a);
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix transpose(const RealMatrix& a);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix to_complex(const RealMatrix& a);
RealMatrix real_part(const ComplexMatrix& a);
RealMatrix imag_part(const ComplexMatrix& a);

/// U * diag(d) * V^T, the shape every spectral reconstruction takes.
RealMatrix scale_columns_product(const RealMatrix& u, std::span<const double> d,
                                 const RealMatrix& v);
/// U * diag(d) * U^*.
ComplexMatrix scale_columns_product(const ComplexMatrix& u, std::span<const Complex> d);

double frobenius_norm(const RealMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double frobenius_inner(const RealMatrix& a, const RealMatrix& b);
double max_abs(const RealMatrix& a);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);
bool all_finite(const RealMatrix& a);

/// B = (M + M^T) / 2.
RealMatrix symmetric_part(const RealMatrix& m);
/// C = (M - M^T) / 2.
RealMatrix skew_part(const RealMatrix& m);

bool is_symmetric(const RealMatrix& m, double rel_tol = 1e-12);
bool is_skew_symmetric(const RealMatrix& m, double rel_tol = 1e-12);

/// Row-major values strictly above the diagonal (n(n-1)/2 of them), or
/// including the diagonal (n(n+1)/2) when include_diagonal is set.
std::vector<double> upper_triangle(const RealMatrix& m, bool include_diagonal);

/// Rebuilds Y from its symmetric part and its strict upper triangle using
/// 2B = Y + Y^T. The diagonal comes from B.
RealMatrix reconstruct_from_sym(const RealMatrix& sym, std::span<const double> strict_upper);

/// Rebuilds Y from its skew part and its upper triangle (diagonal included)
/// using 2C = Y - Y^T.
RealMatrix reconstruct_from_skew(const RealMatrix& skew, std::span<const double> upper_with_diag);

/// Round half away from zero, clamp to [0, 255].
std::uint8_t quantize_pixel(double v);
ImageU8 quantize_u8(const RealMatrix& m);
RealMatrix to_real(const ImageU8& img);

} // namespace nmwm
