#include "nmwm/metrics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nmwm {

namespace {

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": images differ in shape");
    }
    if (a.empty()) throw std::invalid_argument(std::string(what) + ": empty image");
}

template <typename T>
double mse_impl(const Matrix<T>& a, const Matrix<T>& b)
{
    require_same_shape(a, b, "mse");
    double s = 0.0;
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < ad.size(); ++i) {
        const double d = static_cast<double>(ad[i]) - static_cast<double>(bd[i]);
        s += d * d;
    }
    return s / static_cast<double>(ad.size());
}

} // namespace

double mse(const ImageU8& a, const ImageU8& b) { return mse_impl(a, b); }
double mse(const RealMatrix& a, const RealMatrix& b) { return mse_impl(a, b); }

double psnr_from_mse(double mse_value)
{
    if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

double psnr(const ImageU8& a, const ImageU8& b) { return psnr_from_mse(mse(a, b)); }
double psnr(const RealMatrix& a, const RealMatrix& b) { return psnr_from_mse(mse(a, b)); }

double ber(const ImageU8& w, const ImageU8& w_est)
{
    require_same_shape(w, w_est, "ber");
    std::size_t errors = 0;
    auto a = w.data();
    auto b = w_est.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        errors += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
    }
    return 100.0 * static_cast<double>(errors) / (8.0 * static_cast<double>(a.size()));
}

} // namespace nmwm
