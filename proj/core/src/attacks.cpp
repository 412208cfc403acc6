#include "nmwm/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmwm/rng.hpp"

namespace nmwm {

namespace {

constexpr std::array<int, 64> kLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  //
    12, 12, 14, 19, 26,  58,  60,  55,  //
    14, 13, 16, 24, 40,  57,  69,  56,  //
    14, 17, 22, 29, 51,  87,  80,  62,  //
    18, 22, 37, 56, 68,  109, 103, 77,  //
    24, 35, 55, 64, 81,  104, 113, 92,  //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
};

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n)
{
    if (i < 0) return 0;
    if (static_cast<std::size_t>(i) >= n) return n - 1;
    return static_cast<std::size_t>(i);
}

// Orthonormal DCT-II basis: row u holds c_u cos((2x + 1) u pi / 16).
std::array<double, 64> dct_basis()
{
    std::array<double, 64> t{};
    for (int u = 0; u < 8; ++u) {
        const double c = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
        for (int x = 0; x < 8; ++x) t[u * 8 + x] = c * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
    }
    return t;
}

ImageU8 linear_filter(const ImageU8& img, const std::vector<double>& kernel, int window)
{
    const int r = window / 2;
    ImageU8 out(img.rows(), img.cols());
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) {
            double acc = 0.0;
            std::size_t k = 0;
            for (int di = -r; di <= r; ++di) {
                const std::size_t y = clamp_index(static_cast<std::ptrdiff_t>(i) + di, img.rows());
                for (int dj = -r; dj <= r; ++dj) {
                    const std::size_t x = clamp_index(static_cast<std::ptrdiff_t>(j) + dj, img.cols());
                    acc += kernel[k++] * img(y, x);
                }
            }
            out(i, j) = quantize_pixel(acc);
        }
    }
    return out;
}

ImageU8 median_filter(const ImageU8& img, int window)
{
    const int r = window / 2;
    ImageU8 out(img.rows(), img.cols());
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(window * window));
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) {
            std::size_t k = 0;
            for (int di = -r; di <= r; ++di) {
                const std::size_t y = clamp_index(static_cast<std::ptrdiff_t>(i) + di, img.rows());
                for (int dj = -r; dj <= r; ++dj) {
                    buf[k++] = img(y, clamp_index(static_cast<std::ptrdiff_t>(j) + dj, img.cols()));
                }
            }
            auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
            std::nth_element(buf.begin(), mid, buf.end());
            out(i, j) = *mid;
        }
    }
    return out;
}

ImageU8 wiener_filter(const ImageU8& img, int window)
{
    const int r = window / 2;
    const double count = static_cast<double>(window * window);
    RealMatrix mean(img.rows(), img.cols());
    RealMatrix var(img.rows(), img.cols());
    double noise = 0.0;
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) {
            double s = 0.0;
            double s2 = 0.0;
            for (int di = -r; di <= r; ++di) {
                const std::size_t y = clamp_index(static_cast<std::ptrdiff_t>(i) + di, img.rows());
                for (int dj = -r; dj <= r; ++dj) {
                    const double v = img(y, clamp_index(static_cast<std::ptrdiff_t>(j) + dj, img.cols()));
                    s += v;
                    s2 += v * v;
                }
            }
            mean(i, j) = s / count;
            var(i, j) = std::max(0.0, s2 / count - mean(i, j) * mean(i, j));
            noise += var(i, j);
        }
    }
    noise /= static_cast<double>(img.size());

    ImageU8 out(img.rows(), img.cols());
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) {
            const double denom = std::max(var(i, j), noise);
            const double gain = denom > 0.0 ? std::max(0.0, var(i, j) - noise) / denom : 0.0;
            out(i, j) = quantize_pixel(mean(i, j) + gain * (img(i, j) - mean(i, j)));
        }
    }
    return out;
}

} // namespace

const char* attack_name(AttackKind kind)
{
    switch (kind) {
    case AttackKind::median: return "median";
    case AttackKind::gaussian_lp: return "gaussian_lp";
    case AttackKind::average: return "average";
    case AttackKind::wiener: return "wiener";
    case AttackKind::jpeg: return "jpeg";
    case AttackKind::awgn: return "awgn";
    case AttackKind::salt_pepper: return "salt_pepper";
    case AttackKind::resize: return "resize";
    case AttackKind::intensity: return "intensity";
    }
    return "unknown";
}

std::optional<AttackKind> attack_kind_from_name(std::string_view name)
{
    for (AttackKind k : {AttackKind::median, AttackKind::gaussian_lp, AttackKind::average, AttackKind::wiener,
                         AttackKind::jpeg, AttackKind::awgn, AttackKind::salt_pepper, AttackKind::resize,
                         AttackKind::intensity}) {
        if (name == attack_name(k)) return k;
    }
    return std::nullopt;
}

ImageU8 filter_attack(const ImageU8& img, AttackKind kind, int window, double kernel_sigma)
{
    if (window < 3 || window % 2 == 0) {
        throw std::invalid_argument("filter: window must be odd and at least 3, got " + std::to_string(window));
    }
    const int r = window / 2;
    switch (kind) {
    case AttackKind::median: return median_filter(img, window);
    case AttackKind::wiener: return wiener_filter(img, window);
    case AttackKind::average:
        return linear_filter(img, std::vector<double>(static_cast<std::size_t>(window * window),
                                                      1.0 / static_cast<double>(window * window)),
                             window);
    case AttackKind::gaussian_lp: {
        if (!(kernel_sigma > 0.0)) throw std::invalid_argument("filter: gaussian sigma must be positive");
        std::vector<double> kernel;
        double sum = 0.0;
        for (int di = -r; di <= r; ++di) {
            for (int dj = -r; dj <= r; ++dj) {
                const double w = std::exp(-(di * di + dj * dj) / (2.0 * kernel_sigma * kernel_sigma));
                kernel.push_back(w);
                sum += w;
            }
        }
        for (double& w : kernel) w /= sum;
        return linear_filter(img, kernel, window);
    }
    default: throw std::invalid_argument(std::string("filter: ") + attack_name(kind) + " is not a window filter");
    }
}

std::array<int, 64> jpeg_quant_table(int quality)
{
    if (quality < 1 || quality > 100) {
        throw std::invalid_argument("jpeg: quality must be in 1..100, got " + std::to_string(quality));
    }
    const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    std::array<int, 64> table{};
    for (std::size_t k = 0; k < 64; ++k) table[k] = std::clamp((kLuminanceTable[k] * scale + 50) / 100, 1, 255);
    return table;
}

ImageU8 jpeg_attack(const ImageU8& img, int quality)
{
    const auto table = jpeg_quant_table(quality);
    static const auto basis = dct_basis();
    const std::size_t rows = img.rows();
    const std::size_t cols = img.cols();
    ImageU8 out(rows, cols);

    std::array<double, 64> block{};
    std::array<double, 64> tmp{};
    for (std::size_t bi = 0; bi < rows; bi += 8) {
        for (std::size_t bj = 0; bj < cols; bj += 8) {
            // Edge replication pads partial blocks.
            for (std::size_t y = 0; y < 8; ++y)
                for (std::size_t x = 0; x < 8; ++x)
                    block[y * 8 + x] = img(std::min(bi + y, rows - 1), std::min(bj + x, cols - 1)) - 128.0;

            // F = T f T^T
            for (int u = 0; u < 8; ++u)
                for (int x = 0; x < 8; ++x) {
                    double s = 0.0;
                    for (int y = 0; y < 8; ++y) s += basis[u * 8 + y] * block[y * 8 + x];
                    tmp[u * 8 + x] = s;
                }
            for (int u = 0; u < 8; ++u)
                for (int v = 0; v < 8; ++v) {
                    double s = 0.0;
                    for (int x = 0; x < 8; ++x) s += tmp[u * 8 + x] * basis[v * 8 + x];
                    const double q = table[u * 8 + v];
                    block[u * 8 + v] = std::round(s / q) * q;
                }

            // f = T^T F T
            for (int y = 0; y < 8; ++y)
                for (int v = 0; v < 8; ++v) {
                    double s = 0.0;
                    for (int u = 0; u < 8; ++u) s += basis[u * 8 + y] * block[u * 8 + v];
                    tmp[y * 8 + v] = s;
                }
            for (std::size_t y = 0; y < 8 && bi + y < rows; ++y)
                for (std::size_t x = 0; x < 8 && bj + x < cols; ++x) {
                    double s = 0.0;
                    for (std::size_t v = 0; v < 8; ++v) s += tmp[y * 8 + v] * basis[v * 8 + x];
                    out(bi + y, bj + x) = quantize_pixel(s + 128.0);
                }
        }
    }
    return out;
}

ImageU8 noise_attack(const ImageU8& img, AttackKind kind, double amount, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    ImageU8 out = img;
    if (kind == AttackKind::awgn) {
        if (!(amount >= 0.0)) throw std::invalid_argument("awgn: sigma must be non-negative");
        for (auto& p : out.data()) p = quantize_pixel(p + std::round(amount * rng.gaussian()));
        return out;
    }
    if (kind == AttackKind::salt_pepper) {
        if (!(amount >= 0.0 && amount <= 1.0)) {
            throw std::invalid_argument("salt_pepper: density must be in [0, 1], got " + std::to_string(amount));
        }
        for (auto& p : out.data()) {
            if (rng.uniform() < amount) p = (rng.next() >> 63) != 0 ? 255 : 0;
        }
        return out;
    }
    throw std::invalid_argument(std::string("noise: ") + attack_name(kind) + " is not a noise attack");
}

RealMatrix resize_bilinear(const RealMatrix& src, std::size_t rows, std::size_t cols)
{
    if (src.empty() || rows == 0 || cols == 0) throw std::invalid_argument("resize: empty image");
    const double sy = static_cast<double>(src.rows()) / static_cast<double>(rows);
    const double sx = static_cast<double>(src.cols()) / static_cast<double>(cols);
    auto coord = [](std::size_t dst, double scale, std::size_t n, std::size_t& lo, std::size_t& hi, double& frac) {
        double c = (static_cast<double>(dst) + 0.5) * scale - 0.5;
        c = std::clamp(c, 0.0, static_cast<double>(n - 1));
        lo = static_cast<std::size_t>(std::floor(c));
        hi = std::min(lo + 1, n - 1);
        frac = c - static_cast<double>(lo);
    };
    RealMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        std::size_t y0, y1;
        double fy;
        coord(i, sy, src.rows(), y0, y1, fy);
        for (std::size_t j = 0; j < cols; ++j) {
            std::size_t x0, x1;
            double fx;
            coord(j, sx, src.cols(), x0, x1, fx);
            const double top = src(y0, x0) * (1.0 - fx) + src(y0, x1) * fx;
            const double bottom = src(y1, x0) * (1.0 - fx) + src(y1, x1) * fx;
            out(i, j) = top * (1.0 - fy) + bottom * fy;
        }
    }
    return out;
}

ImageU8 resize_attack(const ImageU8& img, std::size_t intermediate_size)
{
    if (intermediate_size < 2) throw std::invalid_argument("resize: intermediate size must be at least 2");
    const auto cols = static_cast<std::size_t>(std::max<long long>(
        1, std::llround(static_cast<double>(img.cols()) * static_cast<double>(intermediate_size) /
                        static_cast<double>(img.rows()))));
    const ImageU8 mid = quantize_u8(resize_bilinear(to_real(img), intermediate_size, cols));
    return quantize_u8(resize_bilinear(to_real(mid), img.rows(), img.cols()));
}

ImageU8 intensity_adjust(const ImageU8& img, double low_pct, double high_pct)
{
    if (!(low_pct >= 0.0 && high_pct <= 100.0 && low_pct < high_pct)) {
        throw std::invalid_argument("intensity: need 0 <= low_pct < high_pct <= 100");
    }
    if (img.empty()) return img;
    std::vector<std::uint8_t> sorted(img.data().begin(), img.data().end());
    std::sort(sorted.begin(), sorted.end());
    // Nearest-rank percentile.
    auto percentile = [&](double pct) {
        const double rank = std::ceil(pct / 100.0 * static_cast<double>(sorted.size()));
        const std::size_t idx = rank < 1.0 ? 0 : std::min(sorted.size() - 1, static_cast<std::size_t>(rank) - 1);
        return static_cast<double>(sorted[idx]);
    };
    const double lo = percentile(low_pct);
    const double hi = percentile(high_pct);
    if (lo == hi) return img;
    ImageU8 out(img.rows(), img.cols());
    auto o = out.data();
    auto src = img.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = quantize_pixel((src[i] - lo) * 255.0 / (hi - lo));
    return out;
}

ImageU8 apply_attack(const ImageU8& img, const AttackSpec& spec)
{
    switch (spec.kind) {
    case AttackKind::median:
    case AttackKind::gaussian_lp:
    case AttackKind::average:
    case AttackKind::wiener: return filter_attack(img, spec.kind, spec.window, spec.kernel_sigma);
    case AttackKind::jpeg: return jpeg_attack(img, spec.quality);
    case AttackKind::awgn: return noise_attack(img, spec.kind, spec.sigma, spec.seed);
    case AttackKind::salt_pepper: return noise_attack(img, spec.kind, spec.density, spec.seed);
    case AttackKind::resize: return resize_attack(img, spec.intermediate_size);
    case AttackKind::intensity: return intensity_adjust(img, spec.low_pct, spec.high_pct);
    }
    throw std::invalid_argument("attack: unknown kind");
}

} // namespace nmwm
