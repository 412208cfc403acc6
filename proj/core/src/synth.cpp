#include "nmwm/synth.hpp"

#include <algorithm>
#include <cmath>

#include "nmwm/rng.hpp"

namespace nmwm {

ImageU8 uniform_image(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    ImageU8 img(rows, cols);
    for (auto& p : img.data()) p = static_cast<std::uint8_t>(rng.next() >> 56);
    return img;
}

ImageU8 natural_image(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    const double h = static_cast<double>(rows);
    const double w = static_cast<double>(cols);
    RealMatrix f(rows, cols);

    const double base = 60.0 + 80.0 * rng.uniform();
    const double gy = (rng.uniform() - 0.5) * 80.0;
    const double gx = (rng.uniform() - 0.5) * 80.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) f(i, j) = base + gy * (i / h - 0.5) + gx * (j / w - 0.5);

    for (int b = 0; b < 12; ++b) {
        const double cy = rng.uniform() * h;
        const double cx = rng.uniform() * w;
        const double radius = (0.05 + 0.2 * rng.uniform()) * std::min(h, w);
        const double amp = (rng.uniform() - 0.5) * 120.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const double d2 = (i - cy) * (i - cy) + (j - cx) * (j - cx);
                f(i, j) += amp * std::exp(-d2 / (2.0 * radius * radius));
            }
    }

    for (int r = 0; r < 5; ++r) {
        const double y0 = rng.uniform() * h;
        const double x0 = rng.uniform() * w;
        const double y1 = y0 + (0.1 + 0.3 * rng.uniform()) * h;
        const double x1 = x0 + (0.1 + 0.3 * rng.uniform()) * w;
        const double amp = (rng.uniform() - 0.5) * 70.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i >= y0 && i < y1 && j >= x0 && j < x1) f(i, j) += amp;
    }

    for (double& v : f.data()) v += 3.0 * rng.gaussian();
    return quantize_u8(f);
}

ImageU8 emblem_image(std::size_t side, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    const double s = static_cast<double>(side);
    RealMatrix f(side, side, 235.0);
    const double c = s / 2.0;
    const double ring_r = s * (0.36 + 0.06 * rng.uniform());
    const double ring_w = s * 0.05;
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const double dy = i + 0.5 - c;
            const double dx = j + 0.5 - c;
            const double r = std::sqrt(dx * dx + dy * dy);
            if (std::abs(r - ring_r) < ring_w) f(i, j) = 30.0;
        }
    }
    for (int k = 0; k < 3; ++k) {
        const double y0 = s * (0.25 + 0.35 * rng.uniform());
        const double x0 = s * (0.25 + 0.35 * rng.uniform());
        const double hh = s * (0.08 + 0.12 * rng.uniform());
        const double ww = s * (0.05 + 0.1 * rng.uniform());
        const double level = 20.0 + 120.0 * rng.uniform();
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; j < side; ++j)
                if (i >= y0 && i < y0 + hh && j >= x0 && j < x0 + ww) f(i, j) = level;
    }
    // Diagonal bar makes the emblem clearly non-symmetric.
    for (std::size_t i = 0; i < side; ++i) {
        const double j0 = 0.15 * s + 0.45 * i;
        for (std::size_t j = 0; j < side; ++j)
            if (std::abs(j - j0) < s * 0.03) f(i, j) = 90.0;
    }
    return quantize_u8(f);
}

RealMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo, double hi)
{
    SplitMix64 rng(seed);
    RealMatrix m(rows, cols);
    for (double& v : m.data()) v = lo + (hi - lo) * rng.uniform();
    return m;
}

} // namespace nmwm
