#pragma once

#include <cstddef>
#include <cstdint>

#include "nmwm/matrix.hpp"

namespace nmwm {

/// Seeded test images. The classic test photographs are not redistributable,
/// so benchmarks and tests draw their hosts and watermarks from these.

/// Independent uniform gray levels in [0, 255].
ImageU8 uniform_image(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Natural-statistics stand-in: a smooth illumination gradient, soft blobs,
/// a few hard-edged shapes and mild sensor noise.
ImageU8 natural_image(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Logo-like watermark: flat background with bold shapes and an outline.
ImageU8 emblem_image(std::size_t side, std::uint64_t seed);

/// Real matrix with entries uniform in [lo, hi).
RealMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

} // namespace nmwm
