#pragma once

#include "nmwm/matrix.hpp"

namespace nmwm {

/// Mean squared error over all pixels. Throws on shape mismatch.
double mse(const ImageU8& a, const ImageU8& b);
double mse(const RealMatrix& a, const RealMatrix& b);

/// 10 log10(255^2 / mse) in decibels; +infinity when mse is zero.
double psnr_from_mse(double mse_value);
double psnr(const ImageU8& a, const ImageU8& b);
double psnr(const RealMatrix& a, const RealMatrix& b);

/// Percentage of differing bits over all 8 bit planes.
double ber(const ImageU8& w, const ImageU8& w_est);

} // namespace nmwm
