#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "nmwm/matrix.hpp"

namespace nmwm {

enum class AttackKind { median, gaussian_lp, average, wiener, jpeg, awgn, salt_pepper, resize, intensity };

const char* attack_name(AttackKind kind);
std::optional<AttackKind> attack_kind_from_name(std::string_view name);

/// Parameters for one attack. Only the fields relevant to `kind` are read.
struct AttackSpec {
    AttackKind kind = AttackKind::median;
    int window = 3;                    // odd, >= 3 (filters)
    double kernel_sigma = 0.5;         // gaussian_lp
    int quality = 75;                  // jpeg, 1..100
    double sigma = 5.0;                // awgn, gray levels
    double density = 0.01;             // salt_pepper
    std::size_t intermediate_size = 0; // resize
    double low_pct = 1.0;              // intensity
    double high_pct = 99.0;            // intensity
    std::uint64_t seed = 0;            // awgn, salt_pepper
};

/// Window filters with replicated borders: median, gaussian_lp, average or
/// wiener (local adaptive, noise power estimated as the mean local variance).
ImageU8 filter_attack(const ImageU8& img, AttackKind kind, int window = 3, double kernel_sigma = 0.5);

/// JPEG-style loss: 8x8 orthonormal DCT, quantization with the standard
/// luminance table scaled for `quality`, reconstruction. No entropy coding.
ImageU8 jpeg_attack(const ImageU8& img, int quality);

/// awgn adds round(N(0, amount^2)); salt_pepper corrupts a pixel with
/// probability `amount`. Both draw from a splitmix64 stream seeded by `seed`.
ImageU8 noise_attack(const ImageU8& img, AttackKind kind, double amount, std::uint64_t seed);

/// Bilinear resize to `intermediate_size` rows (columns scaled to match) and
/// back to the original shape, quantizing after each step.
ImageU8 resize_attack(const ImageU8& img, std::size_t intermediate_size);

/// Linear stretch sending the low percentile to 0 and the high one to 255.
ImageU8 intensity_adjust(const ImageU8& img, double low_pct = 1.0, double high_pct = 99.0);

ImageU8 apply_attack(const ImageU8& img, const AttackSpec& spec);

/// Bilinear resampling with pixel-center alignment and edge clamping.
RealMatrix resize_bilinear(const RealMatrix& src, std::size_t rows, std::size_t cols);

/// Quantization table for `quality` derived from the standard luminance table.
std::array<int, 64> jpeg_quant_table(int quality);

} // namespace nmwm
