#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "nmwm/codec.hpp"
#include "nmwm/matrix.hpp"

namespace nmwm {

using Bytes = std::vector<std::uint8_t>;

/// Malformed or unsupported file contents.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary PGM ("P5", maxval 255). Comments are accepted on read.
Bytes write_pgm(const ImageU8& img);
ImageU8 read_pgm(std::span<const std::uint8_t> bytes);

// Key file: "NMWK", version 1, method byte, alpha (f64 LE), n and m
// (u32 LE), then the payload matrices as f64 LE, row-major, complex
// entries as (re, im). A block-mode key file is several records back to back.
inline constexpr std::size_t kKeyHeaderSize = 4 + 1 + 1 + 8 + 4 + 4;
std::size_t key_payload_size(Method method, std::size_t n, std::size_t m);
Bytes write_key(const WatermarkKey& key);
Bytes write_keys(std::span<const WatermarkKey> keys);
WatermarkKey read_key(std::span<const std::uint8_t> bytes);
std::vector<WatermarkKey> read_keys(std::span<const std::uint8_t> bytes);

// Float image: "NMIF", rows and cols (u32 LE), f64 LE pixels row-major.
Bytes write_float_image(const RealMatrix& img);
RealMatrix read_float_image(std::span<const std::uint8_t> bytes);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace nmwm
