#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nmwm/attacks.hpp"
#include "nmwm/codec.hpp"

namespace nmwm::cli {

struct PsnrRow {
    std::string host;
    Method method;
    double alpha;
    double psnr_db;
};

struct BerRow {
    std::string attack;
    Method method;
    double ber_pct;
};

/// A named attack of the robustness battery.
struct BenchAttack {
    std::string id;
    AttackSpec spec;
};

/// The eleven attacks of the robustness table for an n-row image.
std::vector<BenchAttack> standard_attacks(std::size_t n, std::uint64_t seed);

/// Parses "a:step:b" or a comma separated list.
std::vector<double> parse_alphas(const std::string& text);
std::vector<Method> parse_methods(const std::string& text);

struct NamedImage {
    std::string id;
    ImageU8 image;
};

/// All *.pgm files of `dir`, sorted by file name.
std::vector<NamedImage> load_hosts(const std::filesystem::path& dir);

/// One row per (host, method, alpha), sorted by host, method, alpha.
/// Hosts are processed concurrently.
std::vector<PsnrRow> psnr_table(const std::vector<NamedImage>& hosts, const ImageU8& watermark,
                                const std::vector<Method>& methods, const std::vector<double>& alphas,
                                bool quantized);

/// BER of the extracted watermark after each attack on the quantized
/// watermarked image. One row per (attack, method), in attack order.
std::vector<BerRow> ber_table(const ImageU8& host, const ImageU8& watermark, const std::vector<Method>& methods,
                              const std::vector<BenchAttack>& attacks, double alpha);

std::string format_psnr_csv(const std::vector<PsnrRow>& rows);
std::string format_ber_csv(const std::vector<BerRow>& rows);

/// "inf" for infinities, otherwise fixed notation with `digits` decimals.
std::string format_number(double v, int digits);

} // namespace nmwm::cli
