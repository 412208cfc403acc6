#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "nmwm/eigen.hpp"
#include "nmwm/matrix.hpp"

namespace nmwm {

/// Embedding schemes. The numeric values are the method byte of the key
/// file and the method number on the command line.
enum class Method : std::uint8_t {
    sym = 1,  // symmetric parts, strict upper triangle of the host kept
    skew = 2, // skew-symmetric parts, upper triangle and diagonal kept
    dual = 3, // both parts, alpha shared equally
    svd = 4,  // singular value baseline
};

const char* method_name(Method m);
std::optional<Method> method_from_number(int n);

enum class SizeMode { spectral_pad, block };

struct EmbedConfig {
    Method method = Method::dual;
    double alpha = 1.0;
    SizeMode size_mode = SizeMode::spectral_pad;
    /// Round the watermarked image to 8-bit gray levels.
    bool quantize_output = true;
};

// Key payloads, one per method, in key-file field order.
//
// The symmetric watermark eigenvector matrices are stored with each column
// multiplied by the sign of its eigenvalue (zero counts as positive). The
// factorization B_W = U diag(lambda) U^T is unchanged by this, and the
// dominant entry of a stored column then tells extraction on which side of
// the signed host spectrum that eigenvalue was placed.
struct SymPayload {
    std::vector<double> host_values;   // canonical eigenvalues of the host's symmetric part
    RealMatrix wm_vectors;             // m x m, sign-tagged
    std::vector<double> wm_triangle;   // upper triangle of W with diagonal, row-major
    bool operator==(const SymPayload&) const = default;
};

struct SkewPayload {
    std::vector<double> host_imag_values;  // canonical imaginary parts of the host's skew spectrum
    ComplexMatrix wm_vectors;              // m x m unitary
    std::vector<double> wm_triangle;
    bool operator==(const SkewPayload&) const = default;
};

struct DualPayload {
    std::vector<double> host_sym_values;
    std::vector<double> host_skew_values;
    RealMatrix wm_sym_vectors;  // sign-tagged
    ComplexMatrix wm_skew_vectors;
    bool operator==(const DualPayload&) const = default;
};

struct SvdPayload {
    std::vector<double> host_singular;
    RealMatrix wm_u;
    RealMatrix wm_v;
    bool operator==(const SvdPayload&) const = default;
};

using KeyPayload = std::variant<SymPayload, SkewPayload, DualPayload, SvdPayload>;

/// Everything extraction needs besides the received image.
struct WatermarkKey {
    double alpha = 0.0;
    std::uint32_t n = 0; // host (or block) side
    std::uint32_t m = 0; // watermark side
    KeyPayload payload;

    Method method() const;
    /// Throws std::invalid_argument when payload sizes disagree with n and m.
    void validate() const;
    bool operator==(const WatermarkKey&) const = default;
};

struct EmbedResult {
    RealMatrix watermarked;
    WatermarkKey key;
};

/// Estimated watermark plus the recovered spectra, scaled back by alpha.
struct ExtractResult {
    RealMatrix watermark;
    std::vector<double> sym_spectrum;  // empty for methods without a symmetric part
    std::vector<double> skew_spectrum; // imaginary parts; empty unless skew or dual
    std::vector<double> singular_spectrum; // svd only
};

/// Zero-extends a length-m spectrum to length n.
std::vector<double> pad_spectrum(std::span<const double> values, std::size_t n);

EmbedResult embed_sym(const RealMatrix& host, const RealMatrix& watermark, double alpha);
EmbedResult embed_skew(const RealMatrix& host, const RealMatrix& watermark, double alpha);
EmbedResult embed_dual(const RealMatrix& host, const RealMatrix& watermark, double alpha);
EmbedResult embed_svd(const RealMatrix& host, const RealMatrix& watermark, double alpha);

ExtractResult extract_sym(const RealMatrix& received, const WatermarkKey& key);
ExtractResult extract_skew(const RealMatrix& received, const WatermarkKey& key);
ExtractResult extract_dual(const RealMatrix& received, const WatermarkKey& key);
ExtractResult extract_svd(const RealMatrix& received, const WatermarkKey& key);

/// Dispatches on key.method().
ExtractResult extract(const RealMatrix& received, const WatermarkKey& key);

/// Holds one host/watermark pair and caches their decompositions, so a
/// sweep over methods and strengths decomposes each image once. Not safe
/// for concurrent use; give each thread its own instance.
class SpectralEmbedder {
public:
    SpectralEmbedder(RealMatrix host, RealMatrix watermark, JacobiOptions opts = {});

    EmbedResult embed(Method method, double alpha);

    const RealMatrix& host() const noexcept { return host_; }
    const RealMatrix& watermark() const noexcept { return watermark_; }

private:
    const SymEigen& host_sym();
    const SymEigen& wm_sym();
    const SkewEigen& host_skew();
    const SkewEigen& wm_skew();
    const SvdResult& host_svd();
    const SvdResult& wm_svd();

    RealMatrix host_;
    RealMatrix watermark_;
    JacobiOptions opts_;
    std::optional<SymEigen> host_sym_, wm_sym_;
    std::optional<SkewEigen> host_skew_, wm_skew_;
    std::optional<SvdResult> host_svd_, wm_svd_;
};

/// Result of embedding with an EmbedConfig. `keys` holds one key in
/// spectral-pad mode and one per block (row-major block order) in block mode.
struct EmbedOutput {
    RealMatrix watermarked;
    std::vector<WatermarkKey> keys;
};

EmbedOutput embed(const RealMatrix& host, const RealMatrix& watermark, const EmbedConfig& config);

/// Embeds the whole watermark into every m x m block of the host.
EmbedOutput block_apply(const RealMatrix& host, const RealMatrix& watermark, Method method, double alpha);

/// Extracts from one key, or averages the per-block estimates when given a
/// square number of block keys.
ExtractResult extract(const RealMatrix& received, std::span<const WatermarkKey> keys);

} // namespace nmwm
