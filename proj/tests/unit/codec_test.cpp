#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "nmwm/codec.hpp"
#include "nmwm/metrics.hpp"
#include "test_support.hpp"

namespace nmwm {
namespace {

using testing::image_matrix;

constexpr Method kMethods[] = {Method::sym, Method::skew, Method::dual, Method::svd};

EmbedResult embed_with(Method method, const RealMatrix& x, const RealMatrix& w, double alpha)
{
    switch (method) {
    case Method::sym: return embed_sym(x, w, alpha);
    case Method::skew: return embed_skew(x, w, alpha);
    case Method::dual: return embed_dual(x, w, alpha);
    case Method::svd: return embed_svd(x, w, alpha);
    }
    throw std::logic_error("unreachable");
}

double sum_sq(std::span<const double> v)
{
    double s = 0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<double> sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

TEST(PadSpectrum, Basics)
{
    const std::vector<double> v{3, 1};
    EXPECT_EQ(pad_spectrum(v, 2), v);
    EXPECT_EQ(pad_spectrum(v, 4), (std::vector<double>{3, 1, 0, 0}));
    EXPECT_THROW(pad_spectrum(std::vector<double>(5, 1.0), 4), std::invalid_argument);
}

TEST(RoundTrip, AllMethodsAndStrengths)
{
    for (Method method : kMethods) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const RealMatrix x = image_matrix(32, seed);
            const RealMatrix w = image_matrix(8, seed + 50);
            for (double alpha : {0.1, 0.5, 1.0, 2.0}) {
                const EmbedResult r = embed_with(method, x, w, alpha);
                const ExtractResult e = extract(r.watermarked, r.key);
                EXPECT_LE(max_abs_diff(e.watermark, w), 1e-6)
                    << method_name(method) << " seed " << seed << " alpha " << alpha;
            }
        }
    }
}

TEST(RoundTrip, WatermarkAsLargeAsHost)
{
    for (Method method : kMethods) {
        const RealMatrix x = image_matrix(16, 9);
        const RealMatrix w = image_matrix(16, 10);
        const EmbedResult r = embed_with(method, x, w, 0.7);
        EXPECT_LE(max_abs_diff(extract(r.watermarked, r.key).watermark, w), 1e-6) << method_name(method);
    }
}

TEST(RoundTrip, OddSides)
{
    for (Method method : kMethods) {
        const RealMatrix x = image_matrix(21, 4);
        const RealMatrix w = image_matrix(7, 5);
        const EmbedResult r = embed_with(method, x, w, 1.0);
        EXPECT_LE(max_abs_diff(extract(r.watermarked, r.key).watermark, w), 1e-6) << method_name(method);
    }
}

TEST(EmbedSym, SpectrumOfOutputIsShiftedHostSpectrum)
{
    const RealMatrix x = random_matrix(8, 8, 11);
    const RealMatrix w = random_matrix(4, 4, 12);
    const double alpha = 0.5;
    const EmbedResult r = embed_sym(x, w, alpha);

    // Positive watermark eigenvalues land on the largest host slots, negative
    // ones on the smallest, both in signed order.
    std::vector<double> host = sorted(eig_sym(symmetric_part(x)).values);
    std::vector<double> wm = sorted(eig_sym(symmetric_part(w)).values);
    std::vector<double> expected = host;
    std::size_t lo = 0, hi = host.size();
    for (double v : wm)
        if (v < 0) expected[lo++] += alpha * v;
    for (auto it = wm.rbegin(); it != wm.rend(); ++it)
        if (*it >= 0) expected[--hi] += alpha * *it;

    const std::vector<double> got = sorted(eig_sym(symmetric_part(r.watermarked)).values);
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], sorted(expected)[k], 1e-9);
}

TEST(EmbedSym, TinyAlphaIsContinuous)
{
    const RealMatrix x = image_matrix(8, 1);
    const RealMatrix w = image_matrix(4, 2);
    const EmbedResult r = embed_sym(x, w, 1e-300);
    EXPECT_LE(max_abs_diff(r.watermarked, x), 1e-290 * frobenius_norm(w));
}

TEST(EmbedSym, ReceivedHostGivesZeroSpectrum)
{
    const RealMatrix x = image_matrix(16, 3);
    const RealMatrix w = image_matrix(4, 4);
    const EmbedResult r = embed_sym(x, w, 1.0);
    const ExtractResult e = extract_sym(x, r.key);
    for (double v : e.sym_spectrum) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(EmbedSkew, SymmetricWatermarkLeavesHostUnchanged)
{
    const RealMatrix x = image_matrix(8, 3);
    const RealMatrix w = testing::random_symmetric(4, 4);
    EXPECT_EQ(embed_skew(x, w, 1.0).watermarked, x);
}

TEST(EmbedSkew, SpectrumOfOutputMatchesTarget)
{
    const RealMatrix x = random_matrix(8, 8, 21);
    const RealMatrix w = random_matrix(4, 4, 22);
    const double alpha = 0.5;
    const std::vector<double> host = eig_skew(skew_part(x)).imag_values;
    const std::vector<double> wm = pad_spectrum(eig_skew(skew_part(w)).imag_values, 8);
    std::vector<double> expected(8);
    for (std::size_t k = 0; k < 8; ++k) expected[k] = host[k] + alpha * wm[k];

    const RealMatrix y = embed_skew(x, w, alpha).watermarked;
    EXPECT_TRUE(is_skew_symmetric(skew_part(y)));
    const std::vector<double> got = sorted(eig_skew(skew_part(y)).imag_values);
    expected = sorted(expected);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(got[k], expected[k], 1e-9);
}

TEST(EmbedSkew, ZeroAlphaKeyRejected)
{
    const RealMatrix x = image_matrix(8, 3);
    const RealMatrix w = image_matrix(4, 4);
    EmbedResult r = embed_skew(x, w, 1.0);
    r.key.alpha = 0.0;
    EXPECT_THROW(extract_skew(x, r.key), std::invalid_argument);
}

TEST(EmbedDual, ZeroWatermarkLeavesHost)
{
    const RealMatrix x = image_matrix(16, 3);
    const RealMatrix y = embed_dual(x, RealMatrix(4, 4, 0.0), 1.0).watermarked;
    EXPECT_LE(max_abs_diff(y, x), 1e-12 * frobenius_norm(x));
    const RealMatrix ys = embed_svd(x, RealMatrix(4, 4, 0.0), 1.0).watermarked;
    EXPECT_LE(max_abs_diff(ys, x), 1e-12 * frobenius_norm(x));
}

TEST(EmbedDual, ReceivedHostGivesZeroWatermark)
{
    const RealMatrix x = image_matrix(16, 3);
    const EmbedResult r = embed_dual(x, image_matrix(4, 8), 1.0);
    EXPECT_LE(max_abs(extract_dual(x, r.key).watermark), 1e-8);
}

TEST(ClosedFormMse, MatchesSpectralEnergy)
{
    const std::size_t n = 32;
    const RealMatrix w = image_matrix(8, 77);
    const double e_sym = sum_sq(eig_sym(symmetric_part(w)).values);
    const double e_skew = sum_sq(eig_skew(skew_part(w)).imag_values);
    const double e_svd = sum_sq(svd(w).s);
    for (std::uint64_t seed : {1u, 2u}) {
        const RealMatrix x = image_matrix(n, seed);
        for (double alpha : {0.2, 1.0, 2.0}) {
            const double nn = static_cast<double>(n * n);
            const double m2 = mse(x, embed_skew(x, w, alpha).watermarked);
            const double m3 = mse(x, embed_dual(x, w, alpha).watermarked);
            const double m4 = mse(x, embed_svd(x, w, alpha).watermarked);
            const double m1 = mse(x, embed_sym(x, w, alpha).watermarked);
            const double a2 = alpha * alpha;
            EXPECT_NEAR(m2 / (2 * a2 * e_skew / nn), 1.0, 1e-8);
            EXPECT_NEAR(m3 / (a2 / 4 * (e_sym + e_skew) / nn), 1.0, 1e-8);
            EXPECT_NEAR(m4 / (a2 * e_svd / nn), 1.0, 1e-8);
            EXPECT_LE(m1, 2 * a2 * e_sym / nn * (1 + 1e-12));
        }
    }
}

TEST(PsnrScaling, TwentyDecibelsPerDecade)
{
    const RealMatrix x = image_matrix(32, 5);
    const RealMatrix w = image_matrix(8, 6);
    for (Method method : kMethods) {
        const double lo = psnr(x, embed_with(method, x, w, 0.2).watermarked);
        const double hi = psnr(x, embed_with(method, x, w, 2.0).watermarked);
        EXPECT_NEAR(lo - hi, 20.0, 1e-3) << method_name(method);
    }
}

TEST(HostIndependence, ClosedFormMethods)
{
    const RealMatrix w = image_matrix(8, 6);
    const RealMatrix x1 = image_matrix(32, 100);
    const RealMatrix x2 = to_real(natural_image(32, 32, 101));
    for (Method method : {Method::skew, Method::dual, Method::svd}) {
        const double p1 = psnr(x1, embed_with(method, x1, w, 1.0).watermarked);
        const double p2 = psnr(x2, embed_with(method, x2, w, 1.0).watermarked);
        EXPECT_NEAR(p1, p2, 1e-6) << method_name(method);
    }
}

TEST(TrianglePreservation, QuantizedOutput)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RealMatrix x = image_matrix(32, seed);
        const RealMatrix w = image_matrix(8, seed + 10);
        const ImageU8 qx = quantize_u8(x);
        const ImageU8 y1 = quantize_u8(embed_sym(x, w, 2.0).watermarked);
        const ImageU8 y2 = quantize_u8(embed_skew(x, w, 2.0).watermarked);
        for (std::size_t i = 0; i < 32; ++i) {
            for (std::size_t j = i; j < 32; ++j) {
                if (j > i) EXPECT_EQ(y1(i, j), qx(i, j));
                EXPECT_EQ(y2(i, j), qx(i, j));
            }
        }
    }
}

TEST(KeyValidation, RejectsWrongShapes)
{
    EmbedResult r = embed_sym(image_matrix(8, 1), image_matrix(4, 2), 1.0);
    EXPECT_NO_THROW(r.key.validate());
    r.key.m = 3;
    EXPECT_THROW(r.key.validate(), std::invalid_argument);
}

TEST(Embed, Errors)
{
    const RealMatrix x = image_matrix(8, 1);
    EXPECT_THROW(embed_sym(x, image_matrix(9, 2), 1.0), std::invalid_argument);
    EXPECT_THROW(embed_sym(x, image_matrix(4, 2), 0.0), std::invalid_argument);
    EXPECT_THROW(embed_dual(x, image_matrix(4, 2), -1.0), std::invalid_argument);
    EXPECT_THROW(embed_svd(RealMatrix(8, 6), image_matrix(4, 2), 1.0), std::invalid_argument);
    const EmbedResult r = embed_sym(x, image_matrix(4, 2), 1.0);
    EXPECT_THROW(extract_skew(x, r.key), std::invalid_argument);
    EXPECT_THROW(extract_sym(image_matrix(6, 1), r.key), std::invalid_argument);
}

TEST(SpectralEmbedder, MatchesFreeFunctions)
{
    const RealMatrix x = image_matrix(16, 1);
    const RealMatrix w = image_matrix(4, 2);
    SpectralEmbedder e(x, w);
    for (Method method : kMethods) {
        for (double alpha : {0.3, 1.7}) {
            const EmbedResult a = e.embed(method, alpha);
            const EmbedResult b = embed_with(method, x, w, alpha);
            EXPECT_EQ(a.watermarked, b.watermarked);
            EXPECT_EQ(a.key, b.key);
        }
    }
}

TEST(BlockApply, GridArithmetic)
{
    EXPECT_THROW(block_apply(image_matrix(256, 1), image_matrix(100, 2), Method::svd, 1.0), std::invalid_argument);
    const EmbedOutput small = block_apply(image_matrix(64, 1), image_matrix(16, 2), Method::svd, 1.0);
    EXPECT_EQ(small.keys.size(), 16u);
    for (const auto& k : small.keys) EXPECT_EQ(k.n, 16u);
}

TEST(BlockApply, RoundTripAveragesBlocks)
{
    const RealMatrix x = image_matrix(32, 3);
    const RealMatrix w = image_matrix(8, 4);
    for (Method method : kMethods) {
        const EmbedOutput out = block_apply(x, w, method, 1.0);
        ASSERT_EQ(out.keys.size(), 16u);
        const ExtractResult e = extract(out.watermarked, out.keys);
        EXPECT_LE(max_abs_diff(e.watermark, w), 1e-6) << method_name(method);
    }
}

TEST(BlockApply, SingleBlockEqualsDirect)
{
    const RealMatrix x = image_matrix(8, 3);
    const RealMatrix w = image_matrix(8, 4);
    for (Method method : kMethods) {
        const EmbedOutput out = block_apply(x, w, method, 1.0);
        ASSERT_EQ(out.keys.size(), 1u);
        const EmbedResult direct = embed_with(method, x, w, 1.0);
        EXPECT_LE(max_abs_diff(out.watermarked, direct.watermarked), 1e-12 * frobenius_norm(x));
    }
}

TEST(EmbedConfig, QuantizesByDefault)
{
    const RealMatrix x = image_matrix(16, 3);
    const RealMatrix w = image_matrix(4, 4);
    EmbedConfig cfg{Method::dual, 1.0, SizeMode::spectral_pad, true};
    const EmbedOutput q = embed(x, w, cfg);
    EXPECT_EQ(q.watermarked, to_real(quantize_u8(embed_dual(x, w, 1.0).watermarked)));
    cfg.quantize_output = false;
    EXPECT_EQ(embed(x, w, cfg).watermarked, embed_dual(x, w, 1.0).watermarked);
    cfg.size_mode = SizeMode::block;
    EXPECT_EQ(embed(x, w, cfg).keys.size(), 16u);
}

} // namespace
} // namespace nmwm
