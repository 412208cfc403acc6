#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

#include "nmwm/metrics.hpp"
#include "nmwm/synth.hpp"

namespace nmwm {
namespace {

TEST(Mse, Values)
{
    const ImageU8 a(2, 2, std::uint8_t{0});
    ImageU8 b = a;
    EXPECT_EQ(mse(a, b), 0.0);
    b(1, 0) = 255;
    EXPECT_DOUBLE_EQ(mse(a, b), 16256.25);
    EXPECT_DOUBLE_EQ(mse(ImageU8(3, 3, std::uint8_t{4}), ImageU8(3, 3, std::uint8_t{5})), 1.0);
    EXPECT_THROW(mse(ImageU8(2, 2), ImageU8(2, 3)), std::invalid_argument);
}

TEST(Psnr, Values)
{
    const ImageU8 a = uniform_image(8, 8, 1);
    EXPECT_TRUE(std::isinf(psnr(a, a)));
    EXPECT_NEAR(psnr_from_mse(1.0), 48.1308, 5e-5);
    EXPECT_EQ(psnr_from_mse(1.0), 10.0 * std::log10(65025.0));
    const ImageU8 b = uniform_image(8, 8, 2);
    EXPECT_EQ(psnr(a, b), psnr(b, a));
}

TEST(Psnr, DecreasesWithMse)
{
    double prev = psnr_from_mse(0.01);
    for (double m = 0.1; m < 1e4; m *= 3) {
        const double p = psnr_from_mse(m);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Ber, Values)
{
    const ImageU8 w = uniform_image(128, 128, 5);
    EXPECT_EQ(ber(w, w), 0.0);
    ImageU8 one = w;
    one(17, 33) ^= 0x10;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", ber(w, one));
    EXPECT_STREQ(buf, "0.00076");
    ImageU8 inv = w;
    for (auto& p : inv.data()) p = static_cast<std::uint8_t>(~p);
    EXPECT_EQ(ber(w, inv), 100.0);
    EXPECT_THROW(ber(w, ImageU8(2, 2)), std::invalid_argument);
}

} // namespace
} // namespace nmwm
