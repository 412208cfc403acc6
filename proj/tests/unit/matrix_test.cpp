#include <gtest/gtest.h>

#include "nmwm/matrix.hpp"
#include "test_support.hpp"

namespace nmwm {
namespace {

using testing::image_matrix;

RealMatrix m22(double a, double b, double c, double d) { return RealMatrix(2, 2, {a, b, c, d}); }

TEST(SymmetricPart, TwoByTwo)
{
    EXPECT_EQ(symmetric_part(m22(1, 2, 3, 4)), m22(1, 2.5, 2.5, 4));
    EXPECT_EQ(skew_part(m22(1, 2, 3, 4)), m22(0, -0.5, 0.5, 0));
}

TEST(SymmetricPart, SymmetricInputIsFixedPoint)
{
    const RealMatrix s = testing::random_symmetric(6, 3);
    EXPECT_EQ(symmetric_part(s), s);
    EXPECT_EQ(skew_part(s), RealMatrix(6, 6, 0.0));
}

TEST(SymmetricPart, RejectsNonSquare)
{
    EXPECT_THROW(symmetric_part(RealMatrix(2, 3)), std::invalid_argument);
    EXPECT_THROW(skew_part(RealMatrix(3, 2)), std::invalid_argument);
}

TEST(SymmetricPart, SplitIsExactOnImages)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RealMatrix m = image_matrix(8, seed);
        const RealMatrix b = symmetric_part(m);
        const RealMatrix c = skew_part(m);
        EXPECT_EQ(frobenius_norm(b - transpose(b)), 0.0);
        EXPECT_EQ(b + c, m) << "seed " << seed;
        for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(c(i, i), 0.0);
    }
}

TEST(SymmetricPart, FrobeniusOrthogonality)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RealMatrix m = random_matrix(8, 8, seed, -100.0, 100.0);
        const RealMatrix b = symmetric_part(m);
        const RealMatrix c = skew_part(m);
        // trace(B C) = -<B, C>_F
        EXPECT_LE(std::abs(frobenius_inner(b, c)), 1e-12 * frobenius_norm(b) * frobenius_norm(c));
    }
}

TEST(ReconstructFromSym, TwoByTwoFormula)
{
    const double b11 = 3, b12 = 5, b22 = 7, x = 2;
    const std::vector<double> upper{x};
    EXPECT_EQ(reconstruct_from_sym(m22(b11, b12, b12, b22), upper), m22(b11, x, 2 * b12 - x, b22));
}

TEST(ReconstructFromSym, RecoversHostFromItsOwnParts)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RealMatrix x = image_matrix(9, seed);
        EXPECT_EQ(reconstruct_from_sym(symmetric_part(x), upper_triangle(x, false)), x);
        EXPECT_EQ(reconstruct_from_skew(skew_part(x), upper_triangle(x, true)), x);
    }
}

TEST(ReconstructFromSym, SymmetricPartOfResultMatches)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RealMatrix b = testing::random_symmetric(8, seed);
        const auto ref = upper_triangle(random_matrix(8, 8, seed + 100), false);
        const RealMatrix y = reconstruct_from_sym(b, ref);
        EXPECT_LE(frobenius_norm(symmetric_part(y) - b), 1e-14 * frobenius_norm(b));
        EXPECT_EQ(upper_triangle(y, false), ref);
    }
}

TEST(ReconstructFromSym, Errors)
{
    EXPECT_THROW(reconstruct_from_sym(m22(1, 2, 3, 4), std::vector<double>{0}), std::invalid_argument);
    EXPECT_THROW(reconstruct_from_sym(m22(1, 2, 2, 4), std::vector<double>{0, 1}), std::invalid_argument);
}

TEST(ReconstructFromSkew, TwoByTwoFormula)
{
    const double c = 1.5, x11 = 4, x12 = 9, x22 = 6;
    const std::vector<double> ref{x11, x12, x22};
    EXPECT_EQ(reconstruct_from_skew(m22(0, c, -c, 0), ref), m22(x11, x12, 2 * (-c) + x12, x22));
}

TEST(ReconstructFromSkew, SkewPartOfResultMatches)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RealMatrix c = testing::random_skew(8, seed);
        const auto ref = upper_triangle(random_matrix(8, 8, seed + 7), true);
        const RealMatrix y = reconstruct_from_skew(c, ref);
        EXPECT_LE(frobenius_norm(skew_part(y) - c), 1e-14 * frobenius_norm(c));
    }
}

TEST(ReconstructFromSkew, Errors)
{
    EXPECT_THROW(reconstruct_from_skew(m22(1, 2, 2, 4), std::vector<double>{0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(reconstruct_from_skew(m22(0, 1, -1, 0), std::vector<double>{0}), std::invalid_argument);
}

TEST(Quantize, RoundsHalfAwayAndClamps)
{
    const RealMatrix m(1, 7, {127.5, -3.2, 300.0, 0.49, 254.5, 12.5, -0.5});
    const ImageU8 q = quantize_u8(m);
    EXPECT_EQ(q(0, 0), 128);
    EXPECT_EQ(q(0, 1), 0);
    EXPECT_EQ(q(0, 2), 255);
    EXPECT_EQ(q(0, 3), 0);
    EXPECT_EQ(q(0, 4), 255);
    EXPECT_EQ(q(0, 5), 13);
    EXPECT_EQ(q(0, 6), 0);
}

TEST(Matrix, ShapeChecks)
{
    EXPECT_THROW(RealMatrix(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(RealMatrix(2, 2) + RealMatrix(2, 3), std::invalid_argument);
    EXPECT_THROW(multiply(RealMatrix(2, 3), RealMatrix(2, 3)), std::invalid_argument);
}

} // namespace
} // namespace nmwm
