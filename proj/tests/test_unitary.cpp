#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "cliffordt/unitary.hpp"

using namespace cliffordt;

namespace
{

using CM = Eigen::Matrix2cd;

CM matrix_of(const std::array<double, 4> &x)
{
    std::complex<double> a(x[0], x[1]), b(x[2], x[3]);
    CM m;
    m << a, -std::conj(b), b, std::conj(a);
    return m;
}

std::array<Real, 4> to_real(const std::array<double, 4> &x) { return {x[0], x[1], x[2], x[3]}; }

std::array<double, 4> to_double(const std::array<Real, 4> &x)
{
    return {x[0].convert_to<double>(), x[1].convert_to<double>(), x[2].convert_to<double>(),
            x[3].convert_to<double>()};
}

} // namespace

TEST(UnitVec4, CanonicalSignAndNorm)
{
    UnitVec4 a({Real(-1), Real(2), Real(0), Real(2)});
    auto d = a.to_double();
    EXPECT_GT(d[0], 0);
    EXPECT_NEAR(d[0], 1.0 / 3, 1e-15);
    UnitVec4 b({Real(1), Real(-2), Real(0), Real(-2)});
    EXPECT_EQ(a, b);
    Real n = 0;
    for (auto &c : a.coords())
        n += c * c;
    EXPECT_LT(abs(n - 1), Real(1e-70));
    EXPECT_THROW(UnitVec4({Real(0), Real(0), Real(0), Real(0)}), std::invalid_argument);
}

TEST(DiamondDistance, Examples)
{
    UnitVec4 id;
    EXPECT_EQ(diamond_distance(id, id), 0);
    UnitVec4 perp({Real(0), Real(1), Real(0), Real(0)});
    EXPECT_NEAR(diamond_distance(id, perp).convert_to<double>(), 1.0, 1e-30);
    auto t = parse_target("rz(pi/4)").v;
    EXPECT_NEAR(diamond_distance(id, t).convert_to<double>(), std::sin(M_PI / 8), 1e-15);
}

TEST(DiamondDistance, HalfEigenvalueGap)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i)
    {
        auto u = haar_sample(rng).v.to_double(), v = haar_sample(rng).v.to_double();
        Eigen::ComplexEigenSolver<CM> es(matrix_of(u) * matrix_of(v).adjoint());
        double gap = 0.5 * std::abs(es.eigenvalues()[0] - es.eigenvalues()[1]);
        ASSERT_NEAR(diamond_distance(u, v), gap, 1e-12);
    }
}

TEST(DiamondDistance, BiInvarianceAndTriangle)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i)
    {
        auto u = haar_sample(rng).v, v = haar_sample(rng).v, w = haar_sample(rng).v;
        UnitVec4 wu(su2_mul(w.coords(), u.coords())), wv(su2_mul(w.coords(), v.coords()));
        UnitVec4 uw(su2_mul(u.coords(), w.coords())), vw(su2_mul(v.coords(), w.coords()));
        Real d = diamond_distance(u, v);
        ASSERT_LT(abs(diamond_distance(wu, wv) - d), Real(1e-60));
        ASSERT_LT(abs(diamond_distance(uw, vw) - d), Real(1e-60));
        ASSERT_LE(d, diamond_distance(u, w) + diamond_distance(w, v) + Real(1e-60));
    }
}

TEST(Haar, SeedIsReproducible)
{
    EXPECT_EQ(haar_sample(42).v, haar_sample(42).v);
    EXPECT_FALSE(haar_sample(42).v == haar_sample(43).v);
}

TEST(Haar, CoordinateMeansAndSmallBallMass)
{
    const int n = 100000;
    std::mt19937_64 rng(5);
    std::array<double, 4> sum{};
    int inside = 0;
    const double eps = 0.3, cut = std::sqrt(1 - eps * eps);
    std::array<double, 4> left = to_double(parse_target("rx(1.1)").v.coords());
    int inside_moved = 0;
    for (int i = 0; i < n; ++i)
    {
        auto v = haar_sample(rng).v;
        auto x = v.to_double();
        for (int j = 0; j < 4; ++j)
            sum[j] += x[j];
        inside += std::abs(x[0]) > cut;
        // left-translated sample lands in the translated ball just as often
        auto y = to_double(su2_mul(to_real(left), v.coords()));
        inside_moved += diamond_distance(y, left) < eps;
    }
    // coordinates are not symmetric after canonicalization except for 1..3
    const double sigma = 0.5 / std::sqrt(n);
    for (int j = 1; j < 4; ++j)
        EXPECT_LT(std::abs(sum[j] / n), 3 * sigma) << j;
    // mass of {|x0| > √(1−ε²)}: 2(θ − sinθcosθ)/π with sinθ = ε
    double th = std::asin(eps), p = 2 * (th - std::sin(th) * std::cos(th)) / M_PI;
    double sp = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR((double)inside / n, p, 5 * sp);
    EXPECT_NEAR((double)inside_moved / n, p, 5 * sp);
}

TEST(ParseTarget, Rotations)
{
    auto id = parse_target("rz(0)").v.to_double();
    EXPECT_NEAR(id[0], 1, 1e-30);
    EXPECT_EQ(id[1], 0);
    auto t = parse_target("rz(pi/4)").v.to_double();
    EXPECT_NEAR(t[0], std::cos(M_PI / 8), 1e-15);
    EXPECT_NEAR(t[1], -std::sin(M_PI / 8), 1e-15);
    auto x = parse_target("rx(-3*pi/8)").v.to_double();
    EXPECT_NEAR(x[0], std::cos(3 * M_PI / 16), 1e-15);
    EXPECT_NEAR(x[3], std::sin(3 * M_PI / 16), 1e-15);
}

TEST(ParseTarget, HadamardFromMatrixEntries)
{
    double r = 1 / std::sqrt(2.0);
    auto h = parse_target("0.70710678118654752440 0 0.70710678118654752440 0 "
                          "0.70710678118654752440 0 -0.70710678118654752440 0")
                 .v.to_double();
    EXPECT_NEAR(h[0], 0, 1e-15);
    EXPECT_NEAR(h[1], r, 1e-15);
    EXPECT_NEAR(h[2], 0, 1e-15);
    EXPECT_NEAR(h[3], r, 1e-15);
}

TEST(ParseTarget, RejectsBadInput)
{
    EXPECT_THROW(parse_target("1 0 0 0 0 0 2 0"), std::invalid_argument);
    EXPECT_THROW(parse_target("rq(1)"), std::invalid_argument);
    EXPECT_THROW(parse_target("rz(pi/)"), std::invalid_argument);
    EXPECT_THROW(parse_target("1 2 3"), std::invalid_argument);
    EXPECT_NEAR(parse_angle("-3*pi/8").convert_to<double>(), -3 * M_PI / 8, 1e-15);
    EXPECT_NEAR(parse_angle("2pi").convert_to<double>(), 2 * M_PI, 1e-15);
}
