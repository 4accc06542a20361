#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cliffordt/exact.hpp"
#include "cliffordt/sdp.hpp"

using namespace cliffordt;

namespace
{

using cd = std::complex<double>;

std::array<double, 4> rz(double th) { return {std::cos(th / 2), -std::sin(th / 2), 0, 0}; }

double input_state_value(const CMat4 &delta, const std::array<double, 3> &r)
{
    // ρ = (I + r·σ)/2 with |r| ≤ 1
    CMat2 rho;
    rho << 0.5 * (1 + r[2]), 0.5 * cd(r[0], -r[1]), 0.5 * cd(r[0], r[1]), 0.5 * (1 - r[2]);
    Eigen::SelfAdjointEigenSolver<CMat2> e2(rho);
    CMat2 root = e2.eigenvectors() * e2.eigenvalues().cwiseMax(0).cwiseSqrt().asDiagonal() * e2.eigenvectors().adjoint();
    CMat4 k = CMat4::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                k(2 * a + c, 2 * b + c) = root(a, b);
    CMat4 m = k * delta * k;
    Eigen::SelfAdjointEigenSolver<CMat4> es(0.5 * (m + m.adjoint()));
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// ½‖Δ‖⋄ as the largest ½‖(√ρ ⊗ I) Δ (√ρ ⊗ I)‖₁ over input states ρ: grid over
// the Bloch ball, then a shrinking random search around the best point
double brute_diamond(const CMat4 &delta, std::mt19937_64 &rng)
{
    std::array<double, 3> best_r{0, 0, 0};
    double best = input_state_value(delta, best_r);
    const int n = 12;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j)
            for (int k = -n; k <= n; ++k)
            {
                std::array<double, 3> r{double(i) / n, double(j) / n, double(k) / n};
                if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] > 1)
                    continue;
                double val = input_state_value(delta, r);
                if (val > best)
                {
                    best = val;
                    best_r = r;
                }
            }
    std::normal_distribution<double> nd;
    for (double step = 0.1; step > 1e-7; step *= 0.7)
        for (int it = 0; it < 60; ++it)
        {
            std::array<double, 3> r = best_r;
            for (auto &x : r)
                x += step * nd(rng);
            double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
            if (len > 1)
                for (auto &x : r)
                    x /= len;
            double val = input_state_value(delta, r);
            if (val > best)
            {
                best = val;
                best_r = r;
            }
        }
    return best;
}

} // namespace

TEST(Choi, UnitaryChannels)
{
    auto id = choi_of_unitary(std::array<double, 4>{1, 0, 0, 0});
    CMat4 omega = CMat4::Zero();
    for (int i : {0, 3})
        for (int j : {0, 3})
            omega(i, j) = 1;
    EXPECT_LT((id.m - omega).cwiseAbs().maxCoeff(), 1e-15);

    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i)
    {
        auto u = haar_sample(rng).v.to_double();
        auto j = choi_of_unitary(u);
        Eigen::SelfAdjointEigenSolver<CMat4> es(j.m);
        EXPECT_NEAR(es.eigenvalues()[3], 2, 1e-12);
        EXPECT_NEAR(es.eigenvalues().head<3>().cwiseAbs().maxCoeff(), 0, 1e-12);
        auto neg = choi_of_unitary(std::array<double, 4>{-u[0], -u[1], -u[2], -u[3]});
        EXPECT_LT((neg.m - j.m).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(SolveSdp, SmallProblems)
{
    // min y s.t. y·I − C ⪰ 0 gives λmax(C)
    SdpProblem p;
    p.blocks = {{3, false}};
    Eigen::MatrixXd c(3, 3);
    c << 2, 1, 0, 1, 3, 1, 0, 1, 4;
    p.A = {{Eigen::MatrixXd::Identity(3, 3)}};
    p.C = {c};
    p.b = Eigen::VectorXd::Ones(1);
    auto r = solve_sdp(p, 1e-12);
    ASSERT_TRUE(r.converged);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    EXPECT_NEAR(r.y[0], es.eigenvalues()[2], 1e-9);
    EXPECT_NEAR(r.primal, r.dual, 1e-9);

    // linear program in a diagonal block: min y1 + y2 s.t. y1 ≥ 1, y2 ≥ 2, y1 + y2 ≥ 4
    SdpProblem lp;
    lp.blocks = {{3, true}};
    Eigen::MatrixXd a1(3, 1), a2(3, 1), cl(3, 1);
    a1 << 1, 0, 1;
    a2 << 0, 1, 1;
    cl << 1, 2, 4;
    lp.A = {{a1}, {a2}};
    lp.C = {cl};
    lp.b = Eigen::VectorXd::Ones(2);
    auto q = solve_sdp(lp, 1e-12);
    ASSERT_TRUE(q.converged);
    EXPECT_NEAR(q.dual, 4, 1e-9);
}

TEST(DiamondDistance, UnitaryPairsMatchClosedForm)
{
    auto i = choi_of_unitary(std::array<double, 4>{1, 0, 0, 0});
    auto t = choi_of_unitary(rz(M_PI / 4));
    auto d = diamond_distance_channel(i, t);
    EXPECT_NEAR(d.mid(), std::sin(M_PI / 8), 1e-9);
    EXPECT_LE(d.lo, std::sin(M_PI / 8) + 1e-12);
    EXPECT_GE(d.hi, std::sin(M_PI / 8) - 1e-12);

    auto same = diamond_distance_channel(t, t);
    EXPECT_EQ(same.lo, 0);
    EXPECT_LT(same.hi, 1e-12);

    std::mt19937_64 rng(42);
    for (int k = 0; k < 20; ++k)
    {
        auto u = haar_sample(rng).v, v = haar_sample(rng).v;
        double closed = diamond_distance(u, v).convert_to<double>();
        auto r = diamond_distance_channel(choi_of_unitary(u), choi_of_unitary(v));
        ASSERT_NEAR(r.mid(), closed, 1e-9);
        ASSERT_LT(r.width(), 1e-8);
    }
}

TEST(DiamondDistance, RejectsNonPsd)
{
    ChoiMatrix bad;
    bad.m = CMat4::Identity();
    bad.m(0, 0) = -1;
    auto good = choi_of_unitary(std::array<double, 4>{1, 0, 0, 0});
    EXPECT_THROW(diamond_distance_channel(bad, good), std::invalid_argument);
    EXPECT_THROW(diamond_distance_channel(good, bad), std::invalid_argument);
}

TEST(DiamondDistance, MatchesInputStateSearch)
{
    std::mt19937_64 rng(43);
    for (int k = 0; k < 5; ++k)
    {
        std::vector<double> p = {0.2, 0.5, 0.3};
        std::vector<std::array<double, 4>> us;
        for (int j = 0; j < 3; ++j)
            us.push_back(haar_sample(rng).v.to_double());
        auto v = haar_sample(rng).v.to_double();
        CMat4 delta = choi_of_unitary(v).m - choi_of_mixture(p, us).m;
        auto r = diamond_norm_of_difference(delta);
        double search = brute_diamond(delta, rng);
        ASSERT_LE(search, r.hi + 1e-9);
        ASSERT_NEAR(search, r.mid(), 1e-7);
    }
}

TEST(Mixing, Singletons)
{
    UnitVec4 t = parse_target("rz(pi/4)").v;
    auto exact = solve_mixing(t, {gate_T()});
    ASSERT_EQ(exact.probs.size(), 1u);
    EXPECT_EQ(exact.probs[0], 1.0);
    EXPECT_LT(exact.eps_star.hi, 1e-12);

    UnitVec4 v = haar_sample(44).v;
    ExactUnitary u = evaluate_string("HTSHT");
    auto one = solve_mixing(v, {u});
    double d = channel_distance(u, v).convert_to<double>();
    EXPECT_NEAR(one.eps_star.mid(), d, 1e-9);
    EXPECT_THROW(solve_mixing(v, {}), std::invalid_argument);
}

// ½T + ½T† is a dephasing channel at diamond distance sin²(π/8) from the identity
TEST(Mixing, SymmetricRotationsAroundIdentity)
{
    ExactUnitary t = gate_T(), tdg = gate_T().dagger();
    auto ms = solve_mixing(UnitVec4(), {t, tdg});
    ASSERT_EQ(ms.probs.size(), 2u);
    EXPECT_NEAR(ms.probs[0], 0.5, 1e-6);
    EXPECT_NEAR(ms.probs[1], 0.5, 1e-6);
    double s = std::sin(M_PI / 8);
    EXPECT_LT(ms.eps_star.hi, s * s + 1e-9);
    EXPECT_NEAR(ms.eps_star.mid(), s * s, 1e-9);

    auto direct = diamond_distance_channel(choi_of_unitary(std::array<double, 4>{1, 0, 0, 0}),
                                           choi_of_mixture({0.5, 0.5}, {rz(M_PI / 4), rz(-M_PI / 4)}));
    EXPECT_NEAR(direct.mid(), ms.eps_star.mid(), 1e-9);
}

// optimum over two or three members against a grid search over the simplex
TEST(Mixing, MatchesSimplexGridSearch)
{
    std::mt19937_64 rng(45);
    const char *words[] = {"HT", "SHT", "THT", "HTSHT", "T", "SHTHT"};
    for (int k = 0; k < 4; ++k)
    {
        UnitVec4 v = haar_sample(rng).v;
        std::vector<ExactUnitary> sup;
        for (int j = 0; j < 3; ++j)
            sup.push_back(evaluate_string(words[(k + 2 * j) % 6]) * clifford_table()[rng() % 24]);
        auto ms = solve_mixing(v, sup);
        double best = 1e9;
        const int n = 40;
        for (int a = 0; a <= n; ++a)
            for (int b = 0; a + b <= n; ++b)
            {
                std::vector<double> p = {double(a) / n, double(b) / n, double(n - a - b) / n};
                best = std::min(best, mixture_distance(v, sup, p).hi);
            }
        ASSERT_LE(ms.eps_star.lo, best + 1e-9);
        // the objective moves by at most ‖p − q‖₁ ≤ 2/n between neighbouring grid points
        ASSERT_GE(ms.eps_star.hi, best - 2.0 / n);
        auto check = mixture_distance(v, ms.unitaries, ms.probs);
        ASSERT_NEAR(check.mid(), ms.eps_star.mid(), 1e-8);
    }
}
