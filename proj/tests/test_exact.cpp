#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cliffordt/exact.hpp"

using namespace cliffordt;

namespace
{

GateWord random_word(std::mt19937_64 &rng, unsigned tcount)
{
    GateWord w;
    w.a0 = tcount > 0 && (rng() & 1);
    for (unsigned i = w.a0 ? 1 : 0; i < tcount; ++i)
        w.syllables.push_back(rng() & 1);
    w.clifford = rng() % 24;
    return w;
}

} // namespace

TEST(Clifford, TableIsAGroupOfOrder24)
{
    const auto &cl = clifford_table();
    ASSERT_EQ(cl.size(), 24u);
    EXPECT_EQ(clifford_index(ExactUnitary()), 0);
    std::set<ExactUnitary> distinct(cl.begin(), cl.end());
    EXPECT_EQ(distinct.size(), 24u);
    for (const auto &a : cl)
        for (const auto &b : cl)
            ASSERT_GE(clifford_index(a * b), 0);
    EXPECT_EQ(gate_H() * gate_H(), ExactUnitary());
    EXPECT_EQ(clifford_index(gate_T()), -1);
    for (int i = 0; i < 24; ++i)
        EXPECT_EQ(evaluate_string(clifford_words()[i]), cl[i]) << clifford_words()[i];
}

TEST(Evaluate, Examples)
{
    EXPECT_EQ(evaluate(GateWord{}), ExactUnitary());
    GateWord t;
    t.a0 = true;
    ExactUnitary tu = evaluate(t);
    EXPECT_EQ(tu, gate_T());
    EXPECT_EQ(tu.l, 1);
    // u1 = ±1 depending on the canonical sign
    EXPECT_TRUE(tu.u1 == DOmega(ZOmega(1)) || tu.u1 == DOmega(ZOmega(-1)));
    EXPECT_TRUE(tu.u2.is_zero());
    EXPECT_EQ(evaluate_string("HT").lde(), 1u);
    EXPECT_EQ(evaluate_string("T@p3"), gate_T());
    EXPECT_THROW(evaluate_string("HX"), std::invalid_argument);
    EXPECT_THROW(evaluate_string("T@q"), std::invalid_argument);
}

TEST(Tcount, Examples)
{
    EXPECT_EQ(tcount(ExactUnitary()), 0u);
    EXPECT_EQ(tcount(gate_T()), 1u);
    EXPECT_EQ(tcount(gate_H()), 0u);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i)
    {
        GateWord w = random_word(rng, 9);
        ASSERT_EQ(tcount(evaluate(w)), 9u);
    }
}

// long words push the numerators past the fixed-width path
TEST(Tcount, AgreesWithBlochDenominator)
{
    std::mt19937_64 rng(13);
    for (unsigned t : {0u, 1u, 2u, 5u, 17u, 40u, 80u, 150u, 220u, 300u})
        for (int i = 0; i < 20; ++i)
        {
            ExactUnitary u = evaluate(random_word(rng, t));
            ASSERT_EQ(tcount(u), sde(bloch_matrix(u))) << t;
            ASSERT_EQ(tcount(u), t);
        }
}

TEST(ExactSynthesize, RoundTrips)
{
    EXPECT_EQ(exact_synthesize(ExactUnitary()), GateWord{});
    GateWord h = exact_synthesize(gate_H());
    EXPECT_FALSE(h.a0);
    EXPECT_TRUE(h.syllables.empty());
    EXPECT_EQ(clifford_table()[h.clifford], gate_H());

    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i)
    {
        GateWord w = random_word(rng, rng() % 30);
        ExactUnitary u = evaluate(w);
        GateWord back = exact_synthesize(u);
        ASSERT_EQ(back, w) << w.to_string();
        ASSERT_EQ(evaluate_string(w.to_string()), u);
        ASSERT_EQ(parse_word(w.to_string()), w);
    }
}

TEST(ExactSynthesize, RejectsNonUnitEntries)
{
    ExactUnitary bad(DOmega(ZOmega(1)), DOmega(ZOmega(1)), 0);
    EXPECT_THROW(exact_synthesize(bad), std::invalid_argument);
}

TEST(Cosets, Sizes)
{
    ASSERT_EQ(coset_reps(0).size(), 1u);
    EXPECT_EQ(coset_reps(0)[0], ExactUnitary());
    EXPECT_EQ(coset_reps(1).size(), 3u);
    for (unsigned n = 1; n <= 8; ++n)
    {
        auto reps = coset_reps(n);
        ASSERT_EQ(reps.size(), 3u << (n - 1));
        std::set<ExactUnitary> distinct(reps.begin(), reps.end());
        ASSERT_EQ(distinct.size(), reps.size());
        for (auto &u : reps)
            ASSERT_EQ(tcount(u), n);
    }
}

// channels by T-count, counted by deduplicating every normal-form word
TEST(Cosets, DistinctChannelsPerTcount)
{
    std::set<ExactUnitary> seen;
    for (unsigned t = 0; t <= 7; ++t)
    {
        std::size_t before = seen.size();
        for (auto &c : coset_reps(t))
            for (auto &cl : clifford_table())
                seen.insert(c * cl);
        std::size_t expect = t == 0 ? 24 : 24 * 3 * (std::size_t(1) << (t - 1));
        ASSERT_EQ(seen.size() - before, expect) << t;
    }
}

TEST(Tcount, LdeRelation)
{
    for (unsigned t = 0; t <= 7; ++t)
        for (auto &c : coset_reps(t))
            for (auto &cl : clifford_table())
            {
                ExactUnitary u = c * cl;
                int k = (int)u.lde(), tc = (int)tcount(u);
                if (u.l == 0)
                    ASSERT_TRUE(tc == 2 * k - 2 || tc == 2 * k) << k << " " << tc;
                else
                    ASSERT_TRUE(tc == 2 * k - 3 || tc == 2 * k - 1 || tc == 2 * k + 1) << k << " " << tc;
            }
}
