#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "cliffordt/det.hpp"
#include "cliffordt/oracle.hpp"

using namespace cliffordt;

namespace
{

std::string temp_path(const std::string &name)
{
    return (std::filesystem::temp_directory_path() / ("cliffordt_" + name)).string();
}

} // namespace

TEST(Database, SmallCounts)
{
    EXPECT_EQ(build_database(0).entries.size(), 24u);
    EXPECT_EQ(build_database(1).entries.size(), 96u);
    EXPECT_EQ(channels_with_tcount(0), 24u);
    EXPECT_EQ(channels_with_tcount(1), 72u);
    EXPECT_EQ(channels_with_tcount(10), 24u * 3 * 512);
}

TEST(Database, PerTcountCountsAndConsistency)
{
    auto db = build_database(8, 2);
    auto counts = db.count_per_t();
    ASSERT_EQ(counts.size(), 9u);
    for (unsigned t = 0; t <= 8; ++t)
        EXPECT_EQ(counts[t], channels_with_tcount(t)) << t;
    EXPECT_EQ(verify_database(db), 0u);
    for (std::size_t i = 0; i < db.entries.size(); i += 97)
    {
        ExactUnitary u = evaluate(db.entries[i].word);
        auto found = db.find(u);
        ASSERT_TRUE(found.has_value());
        EXPECT_EQ(*found, i);
    }
    EXPECT_FALSE(db.find(evaluate_string("HTHTHTHTHTHTHTHTHT")).has_value());
}

TEST(Database, SaveLoadRoundTrip)
{
    auto db = build_database(5);
    std::string path = temp_path("roundtrip.db");
    db.save(path);
    auto back = ChannelDatabase::load(path);
    ASSERT_EQ(back.t_max, 5u);
    ASSERT_EQ(back.entries.size(), db.entries.size());
    for (std::size_t i = 0; i < db.entries.size(); ++i)
    {
        ASSERT_EQ(back.entries[i].word, db.entries[i].word);
        ASSERT_EQ(back.entries[i].vec, db.entries[i].vec);
    }
    EXPECT_EQ(verify_database(back), 0u);
    std::remove(path.c_str());
}

TEST(Database, CorruptedFiles)
{
    auto db = build_database(3);
    std::string path = temp_path("corrupt.db");
    db.save(path);
    auto size = std::filesystem::file_size(path);

    // truncated
    std::filesystem::resize_file(path, size - 7);
    EXPECT_THROW(ChannelDatabase::load(path), std::runtime_error);

    // wrong magic
    db.save(path);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.put('X');
    }
    EXPECT_THROW(ChannelDatabase::load(path), std::runtime_error);

    // an entry vector that no longer matches its word
    db.save(path);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-8, std::ios::end);
        double x = 0.25;
        f.write(reinterpret_cast<const char *>(&x), sizeof x);
    }
    auto bad = ChannelDatabase::load(path);
    EXPECT_GT(verify_database(bad), 0u);
    EXPECT_THROW(ChannelDatabase::load(temp_path("missing.db")), std::runtime_error);
    std::remove(path.c_str());
}

TEST(Oracle, MinimalTcount)
{
    auto db = build_database(8);
    for (std::size_t i = 0; i < db.entries.size(); i += 331)
    {
        const auto &e = db.entries[i];
        UnitVec4 v(su2_column(evaluate(e.word)));
        auto t = oracle_min_tcount(db, v, 1e-9);
        ASSERT_TRUE(t.has_value());
        EXPECT_EQ(*t, e.tcount);
    }
    std::mt19937_64 rng(71);
    for (int i = 0; i < 10; ++i)
    {
        UnitVec4 v = haar_sample(rng).v;
        EXPECT_EQ(oracle_min_tcount(db, v, 0.3), synth_deterministic(v, 0.3).tcount);
    }
    // far below the covering radius of T-count ≤ 8
    EXPECT_FALSE(oracle_min_tcount(db, haar_sample(72).v, 1e-4).has_value());
}

TEST(MonteCarlo, Witnesses)
{
    UnitVec4 v = haar_sample(73).v;
    EXPECT_TRUE(monte_carlo_covering({v, {v}, 0.2}, 5000).covered);
    UnitVec4 far = haar_sample(74).v;
    ASSERT_GT(diamond_distance(v, far), Real(0.5));
    auto est = monte_carlo_covering({v, {far}, 0.2}, 1000);
    EXPECT_FALSE(est.covered);
    EXPECT_TRUE(est.witness.has_value());
    EXPECT_LE(est.samples, 1000u);
}

TEST(FourSquaresSearch, SmallValues)
{
    EXPECT_EQ(brute_force_four_squares(ZRoot2(1)), 8u);
    EXPECT_EQ(brute_force_four_squares(ZRoot2(2)), 32u);
    EXPECT_EQ(brute_force_four_squares(ZRoot2(0)), 1u);
    EXPECT_THROW(brute_force_four_squares(ZRoot2(1, 1)), std::invalid_argument);
}
