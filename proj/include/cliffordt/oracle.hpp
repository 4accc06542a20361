#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cliffordt/prob.hpp"

namespace cliffordt
{

struct DatabaseEntry
{
    GateWord word;
    unsigned tcount = 0;
    std::array<double, 4> vec{}; // SU(2) representative
};

class ChannelDatabase
{
public:
    unsigned t_max = 0;
    std::vector<DatabaseEntry> entries; // ordered by T-count

    std::vector<std::size_t> count_per_t() const;
    // index of the entry for u, if present
    std::optional<std::size_t> find(const ExactUnitary &u) const;

    void save(const std::string &path) const;
    // throws std::runtime_error on a malformed or mismatched file
    static ChannelDatabase load(const std::string &path);
    friend ChannelDatabase build_database(unsigned t_max, unsigned threads);

    // builds the lookup table used by find(); done by build_database, not by load
    void index();

private:
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

constexpr unsigned kMaxDatabaseT = 14;

// Every channel with T-count ≤ t_max, each with its minimal T-count and word.
ChannelDatabase build_database(unsigned t_max, unsigned threads = 1);

// Expected number of channels with T-count exactly t.
std::uint64_t channels_with_tcount(unsigned t);

// Smallest T-count in the database within eps of v, or nullopt.
std::optional<unsigned> oracle_min_tcount(const ChannelDatabase &db, const UnitVec4 &v, double eps);

// Full consistency check (words re-evaluated, vectors and counts compared);
// returns the number of bad entries.
std::size_t verify_database(const ChannelDatabase &db);

struct CoveringEstimate
{
    bool covered = true; // no witness found
    std::optional<std::array<double, 4>> witness;
    std::size_t samples = 0;
};

// Uniform samples of B_δ(v) tested against the δ-balls of the points.
CoveringEstimate monte_carlo_covering(const CoveringInstance &inst, std::size_t n_samples, std::uint64_t seed = 1);

// #{(x1..x4) ∈ Z[√2]⁴ : Σxᵢ² = m} by exhaustive search; requires m totally
// nonnegative and N(m) ≤ 10⁶.
std::uint64_t brute_force_four_squares(const ZRoot2 &m);

} // namespace cliffordt
