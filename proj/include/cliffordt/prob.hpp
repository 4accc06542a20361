#pragma once

#include <stdexcept>
#include <vector>

#include "cliffordt/grid.hpp"
#include "cliffordt/sdp.hpp"

namespace cliffordt
{

// Points within 2δ of v whose δ-balls are tested against B_δ(v).
struct CoveringInstance
{
    UnitVec4 v;
    std::vector<UnitVec4> points;
    double delta = 0.5;
};

// true only if the δ-balls around the points certainly cover B_δ(v). Borderline
// configurations answer false.
bool verify_covering(const CoveringInstance &inst);

struct CandidateSet
{
    std::vector<ExactUnitary> entries; // sorted, distinct
    double delta = 0;
    unsigned retries = 0;
    bool full_set = false; // 2δ > 1: every channel with T-count ≤ t
    EnumStats stats;
};

struct ProbOptions
{
    double c1 = 0.1;
    double c2 = 0.5;
    SplitOptions split;
    // t_max = ⌈1.5·log2(1/ε)⌉ + cap_margin
    unsigned cap_margin = 40;
    // members below this probability are dropped; sparser cuts (1e-4, 1e-8) are tried first
    double prune = 1e-12;
    // replaces verify_covering when set (tests)
    bool (*covering_check)(const CoveringInstance &) = nullptr;
};

// All channels with T-count ≤ t within 2δ of v, for the first δ = 2^{−t/3+c1}·2^{j·c2}
// at which they δ-cover B_δ(v) or 2δ exceeds 1.
CandidateSet candidate_set(const UnitVec4 &v, unsigned t, const ProbOptions &opts = {});

unsigned prob_tcount_cap(double eps, unsigned margin = 40);

// Every channel with T-count ≤ t (one representative each), sorted.
std::vector<ExactUnitary> all_channels_upto(unsigned t);

// Mixture over channels of T-count ≤ t with certified diamond distance < eps and t minimal.
// Throws TCountCapExceeded (det.hpp) past the cap.
MixtureSolution synth_probabilistic(const UnitVec4 &v, double eps, const ProbOptions &opts = {});

} // namespace cliffordt
