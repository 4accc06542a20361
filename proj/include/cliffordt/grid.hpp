#pragma once

#include <vector>

#include "cliffordt/exact.hpp"
#include "cliffordt/lattice.hpp"

namespace cliffordt
{

// {‖u‖ ≤ 1, |u·v| > √(1−ε²)} × {‖u•‖ ≤ 1} at denominator level k
struct RegionSpec
{
    UnitVec4 v;
    double eps = 1;
    unsigned k = 0;
};

struct CandidateList
{
    std::vector<ExactUnitary> entries; // sorted, distinct
    EnumStats stats;
};

// Integer points of the region (both caps), sorted. Points within 1e-20 of the
// boundary are kept.
std::vector<IntVec8> enumerate_integer_points(const RegionSpec &region);

// Same set by direct scan; each half (a_j,b_j,c_j,d_j) is scanned over the box
// |·| ≤ 2√2^k and halves are paired. Practical up to k ≈ 4.
std::vector<IntVec8> box_scan_integer_points(const RegionSpec &region);

// All Clifford+T channels with T-count exactly t and certified distance < eps.
CandidateList fixed_tcount_enum(const UnitVec4 &v, double eps, unsigned t);

struct SplitOptions
{
    // added to t − 5/2·log2(1/ε) before rounding; larger means more, smaller subcalls
    double offset = 0;
    unsigned threads = 1;
};

// Length of the coset prefix used by divide_and_conquer_enum.
unsigned split_point(double eps, unsigned t, double offset = 0);

// Same output as fixed_tcount_enum, computed as a union over coset prefixes.
CandidateList divide_and_conquer_enum(const UnitVec4 &v, double eps, unsigned t, const SplitOptions &opts = {});

// ExactUnitary of a lattice vector at level k with phase bit l.
ExactUnitary unitary_from_vec(const IntVec8 &x, unsigned k, int l);

} // namespace cliffordt
