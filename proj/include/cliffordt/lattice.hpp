#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cliffordt/unitary.hpp"

namespace cliffordt
{

using IntVec8 = std::array<std::int64_t, 8>;

struct EnumStats
{
    std::uint64_t nodes_visited = 0;  // enumeration tree nodes
    std::uint64_t lattice_points = 0; // integer points inside the enclosing ellipsoid
    std::uint64_t norm_ok = 0;        // points with |u1|² + |u2|² = 1 exactly
    std::uint64_t error_ok = 0;       // of those, inside the ε-ball
    std::uint64_t subcalls = 0;

    EnumStats &operator+=(const EnumStats &o)
    {
        nodes_visited += o.nodes_visited;
        lattice_points += o.lattice_points;
        norm_ok += o.norm_ok;
        error_ok += o.error_ok;
        subcalls += o.subcalls;
        return *this;
    }
};

// Smallest ε accepted by the enumerator; below it the center reduction loses
// the fractional digits it needs in 113-bit arithmetic.
constexpr double kMinEps = 1e-13;

// Integer vectors x = (a1,b1,c1,d1,a2,b2,c2,d2) with u_j = (a + bζ + cζ² + dζ³)/√2^k
// lying in an ellipsoid that contains the region
//   {‖u‖ ≤ 1, u·w ≥ √(1−ε²)} × {‖u•‖ ≤ 1}.
// Only the cap around +w is searched; the result is a superset of the integer
// points of that region.
std::vector<IntVec8> cap_candidates(unsigned k, double eps, const std::array<Quad, 4> &w, EnumStats &stats);

// Real coordinates of x: (Re u1, Im u1, Re u2, Im u2) and the same for u•.
std::array<Quad, 4> u_coords(const IntVec8 &x, unsigned k);
std::array<Quad, 4> u_bullet_coords(const IntVec8 &x, unsigned k);

// Exact test of |u1|² + |u2|² = 1 at level k.
bool unit_norm_exact(const IntVec8 &x, unsigned k);

// Drops the cached per-level reductions (tests use this to bound memory).
void clear_lattice_cache();

} // namespace cliffordt
