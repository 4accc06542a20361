#pragma once

#include <array>
#include <string>
#include <vector>

#include "cliffordt/rings.hpp"
#include "cliffordt/unitary.hpp"

namespace cliffordt
{

// 2×2 matrix over D[ζ], row-major
struct Mat2
{
    std::array<DOmega, 4> m;

    Mat2 operator*(const Mat2 &o) const;
    Mat2 dagger() const;
    DOmega det() const { return m[0] * m[3] - m[1] * m[2]; }
    DOmega trace() const { return m[0] + m[3]; }
};

// ((u1, −u2†ζ^l), (u2, u1†ζ^l)) with |u1|² + |u2|² = 1, kept in a canonical
// sign so that equal channels compare equal.
struct ExactUnitary
{
    DOmega u1, u2;
    int l = 0;

    ExactUnitary() : ExactUnitary(DOmega(ZOmega(1)), DOmega(ZOmega(0)), 0) {}
    ExactUnitary(DOmega a, DOmega b, int l_);

    static ExactUnitary from_matrix(const Mat2 &m);
    Mat2 matrix() const;

    ExactUnitary operator*(const ExactUnitary &o) const { return from_matrix(matrix() * o.matrix()); }
    ExactUnitary dagger() const { return from_matrix(matrix().dagger()); }

    bool operator==(const ExactUnitary &o) const { return l == o.l && u1 == o.u1 && u2 == o.u2; }
    bool operator<(const ExactUnitary &o) const;

    unsigned lde() const { return std::max(u1.k, u2.k); }
    bool norm_is_one() const;

    // (Re u1, Im u1, Re u2, Im u2)
    std::array<double, 4> to_double() const;
    std::array<Quad, 4> to_quad() const;
    std::array<Real, 4> to_real() const;
};

struct ExactUnitaryHash
{
    std::size_t operator()(const ExactUnitary &u) const
    {
        return hash_value(u.u1) * 1000003u ^ hash_value(u.u2) * 31u ^ (std::size_t)u.l;
    }
};

// T^{a0} (S^{b1} H T)…(S^{bm} H T) C
struct GateWord
{
    bool a0 = false;
    std::vector<bool> syllables;
    int clifford = 0;

    unsigned tcount() const { return (a0 ? 1u : 0u) + (unsigned)syllables.size(); }
    std::string to_string() const;
    bool operator==(const GateWord &o) const = default;
};

const ExactUnitary &gate_H();
const ExactUnitary &gate_S();
const ExactUnitary &gate_T();

const std::vector<ExactUnitary> &clifford_table();
// fixed shortest {H,S} word for each table entry
const std::vector<std::string> &clifford_words();
// index into clifford_table(), or −1
int clifford_index(const ExactUnitary &u);

ExactUnitary evaluate(const GateWord &w);
// product of an arbitrary string over {H,S,T}; an optional "@p<j>" suffix is accepted and ignored
ExactUnitary evaluate_string(const std::string &s);
GateWord parse_word(const std::string &s);

unsigned tcount(const ExactUnitary &u);
GateWord exact_synthesize(const ExactUnitary &u);

std::vector<ExactUnitary> coset_reps(unsigned n);
std::vector<GateWord> coset_words(unsigned n);

// 3×3 rotation of the Bloch sphere, entries in Z[1/√2]; used for T-count
std::array<DOmega, 9> bloch_matrix(const ExactUnitary &u);
unsigned sde(const std::array<DOmega, 9> &m);

// Diamond distance between the channel of u and the target (l = 1 rotates by e^{iπ/8}).
Real channel_distance(const ExactUnitary &u, const UnitVec4 &v);
// SU(2) representative (Re, Im of the first column) of u, i.e. u·ζ^{−l/2}
std::array<Real, 4> su2_column(const ExactUnitary &u);

// Exact decision of channel_distance(u, v) < eps for the dyadic target v.
bool certified_within(const ExactUnitary &u, const UnitVec4 &v, double eps);

} // namespace cliffordt
