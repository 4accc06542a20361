#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cliffordt/rings.hpp"

namespace cliffordt
{

using Real = boost::multiprecision::cpp_bin_float_100;
using Quad = __float128;

constexpr unsigned kDefaultPrecisionBits = 256;

// Point of S³/{±1}: (Re v1, Im v1, Re v2, Im v2) of the matrix ((v1, −v2†),(v2, v1†)).
// Stored as exact dyadic rationals x_i = num_i / 2^precision_bits so that every
// later comparison against an exact Clifford+T unitary can be decided exactly.
class UnitVec4
{
public:
    UnitVec4() : UnitVec4(std::array<Real, 4>{1, 0, 0, 0}) {}
    explicit UnitVec4(const std::array<Real, 4> &x, unsigned precision_bits = kDefaultPrecisionBits);

    const std::array<BigInt, 4> &numerators() const { return num_; }
    unsigned precision_bits() const { return bits_; }

    Real coord(int i) const;
    std::array<Real, 4> coords() const;
    // normalized copies for fast numerics
    std::array<Quad, 4> quad() const { return q_; }
    std::array<double, 4> to_double() const;
    std::complex<double> v1() const { return {double(q_[0]), double(q_[1])}; }
    std::complex<double> v2() const { return {double(q_[2]), double(q_[3])}; }

    bool operator==(const UnitVec4 &o) const { return num_ == o.num_ && bits_ == o.bits_; }

private:
    std::array<BigInt, 4> num_;
    unsigned bits_;
    std::array<Quad, 4> q_;
};

struct TargetUnitary
{
    UnitVec4 v;
    std::string source;
};

// √(1 − (u·v)²) for the normalized representatives.
Real diamond_distance(const UnitVec4 &u, const UnitVec4 &v);
double diamond_distance(const std::array<double, 4> &u, const std::array<double, 4> &v);

TargetUnitary haar_sample(std::uint64_t seed);
TargetUnitary haar_sample(std::mt19937_64 &rng);

// "rz(θ)", "rx(θ)", "ry(θ)" or eight numbers (row-major re/im pairs).
TargetUnitary parse_target(const std::string &text);
TargetUnitary target_from_matrix(const std::array<std::complex<Real>, 4> &m, std::string source);

// Evaluates angle expressions such as "pi/4", "-3*pi/8", "0.25", "2pi".
Real parse_angle(const std::string &text);

// Quaternion-style product of the SU(2) points: returns the vector of A·B.
std::array<Real, 4> su2_mul(const std::array<Real, 4> &a, const std::array<Real, 4> &b);
// vector of A†
std::array<Real, 4> su2_dagger(const std::array<Real, 4> &a);

} // namespace cliffordt
