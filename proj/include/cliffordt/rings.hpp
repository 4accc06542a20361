#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cliffordt
{

using BigInt = boost::multiprecision::cpp_int;

// a + b√2
struct ZRoot2
{
    BigInt a, b;

    ZRoot2() = default;
    ZRoot2(BigInt a_, BigInt b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}

    ZRoot2 operator+(const ZRoot2 &o) const { return {a + o.a, b + o.b}; }
    ZRoot2 operator-(const ZRoot2 &o) const { return {a - o.a, b - o.b}; }
    ZRoot2 operator-() const { return {-a, -b}; }
    ZRoot2 operator*(const ZRoot2 &o) const { return {a * o.a + 2 * b * o.b, a * o.b + b * o.a}; }
    bool operator==(const ZRoot2 &o) const = default;

    // √2 ↦ −√2
    ZRoot2 bullet() const { return {a, -b}; }
    bool is_zero() const { return a == 0 && b == 0; }
    double to_double() const;
};

BigInt norm_quadratic(const ZRoot2 &x);

// Sign of x as a real number, decided exactly.
int sign(const ZRoot2 &x);

// x ≥ 0 and x• ≥ 0
bool totally_nonnegative(const ZRoot2 &x);

// a + bζ + cζ² + dζ³ with ζ = e^{iπ/4}
struct ZOmega
{
    BigInt a, b, c, d;

    ZOmega() = default;
    ZOmega(BigInt a_, BigInt b_ = 0, BigInt c_ = 0, BigInt d_ = 0)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_))
    {
    }

    static ZOmega from_zroot2(const ZRoot2 &x) { return {x.a, x.b, 0, -x.b}; }
    static ZOmega zeta_power(int j);

    ZOmega operator+(const ZOmega &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    ZOmega operator-(const ZOmega &o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    ZOmega operator-() const { return {-a, -b, -c, -d}; }
    ZOmega operator*(const ZOmega &o) const;
    ZOmega operator*(const BigInt &s) const { return {a * s, b * s, c * s, d * s}; }
    bool operator==(const ZOmega &o) const = default;

    ZOmega dagger() const { return {a, -d, -c, -b}; }
    ZOmega bullet() const { return {a, -b, c, -d}; }
    // multiply by ζ
    ZOmega mul_zeta() const { return {-d, a, b, c}; }
    ZOmega mul_zeta(int j) const;
    ZOmega mul_sqrt2() const { return {b - d, c + a, b + d, c - a}; }
    bool divisible_by_sqrt2() const;
    // requires divisible_by_sqrt2()
    ZOmega div_sqrt2() const;
    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    // x·x†, which always lies in Z[√2]
    ZRoot2 norm_sq() const;
    // √2·Re(x) and √2·Im(x) as elements of Z[√2]
    ZRoot2 sqrt2_re() const { return {b - d, a}; }
    ZRoot2 sqrt2_im() const { return {b + d, c}; }
    // true when x equals its conjugate's negation pattern of a real number
    bool is_real() const { return c == 0 && b == -d; }
    ZRoot2 to_zroot2() const { return {a, b}; } // valid only when is_real()

    std::array<BigInt, 4> coeffs() const { return {a, b, c, d}; }
    bool operator<(const ZOmega &o) const { return coeffs() < o.coeffs(); }
};

std::ostream &operator<<(std::ostream &os, const ZRoot2 &x);
std::ostream &operator<<(std::ostream &os, const ZOmega &x);

// num / √2^k, kept with minimal k
struct DOmega
{
    ZOmega num;
    unsigned k = 0;

    DOmega() = default;
    DOmega(ZOmega n, unsigned k_ = 0) : num(std::move(n)), k(k_) { canonicalize(); }

    void canonicalize();

    DOmega operator+(const DOmega &o) const;
    DOmega operator-(const DOmega &o) const;
    DOmega operator-() const { return DOmega(-num, k); }
    DOmega operator*(const DOmega &o) const { return DOmega(num * o.num, k + o.k); }
    bool operator==(const DOmega &o) const { return k == o.k && num == o.num; }
    bool operator<(const DOmega &o) const;

    DOmega dagger() const { return DOmega(num.dagger(), k); }
    DOmega mul_zeta(int j) const { return DOmega(num.mul_zeta(j), k); }
    bool is_zero() const { return num.is_zero(); }

    // numerator of the value rescaled to denominator √2^target (target ≥ k)
    ZOmega scaled_to(unsigned target) const;
};

std::ostream &operator<<(std::ostream &os, const DOmega &x);

unsigned lde(const ZOmega &x);
unsigned lde(const DOmega &x);
template <class Range>
unsigned lde_all(const Range &r)
{
    unsigned k = 0;
    for (const auto &x : r)
        k = std::max(k, lde(x));
    return k;
}

// Number of (x1..x4) ∈ Z[√2]⁴ with Σxᵢ² = m.
BigInt four_square_count(const ZRoot2 &m);

// Sum of ideal norms N(d) over ideals (d) dividing (m), m ≠ 0.
BigInt divisor_norm_sum(const ZRoot2 &m);

std::size_t hash_value(const ZOmega &x);
std::size_t hash_value(const DOmega &x);

} // namespace cliffordt
