#pragma once

// Unevaluated sum of two doubles (~106-bit significand). Only the operations
// the enumerator needs.

#include <cmath>

#include "cliffordt/unitary.hpp"

namespace cliffordt::detail
{

struct DD
{
    double hi = 0, lo = 0;

    DD() = default;
    DD(double h) : hi(h), lo(0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    static DD from_quad(Quad q)
    {
        double h = (double)q;
        return {h, (double)(q - (Quad)h)};
    }
    static DD from_int(__int128 v)
    {
        double h = (double)v;
        return {h, (double)(v - (__int128)h)};
    }
    long double to_ld() const { return (long double)hi + (long double)lo; }
};

inline DD quick_two_sum(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b)
{
    double p = a * b;
#ifdef __FMA__
    return {p, std::fma(a, b, -p)};
#else
    constexpr double split = 134217729.0; // 2^27 + 1
    double ta = split * a, tb = split * b;
    double ah = ta - (ta - a), al = a - ah;
    double bh = tb - (tb - b), bl = b - bh;
    return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
#endif
}

inline DD operator+(DD a, DD b)
{
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b)
{
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD &operator+=(DD &a, DD b) { return a = a + b; }

} // namespace cliffordt::detail
