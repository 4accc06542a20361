#include "cliffordt/rings.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cliffordt
{

double ZRoot2::to_double() const
{
    return a.convert_to<double>() + b.convert_to<double>() * std::sqrt(2.0);
}

BigInt norm_quadratic(const ZRoot2 &x) { return x.a * x.a - 2 * x.b * x.b; }

int sign(const ZRoot2 &x)
{
    int sa = x.a.sign(), sb = x.b.sign();
    if (sa >= 0 && sb >= 0)
        return (sa > 0 || sb > 0) ? 1 : 0;
    if (sa <= 0 && sb <= 0)
        return -1;
    // opposite signs: compare a² with 2b²
    BigInt n = norm_quadratic(x);
    if (n == 0)
        return 0;
    return (n.sign() > 0) ? sa : sb;
}

bool totally_nonnegative(const ZRoot2 &x) { return sign(x) >= 0 && sign(x.bullet()) >= 0; }

ZOmega ZOmega::zeta_power(int j) { return ZOmega(1).mul_zeta(j); }

ZOmega ZOmega::operator*(const ZOmega &o) const
{
    return {a * o.a - (b * o.d + c * o.c + d * o.b),
            a * o.b + b * o.a - (c * o.d + d * o.c),
            a * o.c + b * o.b + c * o.a - d * o.d,
            a * o.d + b * o.c + c * o.b + d * o.a};
}

ZOmega ZOmega::mul_zeta(int j) const
{
    j = ((j % 8) + 8) % 8;
    ZOmega r = *this;
    if (j >= 4)
    {
        r = -r;
        j -= 4;
    }
    for (int i = 0; i < j; ++i)
        r = r.mul_zeta();
    return r;
}

bool ZOmega::divisible_by_sqrt2() const
{
    return ((a - c) & 1) == 0 && ((b - d) & 1) == 0;
}

ZOmega ZOmega::div_sqrt2() const
{
    // x/√2 = x·√2/2
    ZOmega t = mul_sqrt2();
    return {t.a / 2, t.b / 2, t.c / 2, t.d / 2};
}

ZRoot2 ZOmega::norm_sq() const
{
    ZOmega p = *this * dagger();
    // p has zero ζ² part and ζ³ = −ζ part: p.a + p.b(ζ − ζ³)
    return {p.a, p.b};
}

std::ostream &operator<<(std::ostream &os, const ZRoot2 &x)
{
    return os << "(" << x.a << (x.b.sign() < 0 ? "-" : "+") << abs(x.b) << "√2)";
}

std::ostream &operator<<(std::ostream &os, const ZOmega &x)
{
    return os << "[" << x.a << "," << x.b << "," << x.c << "," << x.d << "]";
}

std::ostream &operator<<(std::ostream &os, const DOmega &x)
{
    return os << x.num << "/√2^" << x.k;
}

void DOmega::canonicalize()
{
    if (num.is_zero())
    {
        k = 0;
        return;
    }
    while (k > 0 && num.divisible_by_sqrt2())
    {
        num = num.div_sqrt2();
        --k;
    }
}

ZOmega DOmega::scaled_to(unsigned target) const
{
    if (target < k)
        throw std::invalid_argument("DOmega::scaled_to: target below denominator exponent");
    unsigned diff = target - k;
    ZOmega r = num * (BigInt(1) << (diff / 2));
    if (diff % 2)
        r = r.mul_sqrt2();
    return r;
}

DOmega DOmega::operator+(const DOmega &o) const
{
    unsigned t = std::max(k, o.k);
    return DOmega(scaled_to(t) + o.scaled_to(t), t);
}

DOmega DOmega::operator-(const DOmega &o) const
{
    unsigned t = std::max(k, o.k);
    return DOmega(scaled_to(t) - o.scaled_to(t), t);
}

bool DOmega::operator<(const DOmega &o) const
{
    if (k != o.k)
        return k < o.k;
    return num < o.num;
}

unsigned lde(const ZOmega &) { return 0; }
unsigned lde(const DOmega &x) { return DOmega(x.num, x.k).k; }

namespace
{

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
    {
        if (n % p)
            continue;
        unsigned e = 0;
        while (n % p == 0)
        {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

// Generator of one prime ideal above a split prime p: x + y√2 with |x² − 2y²| = p.
ZRoot2 split_generator(std::uint64_t p)
{
    for (std::uint64_t y = 1;; ++y)
    {
        for (int s : {1, -1})
        {
            // x² = p + 2y² (norm −p... sign irrelevant) or x² = 2y² − p
            __int128 target = s > 0 ? (__int128)p + 2 * (__int128)y * y : 2 * (__int128)y * y - (__int128)p;
            if (target < 0)
                continue;
            auto x = (std::uint64_t)std::llround(std::sqrt((long double)target));
            for (std::uint64_t c = (x > 0 ? x - 1 : 0); c <= x + 1; ++c)
                if ((__int128)c * c == target)
                    return {BigInt(c), BigInt(y)};
        }
        if (y > (1u << 31))
            throw std::domain_error("split_generator: no generator found");
    }
}

bool divides(const ZRoot2 &d, const ZRoot2 &m, ZRoot2 *quot)
{
    BigInt n = norm_quadratic(d);
    // m·d• / N(d)
    ZRoot2 t = m * d.bullet();
    if (t.a % n != 0 || t.b % n != 0)
        return false;
    if (quot)
        *quot = {t.a / n, t.b / n};
    return true;
}

BigInt geometric(const BigInt &q, unsigned e)
{
    BigInt s = 0, term = 1;
    for (unsigned i = 0; i <= e; ++i)
    {
        s += term;
        term *= q;
    }
    return s;
}

} // namespace

BigInt divisor_norm_sum(const ZRoot2 &m)
{
    if (m.is_zero())
        throw std::invalid_argument("divisor_norm_sum: zero has infinitely many divisors");
    BigInt n = abs(norm_quadratic(m));
    if (n > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw std::domain_error("divisor_norm_sum: norm exceeds 64 bits");
    BigInt total = 1;
    for (auto [p, e] : factorize(n.convert_to<std::uint64_t>()))
    {
        unsigned r = p % 8;
        if (p == 2)
            total *= (BigInt(1) << (e + 1)) - 1;
        else if (r == 3 || r == 5)
            total *= geometric(BigInt(p) * p, e / 2);
        else
        {
            ZRoot2 pi = split_generator(p);
            unsigned f = 0;
            ZRoot2 cur = m, q;
            while (f < e && divides(pi, cur, &q))
            {
                cur = q;
                ++f;
            }
            total *= geometric(BigInt(p), f) * geometric(BigInt(p), e - f);
        }
    }
    return total;
}

BigInt four_square_count(const ZRoot2 &m)
{
    if (!totally_nonnegative(m))
        throw std::invalid_argument("four_square_count: m must be totally nonnegative");
    if (m.is_zero())
        return 1;
    // sums of squares always have an even √2 coefficient
    if (m.b % 2 != 0)
        return 0;
    BigInt r = 8 * divisor_norm_sum(m);
    auto div2 = [](const ZRoot2 &x) { return x.a % 2 == 0 && x.b % 2 == 0; };
    if (div2(m))
    {
        ZRoot2 h{m.a / 2, m.b / 2};
        r -= 24 * divisor_norm_sum(h);
        if (div2(h))
            r += 64 * divisor_norm_sum(ZRoot2{h.a / 2, h.b / 2});
    }
    return r;
}

std::size_t hash_value(const ZOmega &x)
{
    std::size_t h = 0;
    for (const BigInt *v : {&x.a, &x.b, &x.c, &x.d})
    {
        std::size_t lo = static_cast<std::size_t>(static_cast<std::uint64_t>(*v & 0xffffffffffffffffull));
        h ^= lo + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(v->sign() + 1);
    }
    return h;
}

std::size_t hash_value(const DOmega &x) { return hash_value(x.num) * 31 + x.k; }

} // namespace cliffordt
