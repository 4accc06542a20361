#include "cliffordt/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <quadmath.h>

namespace cliffordt
{

namespace
{

using QC = std::complex<Quad>;

constexpr Quad kBoundarySlack = 1e-20;

Quad qpi() { return acosq(-1); }

QC expi(Quad th) { return {cosq(th), sinq(th)}; }

// SU(2) element stored as its first column (a, b): [[a, −b̄], [b, ā]]
struct SU2
{
    QC a, b;

    SU2 operator*(const SU2 &o) const
    {
        return {a * o.a - std::conj(b) * o.b, b * o.a + std::conj(a) * o.b};
    }
    SU2 dagger() const { return {std::conj(a), -b}; }
};

SU2 su2_T() { return {expi(-qpi() / 8), 0}; }
SU2 su2_S() { return {expi(-qpi() / 4), 0}; }
SU2 su2_H()
{
    // −i·H
    Quad r = 1 / sqrtq((Quad)2);
    return {QC(0, -r), QC(0, -r)};
}

std::array<Quad, 4> as_array(const SU2 &u) { return {u.a.real(), u.a.imag(), u.b.real(), u.b.imag()}; }

// S^b H T inverses, applied on the left of the running target
const SU2 &syllable_inverse(bool b)
{
    static const SU2 ht = (su2_H() * su2_T()).dagger();
    static const SU2 sht = (su2_S() * su2_H() * su2_T()).dagger();
    return b ? sht : ht;
}

bool in_region(const IntVec8 &x, unsigned k, const std::array<Quad, 4> &w, Quad c)
{
    auto u = u_coords(x, k);
    auto ub = u_bullet_coords(x, k);
    Quad n = 0, nb = 0, dot = 0;
    for (int i = 0; i < 4; ++i)
    {
        n += u[i] * u[i];
        nb += ub[i] * ub[i];
        dot += u[i] * w[i];
    }
    return n <= 1 + kBoundarySlack && nb <= 1 + kBoundarySlack && fabsq(dot) > c - kBoundarySlack;
}

void check_eps(double eps)
{
    if (!(eps > 0) || eps > 1)
        throw std::domain_error("enumeration requires eps in (0, 1]");
    if (eps < kMinEps)
        throw std::domain_error("eps below the supported minimum 1e-13");
}

// Channels with T-count s whose overlap with w passes a 113-bit pre-check
// against eps. The certified test is left to the caller.
std::vector<ExactUnitary> subcall(const std::array<Quad, 4> &w_in, double eps, unsigned s, EnumStats &stats)
{
    std::array<Quad, 4> w = w_in;
    int l = s % 2;
    unsigned k = l == 0 ? (s + 2) / 2 : (s + 3) / 2;
    if (l == 1)
    {
        QC r = expi(qpi() / 8);
        QC w1 = r * QC(w[0], w[1]), w2 = r * QC(w[2], w[3]);
        w = {w1.real(), w1.imag(), w2.real(), w2.imag()};
    }
    Quad thr = (Quad)eps * eps * (1 + (Quad)1e-6) + (Quad)1e-30;
    std::vector<ExactUnitary> out;
    for (const auto &x : cap_candidates(k, eps, w, stats))
    {
        if (!unit_norm_exact(x, k))
            continue;
        ++stats.norm_ok;
        auto u = u_coords(x, k);
        Quad o = u[0] * w[0] + u[1] * w[1] + u[2] * w[2] + u[3] * w[3];
        if (1 - o * o > thr)
            continue;
        ++stats.error_ok;
        ExactUnitary U = unitary_from_vec(x, k, l);
        if (tcount(U) == s)
            out.push_back(U);
    }
    return out;
}

void sort_unique(std::vector<ExactUnitary> &v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

ExactUnitary unitary_from_vec(const IntVec8 &x, unsigned k, int l)
{
    DOmega u1(ZOmega(x[0], x[1], x[2], x[3]), k);
    DOmega u2(ZOmega(x[4], x[5], x[6], x[7]), k);
    return ExactUnitary(u1, u2, l);
}

std::vector<IntVec8> enumerate_integer_points(const RegionSpec &region)
{
    check_eps(region.eps);
    auto w = region.v.quad();
    Quad e = region.eps;
    Quad c = sqrtq(1 - e * e);
    std::vector<IntVec8> out;
    EnumStats stats;
    for (int sgn : {1, -1})
    {
        std::array<Quad, 4> ws = w;
        for (auto &q : ws)
            q *= sgn;
        for (const auto &x : cap_candidates(region.k, region.eps, ws, stats))
            if (in_region(x, region.k, w, c))
                out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IntVec8> box_scan_integer_points(const RegionSpec &region)
{
    const unsigned k = region.k;
    auto w = region.v.quad();
    Quad e = region.eps;
    Quad c = sqrtq(1 - e * e);
    const std::int64_t B = (std::int64_t)std::floor(2 * std::pow(std::sqrt(2.0), (double)k));
    struct Half
    {
        std::array<std::int64_t, 4> x;
        std::array<Quad, 2> u, ub;
    };
    std::vector<Half> halves;
    for (std::int64_t a = -B; a <= B; ++a)
        for (std::int64_t b = -B; b <= B; ++b)
            for (std::int64_t cc = -B; cc <= B; ++cc)
                for (std::int64_t d = -B; d <= B; ++d)
                {
                    IntVec8 x{a, b, cc, d, 0, 0, 0, 0};
                    auto u = u_coords(x, k);
                    auto ub = u_bullet_coords(x, k);
                    if (u[0] * u[0] + u[1] * u[1] <= 1 + kBoundarySlack &&
                        ub[0] * ub[0] + ub[1] * ub[1] <= 1 + kBoundarySlack)
                        halves.push_back({{a, b, cc, d}, {u[0], u[1]}, {ub[0], ub[1]}});
                }
    std::vector<IntVec8> out;
    for (const auto &h1 : halves)
        for (const auto &h2 : halves)
        {
            Quad n = h1.u[0] * h1.u[0] + h1.u[1] * h1.u[1] + h2.u[0] * h2.u[0] + h2.u[1] * h2.u[1];
            Quad nb = h1.ub[0] * h1.ub[0] + h1.ub[1] * h1.ub[1] + h2.ub[0] * h2.ub[0] + h2.ub[1] * h2.ub[1];
            Quad dot = h1.u[0] * w[0] + h1.u[1] * w[1] + h2.u[0] * w[2] + h2.u[1] * w[3];
            if (n <= 1 + kBoundarySlack && nb <= 1 + kBoundarySlack && fabsq(dot) > c - kBoundarySlack)
                out.push_back({h1.x[0], h1.x[1], h1.x[2], h1.x[3], h2.x[0], h2.x[1], h2.x[2], h2.x[3]});
        }
    std::sort(out.begin(), out.end());
    return out;
}

CandidateList fixed_tcount_enum(const UnitVec4 &v, double eps, unsigned t)
{
    check_eps(eps);
    CandidateList res;
    for (auto &U : subcall(v.quad(), eps, t, res.stats))
        if (certified_within(U, v, eps))
            res.entries.push_back(U);
    sort_unique(res.entries);
    return res;
}

unsigned split_point(double eps, unsigned t, double offset)
{
    double s = std::floor((double)t - 2.5 * std::log2(1 / eps) + offset + 0.5);
    if (s <= 0)
        return 0;
    return std::min((unsigned)s, t);
}

CandidateList divide_and_conquer_enum(const UnitVec4 &v, double eps, unsigned t, const SplitOptions &opts)
{
    check_eps(eps);
    const unsigned n = split_point(eps, t, opts.offset);
    if (n == 0)
        return fixed_tcount_enum(v, eps, t);
    const unsigned s = t - n;
    const auto q = v.quad();
    const SU2 target{QC(q[0], q[1]), QC(q[2], q[3])};
    const SU2 t_inv = su2_T().dagger();

    // Coset prefixes: family 0 has n syllables, family 1 is T followed by n−1.
    // Index i in [0, 2^n) → family 0 with syllable bits i (first syllable = MSB);
    // i in [2^n, 2^n + 2^{n−1}) → family 1.
    const std::uint64_t n0 = 1ull << n, total = n0 + (1ull << (n - 1));

    struct Local
    {
        std::vector<ExactUnitary> found;
        EnumStats stats;
    };

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Local &local) {
        // prefix states: st[j] = target after undoing the first j syllables
        std::vector<SU2> st(n + 1);
        std::uint64_t prev_bits = 0;
        int prev_family = -1;
        for (std::uint64_t i = lo; i < hi; ++i)
        {
            int family = i < n0 ? 0 : 1;
            unsigned m = family == 0 ? n : n - 1;
            std::uint64_t bits = family == 0 ? i : i - n0;
            unsigned first_changed = 0;
            if (family != prev_family)
            {
                st[0] = family == 0 ? target : t_inv * target;
                first_changed = 0;
            }
            else
            {
                std::uint64_t diff = bits ^ prev_bits;
                // highest changed bit ↔ earliest changed syllable
                unsigned hb = 63 - (unsigned)__builtin_clzll(diff);
                first_changed = m - 1 - hb;
            }
            for (unsigned j = first_changed; j < m; ++j)
                st[j + 1] = syllable_inverse((bits >> (m - 1 - j)) & 1) * st[j];
            prev_bits = bits;
            prev_family = family;

            auto subs = subcall(as_array(st[m]), eps * (1 + 1e-9), s, local.stats);
            if (subs.empty())
                continue;
            GateWord gw;
            gw.a0 = family == 1;
            for (unsigned j = 0; j < m; ++j)
                gw.syllables.push_back((bits >> (m - 1 - j)) & 1);
            ExactUnitary UL = evaluate(gw);
            for (auto &W : subs)
            {
                ExactUnitary U = UL * W;
                if (tcount(U) == t && certified_within(U, v, eps))
                    local.found.push_back(U);
            }
        }
    };

    unsigned threads = std::max(1u, opts.threads);
    std::vector<Local> locals(threads);
    if (threads == 1)
        run_range(0, total, locals[0]);
    else
    {
        // blocks of consecutive indices share prefix work
        const std::uint64_t block = 256;
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned th = 0; th < threads; ++th)
            pool.emplace_back([&, th] {
                for (;;)
                {
                    std::uint64_t lo = next.fetch_add(block);
                    if (lo >= total)
                        break;
                    run_range(lo, std::min(total, lo + block), locals[th]);
                }
            });
        for (auto &p : pool)
            p.join();
    }
    CandidateList res;
    for (auto &l : locals)
    {
        res.entries.insert(res.entries.end(), l.found.begin(), l.found.end());
        res.stats += l.stats;
    }
    sort_unique(res.entries);
    return res;
}

} // namespace cliffordt
