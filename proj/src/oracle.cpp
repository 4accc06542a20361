#include "cliffordt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace cliffordt
{

namespace
{

constexpr char kMagic[8] = {'C', 'T', 'D', 'B', 'v', 'e', 'r', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

std::array<double, 4> su2_double(const ExactUnitary &u)
{
    auto c = u.to_double();
    if (u.l == 0)
        return c;
    const double cs = std::cos(std::numbers::pi / 8), sn = std::sin(std::numbers::pi / 8);
    return {c[0] * cs + c[1] * sn, c[1] * cs - c[0] * sn, c[2] * cs + c[3] * sn, c[3] * cs - c[2] * sn};
}

std::uint64_t key_hash(const ExactUnitary &u) { return ExactUnitaryHash{}(u); }

// all words of T-count exactly t with their exact unitaries
void slice(unsigned t, std::vector<DatabaseEntry> &out, std::vector<ExactUnitary> &exact)
{
    const auto &cl = clifford_table();
    for (const auto &w : coset_words(t))
    {
        ExactUnitary prefix = evaluate(w);
        for (int c = 0; c < (int)cl.size(); ++c)
        {
            GateWord g = w;
            g.clifford = c;
            ExactUnitary u = prefix * cl[c];
            out.push_back({g, t, su2_double(u)});
            exact.push_back(u);
        }
    }
}

} // namespace

std::uint64_t channels_with_tcount(unsigned t) { return t == 0 ? 24 : 72ull << (t - 1); }

std::vector<std::size_t> ChannelDatabase::count_per_t() const
{
    std::vector<std::size_t> c(t_max + 1, 0);
    for (const auto &e : entries)
        if (e.tcount <= t_max)
            ++c[e.tcount];
    return c;
}

void ChannelDatabase::index()
{
    by_hash_.clear();
    for (std::size_t i = 0; i < entries.size(); ++i)
        by_hash_[key_hash(evaluate(entries[i].word))].push_back(i);
}

std::optional<std::size_t> ChannelDatabase::find(const ExactUnitary &u) const
{
    auto it = by_hash_.find(key_hash(u));
    if (it == by_hash_.end())
        return std::nullopt;
    for (std::size_t i : it->second)
        if (evaluate(entries[i].word) == u)
            return i;
    return std::nullopt;
}

ChannelDatabase build_database(unsigned t_max, unsigned threads)
{
    if (t_max > kMaxDatabaseT)
        throw std::invalid_argument("build_database: t_max above 14");
    std::vector<std::vector<DatabaseEntry>> slices(t_max + 1);
    std::vector<std::vector<ExactUnitary>> exact(t_max + 1);
    threads = std::max(1u, threads);
    if (threads == 1)
        for (unsigned t = 0; t <= t_max; ++t)
            slice(t, slices[t], exact[t]);
    else
    {
        std::vector<std::thread> pool;
        for (unsigned th = 0; th < threads; ++th)
            pool.emplace_back([&, th] {
                for (unsigned t = th; t <= t_max; t += threads)
                    slice(t, slices[t], exact[t]);
            });
        for (auto &p : pool)
            p.join();
    }

    ChannelDatabase db;
    db.t_max = t_max;
    std::vector<ExactUnitary> keys;
    for (unsigned t = 0; t <= t_max; ++t)
        for (std::size_t i = 0; i < slices[t].size(); ++i)
        {
            const ExactUnitary &u = exact[t][i];
            std::uint64_t h = key_hash(u);
            auto &bucket = db.by_hash_[h];
            bool dup = false;
            for (std::size_t j : bucket)
                dup = dup || keys[j] == u;
            if (dup)
                continue; // a shorter word already reached this channel
            bucket.push_back(db.entries.size());
            db.entries.push_back(slices[t][i]);
            keys.push_back(u);
        }
    return db;
}

std::size_t verify_database(const ChannelDatabase &db)
{
    std::size_t bad = 0;
    auto counts = db.count_per_t();
    for (unsigned t = 0; t <= db.t_max; ++t)
        if (counts[t] != channels_with_tcount(t))
            ++bad;
    unsigned prev = 0;
    for (const auto &e : db.entries)
    {
        ExactUnitary u = evaluate(e.word);
        auto v = su2_double(u);
        double dot = 0;
        for (int i = 0; i < 4; ++i)
            dot += v[i] * e.vec[i];
        if (e.tcount != e.word.tcount() || tcount(u) != e.tcount || std::abs(std::abs(dot) - 1) > 1e-9 ||
            e.tcount < prev)
            ++bad;
        prev = e.tcount;
    }
    return bad;
}

void ChannelDatabase::save(const std::string &path) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f.write(kMagic, sizeof kMagic);
    std::uint32_t hdr[2] = {kFormatVersion, t_max};
    f.write(reinterpret_cast<const char *>(hdr), sizeof hdr);
    std::uint64_t n = entries.size();
    f.write(reinterpret_cast<const char *>(&n), sizeof n);
    for (const auto &e : entries)
    {
        std::uint8_t meta[4] = {(std::uint8_t)e.word.a0, (std::uint8_t)e.word.syllables.size(),
                                (std::uint8_t)e.word.clifford, (std::uint8_t)e.tcount};
        std::uint64_t bits = 0;
        for (bool b : e.word.syllables)
            bits = bits << 1 | (b ? 1 : 0);
        f.write(reinterpret_cast<const char *>(meta), sizeof meta);
        f.write(reinterpret_cast<const char *>(&bits), sizeof bits);
        f.write(reinterpret_cast<const char *>(e.vec.data()), sizeof(double) * 4);
    }
    if (!f)
        throw std::runtime_error("write failed: " + path);
}

ChannelDatabase ChannelDatabase::load(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot read " + path);
    char magic[8];
    std::uint32_t hdr[2];
    std::uint64_t n = 0;
    f.read(magic, sizeof magic);
    f.read(reinterpret_cast<char *>(hdr), sizeof hdr);
    f.read(reinterpret_cast<char *>(&n), sizeof n);
    if (!f || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("not a channel database: " + path);
    if (hdr[0] != kFormatVersion)
        throw std::runtime_error("unsupported database version " + std::to_string(hdr[0]));
    if (hdr[1] > kMaxDatabaseT)
        throw std::runtime_error("database t_max out of range");
    ChannelDatabase db;
    db.t_max = hdr[1];
    std::uint64_t expect = 0;
    for (unsigned t = 0; t <= db.t_max; ++t)
        expect += channels_with_tcount(t);
    if (n != expect)
        throw std::runtime_error("database entry count mismatch");
    db.entries.resize(n);
    for (auto &e : db.entries)
    {
        std::uint8_t meta[4];
        std::uint64_t bits;
        f.read(reinterpret_cast<char *>(meta), sizeof meta);
        f.read(reinterpret_cast<char *>(&bits), sizeof bits);
        f.read(reinterpret_cast<char *>(e.vec.data()), sizeof(double) * 4);
        if (!f)
            throw std::runtime_error("truncated database");
        if (meta[1] > 63 || meta[2] >= 24)
            throw std::runtime_error("malformed database entry");
        e.word.a0 = meta[0] != 0;
        e.word.clifford = meta[2];
        for (int i = meta[1] - 1; i >= 0; --i)
            e.word.syllables.push_back((bits >> i) & 1);
        e.tcount = meta[3];
    }
    return db;
}

std::optional<unsigned> oracle_min_tcount(const ChannelDatabase &db, const UnitVec4 &v, double eps)
{
    if (eps > 1)
        return 0u;
    const auto w = v.to_double();
    const double c = std::sqrt(1 - eps * eps);
    constexpr double margin = 1e-9;
    for (const auto &e : db.entries)
    {
        double dot = std::abs(e.vec[0] * w[0] + e.vec[1] * w[1] + e.vec[2] * w[2] + e.vec[3] * w[3]);
        if (dot < c - margin)
            continue;
        if (dot > c + margin || certified_within(evaluate(e.word), v, eps))
            return e.tcount;
    }
    return std::nullopt;
}

CoveringEstimate monte_carlo_covering(const CoveringInstance &inst, std::size_t n_samples, std::uint64_t seed)
{
    const auto v = inst.v.to_double();
    const double delta = inst.delta;
    const double theta = std::asin(std::min(1.0, delta));
    const double c = std::sqrt(1 - delta * delta);
    std::vector<std::array<double, 4>> pts;
    for (auto &p : inst.points)
        pts.push_back(p.to_double());

    // orthonormal basis of v⊥
    std::array<std::array<double, 4>, 3> basis;
    int nb = 0;
    for (int e = 0; e < 4 && nb < 3; ++e)
    {
        std::array<double, 4> w{0, 0, 0, 0};
        w[e] = 1;
        double pv = v[e];
        for (int i = 0; i < 4; ++i)
            w[i] -= pv * v[i];
        for (int k = 0; k < nb; ++k)
        {
            double pk = 0;
            for (int i = 0; i < 4; ++i)
                pk += w[i] * basis[k][i];
            for (int i = 0; i < 4; ++i)
                w[i] -= pk * basis[k][i];
        }
        double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
        if (n < 0.3)
            continue;
        for (auto &x : w)
            x /= n;
        basis[nb++] = w;
    }

    // colatitude density on S³ is ∝ sin²φ; CDF ∝ φ − sinφ·cosφ
    auto cdf = [](double phi) { return phi - std::sin(phi) * std::cos(phi); };
    const double total = cdf(theta);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0, 1);
    std::normal_distribution<double> gauss;
    CoveringEstimate out;
    for (std::size_t s = 0; s < n_samples; ++s)
    {
        double target = uni(rng) * total;
        double lo = 0, hi = theta;
        for (int it = 0; it < 60; ++it)
        {
            double mid = 0.5 * (lo + hi);
            (cdf(mid) < target ? lo : hi) = mid;
        }
        double phi = 0.5 * (lo + hi);
        double g[3] = {gauss(rng), gauss(rng), gauss(rng)};
        double gn = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        std::array<double, 4> x;
        for (int i = 0; i < 4; ++i)
        {
            double n = (g[0] * basis[0][i] + g[1] * basis[1][i] + g[2] * basis[2][i]) / gn;
            x[i] = std::cos(phi) * v[i] + std::sin(phi) * n;
        }
        ++out.samples;
        bool covered = false;
        for (const auto &p : pts)
            if (std::abs(p[0] * x[0] + p[1] * x[1] + p[2] * x[2] + p[3] * x[3]) > c)
            {
                covered = true;
                break;
            }
        if (!covered)
        {
            out.covered = false;
            out.witness = x;
            return out;
        }
    }
    return out;
}

std::uint64_t brute_force_four_squares(const ZRoot2 &m)
{
    if (!totally_nonnegative(m))
        throw std::invalid_argument("brute_force_four_squares: m must be totally nonnegative");
    BigInt nm = norm_quadratic(m);
    if (nm > 1000000)
        throw std::invalid_argument("brute_force_four_squares: N(m) above 10^6");
    const long long ma = (long long)m.a, mb = (long long)m.b;
    const double s = std::sqrt((double)ma + (double)mb * std::sqrt(2.0));
    const double sb = std::sqrt(std::max(0.0, (double)ma - (double)mb * std::sqrt(2.0)));
    // x = p + q√2 with |x| ≤ √m and |x•| ≤ √m•
    const long long P = (long long)std::floor((s + sb) / 2) + 1;
    const long long Q = (long long)std::floor((s + sb) / (2 * std::sqrt(2.0))) + 1;
    struct Sq
    {
        long long a, b;
    };
    std::vector<Sq> squares;
    for (long long p = -P; p <= P; ++p)
        for (long long q = -Q; q <= Q; ++q)
        {
            // x² = p² + 2q² + 2pq√2
            long long a = p * p + 2 * q * q, b = 2 * p * q;
            ZRoot2 rest(BigInt(ma - a), BigInt(mb - b));
            if (totally_nonnegative(rest))
                squares.push_back({a, b});
        }
    std::unordered_map<long long, std::uint64_t> pair_sums;
    auto key = [](long long a, long long b) { return a * 1000003 + b; };
    for (const auto &x : squares)
        for (const auto &y : squares)
            ++pair_sums[key(x.a + y.a, x.b + y.b)];
    std::uint64_t total = 0;
    for (const auto &x : squares)
        for (const auto &y : squares)
        {
            auto it = pair_sums.find(key(ma - x.a - y.a, mb - x.b - y.b));
            if (it != pair_sums.end())
                total += it->second;
        }
    return total;
}

} // namespace cliffordt
