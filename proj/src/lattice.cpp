#include "cliffordt/lattice.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <quadmath.h>

#include "ddouble.hpp"

namespace cliffordt
{

namespace
{

using detail::DD;
using i128 = __int128;
using LD = long double;
constexpr int N = 8;

// Ellipsoid weights: the product of a segment (w direction), a 3-ball (⊥ to w)
// and a 4-ball (bullet part) sits inside Σ gᵢ²/sᵢ² ≤ 1 with sᵢ² = 8/dᵢ.
const Quad kS0 = sqrtq((Quad)8);
const Quad kSPerp = sqrtq((Quad)8 / 3);
const Quad kSBullet = sqrtq((Quad)2);
const Quad kSqrt2 = sqrtq((Quad)2);

Quad pow_sqrt2(int e)
{
    // √2^e
    Quad r = ldexpq(1, e >= 0 ? e / 2 : -((-e + 1) / 2));
    if (e % 2 != 0)
        r *= kSqrt2;
    return r;
}

struct Reducer
{
    // columns b[j][·]
    LD b[N][N];
    i128 U[N][N]; // U[j] = column j in x coordinates
    i128 W[N][N]; // W[i] = row i of U⁻¹

    void reset_identity()
    {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
            {
                U[i][j] = (i == j);
                W[i][j] = (i == j);
            }
    }

    void col_sub(int k, int l, i128 q)
    {
        // b_k −= q b_l
        LD qf = (LD)q;
        for (int i = 0; i < N; ++i)
        {
            b[k][i] -= qf * b[l][i];
            U[k][i] -= q * U[l][i];
            W[l][i] += q * W[k][i];
        }
    }

    void col_swap(int k, int l)
    {
        for (int i = 0; i < N; ++i)
        {
            std::swap(b[k][i], b[l][i]);
            std::swap(U[k][i], U[l][i]);
            std::swap(W[k][i], W[l][i]);
        }
    }

    static LD dot(const LD *x, const LD *y)
    {
        LD s = 0;
        for (int i = 0; i < N; ++i)
            s += x[i] * y[i];
        return s;
    }

    // LLL with δ = 0.99; Gram–Schmidt data recomputed on every visit of a
    // column, which keeps the fp state consistent after large size reductions.
    void lll()
    {
        LD bs[N][N], Bn[N], mu[N][N];
        auto gso_row = [&](int k) {
            for (int round = 0; round < 8; ++round)
            {
                bool big = false;
                for (int j = 0; j < k; ++j)
                    mu[k][j] = dot(b[k], bs[j]) / Bn[j];
                for (int j = k - 1; j >= 0; --j)
                {
                    if (std::fabs(mu[k][j]) > 0.51L)
                    {
                        LD qf = std::nearbyint(mu[k][j]);
                        if (std::fabs(qf) > 1e15L)
                            throw std::runtime_error("lattice reduction: size-reduction coefficient overflow");
                        if (std::fabs(qf) > 1e6L)
                            big = true;
                        i128 q = (i128)(long long)qf;
                        col_sub(k, j, q);
                        for (int i = 0; i < j; ++i)
                            mu[k][i] -= qf * mu[j][i];
                        mu[k][j] -= qf;
                    }
                }
                if (!big)
                    break;
            }
            for (int i = 0; i < N; ++i)
            {
                LD s = b[k][i];
                for (int j = 0; j < k; ++j)
                    s -= mu[k][j] * bs[j][i];
                bs[k][i] = s;
            }
            Bn[k] = dot(bs[k], bs[k]);
        };
        for (int i = 0; i < N; ++i)
            bs[0][i] = b[0][i];
        Bn[0] = dot(bs[0], bs[0]);
        int k = 1;
        long guard = 0;
        while (k < N)
        {
            if (++guard > 200000)
                throw std::runtime_error("lattice reduction did not converge");
            gso_row(k);
            if (Bn[k] < (0.99L - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1])
            {
                col_swap(k, k - 1);
                k = std::max(k - 1, 1);
                if (k == 1)
                {
                    for (int i = 0; i < N; ++i)
                        bs[0][i] = b[0][i];
                    Bn[0] = dot(bs[0], bs[0]);
                }
            }
            else
                ++k;
        }
    }
};

// Columns of U expressed as real coordinates, and the reduced basis for the
// isotropic body {‖u‖ ≤ ε·s⊥} × {‖u•‖ ≤ s•}, which depends only on (k, ε).
struct LevelBasis
{
    i128 U[N][N];
    i128 W[N][N];
    std::array<DD, 4> yu[N];
    std::array<double, 4> yb[N];
};

IntVec8 column_as_vec(const i128 *col)
{
    IntVec8 x;
    for (int i = 0; i < N; ++i)
    {
        if (col[i] > (i128)INT64_MAX || col[i] < (i128)INT64_MIN)
            throw std::runtime_error("lattice reduction: basis vector exceeds 64-bit range");
        x[i] = (std::int64_t)col[i];
    }
    return x;
}

std::shared_ptr<const LevelBasis> build_level(unsigned k, double eps)
{
    Reducer r;
    r.reset_identity();
    // progressively sharpen the u-part so each LLL pass sees a moderate condition number
    Quad target = 1 / ((Quad)eps * kSPerp);
    Quad scale = 1;
    bool done = false;
    while (!done)
    {
        scale *= (Quad)1e6;
        if (scale >= target)
        {
            scale = target;
            done = true;
        }
        for (int j = 0; j < N; ++j)
        {
            IntVec8 x = column_as_vec(r.U[j]);
            auto yu = u_coords(x, k);
            auto yb = u_bullet_coords(x, k);
            for (int i = 0; i < 4; ++i)
            {
                r.b[j][i] = (LD)(yu[i] * scale);
                r.b[j][4 + i] = (LD)(yb[i] / kSBullet);
            }
        }
        r.lll();
    }
    auto lb = std::make_shared<LevelBasis>();
    for (int j = 0; j < N; ++j)
    {
        for (int i = 0; i < N; ++i)
        {
            lb->U[j][i] = r.U[j][i];
            lb->W[j][i] = r.W[j][i];
        }
        IntVec8 x = column_as_vec(r.U[j]);
        auto yu = u_coords(x, k);
        auto yb = u_bullet_coords(x, k);
        for (int i = 0; i < 4; ++i)
        {
            lb->yu[j][i] = DD::from_quad(yu[i]);
            lb->yb[j][i] = (double)yb[i];
        }
    }
    return lb;
}

std::mutex cache_mutex;
std::map<std::pair<unsigned, double>, std::shared_ptr<const LevelBasis>> cache;

std::shared_ptr<const LevelBasis> level_basis(unsigned k, double eps)
{
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({k, eps});
        if (it != cache.end())
            return it->second;
    }
    auto lb = build_level(k, eps);
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache.size() > 4096)
        cache.clear();
    cache.emplace(std::make_pair(k, eps), lb);
    return lb;
}

} // namespace

void clear_lattice_cache()
{
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.clear();
}

std::array<Quad, 4> u_coords(const IntVec8 &x, unsigned k)
{
    Quad s = pow_sqrt2(-(int)k);
    std::array<Quad, 4> out;
    for (int j = 0; j < 2; ++j)
    {
        Quad a = (Quad)x[4 * j], b = (Quad)x[4 * j + 1], c = (Quad)x[4 * j + 2], d = (Quad)x[4 * j + 3];
        out[2 * j] = (a + (b - d) / kSqrt2) * s;
        out[2 * j + 1] = (c + (b + d) / kSqrt2) * s;
    }
    return out;
}

std::array<Quad, 4> u_bullet_coords(const IntVec8 &x, unsigned k)
{
    Quad s = pow_sqrt2(-(int)k);
    std::array<Quad, 4> out;
    for (int j = 0; j < 2; ++j)
    {
        Quad a = (Quad)x[4 * j], b = (Quad)x[4 * j + 1], c = (Quad)x[4 * j + 2], d = (Quad)x[4 * j + 3];
        out[2 * j] = (a - (b - d) / kSqrt2) * s;
        out[2 * j + 1] = (c - (b + d) / kSqrt2) * s;
    }
    return out;
}

bool unit_norm_exact(const IntVec8 &x, unsigned k)
{
    i128 rat = 0, irr = 0;
    for (int j = 0; j < 2; ++j)
    {
        i128 a = x[4 * j], b = x[4 * j + 1], c = x[4 * j + 2], d = x[4 * j + 3];
        rat += a * a + b * b + c * c + d * d;
        irr += a * b + b * c + c * d - a * d;
    }
    return irr == 0 && rat == ((i128)1 << k);
}

std::vector<IntVec8> cap_candidates(unsigned k, double eps, const std::array<Quad, 4> &w_in, EnumStats &stats)
{
    if (!(eps >= kMinEps) || eps > 1)
        throw std::domain_error("cap_candidates: eps outside [1e-13, 1]");
    if (k > 120)
        throw std::domain_error("cap_candidates: denominator exponent too large");
    ++stats.subcalls;
    auto lb = level_basis(k, eps);

    DD w[4];
    double wd[4];
    {
        Quad n = sqrtq(w_in[0] * w_in[0] + w_in[1] * w_in[1] + w_in[2] * w_in[2] + w_in[3] * w_in[3]);
        for (int i = 0; i < 4; ++i)
        {
            w[i] = DD::from_quad(w_in[i] / n);
            wd[i] = w[i].hi;
        }
    }
    const double perp[3][4] = {{-wd[1], wd[0], -wd[3], wd[2]},
                               {-wd[2], wd[3], wd[0], -wd[1]},
                               {-wd[3], -wd[2], wd[1], wd[0]}};
    const Quad e = eps;
    const Quad cc = sqrtq(1 - e * e);
    const Quad h = e * e / (2 * (1 + cc)); // (1 − c)/2
    const DD m = DD::from_quad(1 - h);
    const DD inv_row0 = DD::from_quad(1 / (h * kS0));
    const double inv_perp = (double)(1 / (e * kSPerp));
    const double inv_bullet = (double)(1 / kSBullet);

    // per stage-A column: coordinate along w (double-double), across w, and bullet part
    DD col0[N];
    double col[N][N];
    for (int j = 0; j < N; ++j)
    {
        const auto &yu = lb->yu[j];
        col0[j] = (yu[0] * w[0] + yu[1] * w[1] + yu[2] * w[2] + yu[3] * w[3]) * inv_row0;
        for (int p = 0; p < 3; ++p)
            col[j][1 + p] =
                (yu[0].hi * perp[p][0] + yu[1].hi * perp[p][1] + yu[2].hi * perp[p][2] + yu[3].hi * perp[p][3]) *
                inv_perp;
        for (int i = 0; i < 4; ++i)
            col[j][4 + i] = lb->yb[j][i] * inv_bullet;
    }

    Reducer r;
    r.reset_identity();
    auto load = [&](LD rho) {
        for (int j = 0; j < N; ++j)
        {
            DD s0;
            LD s[N] = {};
            for (int l = 0; l < N; ++l)
            {
                if (r.U[j][l] == 0)
                    continue;
                s0 += DD::from_int(r.U[j][l]) * col0[l];
                LD u = (LD)r.U[j][l];
                for (int i = 1; i < N; ++i)
                    s[i] += u * col[l][i];
            }
            r.b[j][0] = s0.to_ld() * rho;
            for (int i = 1; i < N; ++i)
                r.b[j][i] = s[i];
        }
    };
    // sharpen the w-row progressively; each pass rebuilds the basis from the exact transform
    const LD full = (LD)((e * kSPerp) / (h * kS0));
    LD rho = std::min(1.0L, 1e7L / full);
    for (;;)
    {
        load(rho);
        r.lll();
        if (rho >= 1)
            break;
        rho = std::min(1.0L, rho * 1e7L);
    }
    load(1);

    // exact total transform and its inverse
    i128 U[N][N], W[N][N];
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i)
        {
            i128 s = 0, t = 0;
            for (int l = 0; l < N; ++l)
            {
                s += lb->U[l][i] * r.U[j][l];
                t += r.W[j][l] * lb->W[l][i];
            }
            U[j][i] = s;
            W[j][i] = t;
        }

    // body center m·w in x coordinates, split into a nearby integer point and a small offset
    const DD S = DD::from_quad(pow_sqrt2((int)k));
    const DD half(0.5);
    const DD inv2r2 = DD::from_quad(1 / (2 * kSqrt2));
    DD xc[N];
    for (int j = 0; j < 2; ++j)
    {
        DD X = m * w[2 * j], Y = m * w[2 * j + 1];
        xc[4 * j] = X * S * half;
        xc[4 * j + 1] = (X + Y) * S * inv2r2;
        xc[4 * j + 2] = Y * S * half;
        xc[4 * j + 3] = (Y - X) * S * inv2r2;
    }
    std::int64_t x0[N];
    DD dx[N];
    for (int i = 0; i < N; ++i)
    {
        double r0 = std::nearbyint(xc[i].hi);
        x0[i] = (std::int64_t)r0;
        dx[i] = DD(xc[i].hi - r0) + DD(xc[i].lo);
    }
    std::int64_t cint[N];
    LD frac[N];
    for (int i = 0; i < N; ++i)
    {
        DD s;
        for (int l = 0; l < N; ++l)
            if (W[i][l] != 0)
                s += DD::from_int(W[i][l]) * dx[l];
        double rs = std::nearbyint(s.hi);
        DD f = DD(s.hi - rs) + DD(s.lo);
        double adj = std::nearbyint(f.hi);
        cint[i] = (std::int64_t)(rs + adj);
        frac[i] = (f - DD(adj)).to_ld();
    }

    // Gram–Schmidt of the final basis
    LD bs[N][N], Bn[N], mu[N][N];
    for (int kk = 0; kk < N; ++kk)
    {
        for (int i = 0; i < N; ++i)
            bs[kk][i] = r.b[kk][i];
        for (int j = 0; j < kk; ++j)
        {
            mu[kk][j] = Reducer::dot(r.b[kk], bs[j]) / Bn[j];
            for (int i = 0; i < N; ++i)
                bs[kk][i] -= mu[kk][j] * bs[j][i];
        }
        Bn[kk] = Reducer::dot(bs[kk], bs[kk]);
    }

    // depth-first enumeration of ‖B(z − frac)‖² ≤ R²
    const LD R2 = 1.0L + 1e-9L;
    std::vector<IntVec8> out;
    std::int64_t z[N];
    LD partial[N + 1];
    LD center[N];
    std::int64_t hi[N];
    partial[N] = 0;
    int lvl = N - 1;
    auto set_level = [&](int i) -> bool {
        LD ci = frac[i];
        for (int j = i + 1; j < N; ++j)
            ci -= mu[j][i] * ((LD)z[j] - frac[j]);
        center[i] = ci;
        LD rem = R2 - partial[i + 1];
        if (rem < 0)
            return false;
        LD rad = std::sqrt(rem / Bn[i]);
        z[i] = (std::int64_t)std::ceil(ci - rad);
        hi[i] = (std::int64_t)std::floor(ci + rad);
        return z[i] <= hi[i];
    };
    bool ok = set_level(lvl);
    while (true)
    {
        if (!ok || z[lvl] > hi[lvl])
        {
            if (++lvl >= N)
                break;
            ++z[lvl];
            ok = true;
            continue;
        }
        ++stats.nodes_visited;
        LD dz = (LD)z[lvl] - center[lvl];
        partial[lvl] = partial[lvl + 1] + Bn[lvl] * dz * dz;
        if (partial[lvl] > R2)
        {
            ++z[lvl];
            continue;
        }
        if (lvl == 0)
        {
            IntVec8 x;
            for (int i = 0; i < N; ++i)
            {
                i128 s = x0[i];
                for (int l = 0; l < N; ++l)
                    s += U[l][i] * (i128)(cint[l] + z[l]);
                x[i] = (std::int64_t)s;
            }
            out.push_back(x);
            ++stats.lattice_points;
            ++z[0];
            continue;
        }
        --lvl;
        ok = set_level(lvl);
    }
    return out;
}

} // namespace cliffordt
