#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cliffordt/prob.hpp"

// Covering test via stereographic projection from −v. The projection maps the
// cap B_δ(v) to a ball B0 centered at the origin and each B_δ(u) with u·v > 0 to
// a bounded ball, so the boundary reduction (ball, then spheres, then circles,
// then point triples) runs on Euclidean balls in R³ at unit scale. Far-side
// boundary pieces (u·x = −c) are empty for points within 2δ when δ ≤ ½.

namespace cliffordt
{

namespace
{

using V3 = std::array<double, 3>;

constexpr double kSlack = 1e-9;

V3 sub(const V3 &a, const V3 &b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 add(const V3 &a, const V3 &b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 scale(const V3 &a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const V3 &a, const V3 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const V3 &a) { return std::sqrt(dot(a, a)); }
V3 cross(const V3 &a, const V3 &b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct Ball
{
    V3 q;
    double r;
};

// {s on the unit sphere/circle : g·s > h}, with g normalized when possible
struct Cap
{
    V3 g;
    double h;
    bool all = false, none = false;
    double half_angle = 0; // valid when neither all nor none
};

Cap make_cap(V3 g, double h)
{
    Cap c;
    double n = norm(g);
    if (n < 1e-15)
    {
        c.all = h < 0;
        c.none = !c.all;
        return c;
    }
    c.g = scale(g, 1 / n);
    c.h = h / n;
    if (c.h < -1)
        c.all = true;
    else if (c.h >= 1)
        c.none = true;
    else
        c.half_angle = std::acos(c.h);
    return c;
}

double angle_between(const V3 &a, const V3 &b)
{
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

// robustly nonempty intersection of two caps on a sphere or circle (the caps'
// normals lie in the circle's plane in the latter case)
bool caps_meet(const Cap &a, const Cap &b)
{
    if (a.none || b.none)
        return false;
    if (a.all && b.all)
        return true;
    if (a.all)
        return b.half_angle > kSlack;
    if (b.all)
        return a.half_angle > kSlack;
    return angle_between(a.g, b.g) < a.half_angle + b.half_angle - kSlack;
}

// cap on the sphere (center c, radius ρ) cut out by the open ball
Cap sphere_cap(const V3 &c, double rho, const Ball &b)
{
    V3 g = sub(b.q, c);
    return make_cap(g, (dot(g, g) + rho * rho - b.r * b.r) / (2 * rho));
}

struct Circle
{
    V3 c, e1, e2;
    double rho;
};

// arc of the circle inside the open ball, as a cap in (e1, e2) coordinates
Cap circle_cap(const Circle &ci, const Ball &b)
{
    V3 d = sub(b.q, ci.c);
    V3 g{dot(d, ci.e1), dot(d, ci.e2), 0};
    return make_cap(g, (dot(d, d) + ci.rho * ci.rho - b.r * b.r) / (2 * ci.rho));
}

V3 circle_point(const Circle &ci, double phi)
{
    return add(ci.c, add(scale(ci.e1, ci.rho * std::cos(phi)), scale(ci.e2, ci.rho * std::sin(phi))));
}

enum class Meet
{
    none,
    circle,
    degenerate
};

Meet sphere_meet(const Ball &a, const Ball &b, Circle &out)
{
    V3 dv = sub(b.q, a.q);
    double d = norm(dv);
    if (d > a.r + b.r + kSlack || d < std::abs(a.r - b.r) - kSlack)
        return Meet::none;
    if (d > a.r + b.r - kSlack || d < std::abs(a.r - b.r) + kSlack)
        return Meet::degenerate;
    V3 n = scale(dv, 1 / d);
    double x = (d * d + a.r * a.r - b.r * b.r) / (2 * d);
    out.c = add(a.q, scale(n, x));
    out.rho = std::sqrt(std::max(0.0, a.r * a.r - x * x));
    V3 t = std::abs(n[0]) < 0.6 ? V3{1, 0, 0} : V3{0, 1, 0};
    out.e1 = cross(n, t);
    out.e1 = scale(out.e1, 1 / norm(out.e1));
    out.e2 = cross(n, out.e1);
    return Meet::circle;
}

bool robustly_inside(const V3 &p, const Ball &b) { return norm(sub(p, b.q)) < b.r - kSlack; }

struct Projected
{
    Ball b0;
    std::vector<Ball> balls;
};

Projected project(const CoveringInstance &inst)
{
    const auto v = inst.v.coords();
    const Real delta = inst.delta;
    const Real c = sqrt(1 - delta * delta);
    // orthonormal basis of v⊥
    std::array<std::array<Real, 4>, 3> basis;
    int nb = 0;
    for (int e = 0; e < 4 && nb < 3; ++e)
    {
        std::array<Real, 4> w{0, 0, 0, 0};
        w[e] = 1;
        Real pv = w[e] * v[e];
        for (int i = 0; i < 4; ++i)
            w[i] -= pv * v[i];
        for (int k = 0; k < nb; ++k)
        {
            Real pk = 0;
            for (int i = 0; i < 4; ++i)
                pk += w[i] * basis[k][i];
            for (int i = 0; i < 4; ++i)
                w[i] -= pk * basis[k][i];
        }
        Real n = 0;
        for (auto &x : w)
            n += x * x;
        if (n < Real(0.1))
            continue;
        n = sqrt(n);
        for (auto &x : w)
            x /= n;
        basis[nb++] = w;
    }
    Projected out;
    const Real r0 = delta / (1 + c);
    out.b0 = {{0, 0, 0}, 1};
    for (const auto &pt : inst.points)
    {
        auto u = pt.coords();
        Real a = 0;
        for (int i = 0; i < 4; ++i)
            a += u[i] * v[i];
        if (a < 0)
        {
            for (auto &x : u)
                x = -x;
            a = -a;
        }
        if (a <= 0)
            continue;
        Ball b;
        for (int k = 0; k < 3; ++k)
        {
            Real s = 0;
            for (int i = 0; i < 4; ++i)
                s += u[i] * basis[k][i];
            b.q[k] = (double)(s / ((a + c) * r0));
        }
        b.r = (double)(delta / ((a + c) * r0));
        out.balls.push_back(b);
    }
    return out;
}

} // namespace

bool verify_covering(const CoveringInstance &inst)
{
    if (!(inst.delta > 0) || inst.delta > 0.5)
        throw std::domain_error("verify_covering: delta must lie in (0, 1/2]");
    Projected pr = project(inst);
    const Ball &b0 = pr.b0;

    // balls meeting B0 (dropping others only makes the answer more conservative)
    std::vector<Ball> balls;
    for (const auto &b : pr.balls)
    {
        double d = norm(b.q);
        if (b.r > d + 1 + kSlack)
            return true;
        if (d < b.r + 1 - kSlack)
            balls.push_back(b);
    }
    // duplicates would make every pairwise boundary degenerate
    std::sort(balls.begin(), balls.end(), [](const Ball &x, const Ball &y) {
        return std::tie(x.q, x.r) < std::tie(y.q, y.r);
    });
    balls.erase(std::unique(balls.begin(), balls.end(),
                            [](const Ball &x, const Ball &y) {
                                return norm(sub(x.q, y.q)) < kSlack && std::abs(x.r - y.r) < kSlack;
                            }),
                balls.end());
    const int n = (int)balls.size();
    if (n == 0)
        return false;

    // neighbors: balls whose closures meet
    std::vector<std::vector<int>> nbr(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && norm(sub(balls[i].q, balls[j].q)) < balls[i].r + balls[j].r + kSlack)
                nbr[i].push_back(j);

    // sphere pieces ∂B_j ∩ B0 must meet another ball
    for (int j = 0; j < n; ++j)
    {
        Cap in0 = sphere_cap(balls[j].q, balls[j].r, b0);
        if (in0.none)
            continue;
        bool hit = false;
        for (int i : nbr[j])
            if (caps_meet(in0, sphere_cap(balls[j].q, balls[j].r, balls[i])))
            {
                hit = true;
                break;
            }
        if (!hit)
            return false;
    }

    // arcs ∂B_j ∩ ∂B_k ∩ B0, then their crossings with a third sphere
    for (int j = 0; j < n; ++j)
        for (int k : nbr[j])
        {
            if (k <= j)
                continue;
            Circle ci;
            Meet m = sphere_meet(balls[j], balls[k], ci);
            if (m == Meet::none)
                continue;
            if (m == Meet::degenerate)
            {
                // near-tangent spheres: refuse unless the contact is clearly outside B0
                V3 dv = sub(balls[k].q, balls[j].q);
                double d = norm(dv);
                V3 p = d > 0 ? add(balls[j].q, scale(dv, balls[j].r / d)) : balls[j].q;
                if (norm(p) < 1 + 1e-6)
                    return false;
                continue;
            }
            Cap arc0 = circle_cap(ci, b0);
            if (arc0.none)
                continue;
            bool hit = false;
            for (int i : nbr[j])
                if (i != k && caps_meet(arc0, circle_cap(ci, balls[i])))
                {
                    hit = true;
                    break;
                }
            if (!hit)
                return false;

            for (int l : nbr[j])
            {
                if (l <= k)
                    continue;
                // ∂B_l meets the circle where g·s = h
                V3 d = sub(balls[l].q, ci.c);
                V3 g{dot(d, ci.e1), dot(d, ci.e2), 0};
                double gn = norm(g);
                double h = (dot(d, d) + ci.rho * ci.rho - balls[l].r * balls[l].r) / (2 * ci.rho);
                if (gn < 1e-15 || std::abs(h) > gn * (1 + kSlack))
                    continue;
                double base = std::atan2(g[1], g[0]);
                double w = std::acos(std::clamp(h / gn, -1.0, 1.0));
                for (double phi : {base + w, base - w})
                {
                    V3 p = circle_point(ci, phi);
                    if (norm(p) > 1 + kSlack)
                        continue;
                    bool covered = false;
                    for (int i : nbr[j])
                        if (i != k && i != l && robustly_inside(p, balls[i]))
                        {
                            covered = true;
                            break;
                        }
                    if (!covered)
                        return false;
                }
            }
        }
    return true;
}

} // namespace cliffordt
