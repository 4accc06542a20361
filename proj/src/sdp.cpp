#include "cliffordt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cliffordt
{

using Eigen::MatrixXd;
using Eigen::VectorXd;
using cd = std::complex<double>;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStepFraction = 0.98;
constexpr std::size_t kInitialActive = 24;
constexpr std::size_t kAddPerRound = 16;
constexpr int kMaxRounds = 60;

using Blocks = std::vector<MatrixXd>;

double inner(const MatrixXd &a, const MatrixXd &b) { return a.cwiseProduct(b).sum(); }

double inner(const Blocks &a, const Blocks &b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += inner(a[i], b[i]);
    return s;
}

MatrixXd sym(const MatrixXd &a) { return 0.5 * (a + a.transpose()); }

MatrixXd kron(const MatrixXd &a, const MatrixXd &b)
{
    MatrixXd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// largest α with M + α·D ⪰ 0 (dense) or elementwise ≥ 0 (diagonal)
double max_step(const MatrixXd &m, const MatrixXd &d, bool diag)
{
    if (diag)
    {
        double a = kInf;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (d(i, 0) < 0)
                a = std::min(a, -m(i, 0) / d(i, 0));
        return a;
    }
    Eigen::LLT<MatrixXd> llt(m);
    MatrixXd li = llt.matrixL().solve(MatrixXd::Identity(m.rows(), m.cols()));
    MatrixXd t = sym(li * d * li.transpose());
    double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(t, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    return lmin < 0 ? -1 / lmin : kInf;
}

struct Solver
{
    const SdpProblem &p;
    int m;
    std::size_t nb;
    // per dense block: m × n² matrix of vec(A_i); per diagonal block: m × n
    std::vector<MatrixXd> avec;

    explicit Solver(const SdpProblem &pr) : p(pr), m((int)pr.b.size()), nb(pr.blocks.size())
    {
        for (std::size_t b = 0; b < nb; ++b)
        {
            int n = p.blocks[b].n;
            int len = p.blocks[b].diag ? n : n * n;
            MatrixXd av = MatrixXd::Zero(m, len);
            for (int i = 0; i < m; ++i)
                if (p.A[i][b].size() > 0)
                    av.row(i) = Eigen::Map<const VectorXd>(p.A[i][b].data(), len).transpose();
            avec.push_back(std::move(av));
        }
    }

    // Σ yᵢ Aᵢ
    Blocks op_adj(const VectorXd &y) const
    {
        Blocks out(nb);
        for (std::size_t b = 0; b < nb; ++b)
        {
            int n = p.blocks[b].n;
            VectorXd v = avec[b].transpose() * y;
            if (p.blocks[b].diag)
                out[b] = v;
            else
                out[b] = sym(Eigen::Map<MatrixXd>(v.data(), n, n));
        }
        return out;
    }

    // (⟨Aᵢ, G⟩)ᵢ
    VectorXd op(const Blocks &g) const
    {
        VectorXd out = VectorXd::Zero(m);
        for (std::size_t b = 0; b < nb; ++b)
            out += avec[b] * Eigen::Map<const VectorXd>(g[b].data(), g[b].size());
        return out;
    }

    Blocks identity() const
    {
        Blocks out(nb);
        for (std::size_t b = 0; b < nb; ++b)
        {
            int n = p.blocks[b].n;
            out[b] = p.blocks[b].diag ? MatrixXd(MatrixXd::Ones(n, 1)) : MatrixXd(MatrixXd::Identity(n, n));
        }
        return out;
    }

    int total_dim() const
    {
        int s = 0;
        for (auto &b : p.blocks)
            s += b.n;
        return s;
    }
};

} // namespace

SdpResult solve_sdp(const SdpProblem &p, double tol, int max_iter)
{
    const Solver sv(p);
    const int m = sv.m;
    const std::size_t nb = sv.nb;
    const double nrm_b = p.b.norm();
    double nrm_c = 0;
    for (auto &c : p.C)
        nrm_c = std::max(nrm_c, c.norm());

    SdpResult r;
    r.y = VectorXd::Zero(m);
    r.X = sv.identity();
    r.S = sv.identity();
    const double ndim = sv.total_dim();

    for (int it = 0; it < max_iter; ++it)
    {
        r.iterations = it;
        Blocks aty = sv.op_adj(r.y);
        Blocks Rd(nb);
        for (std::size_t b = 0; b < nb; ++b)
            Rd[b] = aty[b] - p.C[b] - r.S[b];
        VectorXd rp = p.b - sv.op(r.X);
        r.primal = inner(p.C, r.X);
        r.dual = p.b.dot(r.y);
        double mu = inner(r.X, r.S) / ndim;
        double rd_norm = 0;
        for (auto &d : Rd)
            rd_norm = std::max(rd_norm, d.norm());
        double gap = std::abs(r.primal - r.dual) / (1 + std::abs(r.primal) + std::abs(r.dual));
        if (gap < tol && rp.norm() / (1 + nrm_b) < tol && rd_norm / (1 + nrm_c) < tol)
        {
            r.converged = true;
            return r;
        }

        // Schur complement and inverse slacks
        Blocks Sinv(nb);
        MatrixXd M = MatrixXd::Zero(m, m);
        for (std::size_t b = 0; b < nb; ++b)
        {
            const int n = p.blocks[b].n;
            if (p.blocks[b].diag)
            {
                Sinv[b] = r.S[b].cwiseInverse();
                VectorXd w = r.X[b].col(0).cwiseProduct(Sinv[b].col(0));
                M += sv.avec[b] * w.asDiagonal() * sv.avec[b].transpose();
            }
            else
            {
                Eigen::LLT<MatrixXd> llt(r.S[b]);
                Sinv[b] = sym(llt.solve(MatrixXd::Identity(n, n)));
                MatrixXd K = kron(Sinv[b], r.X[b]);
                M += sv.avec[b] * K * sv.avec[b].transpose();
            }
        }
        Eigen::LDLT<MatrixXd> Mf(sym(M));

        auto mul = [&](std::size_t b, const MatrixXd &a, const MatrixXd &c) -> MatrixXd {
            return p.blocks[b].diag ? MatrixXd(a.cwiseProduct(c)) : MatrixXd(a * c);
        };

        // direction for given σμ and optional second-order term
        auto direction = [&](double smu, const Blocks *dxa, const Blocks *dsa, VectorXd &dy, Blocks &dX, Blocks &dS) {
            Blocks G(nb);
            for (std::size_t b = 0; b < nb; ++b)
            {
                MatrixXd g = smu * Sinv[b] - mul(b, mul(b, r.X[b], Rd[b]), Sinv[b]);
                if (dxa)
                    g -= mul(b, mul(b, (*dxa)[b], (*dsa)[b]), Sinv[b]);
                G[b] = g;
            }
            dy = Mf.solve(sv.op(G) - p.b);
            Blocks ady = sv.op_adj(dy);
            dX.assign(nb, MatrixXd());
            dS.assign(nb, MatrixXd());
            for (std::size_t b = 0; b < nb; ++b)
            {
                dS[b] = ady[b] + Rd[b];
                MatrixXd d = G[b] - r.X[b] - mul(b, mul(b, r.X[b], dS[b]), Sinv[b]) +
                             mul(b, mul(b, r.X[b], Rd[b]), Sinv[b]);
                dX[b] = p.blocks[b].diag ? d : sym(d);
            }
        };
        auto steps = [&](const Blocks &dX, const Blocks &dS, double &ap, double &ad) {
            ap = ad = kInf;
            for (std::size_t b = 0; b < nb; ++b)
            {
                ap = std::min(ap, max_step(r.X[b], dX[b], p.blocks[b].diag));
                ad = std::min(ad, max_step(r.S[b], dS[b], p.blocks[b].diag));
            }
        };

        VectorXd dya;
        Blocks dXa, dSa;
        direction(0, nullptr, nullptr, dya, dXa, dSa);
        double ap, ad;
        steps(dXa, dSa, ap, ad);
        ap = std::min(1.0, ap);
        ad = std::min(1.0, ad);
        double mu_aff = 0;
        for (std::size_t b = 0; b < nb; ++b)
            mu_aff += inner(r.X[b] + ap * dXa[b], r.S[b] + ad * dSa[b]);
        mu_aff /= ndim;
        double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);

        VectorXd dy;
        Blocks dX, dS;
        direction(sigma * mu, &dXa, &dSa, dy, dX, dS);
        steps(dX, dS, ap, ad);
        ap = std::min(1.0, kStepFraction * ap);
        ad = std::min(1.0, kStepFraction * ad);
        if (!dy.allFinite() || !std::isfinite(ap) || !std::isfinite(ad))
            break; // numerical breakdown: keep the last iterate
        for (std::size_t b = 0; b < nb; ++b)
        {
            r.X[b] += ap * dX[b];
            r.S[b] += ad * dS[b];
        }
        r.y += ad * dy;
    }
    r.iterations = max_iter;
    return r;
}

// ---- Choi matrices and the diamond-norm problems ----

namespace
{

using CVec4 = Eigen::Matrix<cd, 4, 1>;

template <class T> std::array<std::complex<T>, 4> vectorize(const std::array<T, 4> &u)
{
    // Σ |i⟩ ⊗ U|i⟩ for U = [[a, −b̄], [b, ā]]
    std::complex<T> a(u[0], u[1]), b(u[2], u[3]);
    return {a, b, -std::conj(b), std::conj(a)};
}

MatrixXd realify(const CMat4 &h)
{
    MatrixXd r(8, 8);
    r << h.real(), -h.imag(), h.imag(), h.real();
    return r;
}

MatrixXd realify2(const CMat2 &h)
{
    MatrixXd r(4, 4);
    r << h.real(), -h.imag(), h.imag(), h.real();
    return r;
}

template <int n> Eigen::Matrix<cd, n, n> unrealify(const MatrixXd &x)
{
    Eigen::Matrix<cd, n, n> h;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(i, j) = cd(0.5 * (x(i, j) + x(n + i, n + j)), 0.5 * (x(n + i, j) - x(i, n + j)));
    return h;
}

CMat2 partial_trace_out(const CMat4 &z)
{
    CMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = z(2 * i, 2 * j) + z(2 * i + 1, 2 * j + 1);
    return r;
}

// Hermitian basis of 4×4 matrices
const std::array<CMat4, 16> &herm_basis()
{
    static const std::array<CMat4, 16> basis = [] {
        std::array<CMat4, 16> out;
        int idx = 0;
        for (int i = 0; i < 4; ++i)
        {
            out[idx] = CMat4::Zero();
            out[idx++](i, i) = 1;
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
            {
                out[idx] = CMat4::Zero();
                out[idx](i, j) = out[idx](j, i) = 1;
                ++idx;
                out[idx] = CMat4::Zero();
                out[idx](i, j) = cd(0, 1);
                out[idx](j, i) = cd(0, -1);
                ++idx;
            }
        return out;
    }();
    return basis;
}

template <class M> double lambda_min(const M &h)
{
    return Eigen::SelfAdjointEigenSolver<M>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}
template <class M> double lambda_max(const M &h)
{
    return Eigen::SelfAdjointEigenSolver<M>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

template <class M> M psd_part(const M &h)
{
    Eigen::SelfAdjointEigenSolver<M> es(h);
    auto ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// rounding allowance for a 4×4 eigenvalue computation on entries of size s
double round_margin(double s) { return 64 * std::numeric_limits<double>::epsilon() * (1 + s); }

// Upper bound from any Hermitian Z: shifting by η makes Z ⪰ 0 and Z ⪰ Δ.
double certified_upper(CMat4 z, const CMat4 &delta)
{
    z = 0.5 * (z + z.adjoint()).eval();
    double eta = std::max({0.0, -lambda_min(z), -lambda_min<CMat4>(z - delta)});
    double s = z.norm() + delta.norm();
    eta += round_margin(s);
    z += eta * CMat4::Identity();
    return lambda_max(partial_trace_out(z)) + round_margin(s);
}

// Feasible (W, ρ) from the solver's primal part: W ⪰ 0, W ⪯ ρ ⊗ I, tr ρ = 1.
CMat4 feasible_witness(const CMat4 &w_raw, const CMat2 &rho_raw)
{
    CMat2 rho = psd_part<CMat2>(0.5 * (rho_raw + rho_raw.adjoint()));
    double tr = rho.trace().real();
    if (!(tr > 0))
        rho = CMat2::Identity() / 2;
    else
        rho /= tr;
    constexpr double tau = 1e-12;
    rho = (1 - tau) * rho + tau * CMat2::Identity() / 2;
    CMat4 w = psd_part<CMat4>(0.5 * (w_raw + w_raw.adjoint()));
    // (ρ ⊗ I)^{-1/2}
    Eigen::SelfAdjointEigenSolver<CMat2> es(rho);
    CMat2 rs = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
               es.eigenvectors().adjoint();
    CMat4 k = CMat4::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int o = 0; o < 2; ++o)
                k(2 * i + o, 2 * j + o) = rs(i, j);
    double alpha = lambda_max<CMat4>(k * w * k) * (1 + 1e-12) + round_margin(0);
    if (alpha > 1)
        w /= alpha;
    return w;
}

struct MixingSdp
{
    SdpProblem prob;
    int nq = 0; // free probabilities (support size − 1)
};

// Variables: z (16), λ, q (n−1). Blocks: Z ⪰ 0; Z − Δ(q) ⪰ 0; λI − tr_out Z ⪰ 0;
// q ≥ 0 and 1 − Σq ≥ 0.
MixingSdp build_mixing(const std::vector<CMat4> &ds)
{
    const int n = (int)ds.size();
    MixingSdp ms;
    ms.nq = n - 1;
    const int m = 17 + ms.nq;
    auto &p = ms.prob;
    p.blocks = {{8, false}, {8, false}, {4, false}, {n, true}};
    p.A.assign(m, std::vector<MatrixXd>(4));
    const auto &E = herm_basis();
    for (int k = 0; k < 16; ++k)
    {
        MatrixXd r = realify(E[k]);
        p.A[k][0] = r;
        p.A[k][1] = r;
        p.A[k][2] = -realify2(partial_trace_out(E[k]));
    }
    p.A[16][2] = MatrixXd::Identity(4, 4);
    for (int i = 0; i < ms.nq; ++i)
    {
        p.A[17 + i][1] = -realify(ds[i] - ds[n - 1]);
        MatrixXd d = MatrixXd::Zero(n, 1);
        d(i, 0) = 1;
        d(n - 1, 0) = -1;
        p.A[17 + i][3] = d;
    }
    p.C = {MatrixXd::Zero(8, 8), realify(ds[n - 1]), MatrixXd::Zero(4, 4), MatrixXd::Zero(n, 1)};
    p.C[3](n - 1, 0) = -1;
    p.b = VectorXd::Zero(m);
    p.b(16) = 1;
    return ms;
}

CMat4 z_from(const VectorXd &y)
{
    CMat4 z = CMat4::Zero();
    const auto &E = herm_basis();
    for (int k = 0; k < 16; ++k)
        z += y(k) * E[k];
    return z;
}

std::array<Real, 4> aligned(const std::array<Real, 4> &u, const std::array<Real, 4> &v)
{
    Real dot = 0;
    for (int i = 0; i < 4; ++i)
        dot += u[i] * v[i];
    if (dot >= 0)
        return u;
    return {-u[0], -u[1], -u[2], -u[3]};
}

} // namespace

ChoiMatrix choi_of_unitary(const std::array<double, 4> &u)
{
    auto psi = vectorize(u);
    ChoiMatrix c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            c.m(i, j) = psi[i] * std::conj(psi[j]);
    return c;
}

ChoiMatrix choi_of_unitary(const UnitVec4 &u)
{
    auto c = u.coords();
    auto r = choi_of_unitary(std::array<double, 4>{(double)c[0], (double)c[1], (double)c[2], (double)c[3]});
    r.precision_bits = u.precision_bits();
    return r;
}

ChoiMatrix choi_of_mixture(const std::vector<double> &probs, const std::vector<std::array<double, 4>> &unitaries)
{
    if (probs.size() != unitaries.size())
        throw std::invalid_argument("choi_of_mixture: size mismatch");
    ChoiMatrix c;
    for (std::size_t i = 0; i < probs.size(); ++i)
        c.m += probs[i] * choi_of_unitary(unitaries[i]).m;
    return c;
}

CMat4 choi_difference(const UnitVec4 &v, const std::array<Real, 4> &u_in)
{
    auto vc = v.coords();
    auto u = aligned(u_in, vc);
    auto pv = vectorize(vc), pu = vectorize(u);
    std::array<cd, 4> d, s;
    for (int i = 0; i < 4; ++i)
    {
        auto dd = pv[i] - pu[i];
        auto ss = pv[i] + pu[i];
        d[i] = cd((double)dd.real(), (double)dd.imag());
        s[i] = cd((double)ss.real(), (double)ss.imag());
    }
    CMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = 0.5 * (d[i] * std::conj(s[j]) + s[i] * std::conj(d[j]));
    return out;
}

Interval diamond_norm_of_difference(const CMat4 &delta_in, double tol)
{
    CMat4 delta = 0.5 * (delta_in + delta_in.adjoint());
    double scale = delta.cwiseAbs().maxCoeff();
    if (scale == 0)
        return {0, 0};
    CMat4 d = delta / scale;
    MixingSdp ms = build_mixing({d});
    SdpResult r = solve_sdp(ms.prob, tol);
    double hi = certified_upper(z_from(r.y), d);
    CMat4 w = feasible_witness(2 * unrealify<4>(r.X[1]), 2 * unrealify<2>(r.X[2]));
    double lo = std::max(0.0, (d * w).trace().real() - round_margin(1));
    return {lo * scale, hi * scale};
}

Interval diamond_distance_channel(const ChoiMatrix &a, const ChoiMatrix &b)
{
    for (const auto *c : {&a, &b})
    {
        CMat4 h = 0.5 * (c->m + c->m.adjoint());
        if ((c->m - h).cwiseAbs().maxCoeff() > 1e-9 || lambda_min(h) < -1e-9)
            throw std::invalid_argument("Choi matrix is not positive semidefinite");
    }
    return diamond_norm_of_difference(a.m - b.m);
}

Interval mixture_distance(const UnitVec4 &v, const std::vector<ExactUnitary> &support, const std::vector<double> &probs)
{
    if (support.size() != probs.size() || support.empty())
        throw std::invalid_argument("mixture_distance: bad distribution");
    CMat4 delta = CMat4::Zero();
    for (std::size_t i = 0; i < support.size(); ++i)
        delta += probs[i] * choi_difference(v, su2_column(support[i]));
    return diamond_norm_of_difference(delta);
}

MixtureSolution solve_mixing(const UnitVec4 &v, const std::vector<ExactUnitary> &support, double tol)
{
    if (support.empty())
        throw std::invalid_argument("solve_mixing: empty support");
    MixtureSolution out;
    const std::size_t n = support.size();
    if (n == 1)
    {
        out.unitaries = support;
        out.support = {exact_synthesize(support[0])};
        out.probs = {1.0};
        out.eps_star = mixture_distance(v, support, out.probs);
        return out;
    }

    std::vector<CMat4> ds;
    double scale = 0;
    for (auto &u : support)
    {
        ds.push_back(choi_difference(v, su2_column(u)));
        scale = std::max(scale, ds.back().cwiseAbs().maxCoeff());
    }
    if (scale == 0)
        scale = 1;
    for (auto &d : ds)
        d /= scale;

    // Column generation: solve on an active subset and add the members whose
    // value under the subset's witness W is below the subset optimum. The bound
    // min_x tr(D_x W) over the whole support is valid at every round.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::vector<double> size(n);
    for (std::size_t i = 0; i < n; ++i)
        size[i] = ds[i].norm();
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return size[a] < size[b]; });
    std::vector<std::size_t> active(order.begin(), order.begin() + std::min<std::size_t>(n, kInitialActive));
    std::vector<bool> in_active(n, false);
    for (auto i : active)
        in_active[i] = true;

    Interval best{0, kInf};
    std::vector<double> best_p;
    out.converged = false;
    for (int round = 0; round < kMaxRounds; ++round)
    {
        std::vector<CMat4> sub;
        for (auto i : active)
            sub.push_back(ds[i]);
        MixingSdp ms = build_mixing(sub);
        SdpResult r = solve_sdp(ms.prob, tol, 150);

        const std::size_t na = active.size();
        std::vector<double> pa(na);
        double last = 1;
        for (int i = 0; i < ms.nq; ++i)
        {
            pa[i] = std::max(0.0, r.y(17 + i));
            last -= r.y(17 + i);
        }
        pa[na - 1] = std::max(0.0, last);
        double sum = 0;
        for (double x : pa)
            sum += x;
        if (!(sum > 0) || !std::isfinite(sum))
            break;
        CMat4 dp = CMat4::Zero();
        for (std::size_t i = 0; i < na; ++i)
        {
            pa[i] /= sum;
            dp += pa[i] * sub[i];
        }
        double hi = certified_upper(z_from(r.y), dp);

        CMat4 w = feasible_witness(2 * unrealify<4>(r.X[1]), 2 * unrealify<2>(r.X[2]));
        std::vector<double> val(n);
        double lo = kInf, lo_active = kInf;
        for (std::size_t i = 0; i < n; ++i)
        {
            val[i] = (ds[i] * w).trace().real();
            lo = std::min(lo, val[i]);
            if (in_active[i])
                lo_active = std::min(lo_active, val[i]);
        }
        if (!std::isfinite(lo))
            lo = 0;
        lo = std::max(0.0, lo - round_margin(1));
        if (std::isfinite(hi) && hi < best.hi)
        {
            best.hi = hi;
            best_p.assign(n, 0.0);
            for (std::size_t i = 0; i < na; ++i)
                best_p[active[i]] = pa[i];
        }
        best.lo = std::max(best.lo, lo);

        std::vector<std::size_t> viol;
        for (std::size_t i = 0; i < n; ++i)
            if (!in_active[i] && val[i] < lo_active - tol)
                viol.push_back(i);
        if (viol.empty() && r.converged)
        {
            out.converged = true;
            break;
        }
        if (viol.empty())
            break;
        std::sort(viol.begin(), viol.end(), [&](auto a, auto b) { return val[a] < val[b]; });
        viol.resize(std::min<std::size_t>(viol.size(), kAddPerRound));
        for (auto i : viol)
        {
            active.push_back(i);
            in_active[i] = true;
        }
    }
    if (best_p.empty())
    {
        // no usable iterate: fall back to the closest member alone
        best_p.assign(n, 0.0);
        best_p[order[0]] = 1;
        best.hi = mixture_distance(v, {support[order[0]]}, {1.0}).hi / scale;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (best_p[i] > 0)
        {
            out.unitaries.push_back(support[i]);
            out.support.push_back(exact_synthesize(support[i]));
            out.probs.push_back(best_p[i]);
        }
    out.eps_star = {best.lo * scale, std::max(best.lo, best.hi) * scale};
    return out;
}

} // namespace cliffordt
