#include "cliffordt/exact.hpp"

#include <boost/math/constants/constants.hpp>

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include <quadmath.h>

namespace cliffordt
{

Mat2 Mat2::operator*(const Mat2 &o) const
{
    return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
             m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
}

Mat2 Mat2::dagger() const { return {{m[0].dagger(), m[2].dagger(), m[1].dagger(), m[3].dagger()}}; }

namespace
{

auto encoding(const DOmega &a, const DOmega &b)
{
    return std::make_tuple(a.k, a.num.a, a.num.b, a.num.c, a.num.d, b.k, b.num.a, b.num.b, b.num.c, b.num.d);
}

} // namespace

ExactUnitary::ExactUnitary(DOmega a, DOmega b, int l_) : u1(std::move(a)), u2(std::move(b)), l(l_)
{
    if (l != 0 && l != 1)
        throw std::invalid_argument("ExactUnitary: phase bit must be 0 or 1");
    DOmega na = -u1, nb = -u2;
    if (encoding(na, nb) < encoding(u1, u2))
    {
        u1 = std::move(na);
        u2 = std::move(nb);
    }
}

bool ExactUnitary::operator<(const ExactUnitary &o) const
{
    if (l != o.l)
        return l < o.l;
    return encoding(u1, u2) < encoding(o.u1, o.u2);
}

Mat2 ExactUnitary::matrix() const
{
    return {{u1, -(u2.dagger().mul_zeta(l)), u2, u1.dagger().mul_zeta(l)}};
}

ExactUnitary ExactUnitary::from_matrix(const Mat2 &m)
{
    DOmega det = m.det();
    int j = -1;
    if (det.k == 0)
        for (int i = 0; i < 8; ++i)
            if (det.num == ZOmega::zeta_power(i))
            {
                j = i;
                break;
            }
    if (j < 0)
        throw std::invalid_argument("ExactUnitary::from_matrix: determinant is not a power of ζ");
    int l = j % 2;
    // ω² det = ζ^l with ω = ζ^{-(j-l)/2}
    int w = -(j - l) / 2;
    return ExactUnitary(m.m[0].mul_zeta(w), m.m[2].mul_zeta(w), l);
}

bool ExactUnitary::norm_is_one() const
{
    unsigned K = lde();
    ZRoot2 n = u1.scaled_to(K).norm_sq() + u2.scaled_to(K).norm_sq();
    // n/2^K must equal 1
    return n == ZRoot2(BigInt(1) << K, 0);
}

namespace
{

template <class F>
std::array<F, 4> coords_as(const ExactUnitary &u, F sqrt2)
{
    std::array<F, 4> out;
    const DOmega *parts[2] = {&u.u1, &u.u2};
    for (int p = 0; p < 2; ++p)
    {
        const ZOmega &n = parts[p]->num;
        F a = (F)n.a.convert_to<long double>(), b = (F)n.b.convert_to<long double>(),
          c = (F)n.c.convert_to<long double>(), d = (F)n.d.convert_to<long double>();
        F scale = 1;
        for (unsigned i = 0; i < parts[p]->k; ++i)
            scale /= sqrt2;
        out[2 * p] = (a + (b - d) / sqrt2) * scale;
        out[2 * p + 1] = (c + (b + d) / sqrt2) * scale;
    }
    return out;
}

} // namespace

std::array<double, 4> ExactUnitary::to_double() const
{
    auto q = to_quad();
    return {double(q[0]), double(q[1]), double(q[2]), double(q[3])};
}

std::array<Quad, 4> ExactUnitary::to_quad() const { return coords_as<Quad>(*this, sqrtq((Quad)2)); }

std::array<Real, 4> ExactUnitary::to_real() const
{
    std::array<Real, 4> out;
    const DOmega *parts[2] = {&u1, &u2};
    Real s2 = sqrt(Real(2));
    for (int p = 0; p < 2; ++p)
    {
        const ZOmega &n = parts[p]->num;
        Real scale = pow(s2, -(int)parts[p]->k);
        out[2 * p] = (Real(n.a) + Real(n.b - n.d) / s2) * scale;
        out[2 * p + 1] = (Real(n.c) + Real(n.b + n.d) / s2) * scale;
    }
    return out;
}

const ExactUnitary &gate_H()
{
    // −i·H has determinant 1
    static const ExactUnitary h(DOmega(ZOmega(0, 0, -1, 0), 1), DOmega(ZOmega(0, 0, -1, 0), 1), 0);
    return h;
}

const ExactUnitary &gate_S()
{
    // ζ^{-1}·S has determinant 1
    static const ExactUnitary s(DOmega(ZOmega(1).mul_zeta(-1)), DOmega(ZOmega(0)), 0);
    return s;
}

const ExactUnitary &gate_T()
{
    static const ExactUnitary t(DOmega(ZOmega(1)), DOmega(ZOmega(0)), 1);
    return t;
}

namespace
{

struct CliffordData
{
    std::vector<ExactUnitary> table;
    std::vector<std::string> words;
    std::unordered_map<ExactUnitary, int, ExactUnitaryHash> index;
};

const CliffordData &clifford_data()
{
    static const CliffordData data = [] {
        CliffordData d;
        std::deque<int> queue;
        ExactUnitary id;
        d.table.push_back(id);
        d.words.push_back("");
        d.index.emplace(id, 0);
        queue.push_back(0);
        while (!queue.empty())
        {
            int i = queue.front();
            queue.pop_front();
            for (char g : {'H', 'S'})
            {
                ExactUnitary next = d.table[i] * (g == 'H' ? gate_H() : gate_S());
                if (d.index.count(next))
                    continue;
                int idx = (int)d.table.size();
                d.table.push_back(next);
                d.words.push_back(d.words[i] + g);
                d.index.emplace(next, idx);
                queue.push_back(idx);
            }
        }
        if (d.table.size() != 24)
            throw std::logic_error("clifford_table: closure did not produce 24 elements");
        return d;
    }();
    return data;
}

} // namespace

const std::vector<ExactUnitary> &clifford_table() { return clifford_data().table; }
const std::vector<std::string> &clifford_words() { return clifford_data().words; }

int clifford_index(const ExactUnitary &u)
{
    auto &idx = clifford_data().index;
    auto it = idx.find(u);
    return it == idx.end() ? -1 : it->second;
}

std::string GateWord::to_string() const
{
    std::string s = a0 ? "T" : "";
    for (bool b : syllables)
        s += b ? "SHT" : "HT";
    return s + clifford_words().at(clifford);
}

ExactUnitary evaluate(const GateWord &w)
{
    if (w.clifford < 0 || w.clifford >= 24)
        throw std::invalid_argument("evaluate: Clifford index out of range");
    static const ExactUnitary ht = gate_H() * gate_T();
    static const ExactUnitary hst = gate_S() * gate_H() * gate_T();
    ExactUnitary u = w.a0 ? gate_T() : ExactUnitary();
    for (bool b : w.syllables)
        u = u * (b ? hst : ht);
    return u * clifford_table()[w.clifford];
}

ExactUnitary evaluate_string(const std::string &s)
{
    ExactUnitary u;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        char c = s[i];
        if (c == '@')
        {
            if (i + 1 >= s.size() || s[i + 1] != 'p')
                throw std::invalid_argument("gate word: malformed phase annotation");
            for (std::size_t j = i + 2; j < s.size(); ++j)
                if (!std::isdigit((unsigned char)s[j]))
                    throw std::invalid_argument("gate word: malformed phase annotation");
            break;
        }
        if (c == 'H')
            u = u * gate_H();
        else if (c == 'S')
            u = u * gate_S();
        else if (c == 'T')
            u = u * gate_T();
        else if (c == ' ')
            continue;
        else
            throw std::invalid_argument(std::string("gate word: unexpected character '") + c + "'");
    }
    return u;
}

GateWord parse_word(const std::string &s) { return exact_synthesize(evaluate_string(s)); }

std::array<DOmega, 9> bloch_matrix(const ExactUnitary &u)
{
    const DOmega zero(ZOmega(0)), one(ZOmega(1)), i(ZOmega(0, 0, 1, 0));
    const Mat2 pauli[3] = {{{zero, one, one, zero}}, {{zero, -i, i, zero}}, {{one, zero, zero, -one}}};
    Mat2 U = u.matrix(), Ud = U.dagger();
    std::array<DOmega, 9> out;
    for (int j = 0; j < 3; ++j)
    {
        Mat2 conj = U * pauli[j] * Ud;
        for (int r = 0; r < 3; ++r)
        {
            DOmega tr = (pauli[r] * conj).trace();
            out[3 * r + j] = DOmega(tr.num, tr.k + 2);
        }
    }
    return out;
}

unsigned sde(const std::array<DOmega, 9> &m)
{
    unsigned k = 0;
    for (auto &x : m)
        k = std::max(k, x.k);
    return k;
}

namespace
{

// Z[ζ] with 128-bit coefficients; only used while products cannot overflow
struct Z8
{
    __int128 a = 0, b = 0, c = 0, d = 0;

    Z8 operator+(const Z8 &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Z8 operator-(const Z8 &o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Z8 operator-() const { return {-a, -b, -c, -d}; }
    Z8 operator*(const Z8 &o) const
    {
        return {a * o.a - (b * o.d + c * o.c + d * o.b), a * o.b + b * o.a - (c * o.d + d * o.c),
                a * o.c + b * o.b + c * o.a - d * o.d, a * o.d + b * o.c + c * o.b + d * o.a};
    }
    Z8 dagger() const { return {a, -d, -c, -b}; }
    Z8 mul_zeta() const { return {-d, a, b, c}; }
    bool divisible_by_sqrt2() const { return ((a - c) & 1) == 0 && ((b - d) & 1) == 0; }
    Z8 div_sqrt2() const { return {(b - d) / 2, (c + a) / 2, (b + d) / 2, (c - a) / 2}; }
    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
};

struct M2
{
    Z8 m[4];

    M2 operator*(const M2 &o) const
    {
        return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3], m[2] * o.m[0] + m[3] * o.m[2],
                 m[2] * o.m[1] + m[3] * o.m[3]}};
    }
};

constexpr long long kFastBound = 1ll << 40;

bool to_z8(const ZOmega &x, Z8 &out)
{
    const BigInt *c[4] = {&x.a, &x.b, &x.c, &x.d};
    __int128 *o[4] = {&out.a, &out.b, &out.c, &out.d};
    for (int i = 0; i < 4; ++i)
    {
        if (*c[i] >= kFastBound || *c[i] <= -kFastBound)
            return false;
        *o[i] = c[i]->convert_to<long long>();
    }
    return true;
}

// same value as sde(bloch_matrix(u)) when the numerators are small
bool fast_tcount(const ExactUnitary &u, unsigned &out)
{
    const unsigned K = std::max(u.u1.k, u.u2.k);
    Z8 x1, x2;
    if (!to_z8(u.u1.scaled_to(K), x1) || !to_z8(u.u2.scaled_to(K), x2))
        return false;
    Z8 w1 = x1.dagger(), w2 = -x2.dagger();
    if (u.l)
    {
        w1 = w1.mul_zeta();
        w2 = w2.mul_zeta();
    }
    const M2 U{{x1, w2, x2, w1}};
    const M2 Ud{{U.m[0].dagger(), U.m[2].dagger(), U.m[1].dagger(), U.m[3].dagger()}};
    const Z8 zero, one{1}, i{0, 0, 1, 0};
    const M2 pauli[3] = {{{zero, one, one, zero}}, {{zero, -i, i, zero}}, {{one, zero, zero, -one}}};
    unsigned best = 0;
    for (int j = 0; j < 3; ++j)
    {
        M2 conj = U * pauli[j] * Ud;
        for (int r = 0; r < 3; ++r)
        {
            M2 p = pauli[r] * conj;
            Z8 tr = p.m[0] + p.m[3];
            // entry is tr / √2^{2K+2}
            unsigned e = 2 * K + 2;
            while (e > best && tr.divisible_by_sqrt2() && !tr.is_zero())
            {
                tr = tr.div_sqrt2();
                --e;
            }
            if (!tr.is_zero())
                best = std::max(best, e);
        }
    }
    out = best;
    return true;
}

} // namespace

unsigned tcount(const ExactUnitary &u)
{
    unsigned t;
    if (fast_tcount(u, t))
        return t;
    return sde(bloch_matrix(u));
}

namespace
{

using Bloch = std::array<DOmega, 9>;

// Aᵀ·B
Bloch mul_transposed(const Bloch &a, const Bloch &b)
{
    Bloch out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
        {
            DOmega s = a[r] * b[c];
            s = s + a[3 + r] * b[3 + c];
            s = s + a[6 + r] * b[6 + c];
            out[3 * r + c] = s;
        }
    return out;
}

} // namespace

GateWord exact_synthesize(const ExactUnitary &u)
{
    if (!u.norm_is_one())
        throw std::invalid_argument("exact_synthesize: |u1|² + |u2|² ≠ 1");
    static const ExactUnitary ht = gate_H() * gate_T();
    static const ExactUnitary hst = gate_S() * gate_H() * gate_T();
    static const Bloch b_t = bloch_matrix(gate_T()), b_ht = bloch_matrix(ht), b_hst = bloch_matrix(hst);

    GateWord w;
    ExactUnitary cur = u;
    Bloch m = bloch_matrix(u);
    unsigned k = sde(m);
    bool first = true;
    while (k > 0)
    {
        Bloch next = mul_transposed(b_ht, m);
        if (sde(next) < k)
        {
            w.syllables.push_back(false);
            cur = ht.dagger() * cur;
        }
        else if (next = mul_transposed(b_hst, m); sde(next) < k)
        {
            w.syllables.push_back(true);
            cur = hst.dagger() * cur;
        }
        else if (next = mul_transposed(b_t, m); first && sde(next) < k)
        {
            w.a0 = true;
            cur = gate_T().dagger() * cur;
        }
        else
            throw std::logic_error("exact_synthesize: no syllable reduces the denominator exponent");
        m = next;
        k = sde(m);
        first = false;
    }
    w.clifford = clifford_index(cur);
    if (w.clifford < 0)
        throw std::logic_error("exact_synthesize: residual is not a Clifford");
    return w;
}

std::vector<GateWord> coset_words(unsigned n)
{
    std::vector<GateWord> out;
    if (n == 0)
    {
        out.push_back(GateWord{});
        return out;
    }
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits)
    {
        GateWord w;
        for (unsigned i = 0; i < n; ++i)
            w.syllables.push_back((bits >> (n - 1 - i)) & 1);
        out.push_back(w);
    }
    for (std::uint64_t bits = 0; bits < (1ull << (n - 1)); ++bits)
    {
        GateWord w;
        w.a0 = true;
        for (unsigned i = 0; i + 1 < n; ++i)
            w.syllables.push_back((bits >> (n - 2 - i)) & 1);
        out.push_back(w);
    }
    return out;
}

std::vector<ExactUnitary> coset_reps(unsigned n)
{
    std::vector<ExactUnitary> out;
    for (auto &w : coset_words(n))
        out.push_back(evaluate(w));
    return out;
}

std::array<Real, 4> su2_column(const ExactUnitary &u)
{
    auto c = u.to_real();
    if (u.l == 0)
        return c;
    const Real th = boost::math::constants::pi<Real>() / 8;
    const Real cs = cos(th), sn = sin(th);
    // multiply both entries by e^{−iπ/8}
    return {c[0] * cs + c[1] * sn, c[1] * cs - c[0] * sn, c[2] * cs + c[3] * sn, c[3] * cs - c[2] * sn};
}

Real channel_distance(const ExactUnitary &u, const UnitVec4 &v)
{
    auto a = su2_column(u);
    return diamond_distance(UnitVec4(a), v);
}

bool certified_within(const ExactUnitary &u, const UnitVec4 &v, double eps)
{
    if (!(eps > 0))
        return false;
    if (eps > 1)
        return true;
    unsigned K = u.lde();
    ZOmega n1 = u.u1.scaled_to(K), n2 = u.u2.scaled_to(K);
    // coordinates of u times √2^{K+1}
    ZRoot2 x[4] = {n1.sqrt2_re(), n1.sqrt2_im(), n2.sqrt2_re(), n2.sqrt2_im()};
    const auto &V = v.numerators();
    // R = Re⟨u,v⟩ and I = Im⟨u,v⟩, both times √2^{K+1}·2^P
    ZRoot2 R, I;
    BigInt NV = 0;
    for (int i = 0; i < 4; ++i)
    {
        R = R + x[i] * ZRoot2(V[i]);
        NV += V[i] * V[i];
    }
    for (int j = 0; j < 2; ++j)
        I = I + x[2 * j] * ZRoot2(V[2 * j + 1]) - x[2 * j + 1] * ZRoot2(V[2 * j]);
    // eps² = E / 2^F exactly
    int e2;
    double mant = std::frexp(eps, &e2); // eps = mant·2^e2, mant ∈ [0.5,1)
    BigInt m53 = BigInt(static_cast<long long>(std::ldexp(mant, 53)));
    int F = 2 * (53 - e2);
    BigInt E = m53 * m53;
    // overlap² times 4: l = 0 gives 4R²; l = 1 gives 4·Re(e^{iπ/8}(R + iI))²
    ZRoot2 Q4;
    if (u.l == 0)
        Q4 = ZRoot2(4) * R * R;
    else
    {
        ZRoot2 R2 = R * R, I2 = I * I, RI = R * I;
        ZRoot2 s = R2 + I2, d = R2 - I2;
        Q4 = ZRoot2(2) * s + ZRoot2(0, 1) * d - ZRoot2(0, 2) * RI;
    }
    // overlap² > (1 − E/2^F)·|v|²  ⇔  Q4·2^F > 4(2^F − E)·NV·2^{K+1}
    BigInt pow2F = BigInt(1) << F;
    ZRoot2 lhs(Q4.a * pow2F, Q4.b * pow2F);
    BigInt rhs = 4 * (pow2F - E) * NV * (BigInt(1) << (K + 1));
    return sign(lhs - ZRoot2(rhs)) > 0;
}

} // namespace cliffordt
