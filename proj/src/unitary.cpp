#include "cliffordt/unitary.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace cliffordt
{

namespace
{

Quad to_quad(const Real &x)
{
    double hi = x.convert_to<double>();
    Real r = x - hi;
    double mid = r.convert_to<double>();
    r -= mid;
    double lo = r.convert_to<double>();
    return (Quad)hi + (Quad)mid + (Quad)lo;
}

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\n");
    auto e = s.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

} // namespace

UnitVec4::UnitVec4(const std::array<Real, 4> &x, unsigned precision_bits) : bits_(precision_bits)
{
    Real n2 = 0;
    for (auto &c : x)
        n2 += c * c;
    if (n2 == 0)
        throw std::invalid_argument("UnitVec4: zero vector");
    Real n = sqrt(n2);
    int s = 0;
    for (auto &c : x)
        if (c != 0)
        {
            s = c > 0 ? 1 : -1;
            break;
        }
    Real scale = ldexp(Real(1), (int)bits_);
    for (int i = 0; i < 4; ++i)
    {
        Real y = x[i] / n * s * scale;
        num_[i] = BigInt(round(y));
    }
    // the rounded vector may have flipped a tiny leading coordinate to zero; keep canonical sign
    for (int i = 0; i < 4; ++i)
        if (num_[i] != 0)
        {
            if (num_[i] < 0)
                for (auto &v : num_)
                    v = -v;
            break;
        }
    auto c = coords();
    Real m2 = 0;
    for (auto &v : c)
        m2 += v * v;
    Real m = sqrt(m2);
    for (int i = 0; i < 4; ++i)
        q_[i] = to_quad(c[i] / m);
}

Real UnitVec4::coord(int i) const { return ldexp(Real(num_[i]), -(int)bits_); }

std::array<Real, 4> UnitVec4::coords() const
{
    return {coord(0), coord(1), coord(2), coord(3)};
}

std::array<double, 4> UnitVec4::to_double() const
{
    return {double(q_[0]), double(q_[1]), double(q_[2]), double(q_[3])};
}

Real diamond_distance(const UnitVec4 &u, const UnitVec4 &v)
{
    auto a = u.coords(), b = v.coords();
    Real dot = 0, na = 0, nb = 0;
    for (int i = 0; i < 4; ++i)
    {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    Real s = 1 - dot * dot / (na * nb);
    if (s < 0)
        s = 0;
    return sqrt(s);
}

double diamond_distance(const std::array<double, 4> &u, const std::array<double, 4> &v)
{
    double dot = 0;
    for (int i = 0; i < 4; ++i)
        dot += u[i] * v[i];
    double s = 1 - dot * dot;
    return s > 0 ? std::sqrt(s) : 0.0;
}

TargetUnitary haar_sample(std::mt19937_64 &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::array<Real, 4> x;
    for (auto &c : x)
        c = g(rng);
    return {UnitVec4(x), "haar"};
}

TargetUnitary haar_sample(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto t = haar_sample(rng);
    t.source = "haar(seed=" + std::to_string(seed) + ")";
    return t;
}

std::array<Real, 4> su2_mul(const std::array<Real, 4> &a, const std::array<Real, 4> &b)
{
    using C = std::complex<Real>;
    C a1(a[0], a[1]), a2(a[2], a[3]), b1(b[0], b[1]), b2(b[2], b[3]);
    C c1 = a1 * b1 - std::conj(a2) * b2;
    C c2 = a2 * b1 + std::conj(a1) * b2;
    return {c1.real(), c1.imag(), c2.real(), c2.imag()};
}

std::array<Real, 4> su2_dagger(const std::array<Real, 4> &a) { return {a[0], -a[1], -a[2], -a[3]}; }

Real parse_angle(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c))
            s += (char)std::tolower((unsigned char)c);
    if (s.empty())
        throw std::invalid_argument("parse_angle: empty angle");
    const Real pi = boost::math::constants::pi<Real>();
    // product/quotient of factors, each a decimal number or "pi"
    Real value = 1;
    bool divide = false;
    std::size_t i = 0;
    int sign = 1;
    while (i < s.size() && (s[i] == '-' || s[i] == '+'))
        sign = s[i++] == '-' ? -sign : sign;
    bool any = false;
    while (i < s.size())
    {
        Real f;
        if (s.compare(i, 2, "pi") == 0)
        {
            f = pi;
            i += 2;
        }
        else
        {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '.' || s[j] == 'e' ||
                                    ((s[j] == '-' || s[j] == '+') && j > i && s[j - 1] == 'e')))
                ++j;
            if (j == i)
                throw std::invalid_argument("parse_angle: cannot parse '" + text + "'");
            try
            {
                f = Real(s.substr(i, j - i));
            }
            catch (const std::exception &)
            {
                throw std::invalid_argument("parse_angle: bad number in '" + text + "'");
            }
            i = j;
        }
        if (divide)
        {
            if (f == 0)
                throw std::invalid_argument("parse_angle: division by zero");
            value /= f;
        }
        else
            value *= f;
        any = true;
        divide = false;
        if (i < s.size())
        {
            if (s[i] == '*')
                ++i;
            else if (s[i] == '/')
            {
                divide = true;
                ++i;
            }
            else if (s.compare(i, 2, "pi") != 0)
                throw std::invalid_argument("parse_angle: unexpected '" + s.substr(i) + "'");
        }
    }
    if (!any || divide)
        throw std::invalid_argument("parse_angle: incomplete expression '" + text + "'");
    return sign * value;
}

TargetUnitary target_from_matrix(const std::array<std::complex<Real>, 4> &m, std::string source)
{
    using C = std::complex<Real>;
    // unitarity: M†M = I
    Real dev = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
        {
            C s = std::conj(m[r]) * m[c] + std::conj(m[2 + r]) * m[2 + c];
            if (r == c)
                s -= C(1);
            dev = std::max(dev, Real(abs(s)));
        }
    if (dev > Real(1e-9))
    {
        std::ostringstream os;
        os << "target is not unitary (deviation " << dev.convert_to<double>() << ")";
        throw std::invalid_argument(os.str());
    }
    C det = m[0] * m[3] - m[1] * m[2];
    Real r = abs(det), phi = atan2(det.imag(), det.real());
    C root = std::polar(sqrt(r), phi / 2);
    C v1 = m[0] / root, v2 = m[2] / root;
    return {UnitVec4({v1.real(), v1.imag(), v2.real(), v2.imag()}), std::move(source)};
}

TargetUnitary parse_target(const std::string &text_in)
{
    std::string text = trim(text_in);
    auto open = text.find('(');
    if (open != std::string::npos && text.back() == ')')
    {
        std::string name = trim(text.substr(0, open));
        for (auto &c : name)
            c = (char)std::tolower((unsigned char)c);
        Real theta = parse_angle(text.substr(open + 1, text.size() - open - 2));
        Real c = cos(theta / 2), s = sin(theta / 2);
        if (name == "rz")
            return {UnitVec4({c, -s, 0, 0}), text};
        if (name == "rx")
            return {UnitVec4({c, 0, 0, -s}), text};
        if (name == "ry")
            return {UnitVec4({c, 0, s, 0}), text};
        throw std::invalid_argument("unknown rotation '" + name + "' (expected rz, rx or ry)");
    }
    std::string cleaned = text;
    for (auto &c : cleaned)
        if (c == ',' || c == ';' || c == '[' || c == ']')
            c = ' ';
    std::istringstream is(cleaned);
    std::vector<Real> vals;
    std::string tok;
    while (is >> tok)
    {
        try
        {
            vals.push_back(Real(tok));
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("cannot parse target token '" + tok + "'");
        }
    }
    if (vals.size() != 8)
        throw std::invalid_argument("target must be rz(θ), rx(θ), ry(θ) or 8 numbers; got '" + text + "'");
    std::array<std::complex<Real>, 4> m;
    for (int i = 0; i < 4; ++i)
        m[i] = std::complex<Real>(vals[2 * i], vals[2 * i + 1]);
    return target_from_matrix(m, "matrix");
}

} // namespace cliffordt
