#include "klein/cf1d.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace klein {

namespace {

Int isqrt(Int const& x)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

Int floor_rat(Rat const& q)
{
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int floor_div(Int const& a, Int const& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void require_same_d(QuadNum const& a, QuadNum const& b)
{
    if (a.d() != b.d())
        throw Error(ErrorCode::InvalidArgument, "quadratic numbers over different fields");
}

}  // namespace

/* ---- QuadNum ------------------------------------------------------------- */

QuadNum::QuadNum(Rat x, Rat y, Int d) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d))
{
    if (d_ <= 1 || mpz_perfect_square_p(d_.get_mpz_t()))
        throw Error(ErrorCode::PerfectSquareD, "D = " + d_.get_str());
}

QuadNum quad(QuadNum const& like, Rat const& q) { return QuadNum(q, 0, like.d()); }

QuadNum rebase(QuadNum const& v, Int const& d)
{
    if (v.d() == d)
        return v;
    /* sqrt(D) = r sqrt(d) with r = sqrt(D d) / d */
    Int prod = v.d() * d;
    if (!mpz_perfect_square_p(prod.get_mpz_t()))
        throw Error(ErrorCode::InvalidArgument, "numbers lie in different quadratic fields");
    Rat r = ratio(isqrt(prod), d);
    return QuadNum(v.x(), v.y() * r, d);
}

int QuadNum::sign() const
{
    int sx = sgn(x_), sy = sgn(y_);
    if (sy == 0)
        return sx;
    if (sx == 0 || sx == sy)
        return sy;
    /* opposite signs: compare x^2 with y^2 D */
    Rat lhs = x_ * x_, rhs = y_ * y_ * Rat(d_);
    return lhs > rhs ? sx : sy;
}

Int QuadNum::floor() const
{
    /* floor(y sqrt D) from an integer square root, then correct */
    Rat s = y_ * y_ * Rat(d_);
    Int num = s.get_num() * s.get_den();
    Rat root = ratio(isqrt(num), s.get_den());
    Int guess = floor_rat(x_ + (y_ < 0 ? -root : root));
    auto at_least = [&](Int const& c) { return (*this - quad(*this, Rat(c))).sign() >= 0; };
    while (!at_least(guess))
        --guess;
    while (at_least(guess + 1))
        ++guess;
    return guess;
}

double QuadNum::approx() const { return x_.get_d() + y_.get_d() * std::sqrt(d_.get_d()); }

QuadNum operator+(QuadNum const& a, QuadNum const& b)
{
    require_same_d(a, b);
    return QuadNum(a.x_ + b.x_, a.y_ + b.y_, a.d_);
}

QuadNum operator-(QuadNum const& a) { return QuadNum(-a.x_, -a.y_, a.d_); }
QuadNum operator-(QuadNum const& a, QuadNum const& b) { return a + (-b); }

QuadNum operator*(QuadNum const& a, QuadNum const& b)
{
    require_same_d(a, b);
    return QuadNum(a.x_ * b.x_ + a.y_ * b.y_ * Rat(a.d_), a.x_ * b.y_ + a.y_ * b.x_, a.d_);
}

QuadNum operator/(QuadNum const& a, QuadNum const& b)
{
    Rat n = b.norm();
    if (n == 0)
        throw Error(ErrorCode::DivisionByZero, "quadratic number division by zero");
    QuadNum p = a * b.conj();
    return QuadNum(p.x_ / n, p.y_ / n, a.d_);
}

bool operator==(QuadNum const& a, QuadNum const& b)
{
    if (a.d_ == b.d_)
        return a.x_ == b.x_ && a.y_ == b.y_;
    return a.x_ == b.x_ && sgn(a.y_) == sgn(b.y_) && a.y_ * a.y_ * Rat(a.d_) == b.y_ * b.y_ * Rat(b.d_);
}

std::string QuadNum::to_string() const
{
    std::ostringstream os;
    os << x_.get_str();
    if (y_ != 0)
        os << (y_ < 0 ? " - " : " + ") << Rat(abs(y_)).get_str() << "*sqrt(" << d_.get_str() << ")";
    return os.str();
}

/* ---- QuadraticSurd ------------------------------------------------------- */

QuadNum QuadraticSurd::value() const { return QuadNum(ratio(P, Q), ratio(Int(1), Q), D); }

std::string QuadraticSurd::to_string() const
{
    return "(" + P.get_str() + "+sqrt(" + D.get_str() + "))/" + Q.get_str();
}

QuadraticSurd make_surd(Int P, Int Q, Int D)
{
    if (Q == 0)
        throw Error(ErrorCode::DivisionByZero, "surd with Q = 0");
    if (D <= 1 || mpz_perfect_square_p(D.get_mpz_t()))
        throw Error(ErrorCode::PerfectSquareD, "D = " + D.get_str());
    Int r = (D - P * P) % Q;
    if (r != 0) {
        Int aq = abs(Q);
        P *= aq;
        D *= Q * Q;
        Q *= aq;
    }
    return {P, Q, D};
}

QuadraticSurd parse_surd(std::string const& text)
{
    std::size_t i = 0;
    auto fail = [&](std::string const& what) -> QuadraticSurd {
        throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(i) + " in \"" + text + "\"");
    };
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto eat = [&](std::string const& tok) {
        skip();
        if (text.compare(i, tok.size(), tok) == 0) {
            i += tok.size();
            return true;
        }
        return false;
    };
    auto integer = [&](Int& out) {
        skip();
        std::size_t start = i;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+'))
            neg = text[i++] == '-';
        std::size_t digits = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (i == digits) {
            i = start;
            return false;
        }
        out = Int(text.substr(digits, i - digits));
        if (neg)
            out = -out;
        return true;
    };

    Int P = 0, Q = 1, D;
    bool paren = eat("(");
    skip();
    std::size_t save = i;
    if (!eat("sqrt")) {
        i = save;
        if (!integer(P))
            return fail("expected integer or sqrt");
        if (!eat("+"))
            return fail("expected '+'");
        if (!eat("sqrt"))
            return fail("expected 'sqrt'");
    }
    if (!eat("("))
        return fail("expected '('");
    if (!integer(D))
        return fail("expected integer D");
    if (!eat(")"))
        return fail("expected ')'");
    if (paren && !eat(")"))
        return fail("expected ')'");
    if (eat("/")) {
        if (!integer(Q))
            return fail("expected integer Q");
    }
    skip();
    if (i != text.size())
        return fail("trailing characters");
    if (Q == 0)
        return fail("Q must be nonzero");
    if (D <= 1 || mpz_perfect_square_p(D.get_mpz_t()))
        return fail("D must be a positive non-square");
    return make_surd(P, Q, D);
}

bool same_value(QuadraticSurd const& a, QuadraticSurd const& b) { return a.value() == b.value(); }

QuadraticSurd to_surd(QuadNum const& v)
{
    if (v.is_rational())
        throw Error(ErrorCode::PerfectSquareD, "rational number has no surd form");
    /* x +- sqrt(r), r = y^2 D = a/b; over the denominator L = lcm(b, den x) */
    Rat r = v.y() * v.y() * Rat(v.d());
    Int L;
    mpz_lcm(L.get_mpz_t(), r.get_den_mpz_t(), v.x().get_den_mpz_t());
    Rat px = v.x() * Rat(L);
    Rat dd = r * Rat(L * L);
    Int P = px.get_num(), D = dd.get_num();
    if (v.y() > 0)
        return make_surd(P, L, D);
    return make_surd(-P, -L, D);
}

/* ---- continued fractions --------------------------------------------------- */

PeriodicCF cf_expand(QuadraticSurd const& s0)
{
    QuadraticSurd s = make_surd(s0.P, s0.Q, s0.D);
    Int root = isqrt(s.D);
    Int P = s.P, Q = s.Q;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<Int> quotients;
    for (;;) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            PeriodicCF cf;
            cf.preperiod.assign(quotients.begin(), quotients.begin() + static_cast<long>(it->second));
            cf.period.assign(quotients.begin() + static_cast<long>(it->second), quotients.end());
            return cf;
        }
        seen.emplace(key, quotients.size());
        Int a = Q > 0 ? floor_div(P + root, Q) : -floor_div(P + root, -Q) - 1;
        quotients.push_back(a);
        Int P1 = a * Q - P;
        Int Q1 = (s.D - P1 * P1) / Q;
        P = P1;
        Q = Q1;
    }
}

namespace {

/* (p, p', q, q') with x = [seq..., t] = (p t + p') / (q t + q') */
std::array<Int, 4> convergent_matrix(std::vector<Int> const& seq)
{
    Int p = 1, pp = 0, q = 0, qq = 1;
    for (auto const& a : seq) {
        Int np = a * p + pp, nq = a * q + qq;
        pp = p;
        qq = q;
        p = np;
        q = nq;
    }
    return {p, pp, q, qq};
}

}  // namespace

QuadNum cf_value(PeriodicCF const& cf)
{
    if (cf.period.empty())
        throw Error(ErrorCode::InvalidArgument, "empty period");
    auto [p, pp, q, qq] = convergent_matrix(cf.period);
    /* q x^2 + (qq - p) x - pp = 0, take the root > 1 */
    Int b = qq - p;
    Int disc = b * b + 4 * q * pp;
    QuadNum x(ratio(-b, 2 * q), ratio(Int(1), 2 * q), disc);
    if (x.sign() <= 0 || (x - quad(x, 1)).sign() <= 0)
        x = QuadNum(ratio(-b, 2 * q), ratio(Int(-1), 2 * q), disc);
    auto [P, PP, Q, QQ] = convergent_matrix(cf.preperiod);
    return (quad(x, Rat(P)) * x + quad(x, Rat(PP))) / (quad(x, Rat(Q)) * x + quad(x, Rat(QQ)));
}

std::size_t minimal_period(std::vector<Int> const& seq)
{
    std::size_t t = seq.size();
    for (std::size_t p = 1; p <= t; ++p) {
        if (t % p)
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < t && ok; ++i)
            ok = seq[i] == seq[(i + p) % t];
        if (ok)
            return p;
    }
    return t;
}

bool same_up_to_rotation(std::vector<Int> const& a, std::vector<Int> const& b)
{
    if (a.size() != b.size())
        return false;
    std::size_t t = a.size();
    for (std::size_t r = 0; r < t; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < t && ok; ++i)
            ok = a[i] == b[(i + r) % t];
        if (ok)
            return true;
    }
    return t == 0;
}

QuadraticSurd surd_conjugate(QuadraticSurd const& s) { return make_surd(-s.P, -s.Q, s.D); }

Rat surd_trace(QuadraticSurd const& s) { return s.value().trace(); }
Rat surd_norm(QuadraticSurd const& s) { return s.value().norm(); }

QuadraticSurd negative_reciprocal_conjugate(QuadraticSurd const& s0)
{
    QuadraticSurd s = make_surd(s0.P, s0.Q, s0.D);
    return make_surd(s.P, (s.D - s.P * s.P) / s.Q, s.D);
}

bool is_reduced(QuadraticSurd const& s)
{
    QuadNum v = s.value();
    QuadNum c = v.conj();
    return (v - quad(v, 1)).sign() > 0 && c.sign() < 0 && (c + quad(v, 1)).sign() > 0;
}

std::vector<QuadraticSurd> reduced_surds(long max_d)
{
    std::vector<QuadraticSurd> out;
    for (long d = 2; d <= max_d; ++d) {
        Int D = d;
        if (mpz_perfect_square_p(D.get_mpz_t()))
            continue;
        long s = isqrt(D).get_si();
        for (long p = 1; p <= s; ++p)
            for (long q = s - p + 1; q <= s + p; ++q)
                if ((d - p * p) % q == 0)
                    out.push_back({Int(p), Int(q), D});
    }
    return out;
}

/* ---- cyclic palindromes ---------------------------------------------------- */

PalindromeAxes is_cyclic_palindrome(std::vector<Int> const& seq)
{
    PalindromeAxes res;
    std::size_t t = seq.size();
    if (t == 0)
        throw Error(ErrorCode::InvalidArgument, "empty sequence");
    for (std::size_t c = 0; c < t; ++c) {
        bool ok = true;
        for (std::size_t k = 0; k < t && ok; ++k)
            ok = seq[k] == seq[(c + t - k) % t];
        if (!ok)
            continue;
        /* the reflection k -> c - k crosses the cycle at fixed elements and
         * at swapped neighbours */
        for (std::size_t k = 0; k < t; ++k) {
            if ((2 * k) % t == c)
                res.axes.push_back({AxisType::ThroughElement, k + 1});
            if ((2 * k + 1) % t == c && t > 1)
                res.axes.push_back({AxisType::BetweenElements, k + 1});
        }
    }
    std::sort(res.axes.begin(), res.axes.end());
    res.axes.erase(std::unique(res.axes.begin(), res.axes.end()), res.axes.end());
    res.is_palindrome = !res.axes.empty();
    return res;
}

/* ---- Klein polygons ---------------------------------------------------------- */

namespace {

using QVec = std::array<QuadNum, 2>;

QVec act(IntMatrix const& u, QVec const& v)
{
    auto q = [&](Int const& x) { return quad(v[0], Rat(x)); };
    return {q(u(0, 0)) * v[0] + q(u(0, 1)) * v[1], q(u(1, 0)) * v[0] + q(u(1, 1)) * v[1]};
}

Point2 act(IntMatrix const& u, Point2 const& p)
{
    return {u(0, 0) * p[0] + u(0, 1) * p[1], u(1, 0) * p[0] + u(1, 1) * p[1]};
}

Int cross(Point2 const& a, Point2 const& b) { return a[0] * b[1] - a[1] * b[0]; }

int cross_sign(Point2 const& e, QVec const& r)
{
    QuadNum v = quad(r[0], Rat(e[0])) * r[1] - quad(r[0], Rat(e[1])) * r[0];
    return v.sign();
}

Int gcd2(Int const& a, Int const& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/* convergents (p_n, q_n), n = 0..count-1 */
std::vector<std::pair<Int, Int>> convergents(QuadNum x, std::size_t count)
{
    std::vector<std::pair<Int, Int>> out;
    Int p = 1, pp = 0, q = 0, qq = 1;
    for (std::size_t n = 0; n < count; ++n) {
        Int a = x.floor();
        Int np = a * p + pp, nq = a * q + qq;
        pp = p;
        qq = q;
        p = np;
        q = nq;
        out.emplace_back(p, q);
        x = quad(x, 1) / (x - quad(x, Rat(a)));
    }
    return out;
}

void certify_chain(std::vector<Point2> const& chain, QVec const& r1, QVec const& r2)
{
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Point2 d{chain[i + 1][0] - chain[i][0], chain[i + 1][1] - chain[i][1]};
        Int g = gcd2(d[0], d[1]);
        Point2 e{d[0] / g, d[1] / g};
        /* supporting line at lattice height one, cone on one side */
        Int h = cross(e, chain[i]);
        int s1 = cross_sign(e, r1), s2 = cross_sign(e, r2);
        if (abs(h) != 1 || s1 == 0 || s1 != s2 || sgn(h) != s1)
            throw Error(ErrorCode::StructureViolation, "sail edge failed certification");
    }
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        Point2 a{chain[i][0] - chain[i - 1][0], chain[i][1] - chain[i - 1][1]};
        Point2 b{chain[i + 1][0] - chain[i][0], chain[i + 1][1] - chain[i][1]};
        if (cross(a, b) == 0)
            throw Error(ErrorCode::StructureViolation, "sail vertex is not extreme");
    }
}

}  // namespace

std::vector<Point2> klein_polygon(QuadNum const& alpha, QuadNum const& beta, std::array<int, 2> cone,
                                  std::size_t count)
{
    if (alpha.is_rational() || beta.is_rational())
        throw Error(ErrorCode::RationalCone, "cone boundary is a rational line");
    require_same_d(alpha, beta);
    if (alpha == beta)
        throw Error(ErrorCode::InvalidArgument, "boundary lines coincide");
    if (std::abs(cone[0]) != 1 || std::abs(cone[1]) != 1)
        throw Error(ErrorCode::InvalidArgument, "cone selector must be +-1");
    QuadNum one = quad(alpha, 1);
    QVec r1{quad(alpha, cone[0]), quad(alpha, cone[0]) * alpha};
    QVec r2{quad(alpha, cone[1]), quad(alpha, cone[1]) * beta};

    /* a primitive covector positive on both rays */
    IntMatrix u;
    for (long R = 1; u.rows() == 0; ++R) {
        for (long p = -R; p <= R && u.rows() == 0; ++p)
            for (long q = -R; q <= R && u.rows() == 0; ++q) {
                if (std::max(std::abs(p), std::abs(q)) != R || gcd2(Int(p), Int(q)) != 1)
                    continue;
                auto pos = [&](QVec const& r) { return (quad(alpha, p) * r[0] + quad(alpha, q) * r[1]).sign() > 0; };
                if (!pos(r1) || !pos(r2))
                    continue;
                Int g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), Int(p).get_mpz_t(), Int(q).get_mpz_t());
                u = IntMatrix{{p, q}, {0, 0}};
                u(1, 0) = -y * g;
                u(1, 1) = x * g;
            }
    }
    auto slope = [&](QVec const& r) {
        QVec t = act(u, r);
        return t[1] / t[0];
    };
    bool alpha_high = slope(r2) < slope(r1);
    QVec const& hi = alpha_high ? r1 : r2;
    QVec const& lo = alpha_high ? r2 : r1;
    auto shear = [](Int const& k) {
        IntMatrix s = IntMatrix::identity(2);
        s(1, 0) = -k;
        return s;
    };
    IntMatrix swap{{0, 1}, {1, 0}};
    bool flipped = false;  // roles of hi/lo exchanged by a swap
    for (;;) {
        QuadNum sh = slope(flipped ? lo : hi), sl = slope(flipped ? hi : lo);
        Int fl = sl.floor();
        if (sh.floor() != fl)
            break;
        u = swap * shear(fl) * u;
        flipped = !flipped;
    }
    QVec const& top = flipped ? lo : hi;
    QVec const& bottom = flipped ? hi : lo;
    u = shear(slope(bottom).floor() + 1) * u;
    QuadNum a = slope(top), b = slope(bottom);
    QuadNum c = -one / b;

    std::size_t want = count + 2;
    auto ca = convergents(a, 2 * want + 2);
    auto cc = convergents(c, 2 * want + 2);
    std::vector<Point2> lower, upper;
    for (std::size_t k = 1; k < cc.size(); k += 2)
        lower.push_back({cc[k].first, -cc[k].second});
    for (std::size_t k = 0; k < ca.size(); k += 2)
        upper.push_back({ca[k].second, ca[k].first});
    std::vector<Point2> chain(lower.rbegin(), lower.rend());
    std::size_t base = chain.size();
    chain.push_back({1, 0});
    for (auto const& p : upper)
        if (p != chain.back())
            chain.push_back(p);

    std::size_t start = base >= count / 2 ? base - count / 2 : 0;
    std::vector<Point2> window(chain.begin() + static_cast<long>(start),
                               chain.begin() + static_cast<long>(std::min(chain.size(), start + count)));
    IntMatrix uinv = inverse_unimodular(u);
    std::vector<Point2> out;
    for (auto const& p : window)
        out.push_back(act(uinv, p));
    /* bottom ray is the beta side unless it was alpha originally */
    bool bottom_is_beta = (&bottom == &r2);
    if (!bottom_is_beta)
        std::reverse(out.begin(), out.end());
    certify_chain(out, r1, r2);
    return out;
}

std::vector<Point2> klein_polygon(QuadraticSurd const& alpha, QuadraticSurd const& beta,
                                  std::array<int, 2> cone, std::size_t count)
{
    QuadNum a = alpha.value();
    return klein_polygon(a, rebase(beta.value(), a.d()), cone, count);
}

std::vector<Int> edge_lengths(std::vector<Point2> const& chain)
{
    std::vector<Int> out;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        out.push_back(gcd2(chain[i + 1][0] - chain[i][0], chain[i + 1][1] - chain[i][1]));
    return out;
}

std::vector<Int> vertex_angles(std::vector<Point2> const& chain)
{
    std::vector<Int> out;
    auto prim = [](Point2 const& a, Point2 const& b) {
        Point2 d{b[0] - a[0], b[1] - a[1]};
        Int g = gcd2(d[0], d[1]);
        return Point2{d[0] / g, d[1] / g};
    };
    for (std::size_t i = 1; i + 1 < chain.size(); ++i)
        out.push_back(abs(cross(prim(chain[i - 1], chain[i]), prim(chain[i], chain[i + 1]))));
    return out;
}

/* ---- 2D symmetries ------------------------------------------------------- */

QuadNum eigen_slope_2d(IntMatrix const& a)
{
    if (a.rows() != 2 || a.cols() != 2)
        throw Error(ErrorCode::UnsupportedDimension, "2x2 operator expected");
    if (!is_hyperbolic(a))
        throw Error(ErrorCode::NotHyperbolic, "operator is not hyperbolic");
    Int tr = a(0, 0) + a(1, 1);
    Int D = tr * tr - 4 * det(a);
    return QuadNum(ratio(a(1, 1) - a(0, 0), 2 * a(0, 1)), ratio(Int(1), 2 * a(0, 1)), D);
}

namespace {

int cone_index(int e1, int e2) { return (e1 < 0 ? 2 : 0) + (e2 < 0 ? 1 : 0); }

std::vector<IntVector> linear_condition_kernel(IntMatrix const& left, IntMatrix const& right)
{
    /* G -> G * right - left * G on vec(G) */
    IntMatrix l(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        IntMatrix e(2, 2);
        e(k / 2, k % 2) = 1;
        IntVector img = (e * right - left * e).vectorize();
        for (std::size_t r = 0; r < 4; ++r)
            l(r, k) = img[r];
    }
    return integer_kernel(l);
}

}  // namespace

std::vector<SymmetryReport2D> find_symmetries_2d(IntMatrix const& a, long entry_bound)
{
    QuadNum alpha = eigen_slope_2d(a);
    Int tr = a(0, 0) + a(1, 1);
    IntMatrix swapped = tr * IntMatrix::identity(2) - a;
    std::vector<SymmetryReport2D> out;
    for (SymmetryKind kind : {SymmetryKind::Dirichlet, SymmetryKind::Palindromic}) {
        auto ker = lll_reduce(linear_condition_kernel(kind == SymmetryKind::Dirichlet ? a : swapped, a));
        if (ker.size() != 2)
            throw Error(ErrorCode::StructureViolation, "symmetry lattice must have rank 2");
        /* the best-conditioned pair of coordinates bounds the coefficients */
        std::size_t bi = 0, bj = 1;
        Int best = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                Int m = abs(ker[0][i] * ker[1][j] - ker[0][j] * ker[1][i]);
                if (m > best) {
                    best = m;
                    bi = i;
                    bj = j;
                }
            }
        Int B = entry_bound;
        Int rx = (B * (abs(ker[1][bi]) + abs(ker[1][bj]))) / best + 1;
        Int ry = (B * (abs(ker[0][bi]) + abs(ker[0][bj]))) / best + 1;
        long lx = rx.get_si(), ly = ry.get_si();
        for (long x = -lx; x <= lx; ++x)
            for (long y = -ly; y <= ly; ++y) {
                IntVector v(4);
                bool ok = true;
                for (std::size_t r = 0; r < 4 && ok; ++r) {
                    v[r] = x * ker[0][r] + y * ker[1][r];
                    ok = abs(v[r]) <= B;
                }
                if (!ok)
                    continue;
                IntMatrix g = IntMatrix::unvectorize(v, 2);
                Int d = det(g);
                if (d != 1 && d != -1)
                    continue;
                SymmetryReport2D rep;
                rep.g = g;
                rep.kind = kind;
                rep.det = static_cast<int>(d.get_si());
                QuadNum mu = quad(alpha, Rat(g(0, 0))) + quad(alpha, Rat(g(0, 1))) * alpha;
                int m1 = mu.sign(), m2 = mu.conj().sign();
                for (int e1 : {1, -1})
                    for (int e2 : {1, -1}) {
                        int n1, n2;
                        if (kind == SymmetryKind::Dirichlet) {
                            n1 = e1 * m1;
                            n2 = e2 * m2;
                        } else {
                            n1 = e2 * m2;
                            n2 = e1 * m1;
                        }
                        rep.cone_map[cone_index(e1, e2)] = cone_index(n1, n2);
                    }
                for (int i = 0; i < 4; ++i)
                    if (rep.cone_map[i] == i)
                        rep.fixed_cones.push_back(i);
                out.push_back(rep);
            }
    }
    std::sort(out.begin(), out.end(), [](SymmetryReport2D const& x, SymmetryReport2D const& y) {
        if (x.kind != y.kind)
            return x.kind < y.kind;
        return x.g < y.g;
    });
    return out;
}

IntMatrix operator_from_surd(QuadraticSurd const& s)
{
    PeriodicCF cf = cf_expand(s);
    auto prod = [](std::vector<Int> const& seq) {
        IntMatrix m = IntMatrix::identity(2);
        for (auto const& a : seq) {
            IntMatrix step(2, 2);
            step(0, 0) = a;
            step(0, 1) = 1;
            step(1, 0) = 1;
            m = m * step;
        }
        return m;
    };
    IntMatrix n = prod(cf.preperiod), m = prod(cf.period);
    IntMatrix sw{{0, 1}, {1, 0}};
    return sw * n * m * inverse_unimodular(n) * sw;
}

/* ---- witnesses ------------------------------------------------------------- */

char const* condition_label(Prop1Condition c)
{
    switch (c) {
    case Prop1Condition::TraceZero: return "a";
    case Prop1Condition::TraceOne: return "b";
    case Prop1Condition::NormOne: return "c";
    case Prop1Condition::NormMinusOne: return "d";
    }
    return "?";
}

namespace {

template <typename T>
T tabs(T x) { return x < 0 ? -x : x; }

template <typename T>
T egcd(T a, T b, T& x, T& y)
{
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return tabs(a);
    }
    T x1, y1;
    T g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

template <typename T>
T floor_div_t(T a, T b)
{
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

template <typename T>
T ceil_div_t(T a, T b) { return -floor_div_t(-a, b); }

struct Cand {
    long a, b, c, d;
};

bool better(Cand const& x, std::optional<Cand> const& y)
{
    if (!y)
        return true;
    long hx = std::max({std::labs(x.a), std::labs(x.b), std::labs(x.c), std::labs(x.d)});
    long hy = std::max({std::labs(y->a), std::labs(y->b), std::labs(y->c), std::labs(y->d)});
    if (hx != hy)
        return hx < hy;
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y->a, y->b, y->c, y->d);
}

template <typename T>
std::array<std::optional<Cand>, 4> search(T Nn, T Tt, T Q2, long H)
{
    std::array<std::optional<Cand>, 4> best;
    for (long c = -H; c <= H; ++c)
        for (long d = -H; d <= H; ++d) {
            T x, y;
            if (egcd<T>(d, -c, x, y) != 1)  // x d - y c = 1 -> (a, b) = (x, y)
                continue;
            for (int e : {1, -1}) {
                T a0 = x * e, b0 = y * e;
                /* a = a0 + k c, b = b0 + k d with |a|, |b| <= H */
                T klo = -(T(1) << 60), khi = T(1) << 60;
                auto clamp = [&](T base, long step) {
                    if (step == 0) {
                        if (tabs(base) > H)
                            khi = klo - 1;
                        return;
                    }
                    T s = step;
                    T lo = step > 0 ? ceil_div_t<T>(-H - base, s) : ceil_div_t<T>(H - base, s);
                    T hi = step > 0 ? floor_div_t<T>(H - base, s) : floor_div_t<T>(-H - base, s);
                    klo = std::max(klo, lo);
                    khi = std::min(khi, hi);
                };
                clamp(a0, c);
                clamp(b0, d);
                for (T k = klo; k <= khi; ++k) {
                    T a = a0 + k * c, b = b0 + k * d;
                    T num = 2 * a * c * Nn + (a * d + b * c) * Tt + 2 * b * d * Q2;
                    T den = c * c * Nn + c * d * Tt + d * d * Q2;
                    T na = a * a * Nn + a * b * Tt + b * b * Q2;
                    Cand cand{static_cast<long>(a), static_cast<long>(b), c, d};
                    if (num == 0 && better(cand, best[0]))
                        best[0] = cand;
                    if (num == den && better(cand, best[1]))
                        best[1] = cand;
                    if (na == den && better(cand, best[2]))
                        best[2] = cand;
                    if (na == -den && better(cand, best[3]))
                        best[3] = cand;
                }
            }
        }
    return best;
}

}  // namespace

Prop1Report prop1_witness_search(QuadraticSurd const& s0, long height_bound)
{
    QuadraticSurd s = make_surd(s0.P, s0.Q, s0.D);
    Prop1Report rep;
    rep.height_bound = height_bound;
    if (height_bound < 1)
        return rep;
    Int Tt = 2 * s.P * s.Q, Nn = s.P * s.P - s.D, Q2 = s.Q * s.Q;
    std::array<std::optional<Cand>, 4> found;
    Int lim = Int(1) << 40;
    if (abs(Tt) < lim && abs(Nn) < lim && Q2 < lim && height_bound < (1L << 12)) {
        found = search<__int128>(static_cast<__int128>(Nn.get_si()), static_cast<__int128>(Tt.get_si()),
                                 static_cast<__int128>(Q2.get_si()), height_bound);
    } else {
        throw Error(ErrorCode::InvalidArgument, "surd coefficients too large for witness search");
    }
    QuadNum alpha = s.value();
    for (std::size_t i = 0; i < 4; ++i) {
        if (!found[i])
            continue;
        Cand const& c = *found[i];
        auto q = [&](long v) { return quad(alpha, Rat(v)); };
        QuadNum omega = (q(c.a) * alpha + q(c.b)) / (q(c.c) * alpha + q(c.d));
        Prop1Witness w{c.a, c.b, c.c, c.d, omega, omega.trace(), omega.norm(),
                       Int(std::max({std::labs(c.a), std::labs(c.b), std::labs(c.c), std::labs(c.d)}))};
        Rat target[4] = {0, 1, 1, -1};
        Rat got = i < 2 ? w.trace : w.norm;
        Int dt = w.a * w.d - w.b * w.c;
        if (got != target[i] || abs(dt) != 1)
            throw Error(ErrorCode::StructureViolation, "witness failed exact re-verification");
        rep.witnesses[i] = w;
    }
    return rep;
}

}  // namespace klein
