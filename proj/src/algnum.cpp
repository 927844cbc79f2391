#include "klein/algnum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace klein {

namespace {

using RatPoly = std::vector<Rat>;  // constant term first

void trim(RatPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

RatPoly to_rat(IntPolynomial const& f)
{
    RatPoly p;
    for (auto const& c : f.coeffs())
        p.emplace_back(c);
    return p;
}

IntPolynomial to_int_primitive(RatPoly p)
{
    trim(p);
    Int den = 1;
    for (auto const& c : p)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntVector c;
    for (auto const& x : p) {
        Rat y = x * den;
        c.push_back(y.get_num());
    }
    return IntPolynomial(c).normalized();
}

RatPoly poly_rem(RatPoly a, RatPoly const& b)
{
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= q * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

RatPoly poly_quo(RatPoly a, RatPoly const& b)
{
    trim(a);
    if (a.size() < b.size())
        return {};
    RatPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    return q;
}

RatPoly poly_gcd(RatPoly a, RatPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Rat eval(RatPoly const& p, Rat const& x)
{
    Rat r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        r = r * x + *it;
    return r;
}

std::vector<RatPoly> sturm_sequence(RatPoly const& f)
{
    std::vector<RatPoly> s{f};
    RatPoly d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(f[i] * Rat(static_cast<long>(i)));
    trim(d);
    s.push_back(d);
    while (!s.back().empty() && s.back().size() > 1) {
        RatPoly r = poly_rem(s[s.size() - 2], s.back());
        for (auto& c : r)
            c = -c;
        if (r.empty())
            break;
        s.push_back(r);
    }
    return s;
}

int sign_changes(std::vector<RatPoly> const& s, Rat const& x)
{
    int changes = 0, last = 0;
    for (auto const& p : s) {
        int v = sgn(eval(p, x));
        if (v == 0)
            continue;
        if (last != 0 && v != last)
            ++changes;
        last = v;
    }
    return changes;
}

/* roots of a polynomial without rational roots in (lo, hi] */
void bisect_isolate(std::vector<RatPoly> const& s, Rat lo, Rat hi, int vlo, int vhi,
                    std::vector<RatInterval>& out)
{
    int count = vlo - vhi;
    if (count == 0)
        return;
    if (count == 1) {
        out.push_back({lo, hi});
        return;
    }
    Rat mid = (lo + hi) / 2;
    int vmid = sign_changes(s, mid);
    bisect_isolate(s, lo, mid, vlo, vmid, out);
    bisect_isolate(s, mid, hi, vmid, vhi, out);
}

Rat round_nearest(Rat const& x)
{
    Rat y = x + Rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return Rat(q);
}

RatInterval imul(RatInterval const& a, RatInterval const& b)
{
    Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RatInterval eval_interval(RatVector const& c, RatInterval const& x)
{
    RatInterval r{0, 0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = imul(r, x);
        r.lo += *it;
        r.hi += *it;
    }
    return r;
}

void require_same_field(FieldElement const& a, FieldElement const& b)
{
    if (a.field() != b.field())
        throw Error(ErrorCode::InvalidArgument, "field elements from different fields");
}

RatVector reduce_mod(RatVector c, IntPolynomial const& f)
{
    std::size_t n = static_cast<std::size_t>(f.degree());
    for (std::size_t k = c.size(); k-- > n;) {
        Rat t = c[k];
        if (t == 0)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            c[k - n + i] -= t * f.coeff(static_cast<int>(i));
        c[k] = 0;
    }
    c.resize(n, Rat(0));
    return c;
}

}  // namespace

Rat dyadic_width(unsigned bits)
{
    Int den = 1;
    den <<= bits;
    return ratio(Int(1), den);
}

std::vector<RatInterval> isolate_real_roots(IntPolynomial const& f)
{
    if (f.degree() < 1)
        return {};
    RatPoly fp = to_rat(f);
    RatPoly df;
    for (std::size_t i = 1; i < fp.size(); ++i)
        df.push_back(fp[i] * Rat(static_cast<long>(i)));
    trim(df);
    if (poly_gcd(fp, df).size() > 1)
        throw Error(ErrorCode::NotSquarefree, f.to_string());

    /* divide out rational roots so every dyadic bisection point is a non-root */
    std::vector<Rat> rr = rational_roots(f);
    RatPoly g = fp;
    for (auto const& r : rr)
        g = poly_quo(g, RatPoly{-r, Rat(1)});

    std::vector<RatInterval> out;
    if (g.size() > 1) {
        Rat bound = 0;
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            Rat q = abs(g[i] / g.back());
            if (q > bound)
                bound = q;
        }
        bound += 1;
        auto s = sturm_sequence(g);
        Rat lo = -bound, hi = bound;
        bisect_isolate(s, lo, hi, sign_changes(s, lo), sign_changes(s, hi), out);
        IntPolynomial gi = to_int_primitive(g);
        /* keep irrational intervals away from the exact rational roots */
        for (auto& iv : out) {
            auto hits = [&] {
                return std::any_of(rr.begin(), rr.end(), [&](Rat const& r) { return iv.contains(r); });
            };
            while (hits())
                iv = refine_root(gi, iv, iv.width() / 4);
        }
    }
    for (auto const& r : rr)
        out.push_back({r, r});
    std::sort(out.begin(), out.end(), [](RatInterval const& a, RatInterval const& b) { return a.lo < b.lo; });
    return out;
}

RatInterval refine_root(IntPolynomial const& f, RatInterval iv, Rat const& width)
{
    if (iv.lo == iv.hi)
        return iv;
    int slo = f.sign_at(iv.lo);
    if (slo == 0)
        return {iv.lo, iv.lo};
    if (f.sign_at(iv.hi) == 0)
        return {iv.hi, iv.hi};
    while (iv.width() > width) {
        Rat mid = iv.mid();
        int sm = f.sign_at(mid);
        if (sm == 0)
            return {mid, mid};
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

/* ---- AlgebraicReal ------------------------------------------------------- */

AlgebraicReal::AlgebraicReal(IntPolynomial minpoly, RatInterval interval)
    : minpoly_(std::move(minpoly)), interval_(std::move(interval))
{
}

AlgebraicReal AlgebraicReal::refined(Rat const& width) const
{
    return AlgebraicReal(minpoly_, refine_root(minpoly_, interval_, width));
}

int AlgebraicReal::sign() const
{
    RatInterval iv = interval_;
    while (iv.contains_zero()) {
        if (iv.lo == iv.hi)
            return 0;
        if (minpoly_.sign_at(Rat(0)) == 0 && minpoly_.degree() == 1)
            return 0;
        iv = refine_root(minpoly_, iv, iv.width() / 4);
    }
    return iv.lo > 0 ? 1 : -1;
}

/* ---- NumberField --------------------------------------------------------- */

namespace {
std::atomic<unsigned> working_bits{default_precision_bits};
}

unsigned working_precision() { return working_bits.load(); }

void set_working_precision(unsigned bits)
{
    if (bits < 16 || bits > 4096)
        throw Error(ErrorCode::InvalidArgument, "precision must be between 16 and 4096 bits");
    working_bits = bits;
}

NumberField::NumberField(IntPolynomial f, std::size_t root_index, unsigned precision_bits)
{
    int d = f.degree();
    if (d != 2 && d != 3)
        throw Error(ErrorCode::UnsupportedDimension, "number fields of degree 2 or 3 only");
    if (!f.is_monic())
        throw Error(ErrorCode::InvalidArgument, "field polynomial must be monic: " + f.to_string());
    if (!is_irreducible(f))
        throw Error(ErrorCode::ReduciblePolynomial, f.to_string());
    auto roots = isolate_real_roots(f);
    if (roots.size() != static_cast<std::size_t>(d))
        throw Error(ErrorCode::NotTotallyReal, f.to_string());
    if (root_index >= roots.size())
        throw Error(ErrorCode::InvalidArgument, "root index out of range");

    auto data = std::make_shared<Data>();
    data->f = f;
    data->degree = static_cast<std::size_t>(d);
    data->root_index = root_index;
    if (precision_bits == 0)
        precision_bits = working_precision();
    data->precision_bits = precision_bits;
    Rat w = dyadic_width(precision_bits);
    data->order.push_back(root_index);
    for (std::size_t p = 0; p < roots.size(); ++p)
        if (p != root_index)
            data->order.push_back(p);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        RatInterval iv = refine_root(f, roots[data->order[k]], w);
        data->embedded_roots.push_back(iv);
        data->root_doubles.push_back(iv.approx());
    }
    data_ = std::move(data);
}

std::size_t NumberField::embedding_at_sorted(std::size_t p) const
{
    for (std::size_t k = 0; k < data_->order.size(); ++k)
        if (data_->order[k] == p)
            return k;
    throw Error(ErrorCode::InvalidArgument, "no such root position");
}

bool operator==(NumberField const& a, NumberField const& b)
{
    return a.data_ == b.data_ || (a.poly() == b.poly() && a.root_index() == b.root_index());
}

/* ---- FieldElement -------------------------------------------------------- */

FieldElement::FieldElement(NumberField field)
    : field_(std::move(field)), coords_(field_.degree(), Rat(0))
{
}

FieldElement::FieldElement(NumberField field, RatVector coords)
    : field_(std::move(field)), coords_(std::move(coords))
{
    if (coords_.size() > field_.degree())
        coords_ = reduce_mod(std::move(coords_), field_.poly());
    coords_.resize(field_.degree(), Rat(0));
}

FieldElement FieldElement::rational(NumberField const& field, Rat const& q)
{
    FieldElement e(field);
    e.coords_[0] = q;
    return e;
}

FieldElement FieldElement::theta(NumberField const& field)
{
    FieldElement e(field);
    e.coords_[1] = 1;
    return e;
}

bool FieldElement::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](Rat const& c) { return c == 0; });
}

bool FieldElement::is_rational() const
{
    return std::all_of(coords_.begin() + 1, coords_.end(), [](Rat const& c) { return c == 0; });
}

FieldElement operator+(FieldElement const& a, FieldElement const& b)
{
    require_same_field(a, b);
    RatVector c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += b.coords_[i];
    return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(FieldElement const& a)
{
    RatVector c = a.coords_;
    for (auto& x : c)
        x = -x;
    return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(FieldElement const& a, FieldElement const& b) { return a + (-b); }

FieldElement operator*(FieldElement const& a, FieldElement const& b)
{
    require_same_field(a, b);
    std::size_t n = a.coords_.size();
    RatVector c(2 * n - 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coords_[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            c[i + j] += a.coords_[i] * b.coords_[j];
    }
    return FieldElement(a.field_, reduce_mod(std::move(c), a.field_.poly()));
}

FieldElement operator*(Rat const& q, FieldElement const& a)
{
    RatVector c = a.coords_;
    for (auto& x : c)
        x *= q;
    return FieldElement(a.field_, std::move(c));
}

bool operator==(FieldElement const& a, FieldElement const& b)
{
    return a.field_ == b.field_ && a.coords_ == b.coords_;
}

std::string FieldElement::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        Rat const& c = coords_[i];
        if (c == 0)
            continue;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Rat a = abs(c);
        if (i == 0 || a != 1)
            os << a.get_str() << (i > 0 ? "*" : "");
        if (i == 1)
            os << "t";
        else if (i > 1)
            os << "t^" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

FieldElement fe_add(FieldElement const& a, FieldElement const& b) { return a + b; }
FieldElement fe_mul(FieldElement const& a, FieldElement const& b) { return a * b; }

FieldElement fe_inv(FieldElement const& a)
{
    if (a.is_zero())
        throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    RatVector e(a.field().degree(), Rat(0));
    e[0] = 1;
    return FieldElement(a.field(), solve(multiplication_matrix(a), e));
}

FieldElement fe_pow(FieldElement const& a, long e)
{
    FieldElement base = e < 0 ? fe_inv(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FieldElement r = FieldElement::rational(a.field(), 1);
    while (k) {
        if (k & 1)
            r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

RatMatrix multiplication_matrix(FieldElement const& a)
{
    std::size_t n = a.field().degree();
    RatMatrix m(n, n);
    FieldElement t = FieldElement::theta(a.field());
    FieldElement cur = a;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = cur.coords()[i];
        cur = cur * t;
    }
    return m;
}

Rat trace(FieldElement const& a)
{
    RatMatrix m = multiplication_matrix(a);
    Rat t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        t += m(i, i);
    return t;
}

Rat norm(FieldElement const& a) { return det(multiplication_matrix(a)); }

IntPolynomial minimal_polynomial(FieldElement const& a)
{
    if (a.is_rational()) {
        Rat q = a.coords()[0];
        return IntPolynomial(IntVector{-q.get_num(), q.get_den()});
    }
    /* Faddeev-LeVerrier over Q; the degree is prime, so the charpoly of a
     * non-rational element is its minimal polynomial */
    RatMatrix m = multiplication_matrix(a);
    std::size_t n = m.rows();
    RatPoly c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix mk = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix am = m * mk;
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        Rat ck = -tr / Rat(static_cast<long>(k));
        c[n - k] = ck;
        mk = am;
        for (std::size_t i = 0; i < n; ++i)
            mk(i, i) += ck;
    }
    return to_int_primitive(c);
}

RatInterval embed(FieldElement const& a, std::size_t k, Rat const& width)
{
    NumberField const& f = a.field();
    if (k >= f.degree())
        throw Error(ErrorCode::InvalidArgument, "embedding index out of range");
    if (a.is_rational())
        return {a.coords()[0], a.coords()[0]};
    RatInterval root = f.root_interval(k);
    for (;;) {
        RatInterval v = eval_interval(a.coords(), root);
        if (v.width() <= width)
            return v;
        root = refine_root(f.poly(), root, root.width() / 256);
    }
}

double embed_approx(FieldElement const& a, std::size_t k)
{
    double r = a.field().root_approx(k), v = 0;
    auto const& c = a.coords();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * r + it->get_d();
    return v;
}

int embedding_sign(FieldElement const& a, std::size_t k)
{
    if (a.is_zero())
        return 0;
    auto const& c = a.coords();
    /* floating filter: accept the sign when it dominates a generous bound on
     * the accumulated error */
    double r = a.field().root_approx(k), v = 0, mag = 0, rp = 1;
    for (auto const& x : c) {
        double t = x.get_d() * rp;
        v += t;
        mag += std::fabs(t);
        rp *= r;
    }
    if (std::isfinite(v) && std::isfinite(mag) && mag > 1e-250 && std::fabs(v) > 1e-9 * mag)
        return v > 0 ? 1 : -1;
    /* nonzero elements have nonzero embeddings, so refinement terminates */
    RatInterval root = a.field().root_interval(k);
    for (;;) {
        RatInterval iv = eval_interval(c, root);
        if (iv.lo > 0)
            return 1;
        if (iv.hi < 0)
            return -1;
        root = refine_root(a.field().poly(), root, root.width() / 256);
    }
}

AlgebraicReal as_algebraic_real(FieldElement const& a, std::size_t k)
{
    IntPolynomial p = minimal_polynomial(a);
    auto roots = isolate_real_roots(p);
    Rat w = dyadic_width(16);
    for (;;) {
        RatInterval v = embed(a, k, w);
        std::size_t hits = 0, which = 0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            roots[i] = refine_root(p, roots[i], w);
            if (roots[i].lo <= v.hi && v.lo <= roots[i].hi) {
                ++hits;
                which = i;
            }
        }
        if (hits == 1)
            return AlgebraicReal(p, roots[which]);
        w /= 256;
    }
}

namespace {

FieldElement eval_at(IntPolynomial const& f, FieldElement const& g)
{
    FieldElement r(g.field());
    for (int i = f.degree(); i >= 0; --i)
        r = r * g + FieldElement::rational(g.field(), Rat(f.coeff(i)));
    return r;
}

}  // namespace

std::size_t locate_conjugate(FieldElement const& g, std::size_t k)
{
    NumberField const& f = g.field();
    if (!eval_at(f.poly(), g).is_zero())
        throw Error(ErrorCode::InvalidArgument, "element is not a root of the field polynomial");
    Rat w = dyadic_width(8);
    for (;;) {
        RatInterval v = embed(g, k, w);
        std::size_t hits = 0, which = 0;
        for (std::size_t j = 0; j < f.degree(); ++j) {
            RatInterval r = refine_root(f.poly(), f.root_interval(j), w);
            if (r.lo <= v.hi && v.lo <= r.hi) {
                ++hits;
                which = j;
            }
        }
        if (hits == 1)
            return which;
        w /= 256;
    }
}

FieldElement apply_automorphism(FieldElement const& a, FieldElement const& image)
{
    require_same_field(a, image);
    FieldElement r(a.field());
    auto const& c = a.coords();
    for (std::size_t i = c.size(); i-- > 0;)
        r = r * image + FieldElement::rational(a.field(), c[i]);
    return r;
}

std::vector<FieldElement> automorphisms(NumberField const& field)
{
    std::vector<FieldElement> out{FieldElement::theta(field)};
    IntPolynomial const& f = field.poly();
    if (field.degree() == 2) {
        out.push_back(FieldElement(field, RatVector{Rat(-f.coeff(1)), Rat(-1)}));
        return out;
    }
    Int disc = discriminant(f);
    if (!is_square(disc))
        return out;
    Int d = sqrt(disc);
    /* g(sigma_i(theta)) = sigma_{pi(i)}(theta) for a 3-cycle pi; solve the
     * Vandermonde system on approximate roots, snap to (1/d)Z and verify */
    for (std::size_t j : {std::size_t(1), std::size_t(2)}) {
        std::size_t perm[3] = {0, j, 3 - j};
        std::size_t cyc[3] = {perm[1], perm[2], perm[0]};  // pi(perm[i]) = perm[i+1]
        bool done = false;
        for (unsigned bits = 64; bits <= 8192 && !done; bits *= 2) {
            Rat w = dyadic_width(bits);
            std::vector<Rat> r(3);
            for (std::size_t i = 0; i < 3; ++i)
                r[i] = refine_root(f, field.root_interval(i), w).mid();
            RatMatrix v(3, 3);
            RatVector rhs(3);
            for (std::size_t i = 0; i < 3; ++i) {
                Rat p = 1;
                for (std::size_t e = 0; e < 3; ++e) {
                    v(perm[i], e) = p;
                    p *= r[perm[i]];
                }
                rhs[perm[i]] = r[cyc[i]];
            }
            RatVector c = solve(v, rhs);
            for (auto& x : c)
                x = round_nearest(x * Rat(d)) / Rat(d);
            FieldElement g(field, c);
            if (g != out[0] && eval_at(f, g).is_zero() && locate_conjugate(g, 0) == j) {
                out.push_back(g);
                done = true;
            }
        }
        if (!done)
            throw Error(ErrorCode::StructureViolation, "automorphism recovery failed for " + f.to_string());
    }
    return out;
}

bool is_galois(NumberField const& field) { return automorphisms(field).size() == field.degree(); }

/* ---- FullModule ---------------------------------------------------------- */

FullModule::FullModule(NumberField field, Int denominator, IntMatrix hnf)
    : field_(std::move(field)), den_(std::move(denominator)), hnf_(std::move(hnf))
{
}

std::vector<FieldElement> FullModule::basis() const
{
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < hnf_.rows(); ++i) {
        RatVector c;
        for (std::size_t j = 0; j < hnf_.cols(); ++j) {
            Rat x = ratio(hnf_(i, j), den_);
            c.push_back(x);
        }
        out.emplace_back(field_, std::move(c));
    }
    return out;
}

RatMatrix FullModule::basis_matrix() const
{
    RatMatrix b(hnf_.rows(), hnf_.cols());
    for (std::size_t i = 0; i < hnf_.rows(); ++i)
        for (std::size_t j = 0; j < hnf_.cols(); ++j) {
            b(i, j) = ratio(hnf_(i, j), den_);
        }
    return b;
}

RatVector FullModule::coordinates(FieldElement const& x) const
{
    return solve(basis_matrix().transpose(), x.coords());
}

bool FullModule::contains(FieldElement const& x) const
{
    for (auto const& c : coordinates(x))
        if (c.get_den() != 1)
            return false;
    return true;
}

bool operator==(FullModule const& a, FullModule const& b)
{
    return a.field_ == b.field_ && a.den_ == b.den_ && a.hnf_ == b.hnf_;
}

FullModule module_from_basis(std::vector<FieldElement> const& elems)
{
    if (elems.empty())
        throw Error(ErrorCode::RankDeficient, "empty basis");
    NumberField const& field = elems[0].field();
    std::size_t n = field.degree();
    if (elems.size() < n)
        throw Error(ErrorCode::RankDeficient, "too few generators");
    Int den = 1;
    for (auto const& e : elems) {
        require_same_field(elems[0], e);
        for (auto const& c : e.coords())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<IntVector> rows;
    for (auto const& e : elems) {
        IntVector r;
        for (auto const& c : e.coords()) {
            Rat y = c * Rat(den);
            r.push_back(y.get_num());
        }
        rows.push_back(r);
    }
    IntMatrix h = hnf_row(rows);
    if (h.rows() != n)
        throw Error(ErrorCode::RankDeficient, "generators do not span the field");
    Int g = den;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h(i, j).get_mpz_t());
    if (g != 1) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                h(i, j) /= g;
        den /= g;
    }
    return FullModule(field, den, h);
}

FullModule scale(FieldElement const& g, FullModule const& m)
{
    if (g.is_zero())
        throw Error(ErrorCode::RankDeficient, "scaling by zero");
    std::vector<FieldElement> b;
    for (auto const& x : m.basis())
        b.push_back(g * x);
    return module_from_basis(b);
}

FullModule apply_automorphism(FullModule const& m, FieldElement const& image)
{
    std::vector<FieldElement> b;
    for (auto const& x : m.basis())
        b.push_back(apply_automorphism(x, image));
    return module_from_basis(b);
}

bool is_unit_of_module(FieldElement const& e, FullModule const& m)
{
    if (e.is_zero())
        return false;
    Rat nm = norm(e);
    if (nm != 1 && nm != -1)
        return false;
    return scale(e, m) == m;
}

FullModule colon_module(FullModule const& m, FullModule const& n)
{
    NumberField const& field = m.field();
    std::size_t d = field.degree();
    RatMatrix binv = inverse(m.basis_matrix());
    /* x n_j in M  <=>  X R_{n_j} B_M^{-1} integral, R_b = M_b^T */
    std::vector<RatVector> cols;
    for (auto const& nj : n.basis()) {
        RatMatrix t = multiplication_matrix(nj).transpose() * binv;
        for (std::size_t c = 0; c < d; ++c) {
            RatVector v;
            for (std::size_t r = 0; r < d; ++r)
                v.push_back(t(r, c));
            cols.push_back(v);
        }
    }
    Int den = 1;
    for (auto const& v : cols)
        for (auto const& x : v)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<IntVector> rows;
    for (auto const& v : cols) {
        IntVector r;
        for (auto const& x : v) {
            Rat y = x * Rat(den);
            r.push_back(y.get_num());
        }
        rows.push_back(r);
    }
    IntMatrix h = hnf_row(rows);
    RatMatrix hinv = inverse_rat(h);
    std::vector<FieldElement> dual;
    for (std::size_t i = 0; i < d; ++i) {
        RatVector c;
        for (std::size_t j = 0; j < d; ++j)
            c.push_back(Rat(den) * hinv(j, i));
        dual.emplace_back(field, c);
    }
    return module_from_basis(dual);
}

FullModule multiplier_ring(FullModule const& m) { return colon_module(m, m); }

}  // namespace klein
