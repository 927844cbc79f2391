#include "klein/sym3d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace klein {

namespace {

using FEVec = std::array<FieldElement, 3>;

FEVec mul(IntMatrix const& g, FEVec const& v)
{
    NumberField const& k = v[0].field();
    FEVec out{FieldElement(k), FieldElement(k), FieldElement(k)};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (g(i, j) != 0)
                out[i] = out[i] + Rat(g(i, j)) * v[j];
    return out;
}

std::string show(IntMatrix const& m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

IntVector cross(IntVector const& a, IntVector const& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vec(IntVector const& v)
{
    return std::all_of(v.begin(), v.end(), [](Int const& x) { return x == 0; });
}

Int max_norm(IntVector const& v)
{
    Int m = 0;
    for (auto const& x : v)
        if (abs(x) > m)
            m = abs(x);
    return m;
}

IntVector add(IntVector a, IntVector const& b, Int const& s = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += s * b[i];
    return a;
}

/* eigenvalue of a commuting matrix on eigenvector 0 */
FieldElement unit_of(IntMatrix const& e, GeoCF const& cf)
{
    return mul(e, cf.eigenvector)[0];
}

std::array<double, 3> log_vector(FieldElement const& u)
{
    std::array<double, 3> out;
    for (std::size_t k = 0; k < 3; ++k)
        out[k] = std::log(std::abs(embed_approx(u, k)));
    return out;
}

double norm2(std::array<double, 3> const& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

IntMatrix mat_pow(IntMatrix const& m, Int const& e)
{
    long k = e.get_si();
    if (k >= 0)
        return power(m, k);
    return power(inverse_unimodular(m), -k);
}

Cone cone_image(IntMatrix const& g, std::array<std::size_t, 3> const& sigma, GeoCF const& cf, Cone const& c)
{
    FieldElement mu = mul(g, cf.eigenvector)[0];
    Cone out;
    for (std::size_t k = 0; k < 3; ++k)
        out.s[sigma[k]] = c.s[k] * embedding_sign(mu, k);
    return out;
}

std::array<std::array<double, 3>, 3> inverse3(std::array<std::array<double, 3>, 3> const& m)
{
    std::array<std::array<double, 3>, 3> r;
    double d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
        }
    return r;
}

DirichletGroup dirichlet_impl(GeoCF const& cf, long depth)
{
    IntMatrix const& a = cf.a;
    std::vector<IntMatrix> basis = commutant_lattice(a);
    std::vector<IntVector> vecs;
    for (auto const& m : basis)
        vecs.push_back(m.vectorize());
    vecs = lll_reduce(vecs);
    std::vector<IntMatrix> red;
    for (auto const& v : vecs)
        red.push_back(IntMatrix::unvectorize(v, 3));

    long r = 0;
    while ((2 * (r + 1) + 1) * (2 * (r + 1) + 1) * (2 * (r + 1) + 1) <= depth)
        ++r;

    struct Unit {
        IntMatrix m;
        std::array<double, 3> log;
    };
    std::vector<Unit> units;
    auto consider = [&](IntMatrix const& m) {
        Int d = det(m);
        if (d != 1 && d != -1)
            return;
        auto lv = log_vector(unit_of(m, cf));
        if (norm2(lv) < 1e-9)
            return;
        units.push_back({m, lv});
    };
    DirichletGroup out{-IntMatrix::identity(3),
                       {IntMatrix(), IntMatrix()},
                       basis,
                       {FieldElement(cf.field), FieldElement(cf.field)},
                       {},
                       0,
                       0,
                       0,
                       false};
    consider(a);
    /* shells of growing max-norm; two more shells once the rank is 2 */
    auto rank2 = [&] {
        for (auto const& u : units)
            if (std::abs(u.log[0] * units[0].log[1] - u.log[1] * units[0].log[0]) >
                1e-6 * norm2(u.log) * norm2(units[0].log))
                return true;
        return false;
    };
    long stop = r;
    for (long sh = 0; sh <= stop; ++sh) {
        for (long i = -sh; i <= sh; ++i)
            for (long j = -sh; j <= sh; ++j)
                for (long k = -sh; k <= sh; ++k) {
                    if (std::max({std::labs(i), std::labs(j), std::labs(k)}) != sh)
                        continue;
                    ++out.candidates;
                    consider(Int(i) * red[0] + Int(j) * red[1] + Int(k) * red[2]);
                }
        if (stop == r && rank2())
            stop = std::min(r, sh + 2);
    }
    out.units_found = units.size();
    if (units.empty())
        throw Error(ErrorCode::InsufficientDepth, "no unit of infinite order at depth " + std::to_string(depth));
    std::sort(units.begin(), units.end(), [](Unit const& x, Unit const& y) { return norm2(x.log) < norm2(y.log); });

    auto area = [](std::array<double, 3> const& x, std::array<double, 3> const& y) {
        return x[0] * y[1] - x[1] * y[0];
    };
    Unit u1 = units[0];
    std::optional<Unit> u2;
    for (auto const& u : units)
        if (std::abs(area(u1.log, u.log)) > 1e-6 * norm2(u1.log) * norm2(u.log)) {
            u2 = u;
            break;
        }
    if (!u2)
        throw Error(ErrorCode::InsufficientDepth,
                    "found units span rank 1 only at depth " + std::to_string(depth));

    auto reset = [&](Unit& u) { u.log = log_vector(unit_of(u.m, cf)); };
    /* absorb every unit: the group generated stays of rank 2 */
    for (auto const& x : units) {
        double det2 = area(u1.log, u2->log);
        double s = area(x.log, u2->log) / det2, t = area(u1.log, x.log) / det2;
        long q = 0;
        for (long d = 1; d <= 64 && q == 0; ++d)
            if (std::abs(d * s - std::round(d * s)) < 1e-6 && std::abs(d * t - std::round(d * t)) < 1e-6)
                q = d;
        if (q <= 1)
            continue;
        IntMatrix gens(3, 2);
        gens(0, 0) = q;
        gens(1, 1) = q;
        gens(2, 0) = static_cast<long>(std::llround(q * s));
        gens(2, 1) = static_cast<long>(std::llround(q * t));
        HnfWithTransform h = hnf_with_transform(gens);
        std::array<IntMatrix, 3> g{u1.m, u2->m, x.m};
        std::array<Unit, 2> next;
        for (std::size_t row = 0; row < 2; ++row) {
            IntMatrix m = IntMatrix::identity(3);
            for (std::size_t c = 0; c < 3; ++c)
                if (h.u(row, c) != 0)
                    m = m * mat_pow(g[c], h.u(row, c));
            next[row] = {m, {}};
            reset(next[row]);
        }
        u1 = next[0];
        u2 = next[1];
    }
    /* Lagrange reduction in log space */
    auto dotl = [](std::array<double, 3> const& x, std::array<double, 3> const& y) {
        return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    };
    for (int it = 0; it < 200; ++it) {
        if (norm2(u2->log) < norm2(u1.log))
            std::swap(u1, *u2);
        double mu = dotl(u1.log, u2->log) / dotl(u1.log, u1.log);
        long m = std::lround(mu);
        if (m == 0)
            break;
        u2->m = u2->m * mat_pow(u1.m, Int(-m));
        reset(*u2);
    }

    for (auto const* u : {&u1.m, &u2->m})
        if (!(*u * a == a * *u) || !is_unimodular(*u))
            throw Error(ErrorCode::StructureViolation, "unit does not commute with the operator");
    if (!(u1.m * u2->m == u2->m * u1.m))
        throw Error(ErrorCode::StructureViolation, "units do not commute");
    IntMatrix id = IntMatrix::identity(3);
    for (long p = -5; p <= 5; ++p)
        for (long q = -5; q <= 5; ++q) {
            if (p == 0 && q == 0)
                continue;
            IntMatrix m = mat_pow(u1.m, Int(p)) * mat_pow(u2->m, Int(q));
            if (m == id || m == -id)
                throw Error(ErrorCode::StructureViolation, "units are dependent");
        }
    out.generators = {u1.m, u2->m};
    out.units = {unit_of(u1.m, cf), unit_of(u2->m, cf)};
    out.log_vectors = {u1.log, u2->log};
    out.regulator = std::abs(area(u1.log, u2->log));
    return out;
}

IntMatrix columns(IntVector const& a, IntVector const& b, IntVector const& c)
{
    return IntMatrix::from_columns({a, b, c});
}

IntVector e(int i, int j = 0, int k = 0)
{
    return IntVector{Int(i), Int(j), Int(k)};
}

/* conjugator X with X g_plus X^-1 = F_k and the class data it certifies */
ClassWitness make_witness(int class_id, IntMatrix const& x, IntMatrix const& f, GeoCF const& cf)
{
    IntMatrix xi = inverse_unimodular(x);
    if (!(x * f * xi == canonical_matrix(class_id)))
        throw Error(ErrorCode::StructureViolation, "conjugator does not produce F" + std::to_string(class_id));
    FEVec xv = mul(x, cf.eigenvector);
    if (xv[0].is_zero())
        throw Error(ErrorCode::FirstCoordinateZero, "conjugated eigenvector has first coordinate zero");
    FieldElement inv = fe_inv(xv[0]);
    FEVec v{FieldElement::rational(cf.field, 1), xv[1] * inv, xv[2] * inv};
    auto tau = class_relation(class_id, v);
    if (!tau)
        throw Error(ErrorCode::StructureViolation, "class relation fails for class " + std::to_string(class_id));
    return ClassWitness{class_id, x, v[1], v[2], minimal_polynomial(v[1]), trace(v[1]), norm(v[1]), *tau};
}

}  // namespace

/* ---- symmetry test ------------------------------------------------------- */

SymmetryReport is_cf_symmetry(IntMatrix const& g, IntMatrix const& a)
{
    return is_cf_symmetry(g, geocf_from_operator(a));
}

SymmetryReport is_cf_symmetry(IntMatrix const& g, GeoCF const& cf)
{
    IntMatrix const& a = cf.a;
    if (!g.is_square() || g.n() != 3)
        throw Error(ErrorCode::UnsupportedDimension, "symmetry must be 3x3");
    Int d = det(g);
    if (d != 1 && d != -1)
        throw Error(ErrorCode::NotASymmetry, "det g = " + d.get_str());
    IntMatrix c = g * a * inverse_unimodular(g);
    IntMatrix comm = c * a - a * c;
    if (!comm.is_zero())
        throw Error(ErrorCode::NotASymmetry, "commutator [g a g^-1, a] = " + show(comm));

    SymmetryReport r;
    r.g = g;
    r.det = static_cast<int>(d.get_si());
    FEVec gv = mul(g, cf.eigenvector);
    auto auts = automorphisms(cf.field);
    bool found = false;
    for (std::size_t t = 0; t < auts.size() && !found; ++t) {
        bool ok = true;
        for (std::size_t i = 1; i < 3 && ok; ++i)
            ok = gv[i] == gv[0] * apply_automorphism(cf.eigenvector[i], auts[t]);
        if (!ok)
            continue;
        found = true;
        r.tau = t;
        for (std::size_t k = 0; k < 3; ++k)
            r.sigma[k] = locate_conjugate(auts[t], k);
    }
    if (!found) {
        if (auts.size() == 1)
            throw Error(ErrorCode::NonGaloisObstruction, "symmetry moves eigenlines but the field has no automorphism");
        throw Error(ErrorCode::StructureViolation, "no automorphism matches the eigenline permutation");
    }
    r.kind = r.tau == 0 ? SymKind::Dirichlet : SymKind::Palindromic;
    if ((r.kind == SymKind::Dirichlet) != (g * a == a * g))
        throw Error(ErrorCode::StructureViolation, "Dirichlet kind disagrees with commutation");
    if (r.kind == SymKind::Palindromic)
        r.order3 = order3_analysis(r, cf);
    return r;
}

Cone map_cone(SymmetryReport const& r, GeoCF const& cf, Cone const& c) { return cone_image(r.g, r.sigma, cf, c); }

std::pair<IntMatrix, IntMatrix> g_plus_minus(IntMatrix const& g)
{
    Int d = det(g);
    IntMatrix p = d * g;
    return {p, -p};
}

Order3Data order3_analysis(IntMatrix const& g, IntMatrix const& a)
{
    GeoCF cf = geocf_from_operator(a);
    SymmetryReport r = is_cf_symmetry(g, cf);
    if (r.kind != SymKind::Palindromic)
        throw Error(ErrorCode::InvalidArgument, "order-3 analysis needs a palindromic symmetry");
    return *r.order3;
}

Order3Data order3_analysis(SymmetryReport const& r, GeoCF const& cf)
{
    IntMatrix const& g = r.g;
    IntMatrix id = IntMatrix::identity(3);
    Order3Data o;
    IntMatrix g3 = g * g * g;
    if (g3 == id)
        o.g_cubed_sign = 1;
    else if (g3 == -id)
        o.g_cubed_sign = -1;
    else
        throw Error(ErrorCode::StructureViolation, "g^3 is not +-I");
    if (o.g_cubed_sign != r.det)
        throw Error(ErrorCode::StructureViolation, "g^3 sign differs from det g");
    std::size_t cyc = 0;
    for (std::size_t k = 0; k < 3; ++k)
        cyc += r.sigma[k] != k;
    if (cyc != 3)
        throw Error(ErrorCode::StructureViolation, "eigenline permutation is not a 3-cycle");

    auto kp = integer_kernel(g - id), km = integer_kernel(g + id);
    if (kp.empty() == km.empty())
        throw Error(ErrorCode::StructureViolation, "g has eigenvalues +1 and -1 together, or neither");
    if ((kp.empty() ? -1 : 1) != o.g_cubed_sign || (kp.empty() ? km : kp).size() != 1)
        throw Error(ErrorCode::StructureViolation, "unexpected eigenspace of g");
    IntVector line = primitive_part((kp.empty() ? km : kp)[0]);
    for (auto const& x : line)
        if (x != 0) {
            if (x < 0)
                for (auto& y : line)
                    y = -y;
            break;
        }
    IntMatrix e = Int(o.g_cubed_sign) * id;
    auto kn = integer_kernel(g.transpose() - e);
    if (kn.size() != 1)
        throw Error(ErrorCode::StructureViolation, "invariant plane is not unique");
    IntVector n = primitive_part(kn[0]);
    Int pairing = dot(n, line);
    if (pairing == 0)
        throw Error(ErrorCode::StructureViolation, "invariant line lies in the invariant plane");
    if (pairing < 0)
        for (auto& y : n)
            y = -y;
    o.invariant_line = line;
    o.plane_normal = n;
    std::tie(o.g_plus, o.g_minus) = g_plus_minus(g);
    if (!(o.g_plus * line == line))
        throw Error(ErrorCode::StructureViolation, "g_plus does not fix the invariant line");

    o.fixed_cone = locate_cone(line, cf);
    Cone start = o.fixed_cone;
    for (Cone const& c : all_cones())
        if (c != o.fixed_cone && c != -o.fixed_cone) {
            start = c;
            break;
        }
    Cone cur = start;
    do {
        o.minus_orbit.push_back(cur);
        cur = cone_image(o.g_minus, r.sigma, cf, cur);
    } while (cur != start && o.minus_orbit.size() < 8);
    return o;
}

DirichletGroup dirichlet_group(IntMatrix const& a, long search_depth)
{
    return dirichlet_impl(geocf_from_operator(a), search_depth);
}

/* ---- palindromic search -------------------------------------------------- */

IntMatrix canonical_matrix(int class_id)
{
    switch (class_id) {
    case 1: return IntMatrix{{1, 0, 0}, {0, 0, 1}, {0, -1, -1}};
    case 2: return IntMatrix{{1, 0, 0}, {0, 0, 1}, {1, -1, -1}};
    case 3: return IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    case 4: return IntMatrix{{0, 0, 1}, {-1, 0, 0}, {0, -1, 0}};
    }
    throw Error(ErrorCode::InvalidArgument, "class id must be 1..4");
}

PalindromeCertificate find_palindromic(IntMatrix const& a, long depth)
{
    GeoCF cf = geocf_from_operator(a);
    PalindromeCertificate cert;
    auto auts = automorphisms(cf.field);
    if (auts.size() == 1) {
        cert.status = SearchStatus::NotFound;
        cert.reason = "the eigenvalue field is not normal, so no symmetry can move an eigenline";
        return cert;
    }
    DirichletGroup dg = [&] {
        try {
            return dirichlet_impl(cf, depth);
        } catch (Error const& e) {
            if (e.code() != ErrorCode::InsufficientDepth)
                throw;
            return DirichletGroup{IntMatrix(), {}, {}, {FieldElement(cf.field), FieldElement(cf.field)}, {}, 0, 0, 0, false};
        }
    }();
    if (dg.torsion.rows() == 0) {
        cert.status = SearchStatus::Inconclusive;
        cert.reason = "unit group not found at this depth";
        return cert;
    }

    /* a unit translate of any solution has its log vector in the cell */
    std::array<double, 3> hi{0, 0, 0};
    for (int s = 0; s <= 1; ++s)
        for (int t = 0; t <= 1; ++t)
            for (std::size_t k = 0; k < 3; ++k)
                hi[k] = std::max(hi[k], s * dg.log_vectors[0][k] + t * dg.log_vectors[1][k]);
    std::array<double, 3> bound;
    for (std::size_t k = 0; k < 3; ++k)
        bound[k] = std::exp(hi[k]) * (1 + 1e-6) + 1e-9;

    FullModule m = module_from_basis({cf.eigenvector[0], cf.eigenvector[1], cf.eigenvector[2]});
    bool complete = true;
    long reached = -1;
    for (std::size_t t = 1; t < auts.size(); ++t) {
        FullModule tm = apply_automorphism(m, auts[t]);
        FullModule colon = colon_module(m, tm);
        auto b = colon.basis();
        {
            /* LLL in scaled Minkowski coordinates; the unit columns carry the transform */
            std::vector<IntVector> rows;
            for (std::size_t i = 0; i < 3; ++i) {
                IntVector row;
                for (std::size_t k = 0; k < 3; ++k)
                    row.push_back(Int(std::ldexp(embed_approx(b[i], k) / bound[k], 40)));
                for (std::size_t j = 0; j < 3; ++j)
                    row.push_back(Int(i == j ? 1 : 0));
                rows.push_back(row);
            }
            rows = lll_reduce(rows);
            std::vector<FieldElement> nb;
            for (auto const& row : rows)
                nb.push_back(Rat(row[3]) * b[0] + Rat(row[4]) * b[1] + Rat(row[5]) * b[2]);
            b = nb;
        }
        std::array<std::array<double, 3>, 3> mk;
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < 3; ++i)
                mk[k][i] = embed_approx(b[i], k);
        auto inv = inverse3(mk);
        std::array<long, 3> lim;
        long lmax = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            double s = 0;
            for (std::size_t k = 0; k < 3; ++k)
                s += std::abs(inv[i][k]) * bound[k];
            lim[i] = static_cast<long>(std::ceil(s * (1 + 1e-9))) + 1;
            lmax = std::max(lmax, lim[i]);
        }
        for (long r = 0; r <= lmax; ++r) {
            for (long c0 = -std::min(r, lim[0]); c0 <= std::min(r, lim[0]); ++c0)
                for (long c1 = -std::min(r, lim[1]); c1 <= std::min(r, lim[1]); ++c1)
                    for (long c2 = -std::min(r, lim[2]); c2 <= std::min(r, lim[2]); ++c2) {
                        if (std::max({std::labs(c0), std::labs(c1), std::labs(c2)}) != r)
                            continue;
                        if (static_cast<long>(++cert.candidates) > depth) {
                            complete = false;
                            goto next_tau;
                        }
                        long c[3] = {c0, c1, c2};
                        double prod = 1;
                        bool in = true;
                        for (std::size_t k = 0; k < 3 && in; ++k) {
                            double y = c[0] * mk[k][0] + c[1] * mk[k][1] + c[2] * mk[k][2];
                            in = std::abs(y) <= bound[k];
                            prod *= std::abs(y);
                        }
                        if (!in || std::abs(prod - 1) > 1e-6)
                            continue;
                        FieldElement gamma = Rat(c0) * b[0] + Rat(c1) * b[1] + Rat(c2) * b[2];
                        Rat nrm = norm(gamma);
                        if (nrm != 1 && nrm != -1)
                            continue;
                        if (scale(gamma, tm) != m)
                            continue;
                        /* g v_i = gamma tau(v_i) in the basis v */
                        RatMatrix vb(3, 3);
                        for (std::size_t i = 0; i < 3; ++i)
                            for (std::size_t j = 0; j < 3; ++j)
                                vb(i, j) = cf.eigenvector[i].coords()[j];
                        RatMatrix vinv = inverse(vb);
                        IntMatrix g(3, 3);
                        for (std::size_t i = 0; i < 3; ++i) {
                            FieldElement img = gamma * apply_automorphism(cf.eigenvector[i], auts[t]);
                            for (std::size_t j = 0; j < 3; ++j) {
                                Rat s = 0;
                                for (std::size_t l = 0; l < 3; ++l)
                                    s += img.coords()[l] * vinv(l, j);
                                if (s.get_den() != 1)
                                    throw Error(ErrorCode::StructureViolation, "module map is not integral");
                                g(i, j) = s.get_num();
                            }
                        }
                        SymmetryReport rep = is_cf_symmetry(g, cf);
                        if (rep.kind != SymKind::Palindromic)
                            throw Error(ErrorCode::StructureViolation, "module map gave a Dirichlet symmetry");
                        cert.status = SearchStatus::Found;
                        cert.symmetry = rep;
                        cert.gamma = gamma;
                        cert.sweep_bound = r;
                        return cert;
                    }
            reached = std::max(reached, r);
        }
    next_tau:;
    }
    cert.sweep_bound = reached;
    cert.status = complete ? SearchStatus::NotFound : SearchStatus::Inconclusive;
    cert.reason = complete ? "sweep of the unit cell is complete" : "candidate budget exhausted";
    return cert;
}

/* ---- canonical form ------------------------------------------------------- */

PalindromeCertificate canonicalize(IntMatrix const& g, IntMatrix const& a)
{
    GeoCF cf = geocf_from_operator(a);
    SymmetryReport rep = is_cf_symmetry(g, cf);
    if (rep.kind != SymKind::Palindromic)
        throw Error(ErrorCode::InvalidArgument, "canonicalize needs a palindromic symmetry");
    Order3Data const& o = *rep.order3;
    IntMatrix const& f = o.g_plus;
    IntVector const& n = o.plane_normal;
    IntVector const& l = o.invariant_line;

    PalindromeCertificate cert;
    cert.status = SearchStatus::Found;
    cert.symmetry = rep;

    /* lattice of the plane n.x = 0 and a point with n.x = 1 */
    IntMatrix nm(1, 3);
    for (std::size_t i = 0; i < 3; ++i)
        nm(0, i) = n[i];
    auto ker = lll_reduce(integer_kernel(nm));
    IntVector const &b1 = ker[0], &b2 = ker[1];
    IntMatrix col(3, 1);
    for (std::size_t i = 0; i < 3; ++i)
        col(i, 0) = n[i];
    HnfWithTransform h = hnf_with_transform(col);
    IntVector p = h.u.row(0);
    if (dot(p, n) != 1) {
        if (dot(p, n) == -1)
            for (auto& x : p)
                x = -x;
        else
            throw Error(ErrorCode::StructureViolation, "plane normal is not primitive");
    }
    Int g11 = dot(b1, b1), g12 = dot(b1, b2), g22 = dot(b2, b2), gd = g11 * g22 - g12 * g12;
    /* (s, t) with d = s b1 + t b2 for d in the plane */
    auto plane_coords = [&](IntVector const& d) {
        Int r1 = dot(d, b1), r2 = dot(d, b2);
        Rat s = ratio(g22 * r1 - g12 * r2, gd), t = ratio(g11 * r2 - g12 * r1, gd);
        return std::make_pair(s, t);
    };
    {
        auto [s, t] = plane_coords(p);
        auto nearest = [](Rat const& x) {
            Rat h = x + ratio(1, 2);
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
            return q;
        };
        p = add(add(p, b1, -nearest(s)), b2, -nearest(t));
    }
    auto on_line = [&](IntVector const& x) { return is_zero_vec(cross(x, l)); };
    IntVector ref = on_line(p) ? add(p, b1) : p;
    double rn = std::sqrt(3.0) * max_norm(ref).get_d();
    double pn = std::sqrt(dot(p, p).get_d());
    double gi = std::max(g22.get_d(), g11.get_d()) / gd.get_d();
    long kb = static_cast<long>(std::ceil((rn + pn) * std::sqrt(gi))) + 1;
    std::optional<IntVector> v1;
    for (long s = -kb; s <= kb; ++s)
        for (long t = -kb; t <= kb; ++t) {
            IntVector x = add(add(p, b1, Int(s)), b2, Int(t));
            if (on_line(x))
                continue;
            if (!v1 || std::make_pair(max_norm(x), x) < std::make_pair(max_norm(*v1), *v1))
                v1 = x;
        }
    cert.v1 = *v1;

    IntVector v = *v1;
    for (;;) {
        IntVector p1 = f * v, p2 = f * p1;
        auto [s1, t1] = plane_coords(add(p1, v, -1));
        auto [s2, t2] = plane_coords(add(p2, v, -1));
        if (s1.get_den() != 1 || t1.get_den() != 1 || s2.get_den() != 1 || t2.get_den() != 1)
            throw Error(ErrorCode::StructureViolation, "triangle vertices off the plane lattice");
        Int S1 = s1.get_num(), T1 = t1.get_num(), S2 = s2.get_num(), T2 = t2.get_num();
        Int area = abs(S1 * T2 - S2 * T1);
        if (area == 0 || (!cert.areas.empty() && area >= cert.areas.back()))
            throw Error(ErrorCode::StructureViolation, "triangle did not shrink");
        cert.areas.push_back(area);
        Int smin = std::min({Int(0), S1, S2}), smax = std::max({Int(0), S1, S2});
        Int tmin = std::min({Int(0), T1, T2}), tmax = std::max({Int(0), T1, T2});
        auto side = [](Int const& ax, Int const& ay, Int const& bx, Int const& by, Int const& px, Int const& py) {
            return sgn((bx - ax) * (py - ay) - (by - ay) * (px - ax));
        };
        IntVector three_w = add(add(v, p1), p2);
        std::optional<IntVector> best;
        for (Int s = smin; s <= smax; ++s)
            for (Int t = tmin; t <= tmax; ++t) {
                int e0 = side(0, 0, S1, T1, s, t), e1 = side(S1, T1, S2, T2, s, t), e2 = side(S2, T2, 0, 0, s, t);
                bool inside = (e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0);
                if (!inside)
                    continue;
                IntVector x = add(add(v, b1, s), b2, t);
                if (x == v || x == p1 || x == p2)
                    continue;
                IntVector x3 = x;
                for (auto& c : x3)
                    c *= 3;
                if (x3 == three_w)
                    continue;
                if (!best || x < *best)
                    best = x;
            }
        if (!best) {
            cert.z = {v, p1, p2};
            break;
        }
        v = *best;
    }

    auto const& z = cert.z;
    IntVector sum = add(add(z[0], z[1]), z[2]);
    cert.w.clear();
    bool integral = true;
    for (auto const& c : sum) {
        cert.w.push_back(ratio(c, 3));
        integral = integral && c % 3 == 0;
    }
    try {
        if (integral) {
            cert.case_tag = 'a';
            IntVector w{sum[0] / 3, sum[1] / 3, sum[2] / 3};
            IntMatrix zi = inverse_unimodular(columns(z[0], z[1], w));
            IntMatrix x1 = columns(e(1, 1, 0), e(1, 0, -1), e(1, 0, 0)) * zi;
            if (!(x1 * z[2] == e(1, -1, 1)))
                throw Error(ErrorCode::StructureViolation, "X1 z3 is not e1 - e2 + e3");
            cert.witnesses.push_back(make_witness(1, x1, f, cf));
        } else {
            cert.case_tag = 'b';
            IntMatrix zi = inverse_unimodular(columns(z[0], z[1], z[2]));
            cert.witnesses.push_back(make_witness(2, columns(e(1, 0, 0), e(1, 0, 1), e(1, 1, 0)) * zi, f, cf));
            cert.witnesses.push_back(make_witness(3, zi, f, cf));
            cert.witnesses.push_back(make_witness(4, columns(e(1, 0, 0), e(0, -1, 0), e(0, 0, 1)) * zi, f, cf));
        }
    } catch (Error const& err) {
        if (err.code() == ErrorCode::SingularMatrix)
            throw Error(ErrorCode::StructureViolation, std::string("reduced triangle is not a lattice basis: ") + err.what());
        throw;
    }
    return cert;
}

std::optional<std::size_t> class_relation(int class_id, std::array<FieldElement, 3> const& v)
{
    NumberField const& k = v[0].field();
    if (!(v[0] == FieldElement::rational(k, 1)))
        return std::nullopt;
    FieldElement const &al = v[1], &be = v[2];
    if (al.is_rational())
        return std::nullopt;
    auto auts = automorphisms(k);
    for (std::size_t t = 1; t < auts.size(); ++t) {
        FieldElement ta = apply_automorphism(al, auts[t]);
        bool ok = false;
        switch (class_id) {
        case 1: ok = be == ta && trace(al) == 0; break;
        case 2: ok = be == ta && trace(al) == 1; break;
        case 3: ok = norm(al) == 1 && be == fe_inv(ta); break;
        case 4: ok = norm(al) == -1 && be == -fe_inv(ta); break;
        default: throw Error(ErrorCode::InvalidArgument, "class id must be 1..4");
        }
        if (ok)
            return t;
    }
    return std::nullopt;
}

IntMatrix make_class_example(int class_id, IntPolynomial const& f, std::optional<FieldElement> const& unit_hint,
                             std::size_t root_index)
{
    IntMatrix fc = canonical_matrix(class_id);
    NumberField k(f, root_index);
    if (k.degree() != 3)
        throw Error(ErrorCode::UnsupportedDimension, "class examples need a cubic field");
    auto auts = automorphisms(k);
    if (auts.size() != 3)
        throw Error(ErrorCode::NotGalois, f.to_string() + " has no nontrivial automorphism");
    FieldElement one = FieldElement::rational(k, 1), al = FieldElement::theta(k);
    bool holds = (class_id == 1 && trace(al) == 0) || (class_id == 2 && trace(al) == 1) ||
                 (class_id == 3 && norm(al) == 1) || (class_id == 4 && norm(al) == -1);
    if (!holds)
        throw Error(ErrorCode::ConditionViolated,
                    "root of " + f.to_string() + " does not meet the trace/norm condition of class " +
                        std::to_string(class_id));
    /* 1, alpha, beta can be dependent for one of the two automorphisms */
    std::optional<FullModule> mod;
    std::vector<FieldElement> basis;
    for (std::size_t t = 1; t < auts.size() && !mod; ++t) {
        FieldElement ta = apply_automorphism(al, auts[t]);
        FieldElement be = class_id <= 2 ? ta : class_id == 3 ? fe_inv(ta) : -fe_inv(ta);
        basis = {one, al, be};
        try {
            mod = module_from_basis(basis);
        } catch (Error const& e) {
            if (e.code() != ErrorCode::RankDeficient || t + 1 == auts.size())
                throw;
        }
    }
    FullModule const& m = *mod;

    std::optional<FieldElement> eps;
    if (unit_hint) {
        if (!is_unit_of_module(*unit_hint, m))
            throw Error(ErrorCode::NotAUnit, "hint is not a unit of the module");
        eps = *unit_hint;
    } else {
        auto ob = multiplier_ring(m).basis();
        double best = 0;
        long const r = 6;
        for (long i = -r; i <= r; ++i)
            for (long j = -r; j <= r; ++j)
                for (long l = -r; l <= r; ++l) {
                    FieldElement x = Rat(i) * ob[0] + Rat(j) * ob[1] + Rat(l) * ob[2];
                    if (x.is_rational())
                        continue;
                    Rat nx = norm(x);
                    if (nx != 1 && nx != -1)
                        continue;
                    double dom = 0;
                    for (std::size_t e = 0; e < 3; ++e)
                        dom = std::max(dom, std::abs(embed_approx(x, e)));
                    if (!eps || dom < best - 1e-12) {
                        eps = x;
                        best = dom;
                    }
                }
    }
    if (!eps || eps->is_rational())
        throw Error(ErrorCode::NoUnitFound, "no unit of infinite order in the search box");
    IntMatrix a = geocf_from_unit(basis, *eps);
    if (!is_hyperbolic(a))
        throw Error(ErrorCode::StructureViolation, "class example is not hyperbolic");
    SymmetryReport r = is_cf_symmetry(fc, a);
    if (r.kind != SymKind::Palindromic)
        throw Error(ErrorCode::StructureViolation, "F" + std::to_string(class_id) + " is not palindromic");
    return a;
}

PalindromeCertificate theorem_check(IntMatrix const& a, long depth)
{
    PalindromeCertificate found = find_palindromic(a, depth);
    if (!found.found())
        return found;
    PalindromeCertificate c = canonicalize(found.symmetry->g, a);
    c.gamma = found.gamma;
    c.sweep_bound = found.sweep_bound;
    c.candidates = found.candidates;
    return c;
}

char const* condition_label(int class_id)
{
    switch (class_id) {
    case 1: return "a";
    case 2: return "b";
    case 3: return "c";
    case 4: return "d";
    }
    return "?";
}

char const* status_label(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "not_found";
    case SearchStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace klein
