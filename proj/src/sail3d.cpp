#include "klein/sail3d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <optional>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "klein/io.hpp"

namespace klein {

namespace {

using FEMat = std::array<std::array<FieldElement, 3>, 3>;

FieldElement cofactor(FEMat const& m, std::size_t i, std::size_t j)
{
    std::size_t r[2], c[2];
    for (std::size_t k = 0, a = 0, b = 0; k < 3; ++k) {
        if (k != i)
            r[a++] = k;
        if (k != j)
            c[b++] = k;
    }
    FieldElement d = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
    return (i + j) % 2 ? -d : d;
}

FieldElement dot_int(IntVector const& x, std::array<FieldElement, 3> const& w)
{
    FieldElement s(w[0].field());
    for (std::size_t i = 0; i < 3; ++i)
        if (x[i] != 0)
            s = s + Rat(x[i]) * w[i];
    return s;
}

using P3 = std::array<long long, 3>;

IntVector big3(long long const* x)
{
    return IntVector{Int(static_cast<long>(x[0])), Int(static_cast<long>(x[1])), Int(static_cast<long>(x[2]))};
}

__int128 orient(P3 const& a, P3 const& b, P3 const& c, P3 const& d)
{
    __int128 u[3], v[3], w[3];
    for (int i = 0; i < 3; ++i) {
        u[i] = b[i] - a[i];
        v[i] = c[i] - a[i];
        w[i] = d[i] - a[i];
    }
    return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
           u[2] * (v[0] * w[1] - v[1] * w[0]);
}

struct Tri {
    int v[3];
    bool alive = true;
};

/* triangulated boundary of conv(pts), faces oriented outward */
std::vector<Tri> convex_hull(std::vector<P3> const& pts)
{
    int n = static_cast<int>(pts.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::mt19937 rng(1);
    std::shuffle(order.begin(), order.end(), rng);

    int i0 = order[0], i1 = -1, i2 = -1, i3 = -1;
    for (int k = 1; k < n && i1 < 0; ++k)
        if (pts[order[k]] != pts[i0])
            i1 = order[k];
    auto collinear = [&](int c) {
        P3 const &a = pts[i0], &b = pts[i1], &p = pts[c];
        long long u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        long long v[3] = {p[0] - a[0], p[1] - a[1], p[2] - a[2]};
        return (__int128)u[1] * v[2] - (__int128)u[2] * v[1] == 0 &&
               (__int128)u[2] * v[0] - (__int128)u[0] * v[2] == 0 &&
               (__int128)u[0] * v[1] - (__int128)u[1] * v[0] == 0;
    };
    if (i1 >= 0)
        for (int k = 1; k < n && i2 < 0; ++k)
            if (!collinear(order[k]))
                i2 = order[k];
    if (i2 >= 0)
        for (int k = 1; k < n && i3 < 0; ++k)
            if (orient(pts[i0], pts[i1], pts[i2], pts[order[k]]) != 0)
                i3 = order[k];
    if (i3 < 0)
        throw Error(ErrorCode::EmptyPatch, "lattice points of the box do not span a solid");
    if (orient(pts[i0], pts[i1], pts[i2], pts[i3]) > 0)
        std::swap(i1, i2);

    std::vector<Tri> faces;
    std::unordered_map<long long, int> edge;
    auto key = [n](int u, int v) { return static_cast<long long>(u) * n + v; };
    auto add = [&](int a, int b, int c) {
        int id = static_cast<int>(faces.size());
        faces.push_back(Tri{{a, b, c}});
        edge[key(a, b)] = id;
        edge[key(b, c)] = id;
        edge[key(c, a)] = id;
    };
    add(i0, i1, i2);
    add(i0, i3, i1);
    add(i0, i2, i3);
    add(i1, i3, i2);

    std::vector<char> visible;
    for (int idx : order) {
        if (idx == i0 || idx == i1 || idx == i2 || idx == i3)
            continue;
        P3 const& p = pts[idx];
        visible.assign(faces.size(), 0);
        std::vector<int> vis;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!faces[f].alive)
                continue;
            auto const& t = faces[f].v;
            if (orient(pts[t[0]], pts[t[1]], pts[t[2]], p) > 0) {
                visible[f] = 1;
                vis.push_back(static_cast<int>(f));
            }
        }
        if (vis.empty())
            continue;
        std::vector<std::pair<int, int>> horizon;
        for (int f : vis) {
            auto const& t = faces[f].v;
            for (int e = 0; e < 3; ++e) {
                int u = t[e], v = t[(e + 1) % 3];
                int twin = edge.at(key(v, u));
                if (!visible[twin])
                    horizon.emplace_back(u, v);
            }
        }
        for (int f : vis) {
            faces[f].alive = false;
            auto const& t = faces[f].v;
            for (int e = 0; e < 3; ++e) {
                auto it = edge.find(key(t[e], t[(e + 1) % 3]));
                if (it != edge.end() && it->second == f)
                    edge.erase(it);
            }
        }
        for (auto [u, v] : horizon)
            add(u, v, idx);
    }
    std::vector<Tri> out;
    for (auto const& f : faces)
        if (f.alive)
            out.push_back(f);
    return out;
}

long long gcd_ll(long long a, long long b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/* strict convex hull of coplanar points, projected along axis `drop` */
std::vector<int> polygon(std::vector<P3> const& pts, std::vector<int> idx, int drop)
{
    int ax = drop == 0 ? 1 : 0, ay = drop == 2 ? 1 : 2;
    auto lessp = [&](int a, int b) {
        return std::make_pair(pts[a][ax], pts[a][ay]) < std::make_pair(pts[b][ax], pts[b][ay]);
    };
    std::sort(idx.begin(), idx.end(), lessp);
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.size() < 3)
        return idx;
    auto cross = [&](int o, int a, int b) {
        return (__int128)(pts[a][ax] - pts[o][ax]) * (pts[b][ay] - pts[o][ay]) -
               (__int128)(pts[a][ay] - pts[o][ay]) * (pts[b][ax] - pts[o][ax]);
    };
    std::vector<int> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= 0)
            --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], idx[i]) <= 0)
            --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

/* ---- GeoCF ----------------------------------------------------------------- */

std::array<RatInterval, 3> GeoCF::eigenvector_interval(std::size_t k, Rat const& width) const
{
    std::array<RatInterval, 3> out;
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = embed(eigenvector[i], k, width);
    return out;
}

double GeoCF::eigenvalue_approx(std::size_t k) const { return field.root_approx(k); }

GeoCF geocf_from_operator(IntMatrix const& a, std::size_t root_index)
{
    if (!a.is_square() || a.n() != 3)
        throw Error(ErrorCode::UnsupportedDimension, "geometric continued fractions need a 3x3 operator");
    if (!is_hyperbolic(a))
        throw Error(ErrorCode::NotHyperbolic, "operator is not hyperbolic");
    NumberField k(charpoly(a), root_index);
    FieldElement t = FieldElement::theta(k);
    FEMat m{{{FieldElement(k), FieldElement(k), FieldElement(k)},
             {FieldElement(k), FieldElement(k), FieldElement(k)},
             {FieldElement(k), FieldElement(k), FieldElement(k)}}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            m[i][j] = FieldElement::rational(k, Rat(a(i, j)));
            if (i == j)
                m[i][j] = m[i][j] - t;
        }
    /* columns of adj(a - t) span the right kernel, rows the left kernel */
    FEMat adj{m};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            adj[i][j] = cofactor(m, j, i);

    std::optional<std::array<FieldElement, 3>> v;
    for (std::size_t j = 0; j < 3 && !v; ++j) {
        if (adj[0][j].is_zero())
            continue;
        FieldElement inv = fe_inv(adj[0][j]);
        v = std::array<FieldElement, 3>{adj[0][j] * inv, adj[1][j] * inv, adj[2][j] * inv};
    }
    if (!v)
        throw Error(ErrorCode::FirstCoordinateZero, "eigenvector has first coordinate zero");

    std::optional<std::array<FieldElement, 3>> w;
    for (std::size_t i = 0; i < 3 && !w; ++i) {
        FieldElement p = adj[i][0] * (*v)[0] + adj[i][1] * (*v)[1] + adj[i][2] * (*v)[2];
        if (p.is_zero())
            continue;
        FieldElement inv = fe_inv(p);
        w = std::array<FieldElement, 3>{adj[i][0] * inv, adj[i][1] * inv, adj[i][2] * inv};
    }
    if (!w)
        throw Error(ErrorCode::StructureViolation, "no left eigenvector pairs with the eigenvector");
    return GeoCF{a, k, *v, *w};
}

IntMatrix geocf_from_unit(std::vector<FieldElement> const& basis, FieldElement const& eps)
{
    if (basis.size() != 3)
        throw Error(ErrorCode::UnsupportedDimension, "need a basis of three elements");
    NumberField const& k = basis[0].field();
    if (!(basis[0] == FieldElement::rational(k, 1)))
        throw Error(ErrorCode::InvalidArgument, "first basis element must be 1");
    RatMatrix bm(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            bm(i, j) = basis[i].coords()[j];
    if (det(bm) == 0)
        throw Error(ErrorCode::RankDeficient, "basis is not of full rank");
    RatMatrix binv = inverse(bm);
    IntMatrix b(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        FieldElement e = eps * basis[i];
        for (std::size_t j = 0; j < 3; ++j) {
            Rat c = 0;
            for (std::size_t l = 0; l < 3; ++l)
                c += e.coords()[l] * binv(l, j);
            if (c.get_den() != 1)
                throw Error(ErrorCode::NotAUnit, "eps does not preserve the module");
            b(i, j) = c.get_num();
        }
    }
    if (!is_unimodular(b))
        throw Error(ErrorCode::NotAUnit, "eps is not a unit of the module");
    return b;
}

/* ---- cones ----------------------------------------------------------------- */

std::string Cone::to_string() const
{
    std::string out;
    for (int x : s)
        out += x > 0 ? '+' : '-';
    return out;
}

std::vector<Cone> all_cones()
{
    std::vector<Cone> out;
    for (int m = 0; m < 8; ++m)
        out.push_back(Cone{{m & 4 ? -1 : 1, m & 2 ? -1 : 1, m & 1 ? -1 : 1}});
    return out;
}

Cone parse_cone(std::string const& text)
{
    Cone c;
    std::size_t k = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '+' || ch == '-') {
            if (k == 3)
                throw Error(ErrorCode::ParseError, "cone: too many signs at position " + std::to_string(i));
            c.s[k++] = ch == '+' ? 1 : -1;
        } else if (ch != ',' && ch != '(' && ch != ')' && ch != ' ') {
            throw Error(ErrorCode::ParseError, "cone: unexpected character at position " + std::to_string(i));
        }
    }
    if (k != 3)
        throw Error(ErrorCode::ParseError, "cone: need three signs");
    return c;
}

FieldElement eigencoordinate(GeoCF const& g, IntVector const& x)
{
    if (x.size() != 3)
        throw Error(ErrorCode::UnsupportedDimension, "need a point of Z^3");
    return dot_int(x, g.covector);
}

std::array<double, 3> eigencoordinates_approx(GeoCF const& g, IntVector const& x)
{
    FieldElement e = eigencoordinate(g, x);
    return {embed_approx(e, 0), embed_approx(e, 1), embed_approx(e, 2)};
}

Cone locate_cone(IntVector const& p, GeoCF const& g)
{
    FieldElement e = eigencoordinate(g, p);
    if (e.is_zero())
        throw Error(ErrorCode::OnBoundary, "point lies on an eigenplane");
    Cone c;
    for (std::size_t k = 0; k < 3; ++k)
        c.s[k] = embedding_sign(e, k);
    return c;
}

Cone locate_cone(std::array<FieldElement, 3> const& p, GeoCF const& g)
{
    /* eigencoordinate k of sigma_0(p) is sigma_0(<sigma_k(w), p>); for k != 0
     * that covector lives in another embedding, so work with intervals */
    Rat width = dyadic_width(g.field.precision_bits());
    std::array<RatInterval, 3> pi;
    for (std::size_t i = 0; i < 3; ++i)
        pi[i] = embed(p[i], 0, width);
    Cone c;
    for (std::size_t k = 0; k < 3; ++k) {
        if (k == 0) {
            FieldElement e = p[0] * g.covector[0] + p[1] * g.covector[1] + p[2] * g.covector[2];
            if (e.is_zero())
                throw Error(ErrorCode::OnBoundary, "point lies on an eigenplane");
            c.s[0] = embedding_sign(e, 0);
            continue;
        }
        /* refine until the sign of the interval inner product is decided */
        for (unsigned bits = g.field.precision_bits();; bits *= 2) {
            Rat wd = dyadic_width(bits);
            RatInterval acc{0, 0};
            for (std::size_t i = 0; i < 3; ++i) {
                RatInterval a = embed(p[i], 0, wd), b = embed(g.covector[i], k, wd);
                Rat q[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
                acc.lo += *std::min_element(q, q + 4);
                acc.hi += *std::max_element(q, q + 4);
            }
            if (acc.lo > 0 || acc.hi < 0) {
                c.s[k] = acc.lo > 0 ? 1 : -1;
                break;
            }
            if (bits >= 8192)
                throw Error(ErrorCode::OnBoundary, "point lies on an eigenplane (to 2^-8192)");
        }
    }
    return c;
}

/* ---- sail patches ------------------------------------------------------------ */

std::vector<IntVector> SailPatch::certified_vertices() const
{
    std::vector<IntVector> out;
    for (auto const& v : vertices)
        if (v.certified)
            out.push_back(v.coords);
    return out;
}

SailPatch sail_patch(GeoCF const& g, Cone const& cone, Rat const& radius)
{
    if (radius <= 0)
        throw Error(ErrorCode::EmptyPatch, "radius must be positive");
    double r = radius.get_d();
    double wk[3][3], vk[3][3];
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i) {
            wk[k][i] = embed_approx(g.covector[i], k);
            vk[k][i] = embed_approx(g.eigenvector[i], k);
        }

    long long lo[2], hi[2];
    for (int i = 0; i < 2; ++i) {
        double a = 0, b = 0;
        for (int k = 0; k < 3; ++k) {
            double t = cone.s[k] * r * vk[k][i];
            a += std::min(0.0, t);
            b += std::max(0.0, t);
        }
        lo[i] = static_cast<long long>(std::floor(a)) - 1;
        hi[i] = static_cast<long long>(std::ceil(b)) + 1;
    }
    if (double(hi[0] - lo[0]) * double(hi[1] - lo[1]) > 4e7)
        throw Error(ErrorCode::InvalidArgument, "radius too large for enumeration");

    /* sign of s_k * xi_k and of radius - s_k * xi_k; doubles first */
    auto inside = [&](long long const x[3]) {
        std::optional<FieldElement> e;
        double scale = 1 + std::abs(double(x[0])) + std::abs(double(x[1])) + std::abs(double(x[2]));
        for (int k = 0; k < 3; ++k) {
            double val = cone.s[k] * (wk[k][0] * x[0] + wk[k][1] * x[1] + wk[k][2] * x[2]);
            double eps = 1e-9 * scale * (1 + std::abs(wk[k][0]) + std::abs(wk[k][1]) + std::abs(wk[k][2]));
            if (val < -eps || val > r + eps)
                return false;
            if (val > eps && val < r - eps)
                continue;
            if (!e)
                e = eigencoordinate(g, big3(x));
            int s = embedding_sign(*e, static_cast<std::size_t>(k));
            if (s == 0)
                throw Error(ErrorCode::StructureViolation, "nonzero lattice point on an eigenplane");
            if (s != cone.s[k])
                return false;
            FieldElement rest = FieldElement::rational(g.field, radius) - Rat(cone.s[k]) * (*e);
            if (embedding_sign(rest, static_cast<std::size_t>(k)) < 0)
                return false;
        }
        return true;
    };

    std::vector<P3> pts;
    for (long long x0 = lo[0]; x0 <= hi[0]; ++x0)
        for (long long x1 = lo[1]; x1 <= hi[1]; ++x1) {
            double zlo = -1e300, zhi = 1e300;
            for (int k = 0; k < 3; ++k) {
                double t = cone.s[k] * (wk[k][0] * x0 + wk[k][1] * x1);
                double c = cone.s[k] * wk[k][2];
                double a = -t / c, b = (r - t) / c;
                if (a > b)
                    std::swap(a, b);
                zlo = std::max(zlo, a);
                zhi = std::min(zhi, b);
            }
            if (zlo > zhi + 2)
                continue;
            for (long long x2 = static_cast<long long>(std::floor(zlo)) - 1;
                 x2 <= static_cast<long long>(std::ceil(zhi)) + 1; ++x2) {
                long long x[3] = {x0, x1, x2};
                if ((x0 | x1 | x2) == 0)
                    continue;
                if (inside(x))
                    pts.push_back({x0, x1, x2});
            }
        }

    SailPatch patch;
    patch.cone = cone;
    patch.radius = radius;
    patch.enumerated = pts.size();
    if (pts.empty())
        throw Error(ErrorCode::EmptyPatch, "no lattice points of the cone within radius " + radius.get_str());
    for (auto const& p : pts)
        for (long long c : p)
            if (c > (1LL << 30) || c < -(1LL << 30))
                throw Error(ErrorCode::InvalidArgument, "radius too large for enumeration");

    std::vector<Tri> hull = convex_hull(pts);

    /* group triangles by their plane, inner normal m, m . x = h on the plane */
    std::map<std::pair<P3, long long>, std::vector<int>> planes;
    for (auto const& t : hull) {
        P3 const &a = pts[t.v[0]], &b = pts[t.v[1]], &c = pts[t.v[2]];
        long long u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        long long v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        P3 m = {-(u[1] * v[2] - u[2] * v[1]), -(u[2] * v[0] - u[0] * v[2]), -(u[0] * v[1] - u[1] * v[0])};
        long long d = gcd_ll(gcd_ll(m[0], m[1]), m[2]);
        for (auto& x : m)
            x /= d;
        long long h = m[0] * a[0] + m[1] * a[1] + m[2] * a[2];
        auto& list = planes[{m, h}];
        list.insert(list.end(), t.v, t.v + 3);
    }

    struct RawFace {
        std::vector<int> poly;
        P3 m;
        long long h;
        bool certified;
    };
    std::vector<RawFace> raw;
    FieldElement rad = FieldElement::rational(g.field, radius);
    for (auto const& [key, idx] : planes) {
        auto const& [m, h] = key;
        if (h <= 0)
            continue;
        FieldElement mv = dot_int(big3(m.data()), g.eigenvector);
        bool facing = true;
        for (std::size_t k = 0; k < 3 && facing; ++k)
            facing = embedding_sign(mv, k) * cone.s[k] > 0;
        if (!facing)
            continue;
        bool cert = true;
        for (std::size_t k = 0; k < 3 && cert; ++k) {
            FieldElement slack = Rat(cone.s[k]) * (rad * mv) - FieldElement::rational(g.field, Rat(static_cast<long>(h)));
            cert = embedding_sign(slack, k) >= 0;
        }
        int drop = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(m[i]) > std::abs(m[drop]))
                drop = i;
        std::vector<int> poly = polygon(pts, idx, drop);
        if (poly.size() < 3)
            throw Error(ErrorCode::StructureViolation, "degenerate hull face");
        /* counterclockwise seen from the origin: right-hand normal is -m */
        P3 const &p0 = pts[poly[0]], &p1 = pts[poly[1]], &p2 = pts[poly[2]];
        __int128 u[3] = {p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]};
        __int128 v[3] = {p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]};
        __int128 nm = (u[1] * v[2] - u[2] * v[1]) * m[0] + (u[2] * v[0] - u[0] * v[2]) * m[1] +
                      (u[0] * v[1] - u[1] * v[0]) * m[2];
        if (nm > 0)
            std::reverse(poly.begin(), poly.end());
        raw.push_back({std::move(poly), m, h, cert});
    }

    std::map<P3, bool> vset;
    for (auto const& f : raw)
        for (int i : f.poly)
            vset[pts[i]] = vset[pts[i]] || f.certified;
    std::map<P3, std::size_t> vindex;
    for (auto const& [p, c] : vset) {
        vindex[p] = patch.vertices.size();
        patch.vertices.push_back({big3(p.data()), c});
    }
    std::sort(raw.begin(), raw.end(), [](RawFace const& a, RawFace const& b) {
        return std::tie(a.m, a.h) < std::tie(b.m, b.h);
    });
    for (auto const& f : raw) {
        SailFace sf;
        /* start each polygon at its smallest vertex */
        std::vector<std::size_t> vi;
        for (int i : f.poly)
            vi.push_back(vindex[pts[i]]);
        std::rotate(vi.begin(), std::min_element(vi.begin(), vi.end()), vi.end());
        sf.vertices = std::move(vi);
        sf.normal = big3(f.m.data());
        sf.height = Int(static_cast<long>(f.h));
        sf.certified = f.certified;
        patch.faces.push_back(std::move(sf));
    }
    return patch;
}

std::string export_patch(SailPatch const& p, PatchFormat format)
{
    if (format == PatchFormat::JSON)
        return patch_to_json(p).dump(2) + "\n";
    std::ostringstream os;
    os << "OFF\n";
    os << "# cone " << p.cone.to_string() << " radius " << p.radius.get_str() << "\n";
    os << "# uncertified vertices:";
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        if (!p.vertices[i].certified)
            os << ' ' << i;
    os << "\n";
    os << p.vertices.size() << ' ' << p.faces.size() << " 0\n";
    for (auto const& v : p.vertices)
        os << v.coords[0].get_str() << ' ' << v.coords[1].get_str() << ' ' << v.coords[2].get_str() << "\n";
    for (auto const& f : p.faces) {
        os << f.vertices.size();
        for (auto i : f.vertices)
            os << ' ' << i;
        os << "\n";
    }
    return os.str();
}

}  // namespace klein
