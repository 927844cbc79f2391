#include <algorithm>
#include <set>

#include "doctest.h"
#include "klein/io.hpp"
#include "klein/sail3d.hpp"

using namespace klein;

namespace {

IntMatrix const B{{0, 1, 0}, {2, 0, 1}, {-1, 1, 0}};

IntVector iv(long a, long b, long c) { return IntVector{Int(a), Int(b), Int(c)}; }

std::set<IntVector> vertex_set(SailPatch const& p, bool certified_only)
{
    std::set<IntVector> out;
    for (auto const& v : p.vertices)
        if (v.certified || !certified_only)
            out.insert(v.coords);
    return out;
}

/* p in conv(others), all points on one plane; projected to the coordinates
 * (ax, ay).  Caratheodory: check segments and triangles. */
bool in_hull_2d(std::vector<IntVector> const& s, IntVector const& p, int ax, int ay)
{
    auto cr = [&](IntVector const& o, IntVector const& a, IntVector const& b) {
        Int v = (a[ax] - o[ax]) * (b[ay] - o[ay]) - (a[ay] - o[ay]) * (b[ax] - o[ax]);
        return sgn(v);
    };
    auto on_seg = [&](IntVector const& a, IntVector const& b) {
        return cr(a, b, p) == 0 && std::min(a[ax], b[ax]) <= p[ax] && p[ax] <= std::max(a[ax], b[ax]) &&
               std::min(a[ay], b[ay]) <= p[ay] && p[ay] <= std::max(a[ay], b[ay]);
    };
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (on_seg(s[i], s[j]))
                return true;
            for (std::size_t k = j + 1; k < s.size(); ++k) {
                int a = cr(s[i], s[j], p), b = cr(s[j], s[k], p), c = cr(s[k], s[i], p);
                if ((a >= 0 && b >= 0 && c >= 0) || (a <= 0 && b <= 0 && c <= 0))
                    if (cr(s[i], s[j], s[k]) != 0)
                        return true;
            }
        }
    return false;
}

IntMatrix elementary(std::size_t i, std::size_t j, long t)
{
    IntMatrix e = IntMatrix::identity(3);
    e(i, j) = t;
    return e;
}

}  // namespace

TEST_CASE("geocf from operator")
{
    GeoCF g = geocf_from_operator(B);
    FieldElement t = FieldElement::theta(g.field);
    CHECK(g.eigenvector[0] == FieldElement::rational(g.field, 1));
    CHECK(g.eigenvector[1] == t);
    CHECK(g.eigenvector[2] == t * t - FieldElement::rational(g.field, 2));
    /* <w, v> = 1 and w is a left eigenvector */
    FieldElement p = g.covector[0] * g.eigenvector[0] + g.covector[1] * g.eigenvector[1] +
                     g.covector[2] * g.eigenvector[2];
    CHECK(p == FieldElement::rational(g.field, 1));
    for (std::size_t j = 0; j < 3; ++j) {
        FieldElement s(g.field);
        for (std::size_t i = 0; i < 3; ++i)
            s = s + Rat(B(i, j)) * g.covector[i];
        CHECK(s == t * g.covector[j]);
    }

    IntMatrix x = elementary(0, 1, 2) * elementary(2, 0, -1) * elementary(1, 2, 1);
    IntMatrix bx = x * B * inverse_unimodular(x);
    GeoCF h = geocf_from_operator(bx);
    REQUIRE(h.field == g.field);
    std::array<FieldElement, 3> xv{FieldElement(g.field), FieldElement(g.field), FieldElement(g.field)};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            xv[i] = xv[i] + Rat(x(i, j)) * g.eigenvector[j];
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(h.eigenvector[i] * xv[0] == xv[i]);

    CHECK_THROWS_AS(geocf_from_operator(IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}), Error);
    CHECK_THROWS_AS(geocf_from_operator(IntMatrix::identity(3)), Error);
    try {
        geocf_from_operator(IntMatrix{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    } catch (Error const& e) {
        CHECK(e.code() == ErrorCode::NotHyperbolic);
    }
}

TEST_CASE("geocf from unit")
{
    NumberField k(IntPolynomial{1, -3, 0, 1}, 0);
    FieldElement one = FieldElement::rational(k, 1), t = FieldElement::theta(k);
    std::vector<FieldElement> basis{one, t, t * t - FieldElement::rational(k, 2)};
    CHECK(geocf_from_unit(basis, t) == B);
    CHECK(geocf_from_unit(basis, -one) == -IntMatrix::identity(3));
    IntMatrix b2 = geocf_from_unit(basis, t * t);
    CHECK(det(b2) == 1);
    CHECK(b2 == B * B);
    CHECK(det(B) == norm(t));
    CHECK_THROWS_AS(geocf_from_unit(basis, FieldElement::rational(k, 2)), Error);
    CHECK_THROWS_AS(geocf_from_unit({t, one, t * t}, t), Error);
}

TEST_CASE("cones")
{
    GeoCF g = geocf_from_operator(B);
    CHECK_THROWS_AS(locate_cone(g.eigenvector, g), Error);
    Cone c = locate_cone(iv(1, 0, 0), g);
    CHECK(locate_cone(iv(-1, 0, 0), g) == -c);
    auto approx = eigencoordinates_approx(g, iv(1, 0, 0));
    for (int k = 0; k < 3; ++k)
        CHECK(c.s[k] == (approx[k] > 0 ? 1 : -1));
    /* a lattice point and the same point read as a field vector agree */
    std::array<FieldElement, 3> p{FieldElement::rational(g.field, 3), FieldElement::rational(g.field, -1),
                                  FieldElement::rational(g.field, 2)};
    CHECK(locate_cone(p, g) == locate_cone(iv(3, -1, 2), g));
    CHECK(all_cones().size() == 8);
    CHECK(parse_cone("(+,-,+)") == Cone{{1, -1, 1}});
    CHECK(parse_cone("--+").to_string() == "--+");
    CHECK_THROWS_AS(parse_cone("+x+"), Error);
}

TEST_CASE("sail patch against a box oracle")
{
    GeoCF g = geocf_from_operator(B);
    long const box = 25;
    double w[3][3];
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i)
            w[k][i] = embed_approx(g.covector[i], k);
    for (Cone const& cone : all_cones()) {
        SailPatch p = sail_patch(g, cone, Rat(6));
        REQUIRE(!p.certified_vertices().empty());
        /* cone points of the box */
        std::vector<IntVector> pts;
        for (long x = -box; x <= box; ++x)
            for (long y = -box; y <= box; ++y)
                for (long z = -box; z <= box; ++z) {
                    if (x == 0 && y == 0 && z == 0)
                        continue;
                    bool maybe = true, clear = true;
                    for (int k = 0; k < 3; ++k) {
                        double e = cone.s[k] * (w[k][0] * x + w[k][1] * y + w[k][2] * z);
                        maybe = maybe && e > -1e-6;
                        clear = clear && e > 1e-6;
                    }
                    IntVector q = iv(x, y, z);
                    if (clear || (maybe && locate_cone(q, g) == cone))
                        pts.push_back(q);
                }
        for (auto const& f : p.faces) {
            if (!f.certified)
                continue;
            std::vector<IntVector> on;
            std::size_t below = 0;
            for (auto const& q : pts) {
                Int v = dot(f.normal, q);
                below += v < f.height;
                if (v == f.height)
                    on.push_back(q);
            }
            CHECK(below == 0);
            int drop = 0;
            for (int i = 1; i < 3; ++i)
                if (abs(f.normal[i]) > abs(f.normal[drop]))
                    drop = i;
            int ax = drop == 0 ? 1 : 0, ay = drop == 2 ? 1 : 2;
            std::set<IntVector> extreme;
            for (std::size_t i = 0; i < on.size(); ++i) {
                std::vector<IntVector> rest;
                for (std::size_t j = 0; j < on.size(); ++j)
                    if (j != i)
                        rest.push_back(on[j]);
                if (!in_hull_2d(rest, on[i], ax, ay))
                    extreme.insert(on[i]);
            }
            std::set<IntVector> fv;
            for (auto i : f.vertices)
                fv.insert(p.vertices[i].coords);
            CHECK(fv == extreme);
            /* counterclockwise seen from the origin */
            IntVector const &a = p.vertices[f.vertices[0]].coords, &b = p.vertices[f.vertices[1]].coords,
                            &c = p.vertices[f.vertices[2]].coords;
            IntVector u{b[0] - a[0], b[1] - a[1], b[2] - a[2]}, w{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
            IntVector n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
            CHECK(dot(n, f.normal) < 0);
        }
    }
}

TEST_CASE("sail patch invariants")
{
    GeoCF g = geocf_from_operator(B);
    Rat r(5);
    for (Cone const& cone : all_cones()) {
        SailPatch p = sail_patch(g, cone, r);
        SailPatch q = sail_patch(g, -cone, r);
        std::set<std::pair<IntVector, bool>> a, b;
        for (auto const& v : p.vertices)
            a.insert({IntVector{-v.coords[0], -v.coords[1], -v.coords[2]}, v.certified});
        for (auto const& v : q.vertices)
            b.insert({v.coords, v.certified});
        CHECK(a == b);
    }

    /* B is a unit of the module: it carries certified vertices of C to
     * certified vertices of the image cone at a radius scaled by |lambda| */
    double lam = 0;
    for (std::size_t k = 0; k < 3; ++k)
        lam = std::max(lam, std::abs(g.eigenvalue_approx(k)));
    Rat big(static_cast<long>(std::ceil(lam * 5)) + 1);
    for (Cone const& cone : {Cone{{1, 1, 1}}, Cone{{1, -1, 1}}}) {
        SailPatch p = sail_patch(g, cone, r);
        auto cert = p.certified_vertices();
        Cone image = locate_cone(B * cert.front(), g);
        auto target = vertex_set(sail_patch(g, image, big), true);
        for (auto const& v : cert)
            CHECK(target.count(B * v) == 1);
    }

    CHECK_THROWS_AS(sail_patch(g, Cone{}, Rat(1, 100)), Error);
    CHECK_THROWS_AS(sail_patch(g, Cone{}, Rat(0)), Error);
}

TEST_CASE("sail patch conjugation equivariance")
{
    GeoCF g = geocf_from_operator(B);
    IntMatrix x = elementary(0, 2, 1) * elementary(1, 0, -1);
    GeoCF h = geocf_from_operator(x * B * inverse_unimodular(x));
    /* eigencoordinates scale by the embeddings of c = (X v)_0 */
    FieldElement c(g.field);
    for (std::size_t j = 0; j < 3; ++j)
        c = c + Rat(x(0, j)) * g.eigenvector[j];
    double m = 0;
    for (std::size_t k = 0; k < 3; ++k)
        m = std::max(m, std::abs(embed_approx(c, k)));
    Rat r(4);
    Rat r2(static_cast<long>(std::ceil(m * 4)) + 1);
    for (Cone const& cone : {Cone{{1, 1, 1}}, Cone{{-1, 1, 1}}, Cone{{1, 1, -1}}}) {
        auto cert = sail_patch(g, cone, r).certified_vertices();
        REQUIRE(!cert.empty());
        Cone image = locate_cone(x * cert.front(), h);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(image.s[k] == cone.s[k] * embedding_sign(c, k));
        auto target = vertex_set(sail_patch(h, image, r2), true);
        for (auto const& v : cert)
            CHECK(target.count(x * v) == 1);
    }
}

TEST_CASE("patch export")
{
    SailPatch empty;
    empty.radius = 3;
    std::string off = export_patch(empty, PatchFormat::OFF);
    CHECK(off.rfind("OFF\n", 0) == 0);
    CHECK(off.find("\n0 0 0\n") != std::string::npos);

    SailPatch tet;
    tet.radius = Rat(7, 2);
    tet.vertices = {{iv(1, 0, 0), true}, {iv(0, 1, 0), true}, {iv(0, 0, 1), false}, {iv(1, 1, 1), true}};
    tet.faces = {{{0, 1, 2}, iv(1, 1, 1), Int(1), true},
                 {{0, 3, 1}, iv(1, 1, -1), Int(1), false},
                 {{1, 3, 2}, iv(-1, 1, 1), Int(1), false},
                 {{2, 3, 0}, iv(1, -1, 1), Int(1), false}};
    off = export_patch(tet, PatchFormat::OFF);
    CHECK(off.find("\n4 4 0\n") != std::string::npos);
    CHECK(off.find("# uncertified vertices: 2\n") != std::string::npos);
    long v = 4, f = 4, e = 6;
    CHECK(v - e + f == 2);

    Json j = Json::parse(export_patch(tet, PatchFormat::JSON));
    CHECK(patch_from_json(j) == tet);
    CHECK(j["vertices"][0]["coords"][0] == "1");

    GeoCF g = geocf_from_operator(B);
    SailPatch p = sail_patch(g, Cone{{1, -1, 1}}, Rat(4));
    CHECK(patch_from_json(patch_to_json(p)) == p);
    CHECK(export_patch(p, PatchFormat::JSON) == export_patch(sail_patch(g, Cone{{1, -1, 1}}, Rat(4)), PatchFormat::JSON));
}
