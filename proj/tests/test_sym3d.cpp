#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "klein/sym3d.hpp"

using namespace klein;

namespace {

struct Example {
    int k;
    IntPolynomial f;
};

std::vector<Example> const examples{
    {1, IntPolynomial{1, -3, 0, 1}},    // x^3 - 3x + 1
    {1, IntPolynomial{-1, -3, 0, 1}},   // x^3 - 3x - 1
    {2, IntPolynomial{1, -2, -1, 1}},   // x^3 - x^2 - 2x + 1
    {2, IntPolynomial{-1, -4, -1, 1}},  // x^3 - x^2 - 4x - 1
    {3, IntPolynomial{-1, -3, 0, 1}},
    {3, IntPolynomial{-1, -2, 1, 1}},   // x^3 + x^2 - 2x - 1
    {4, IntPolynomial{1, -3, 0, 1}},
    {4, IntPolynomial{1, -2, -1, 1}},
};

/* Galois field x^3 - x^2 - 30x + 25, module of a non-principal prime over 5 */
IntMatrix const no_palindrome{{-5, -1, 1}, {-1, 1, 0}, {0, -5, 1}};
IntMatrix const non_galois{{0, 1, 0}, {0, 0, 1}, {-1, 4, 0}};

std::vector<IntMatrix> const conjugators{
    IntMatrix{{1, 2, 0}, {0, 1, 0}, {0, 3, 1}},
    IntMatrix{{2, 1, 0}, {1, 1, 0}, {1, 2, 1}},
    IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}},
};

/* plain matrix arithmetic: g is a symmetry iff g a g^-1 commutes with a */
bool symmetry_oracle(IntMatrix const& g, IntMatrix const& a)
{
    Int d = det(g);
    if (d != 1 && d != -1)
        return false;
    IntMatrix c = g * a * (d * adjugate(g));
    return c * a == a * c;
}

/* all symmetries with entries in {-1, 0, 1} that do not commute with a */
std::vector<IntMatrix> small_palindromic(IntMatrix const& a)
{
    std::vector<IntMatrix> out;
    IntMatrix g(3, 3);
    for (int code = 0; code < 19683; ++code) {
        int c = code;
        for (std::size_t i = 0; i < 9; ++i, c /= 3)
            g(i / 3, i % 3) = c % 3 - 1;
        if (symmetry_oracle(g, a) && !(g * a == a * g))
            out.push_back(g);
    }
    return out;
}

IntMatrix conj(IntMatrix const& x, IntMatrix const& m) { return x * m * inverse_unimodular(x); }

}  // namespace

TEST_CASE("canonical matrices")
{
    IntMatrix id = IntMatrix::identity(3);
    for (int k = 1; k <= 4; ++k) {
        IntMatrix f = canonical_matrix(k);
        CAPTURE(k);
        CHECK(det(f) == 1);
        CHECK(f * f * f == id);
        CHECK(charpoly(f) == IntPolynomial{-1, 0, 0, 1});
    }
    CHECK(canonical_matrix(1) == IntMatrix{{1, 0, 0}, {0, 0, 1}, {0, -1, -1}});
    CHECK(canonical_matrix(4) == IntMatrix{{0, 0, 1}, {-1, 0, 0}, {0, -1, 0}});
    CHECK_THROWS_AS(canonical_matrix(5), Error);
}

TEST_CASE("class examples")
{
    for (auto const& ex : examples) {
        CAPTURE(ex.k);
        CAPTURE(ex.f.to_string());
        IntMatrix a = make_class_example(ex.k, ex.f);
        CHECK(is_hyperbolic(a));
        CHECK(symmetry_oracle(canonical_matrix(ex.k), a));
        CHECK_FALSE(canonical_matrix(ex.k) * a == a * canonical_matrix(ex.k));
        /* the eigenvector of a class example satisfies its relation for some root */
        bool any = false;
        for (std::size_t r = 0; r < 3 && !any; ++r)
            any = bool(class_relation(ex.k, geocf_from_operator(a, r).eigenvector));
        CHECK(any);
    }
    auto expect = [](auto fn, ErrorCode code) {
        try {
            fn();
            return false;
        } catch (Error const& e) {
            return e.code() == code;
        }
    };
    CHECK(expect([] { make_class_example(2, IntPolynomial{1, -3, 0, 1}); }, ErrorCode::ConditionViolated));
    CHECK(expect([] { make_class_example(3, IntPolynomial{1, -3, 0, 1}); }, ErrorCode::ConditionViolated));
    CHECK(expect([] { make_class_example(1, IntPolynomial{1, -4, 0, 1}); }, ErrorCode::NotGalois));
    NumberField k(IntPolynomial{1, -3, 0, 1}, 0);
    CHECK(expect([&] { make_class_example(1, IntPolynomial{1, -3, 0, 1}, FieldElement::rational(k, 2)); },
                 ErrorCode::NotAUnit));
}

TEST_CASE("class relation")
{
    NumberField k(IntPolynomial{1, -3, 0, 1}, 0);
    FieldElement t = FieldElement::theta(k), one = FieldElement::rational(k, 1);
    auto auts = automorphisms(k);
    FieldElement tt = apply_automorphism(t, auts[1]);
    CHECK(class_relation(1, {one, t, tt}));
    CHECK_FALSE(class_relation(2, {one, t, tt}));
    CHECK(class_relation(4, {one, t, -fe_inv(tt)}));
    CHECK_FALSE(class_relation(3, {one, t, fe_inv(tt)}));  // norm is -1
    CHECK_FALSE(class_relation(1, {one + one, t, tt}));
}

TEST_CASE("symmetry test")
{
    IntMatrix a = make_class_example(1, examples[0].f);
    IntMatrix id = IntMatrix::identity(3);
    SymmetryReport r = is_cf_symmetry(a, a);
    CHECK(r.kind == SymKind::Dirichlet);
    CHECK(r.tau == 0);
    CHECK(r.sigma == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(is_cf_symmetry(-id, a).det == -1);
    CHECK_THROWS_AS(is_cf_symmetry(IntMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}, a), Error);
    CHECK_THROWS_AS(is_cf_symmetry(IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, a), Error);

    for (auto const& ex : examples) {
        IntMatrix b = make_class_example(ex.k, ex.f);
        for (auto const& g : small_palindromic(b)) {
            SymmetryReport s = is_cf_symmetry(g, b);
            CHECK(s.kind == SymKind::Palindromic);
            std::set<std::size_t> img(s.sigma.begin(), s.sigma.end());
            CHECK(img.size() == 3);
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(s.sigma[k] != k);
        }
    }
}

TEST_CASE("order three structure")
{
    IntMatrix id = IntMatrix::identity(3);
    for (auto const& ex : examples) {
        CAPTURE(ex.k);
        IntMatrix a = make_class_example(ex.k, ex.f);
        GeoCF cf = geocf_from_operator(a);
        for (auto const& g : small_palindromic(a)) {
            SymmetryReport r = is_cf_symmetry(g, cf);
            REQUIRE(r.order3);
            Order3Data const& o = *r.order3;
            CHECK(g * g * g == Int(r.det) * id);
            CHECK(o.g_plus * o.g_plus * o.g_plus == id);
            CHECK(o.g_minus == -o.g_plus);
            CHECK(o.g_plus * o.invariant_line == o.invariant_line);
            CHECK(o.g_plus.transpose() * o.plane_normal == o.plane_normal);
            CHECK(dot(o.plane_normal, o.invariant_line) > 0);

            /* cones, with the sign rule checked on lattice points */
            CHECK(locate_cone(o.invariant_line, cf) == o.fixed_cone);
            SymmetryReport rp = is_cf_symmetry(o.g_plus, cf), rm = is_cf_symmetry(o.g_minus, cf);
            CHECK(map_cone(rp, cf, o.fixed_cone) == o.fixed_cone);
            CHECK(map_cone(rm, cf, o.fixed_cone) == -o.fixed_cone);
            CHECK(o.minus_orbit.size() == 6);
            std::set<Cone> orbit(o.minus_orbit.begin(), o.minus_orbit.end());
            CHECK(orbit.size() == 6);
            CHECK(orbit.count(o.fixed_cone) == 0);
            CHECK(orbit.count(-o.fixed_cone) == 0);
            for (long x = -3; x <= 3; ++x)
                for (long y = -3; y <= 3; ++y)
                    for (long z = -3; z <= 3; ++z) {
                        IntVector p{Int(x), Int(y), Int(z)};
                        if (x == 0 && y == 0 && z == 0)
                            continue;
                        Cone c = locate_cone(p, cf);
                        CHECK(locate_cone(g * p, cf) == map_cone(r, cf, c));
                    }
            break;
        }
    }
}

TEST_CASE("dirichlet group")
{
    for (auto const& ex : examples) {
        CAPTURE(ex.k);
        IntMatrix a = make_class_example(ex.k, ex.f);
        DirichletGroup dg = dirichlet_group(a, 4000);
        for (auto const& e : dg.generators) {
            CHECK(e * a == a * e);
            CHECK((det(e) == 1 || det(e) == -1));
        }
        CHECK(dg.generators[0] * dg.generators[1] == dg.generators[1] * dg.generators[0]);
        CHECK(dg.regulator > 0.01);
        for (auto const& lv : dg.log_vectors)
            CHECK(std::abs(lv[0] + lv[1] + lv[2]) < 1e-9);
        /* a itself lies in the generated group */
        GeoCF cf = geocf_from_operator(a);
        std::array<double, 3> la;
        for (std::size_t k = 0; k < 3; ++k)
            la[k] = std::log(std::abs(cf.eigenvalue_approx(k)));
        auto const& l1 = dg.log_vectors[0];
        auto const& l2 = dg.log_vectors[1];
        double d = l1[0] * l2[1] - l1[1] * l2[0];
        double s = (la[0] * l2[1] - la[1] * l2[0]) / d, t = (l1[0] * la[1] - l1[1] * la[0]) / d;
        CHECK(std::abs(s - std::round(s)) < 1e-6);
        CHECK(std::abs(t - std::round(t)) < 1e-6);
        /* conjugation invariance of the regulator */
        DirichletGroup dc = dirichlet_group(conj(conjugators[0], a), 4000);
        CHECK(dc.regulator == doctest::Approx(dg.regulator).epsilon(1e-9));
    }
    CHECK_THROWS_AS(dirichlet_group(make_class_example(1, examples[0].f), 0), Error);
}

TEST_CASE("palindromic search")
{
    for (auto const& ex : examples) {
        CAPTURE(ex.k);
        IntMatrix a = make_class_example(ex.k, ex.f);
        for (IntMatrix const& x : {IntMatrix::identity(3), conjugators[1]}) {
            IntMatrix b = conj(x, a);
            PalindromeCertificate c = find_palindromic(b, 100000);
            REQUIRE(c.found());
            CHECK(symmetry_oracle(c.symmetry->g, b));
            CHECK_FALSE(c.symmetry->g * b == b * c.symmetry->g);
            CHECK(c.gamma);
        }
    }
    PalindromeCertificate none = find_palindromic(no_palindrome, 100000);
    CHECK(none.status == SearchStatus::NotFound);
    CHECK(small_palindromic(no_palindrome).empty());
    CHECK(small_palindromic(conj(conjugators[0], no_palindrome)).empty());

    PalindromeCertificate ng = find_palindromic(non_galois, 1000);
    CHECK(ng.status == SearchStatus::NotFound);
    CHECK_FALSE(ng.reason.empty());
    CHECK(small_palindromic(non_galois).empty());

    CHECK(find_palindromic(make_class_example(1, examples[0].f), 1).status == SearchStatus::Inconclusive);
}

TEST_CASE("canonical form")
{
    for (auto const& ex : examples) {
        CAPTURE(ex.k);
        IntMatrix a = make_class_example(ex.k, ex.f);
        GeoCF cf = geocf_from_operator(a);
        PalindromeCertificate c = canonicalize(canonical_matrix(ex.k), a);
        CHECK(c.case_tag == (ex.k == 1 ? 'a' : 'b'));
        Order3Data const& o = *c.symmetry->order3;

        CHECK(dot(o.plane_normal, c.v1) == 1);
        /* v1 is minimal by (max-norm, lex) among plane points off the line */
        auto key = [](IntVector const& v) {
            Int m = 0;
            for (auto const& x : v)
                m = std::max(m, Int(abs(x)));
            return std::make_pair(m, v);
        };
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y)
                for (long z = -4; z <= 4; ++z) {
                    IntVector p{Int(x), Int(y), Int(z)};
                    if (dot(o.plane_normal, p) != 1 || p == o.invariant_line)
                        continue;
                    CHECK_FALSE(key(p) < key(c.v1));
                }
        for (std::size_t i = 1; i < c.areas.size(); ++i)
            CHECK(c.areas[i] < c.areas[i - 1]);
        CHECK(c.z[1] == o.g_plus * c.z[0]);
        CHECK(c.z[2] == o.g_plus * c.z[1]);

        CHECK(c.witnesses.size() == (c.case_tag == 'a' ? 1u : 3u));
        for (auto const& w : c.witnesses) {
            CAPTURE(w.class_id);
            CHECK(w.x * o.g_plus * inverse_unimodular(w.x) == canonical_matrix(w.class_id));
            CHECK(is_unimodular(w.x));
            CHECK(minimal_polynomial(w.omega) == w.omega_minpoly);
            CHECK(w.omega_minpoly.degree() == 3);
            if (w.class_id == 1)
                CHECK(w.trace == 0);
            if (w.class_id == 2)
                CHECK(w.trace == 1);
            if (w.class_id == 3)
                CHECK(w.norm == 1);
            if (w.class_id == 4)
                CHECK(w.norm == -1);
            CHECK(class_relation(w.class_id, {FieldElement::rational(cf.field, 1), w.omega, w.partner}));
        }
        if (c.case_tag == 'a') {
            IntVector w{c.w[0].get_num(), c.w[1].get_num(), c.w[2].get_num()};
            CHECK(abs(det(IntMatrix::from_columns({c.z[0], c.z[1], w}))) == 1);
        } else {
            CHECK(abs(det(IntMatrix::from_columns({c.z[0], c.z[1], c.z[2]}))) == 1);
        }

        /* the case does not change under conjugation */
        for (auto const& x : conjugators) {
            PalindromeCertificate cx = canonicalize(conj(x, canonical_matrix(ex.k)), conj(x, a));
            CHECK(cx.case_tag == c.case_tag);
        }
        CHECK_THROWS_AS(canonicalize(a, a), Error);
    }
}

TEST_CASE("theorem pipeline")
{
    for (auto const& ex : examples) {
        IntMatrix a = make_class_example(ex.k, ex.f);
        PalindromeCertificate c = theorem_check(conj(conjugators[2], a), 100000);
        REQUIRE(c.found());
        CHECK_FALSE(c.witnesses.empty());
        CHECK((c.case_tag == 'a' || c.case_tag == 'b'));
    }
    CHECK(theorem_check(no_palindrome, 100000).status == SearchStatus::NotFound);
    CHECK(std::string(condition_label(1)) == "a");
    CHECK(std::string(condition_label(4)) == "d");
    CHECK(std::string(status_label(SearchStatus::Inconclusive)) == "inconclusive");
}
