#include <random>

#include "doctest.h"
#include "klein/algnum.hpp"

using namespace klein;

namespace {

IntPolynomial const f1{1, -3, 0, 1};    // x^3 - 3x + 1
IntPolynomial const f2{1, -2, -1, 1};   // x^3 - x^2 - 2x + 1
IntPolynomial const fng{1, -4, 0, 1};   // x^3 - 4x + 1, disc 229

FieldElement el(NumberField const& k, std::vector<long> c)
{
    RatVector r;
    for (long x : c)
        r.emplace_back(x);
    return FieldElement(k, r);
}

FieldElement random_element(NumberField const& k, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    RatVector c;
    for (std::size_t i = 0; i < k.degree(); ++i) {
        Rat q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return FieldElement(k, c);
}

/* Horner in double precision: an independent cross-check of embed() */
double naive_eval(RatVector const& c, double x)
{
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * x + it->get_d();
    return v;
}

}  // namespace

TEST_CASE("isolate_real_roots")
{
    auto r = isolate_real_roots(IntPolynomial{-2, 0, 1});
    REQUIRE(r.size() == 2);
    CHECK(r[0].hi <= 0);
    CHECK(r[1].lo >= 0);
    auto r1 = refine_root(IntPolynomial{-2, 0, 1}, r[1], dyadic_width(40));
    CHECK(r1.contains(Rat(0)) == false);
    CHECK(std::abs(r1.approx() - std::sqrt(2.0)) < 1e-10);

    auto c = isolate_real_roots(f1);
    REQUIRE(c.size() == 3);
    double expect[3] = {-1.8793852415718, 0.3472963553338, 1.5320888862379};
    for (int i = 0; i < 3; ++i) {
        auto iv = refine_root(f1, c[i], dyadic_width(50));
        CHECK(std::abs(iv.approx() - expect[i]) < 1e-10);
        CHECK(f1.sign_at(iv.lo) * f1.sign_at(iv.hi) < 0);
    }
    CHECK(isolate_real_roots(IntPolynomial{1, 0, 1}).empty());
    CHECK_THROWS_AS(isolate_real_roots(IntPolynomial{1, -2, 1}), Error);

    auto mixed = isolate_real_roots(IntPolynomial{2, -1, -2, 1});  // (x-2)(x^2-1)
    REQUIRE(mixed.size() == 3);
    CHECK(mixed[0].lo == -1);
    CHECK(mixed[1].lo == 1);
    CHECK(mixed[2].lo == 2);
}

TEST_CASE("number field construction")
{
    NumberField k(f1, 2);
    CHECK(k.degree() == 3);
    CHECK(k.root_approx(0) > 1.5);
    CHECK(k.root_approx(1) < k.root_approx(2));
    CHECK_THROWS_AS(NumberField(IntPolynomial{-1, -1, 0, 1}, 0), Error);  // x^3-x-1
    CHECK_THROWS_AS(NumberField(IntPolynomial{-1, 0, 0, 1}, 0), Error);   // reducible
    CHECK_THROWS_AS(NumberField(IntPolynomial{1, -3, 0, 2}, 0), Error);   // not monic
}

TEST_CASE("field arithmetic")
{
    NumberField k(f1, 0);
    FieldElement t = FieldElement::theta(k);
    CHECK(t * (t * t) == el(k, {-1, 3, 0}));
    CHECK(t * fe_inv(t) == FieldElement::rational(k, 1));
    CHECK((t + (-t)).is_zero());
    CHECK_THROWS_AS(fe_inv(FieldElement(k)), Error);

    CHECK(trace(t) == 0);
    CHECK(norm(t) == -1);
    NumberField k2(f2, 0);
    CHECK(trace(FieldElement::theta(k2)) == 1);
    CHECK(norm(FieldElement::theta(k2)) == -1);
    FieldElement q = FieldElement::rational(k, Rat(2, 3));
    CHECK(trace(q) == 2);
    CHECK(norm(q) == Rat(8, 27));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        FieldElement a = random_element(k, rng), b = random_element(k, rng), c = random_element(k, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(norm(a * b) == norm(a) * norm(b));
        CHECK(trace(a + b) == trace(a) + trace(b));
        if (!a.is_zero())
            CHECK(a * fe_inv(a) == FieldElement::rational(k, 1));
    }
    CHECK(minimal_polynomial(t) == f1);
    CHECK(minimal_polynomial(q) == IntPolynomial{-2, 3});
}

TEST_CASE("embeddings")
{
    NumberField k(f1, 1);
    FieldElement t = FieldElement::theta(k);
    Rat w = dyadic_width(40);
    for (std::size_t i = 0; i < 3; ++i) {
        auto iv = embed(t, i, w);
        CHECK(iv.width() <= w);
        CHECK(std::abs(iv.approx() - k.root_approx(i)) < 1e-10);
    }
    /* t^2 - 2 permutes the roots */
    FieldElement g = t * t - FieldElement::rational(k, 2);
    std::vector<std::size_t> images;
    for (std::size_t i = 0; i < 3; ++i)
        images.push_back(locate_conjugate(g, i));
    std::sort(images.begin(), images.end());
    CHECK(images == std::vector<std::size_t>{0, 1, 2});
    auto half = embed(FieldElement::rational(k, Rat(1, 2)), 2, w);
    CHECK(half.lo == Rat(1, 2));
    CHECK(half.hi == Rat(1, 2));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        FieldElement a = random_element(k, rng);
        for (std::size_t j = 0; j < 3; ++j) {
            double v = naive_eval(a.coords(), k.root_approx(j));
            if (std::abs(v) > 1e-6)
                CHECK(embedding_sign(a, j) == (v > 0 ? 1 : -1));
        }
    }
    /* a tiny but nonzero element: sign decided exactly */
    FieldElement tiny = fe_pow(t - FieldElement::rational(k, Rat(1, 3)), 12);
    CHECK(embedding_sign(tiny, 0) == 1);
    AlgebraicReal ar = as_algebraic_real(t - FieldElement::rational(k, 1), 0);
    CHECK(ar.sign() == -1);
}

TEST_CASE("automorphisms")
{
    NumberField k(f1, 0);
    auto aut = automorphisms(k);
    REQUIRE(aut.size() == 3);
    FieldElement t = FieldElement::theta(k);
    CHECK(aut[0] == t);
    FieldElement g1 = el(k, {-2, 0, 1}), g2 = el(k, {2, -1, -1});
    CHECK(((aut[1] == g1 && aut[2] == g2) || (aut[1] == g2 && aut[2] == g1)));
    CHECK((aut[0] + aut[1] + aut[2]).is_zero());
    /* composition closes up */
    FieldElement c12 = apply_automorphism(aut[1], aut[2]);
    CHECK(c12 == t);
    CHECK(apply_automorphism(aut[1], aut[1]) == aut[2]);

    NumberField kk(f2, 0);
    auto aut2 = automorphisms(kk);
    REQUIRE(aut2.size() == 3);
    FieldElement target = el(kk, {-1, -1, 1});
    CHECK((aut2[1] == target || aut2[2] == target));
    for (auto const& g : aut2)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(locate_conjugate(g, i) < 3);

    CHECK(automorphisms(NumberField(fng, 0)).size() == 1);
    CHECK_FALSE(is_galois(NumberField(fng, 2)));
    CHECK(is_galois(NumberField(IntPolynomial{-1, -4, -1, 1}, 1)));  // x^3-x^2-4x-1
}

TEST_CASE("modules")
{
    NumberField k(f1, 0);
    FieldElement one = FieldElement::rational(k, 1), t = FieldElement::theta(k);
    FullModule zt = module_from_basis({one, t, t * t});
    CHECK(zt.denominator() == 1);
    CHECK(zt.hnf() == IntMatrix::identity(3));
    CHECK(module_from_basis({one, t, t * t - FieldElement::rational(k, 2)}) == zt);
    CHECK_THROWS_AS(module_from_basis({one, t, one + t}), Error);

    CHECK(is_unit_of_module(t, zt));
    CHECK_FALSE(is_unit_of_module(FieldElement::rational(k, 2), zt));
    CHECK(is_unit_of_module(-one, zt));

    CHECK(multiplier_ring(zt) == zt);
    FullModule two = scale(FieldElement::rational(k, 2), zt);
    CHECK(two.hnf() == 2 * IntMatrix::identity(3));
    CHECK(multiplier_ring(two) == zt);
    FullModule half = scale(FieldElement::rational(k, Rat(1, 2)), zt);
    CHECK(half.denominator() == 2);
    CHECK(multiplier_ring(half) == zt);

    FullModule m = module_from_basis({one, Rat(2) * t, t * t});
    FullModule o = multiplier_ring(m);
    CHECK(o.contains(one));
    auto ob = o.basis();
    for (auto const& a : ob)
        for (auto const& b : ob)
            CHECK(o.contains(a * b));
    /* o M is inside M */
    for (auto const& a : ob)
        for (auto const& b : m.basis())
            CHECK(m.contains(a * b));

    /* units of a ring have norm +-1 */
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int i = 0; i < 40; ++i) {
        FieldElement e = el(k, {d(rng), d(rng), d(rng)});
        if (!e.is_zero() && is_unit_of_module(e, zt))
            CHECK((norm(e) == 1 || norm(e) == -1));
    }

    /* colon against a Galois conjugate: Z[t] is stable */
    auto aut = automorphisms(k);
    CHECK(apply_automorphism(zt, aut[1]) == zt);
    CHECK(colon_module(zt, apply_automorphism(zt, aut[1])) == zt);
}
