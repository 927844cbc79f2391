#include <functional>
#include <set>

#include "doctest.h"
#include "klein/io.hpp"

using namespace klein;

namespace {

/* numbers never appear as JSON numbers */
bool only_strings(Json const& j)
{
    if (j.is_number())
        return false;
    if (j.is_array() || j.is_object()) {
        for (auto const& x : j)
            if (!only_strings(x))
                return false;
    }
    return true;
}

ErrorCode code_of(std::function<void()> const& fn)
{
    try {
        fn();
    } catch (Error const& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("integers and rationals")
{
    CHECK(int_from_json(Json("-123456789012345678901234567890")) == Int("-123456789012345678901234567890"));
    CHECK(int_from_json(Json(42)) == 42);
    CHECK(int_from_json(Json("+7")) == 7);
    CHECK(rat_from_json(Json("6/-4")) == Rat(-3, 2));
    CHECK(code_of([] { int_from_json(Json("12x4")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { int_from_json(Json("-")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { int_from_json(Json(1.5)); }) == ErrorCode::ParseError);
    CHECK(code_of([] { rat_from_json(Json("1/0")); }) == ErrorCode::DivisionByZero);
    try {
        int_from_json(Json("12x4"));
    } catch (Error const& e) {
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("matrix text")
{
    IntMatrix b{{0, 1, 0}, {2, 0, 1}, {-1, 1, 0}};
    CHECK(parse_matrix("0 1 0; 2 0 1; -1 1 0") == b);
    CHECK(parse_matrix("[[0,1,0],[2,0,1],[-1,1,0]]") == b);
    CHECK(parse_matrix("[[\"0\",\"1\",\"0\"],[\"2\",\"0\",\"1\"],[\"-1\",\"1\",\"0\"]]") == b);
    CHECK(matrix_from_json(to_json(b)) == b);
    CHECK(to_json(b).dump() == R"([["0","1","0"],["2","0","1"],["-1","1","0"]])");
    CHECK(code_of([] { parse_matrix("1 2; 3"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_matrix("1 2 3; 4 5 6"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_matrix("1 a; 2 3"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_matrix("[[1,2],[3"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_matrix(""); }) == ErrorCode::ParseError);
    IntPolynomial f{1, -3, 0, 1};
    CHECK(to_json(f).dump() == R"(["1","-3","0","1"])");
    CHECK(poly_from_json(to_json(f)) == f);
}

TEST_CASE("surds and cf1d reports")
{
    QuadraticSurd s = make_surd(1, 2, 5);
    CHECK(same_value(surd_from_json(to_json(s)), s));
    CHECK(same_value(surd_from_json(Json::parse(R"({"P":1,"Q":2,"D":5})")), s));
    CHECK(code_of([] { surd_from_json(Json::parse(R"({"P":1,"Q":2})")); }) == ErrorCode::ParseError);
    Json r = cf1d_report(parse_surd("(0+sqrt(2))/1"), 10);
    CHECK(only_strings(r));
    CHECK(r["expansion"]["period"] == Json::parse(R"(["2"])"));
    CHECK(r["cyclic_palindrome"]["palindrome"] == true);
    CHECK(r["witnesses"]["conditions"]["a"]["status"] == "found");
    CHECK(cf1d_report(s, 10).dump() == cf1d_report(s, 10).dump());
}

TEST_CASE("field elements")
{
    NumberField k(IntPolynomial{1, -3, 0, 1}, 1);
    FieldElement x(k, RatVector{Rat(1, 2), Rat(-3), Rat(0)});
    CHECK(to_json(x).dump() == R"(["1/2","-3","0"])");
    CHECK(element_from_json(k, to_json(x)) == x);
    CHECK(element_from_json(k, Json::parse(R"(["1/2","-3"])")) == x);
    CHECK(to_json(k).dump() == R"({"minpoly":["1","-3","0","1"],"root_index":"1"})");
    CHECK(code_of([&] { element_from_json(k, Json::parse(R"(["1","2","3","4"])")); }) == ErrorCode::ParseError);
}

TEST_CASE("certificate json")
{
    IntMatrix a = make_class_example(1, IntPolynomial{1, -3, 0, 1});
    PalindromeCertificate c = theorem_check(a, 100000);
    REQUIRE(c.found());
    Json j = to_json(c);
    CHECK(only_strings(j));
    for (char const* key : {"found", "kind", "sigma", "det", "case", "z", "w", "X", "canonical_form", "omega_minpoly",
                            "condition", "trace", "norm", "sweep_bound"})
        CHECK_MESSAGE(j.contains(key), key);
    CHECK(j["found"] == true);
    CHECK(j["kind"] == "palindromic");
    /* 1-based 3-cycle */
    std::set<std::string> sig;
    for (auto const& x : j["sigma"])
        sig.insert(x.get<std::string>());
    CHECK(sig == std::set<std::string>{"1", "2", "3"});
    CHECK(matrix_from_json(j["X"]) == c.witnesses[0].x);
    CHECK(j.dump() == to_json(theorem_check(a, 100000)).dump());

    Json none = to_json(theorem_check(IntMatrix{{0, 1, 0}, {0, 0, 1}, {-1, 4, 0}}, 1000));
    CHECK(none["found"] == false);
    CHECK(none["status"] == "not_found");
    CHECK(!none.contains("X"));

    DirichletGroup dg = dirichlet_group(a, 4000);
    Json dj = to_json(dg);
    CHECK(only_strings(dj));
    CHECK(matrix_from_json(dj["generators"][0]) == dg.generators[0]);
    CHECK(dj["fundamental_certified"] == false);

    Json sj = to_json(is_cf_symmetry(a, a));
    CHECK(sj["kind"] == "dirichlet");
    CHECK(sj["sigma"].dump() == R"(["1","2","3"])");
}

TEST_CASE("svg")
{
    std::vector<Point2> chain{{Int(1), Int(0)}, {Int(1), Int(1)}, {Int(2), Int(3)}};
    std::string svg = polygons_svg({chain});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg == polygons_svg({chain}));
}
