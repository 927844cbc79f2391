#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "klein/verify.hpp"

using namespace klein;

namespace {

/* exit codes */
constexpr int found_code = 0, not_found_code = 1, parse_code = 2, hyperbolic_code = 3, empty_code = 4,
              inconclusive_code = 5, error_code = 6;

int exit_code(ErrorCode c)
{
    switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument: return parse_code;
    case ErrorCode::NotHyperbolic: return hyperbolic_code;
    case ErrorCode::EmptyPatch: return empty_code;
    case ErrorCode::InsufficientDepth: return inconclusive_code;
    default: return error_code;
    }
}

std::string read_arg(std::string const& text)
{
    if (text.empty() || text[0] != '@')
        return text;
    std::ifstream in(text.substr(1));
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read " + text.substr(1));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

IntMatrix hyperbolic_matrix(std::string const& text, std::size_t n)
{
    IntMatrix a = parse_matrix(read_arg(text));
    if (a.rows() != n)
        throw Error(ErrorCode::InvalidArgument, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if (!is_hyperbolic(a))
        throw Error(ErrorCode::NotHyperbolic, "operator is not hyperbolic");
    return a;
}

IntPolynomial parse_poly(std::string const& text)
{
    auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '[') {
        try {
            return poly_from_json(Json::parse(text));
        } catch (nlohmann::json::parse_error const& e) {
            throw Error(ErrorCode::ParseError, std::string("polynomial: ") + e.what());
        }
    }
    std::vector<Int> c;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        for (auto& ch : tok)
            if (ch == ',')
                ch = ' ';
        std::istringstream inner(tok);
        std::string t;
        while (inner >> t)
            c.push_back(int_from_json(Json(t)));
    }
    if (c.empty())
        throw Error(ErrorCode::ParseError, "polynomial: no coefficients");
    return IntPolynomial(c);
}

void emit(std::string const& text, std::string const& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

int certificate_code(PalindromeCertificate const& c)
{
    switch (c.status) {
    case SearchStatus::Found: return found_code;
    case SearchStatus::NotFound: return not_found_code;
    case SearchStatus::Inconclusive: return inconclusive_code;
    }
    return error_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"klein: sails, Dirichlet groups and palindromic symmetries of hyperbolic operators"};
    app.require_subcommand(1);
    std::string out_path;

    /* cf1d */
    auto* cf1d = app.add_subcommand("cf1d", "continued fraction, palindrome axes and witnesses of a quadratic surd");
    std::string surd_text, surd_json;
    long height = 30;
    cf1d->add_option("surd", surd_text, "surd as (P+sqrt(D))/Q");
    cf1d->add_option("--json", surd_json, "surd as {\"P\":..,\"Q\":..,\"D\":..}");
    cf1d->add_option("--height", height, "witness height bound")->check(CLI::PositiveNumber);

    /* sail2d */
    auto* sail2d = app.add_subcommand("sail2d", "Klein polygons of a 2x2 hyperbolic operator");
    std::string matrix_text;
    std::size_t count = 12;
    std::string format2 = "svg";
    sail2d->add_option("matrix", matrix_text, "matrix, JSON or \"a b; c d\" (@file reads a file)")->required();
    sail2d->add_option("--count", count, "vertices per polygon")->check(CLI::PositiveNumber);
    sail2d->add_option("--format", format2, "svg or json")->check(CLI::IsMember({"svg", "json"}));
    sail2d->add_option("-o,--output", out_path, "output file");

    /* sail3d */
    auto* sail3d = app.add_subcommand("sail3d", "sail patch of one cone of a 3x3 hyperbolic operator");
    std::string cone_text = "+++", radius_text = "10", format3 = "off";
    sail3d->add_option("matrix", matrix_text, "matrix")->required();
    sail3d->add_option("--cone", cone_text, "sign pattern, e.g. +-+ or (+,-,+)");
    sail3d->add_option("--radius", radius_text, "eigencoordinate radius (rational)");
    sail3d->add_option("--format", format3, "off or json")->check(CLI::IsMember({"off", "json"}));
    sail3d->add_option("-o,--output", out_path, "output file");

    /* dirichlet */
    auto* dir = app.add_subcommand("dirichlet", "unit group of the commutant");
    long depth = 10000;
    dir->add_option("matrix", matrix_text, "matrix")->required();
    dir->add_option("--depth", depth, "candidate budget")->check(CLI::NonNegativeNumber);

    /* symmetry */
    auto* sym = app.add_subcommand("symmetry", "test a symmetry, or search and certify a palindromic one");
    std::string g_text;
    long sdepth = 100000;
    sym->add_option("matrix", matrix_text, "operator")->required();
    sym->add_option("--g", g_text, "candidate symmetry to test");
    sym->add_option("--depth", sdepth, "candidate budget")->check(CLI::NonNegativeNumber);

    /* theorem */
    auto* thm = app.add_subcommand("theorem", "criterion check on an operator or on a constructed class example");
    std::string poly_text, conj_text;
    int class_id = 0;
    thm->add_option("matrix", matrix_text, "operator");
    thm->add_option("--class", class_id, "build an example of class 1..4")->check(CLI::Range(1, 4));
    thm->add_option("--poly", poly_text, "minimal polynomial, constant term first");
    thm->add_option("--conjugate", conj_text, "unimodular X; the operator becomes X A X^-1");
    thm->add_option("--depth", sdepth, "candidate budget")->check(CLI::NonNegativeNumber);

    /* verify */
    auto* ver = app.add_subcommand("verify", "run acceptance suites");
    std::vector<std::string> suites;
    unsigned seed = 1;
    bool serial = false;
    ver->add_option("suite", suites, "suite names or criterion numbers; all by default");
    ver->add_option("--seed", seed, "seed for random conjugators");
    ver->add_flag("--serial", serial, "run suites one after another");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return parse_code;
    }

    try {
        if (char const* p = std::getenv("KLEIN_PRECISION")) {
            char* end = nullptr;
            unsigned long bits = std::strtoul(p, &end, 10);
            if (!*p || *end)
                throw Error(ErrorCode::ParseError, "KLEIN_PRECISION must be a bit count");
            set_working_precision(static_cast<unsigned>(bits));
        }

        if (*cf1d) {
            if (surd_text.empty() == surd_json.empty())
                throw Error(ErrorCode::InvalidArgument, "give a surd or --json, not both");
            QuadraticSurd s;
            if (!surd_json.empty()) {
                try {
                    s = surd_from_json(Json::parse(surd_json));
                } catch (nlohmann::json::parse_error const& e) {
                    throw Error(ErrorCode::ParseError, std::string("surd: ") + e.what());
                }
            } else {
                s = parse_surd(surd_text);
            }
            emit(cf1d_report(s, height).dump(2) + "\n", "");
            return 0;
        }
        if (*sail2d) {
            IntMatrix a = hyperbolic_matrix(matrix_text, 2);
            QuadNum alpha = eigen_slope_2d(a), beta = alpha.conj();
            std::vector<std::vector<Point2>> chains;
            Json cones = Json::array();
            for (std::array<int, 2> c : {std::array<int, 2>{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}) {
                chains.push_back(klein_polygon(alpha, beta, c, count));
                Json v = Json::array();
                for (auto const& p : chains.back())
                    v.push_back(Json{p[0].get_str(), p[1].get_str()});
                cones.push_back(Json{{"cone", std::string(c[0] > 0 ? "+" : "-") + (c[1] > 0 ? "+" : "-")},
                                     {"vertices", v}});
            }
            if (format2 == "svg")
                emit(polygons_svg(chains), out_path);
            else
                emit(Json{{"operator", to_json(a)}, {"cones", cones}}.dump(2) + "\n", out_path);
            return 0;
        }
        if (*sail3d) {
            IntMatrix a = hyperbolic_matrix(matrix_text, 3);
            Rat radius = rat_from_json(Json(radius_text));
            SailPatch p = sail_patch(geocf_from_operator(a), parse_cone(cone_text), radius);
            emit(export_patch(p, format3 == "off" ? PatchFormat::OFF : PatchFormat::JSON), out_path);
            return 0;
        }
        if (*dir) {
            IntMatrix a = hyperbolic_matrix(matrix_text, 3);
            Json j{{"operator", to_json(a)}, {"group", to_json(dirichlet_group(a, depth))}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*sym) {
            IntMatrix a = hyperbolic_matrix(matrix_text, 3);
            if (!g_text.empty()) {
                IntMatrix g = parse_matrix(read_arg(g_text));
                try {
                    std::cout << to_json(is_cf_symmetry(g, a)).dump(2) << "\n";
                    return found_code;
                } catch (Error const& e) {
                    if (e.code() != ErrorCode::NotASymmetry)
                        throw;
                    std::cout << Json{{"symmetry", false}, {"reason", e.what()}}.dump(2) << "\n";
                    return not_found_code;
                }
            }
            PalindromeCertificate c = theorem_check(a, sdepth);
            std::cout << to_json(c).dump(2) << "\n";
            return certificate_code(c);
        }
        if (*thm) {
            IntMatrix a;
            if (class_id) {
                if (poly_text.empty() || !matrix_text.empty())
                    throw Error(ErrorCode::InvalidArgument, "--class needs --poly and no matrix");
                a = make_class_example(class_id, parse_poly(poly_text));
            } else {
                if (matrix_text.empty())
                    throw Error(ErrorCode::InvalidArgument, "give a matrix or --class with --poly");
                a = hyperbolic_matrix(matrix_text, 3);
            }
            if (!conj_text.empty()) {
                IntMatrix x = parse_matrix(read_arg(conj_text));
                a = x * a * inverse_unimodular(x);
            }
            PalindromeCertificate c = theorem_check(a, sdepth);
            Json j{{"operator", to_json(a)}, {"palindromic", status_label(c.status)}, {"certificate", to_json(c)}};
            std::cout << j.dump(2) << "\n";
            return certificate_code(c);
        }
        if (*ver) {
            std::vector<int> ids;
            for (auto const& s : suites) {
                if (s == "all")
                    continue;
                bool digits = !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
                ids.push_back(digits ? std::stoi(s) : suite_id(s));
                if (ids.back() < 1 || ids.back() > 9)
                    throw Error(ErrorCode::InvalidArgument, "criterion must be 1..9");
            }
            std::vector<CriterionResult> results;
            if (ids.empty())
                results = run_all(seed, !serial);
            else
                for (int id : ids)
                    results.push_back(run_criterion(id, seed));
            bool ok = true;
            for (auto const& r : results) {
                std::cout << to_json(r).dump() << "\n";
                ok = ok && r.pass;
            }
            return ok ? 0 : 1;
        }
    } catch (Error const& e) {
        std::cerr << "klein: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (std::exception const& e) {
        std::cerr << "klein: " << e.what() << "\n";
        return error_code;
    }
    return error_code;
}
