#include "klein/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace klein {

Json to_json(Int const& x) { return x.get_str(); }
Json to_json(Rat const& x) { return x.get_str(); }

Json to_json(IntVector const& v)
{
    Json j = Json::array();
    for (auto const& x : v)
        j.push_back(x.get_str());
    return j;
}

Json to_json(IntMatrix const& m)
{
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        j.push_back(to_json(m.row(i)));
    return j;
}

Json to_json(IntPolynomial const& p) { return to_json(p.coeffs()); }

Int int_from_json(Json const& j)
{
    if (j.is_number_integer())
        return Int(j.dump());
    if (!j.is_string())
        throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
    std::string s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size())
        throw Error(ErrorCode::ParseError, "expected an integer, got \"" + s + "\"");
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(ErrorCode::ParseError, "bad digit at position " + std::to_string(i) + " in \"" + s + "\"");
    return Int(s[0] == '+' ? s.substr(1) : s);
}

Rat rat_from_json(Json const& j)
{
    if (j.is_number_integer())
        return Rat(int_from_json(j));
    if (!j.is_string())
        throw Error(ErrorCode::ParseError, "expected a rational, got " + j.dump());
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(int_from_json(Json(s)));
    return ratio(int_from_json(Json(s.substr(0, slash))), int_from_json(Json(s.substr(slash + 1))));
}

IntVector vector_from_json(Json const& j)
{
    if (!j.is_array())
        throw Error(ErrorCode::ParseError, "expected an array, got " + j.dump());
    IntVector v;
    for (auto const& x : j)
        v.push_back(int_from_json(x));
    return v;
}

IntMatrix matrix_from_json(Json const& j)
{
    if (!j.is_array() || j.empty())
        throw Error(ErrorCode::ParseError, "expected an array of rows");
    std::vector<IntVector> rows;
    for (auto const& r : j) {
        rows.push_back(vector_from_json(r));
        if (rows.back().size() != rows.front().size())
            throw Error(ErrorCode::ParseError, "rows of different lengths");
    }
    return IntMatrix(rows);
}

IntPolynomial poly_from_json(Json const& j) { return IntPolynomial(vector_from_json(j)); }

IntMatrix parse_matrix(std::string const& text)
{
    auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '[') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (nlohmann::json::parse_error const& e) {
            throw Error(ErrorCode::ParseError, std::string("matrix: ") + e.what());
        }
        return matrix_from_json(j);
    }
    std::vector<IntVector> rows(1);
    std::string tok;
    auto flush = [&](std::size_t pos) {
        if (tok.empty())
            return;
        try {
            rows.back().push_back(int_from_json(Json(tok)));
        } catch (Error const&) {
            throw Error(ErrorCode::ParseError, "matrix: bad entry \"" + tok + "\" before position " +
                                                   std::to_string(pos));
        }
        tok.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ';') {
            flush(i);
            rows.emplace_back();
        } else if (c == ' ' || c == ',' || c == '\t' || c == '\n') {
            flush(i);
        } else {
            tok += c;
        }
    }
    flush(text.size());
    if (rows.back().empty())
        rows.pop_back();
    if (rows.empty())
        throw Error(ErrorCode::ParseError, "matrix: empty");
    for (auto const& r : rows)
        if (r.size() != rows.size())
            throw Error(ErrorCode::ParseError, "matrix: not square");
    return IntMatrix(rows);
}

Json to_json(QuadraticSurd const& s)
{
    return Json{{"P", to_json(s.P)}, {"Q", to_json(s.Q)}, {"D", to_json(s.D)}, {"text", s.to_string()}};
}

QuadraticSurd surd_from_json(Json const& j)
{
    if (!j.is_object() || !j.contains("P") || !j.contains("Q") || !j.contains("D"))
        throw Error(ErrorCode::ParseError, "surd object needs P, Q and D");
    return make_surd(int_from_json(j["P"]), int_from_json(j["Q"]), int_from_json(j["D"]));
}

Json to_json(PeriodicCF const& cf)
{
    return Json{{"preperiod", to_json(cf.preperiod)}, {"period", to_json(cf.period)}};
}

Json to_json(PalindromeAxes const& a)
{
    Json axes = Json::array();
    for (auto const& ax : a.axes)
        axes.push_back(Json{{"type", ax.type == AxisType::ThroughElement ? "element" : "between"},
                            {"position", std::to_string(ax.position)}});
    return Json{{"palindrome", a.is_palindrome}, {"axes", axes}};
}

Json to_json(Prop1Report const& r)
{
    Json out{{"height_bound", std::to_string(r.height_bound)}};
    Json conds = Json::object();
    for (int c = 0; c < 4; ++c) {
        auto const& w = r.witnesses[c];
        char const* label = condition_label(static_cast<Prop1Condition>(c));
        if (!w) {
            conds[label] = Json{{"status", "inconclusive"}};
            continue;
        }
        conds[label] = Json{{"status", "found"},
                            {"transform", to_json(IntVector{w->a, w->b, w->c, w->d})},
                            {"omega", w->omega.to_string()},
                            {"trace", to_json(w->trace)},
                            {"norm", to_json(w->norm)},
                            {"height", to_json(w->height)}};
    }
    out["conditions"] = conds;
    return out;
}

Json cf1d_report(QuadraticSurd const& s, long height_bound)
{
    PeriodicCF cf = cf_expand(s);
    return Json{{"surd", to_json(s)},
                {"expansion", to_json(cf)},
                {"cyclic_palindrome", to_json(is_cyclic_palindrome(cf.period))},
                {"witnesses", to_json(prop1_witness_search(s, height_bound))}};
}

Json patch_to_json(SailPatch const& p)
{
    Json verts = Json::array();
    for (auto const& v : p.vertices)
        verts.push_back(Json{{"coords", to_json(v.coords)}, {"certified", v.certified}});
    Json faces = Json::array();
    for (auto const& f : p.faces) {
        Json idx = Json::array();
        for (auto i : f.vertices)
            idx.push_back(std::to_string(i));
        faces.push_back(Json{{"vertices", idx},
                             {"normal", to_json(f.normal)},
                             {"height", to_json(f.height)},
                             {"certified", f.certified}});
    }
    return Json{{"cone", p.cone.to_string()},
                {"radius", to_json(p.radius)},
                {"enumerated", std::to_string(p.enumerated)},
                {"vertices", verts},
                {"faces", faces}};
}

SailPatch patch_from_json(Json const& j)
{
    try {
        SailPatch p;
        p.cone = parse_cone(j.at("cone").get<std::string>());
        p.radius = rat_from_json(j.at("radius"));
        if (j.contains("enumerated"))
            p.enumerated = int_from_json(j["enumerated"]).get_ui();
        for (auto const& v : j.at("vertices"))
            p.vertices.push_back({vector_from_json(v.at("coords")), v.at("certified").get<bool>()});
        for (auto const& f : j.at("faces")) {
            SailFace sf;
            for (auto const& i : f.at("vertices")) {
                Int x = int_from_json(i);
                if (x < 0 || x >= Int(static_cast<unsigned long>(p.vertices.size())))
                    throw Error(ErrorCode::ParseError, "face refers to a missing vertex");
                sf.vertices.push_back(x.get_ui());
            }
            sf.normal = vector_from_json(f.at("normal"));
            sf.height = int_from_json(f.at("height"));
            sf.certified = f.at("certified").get<bool>();
            p.faces.push_back(std::move(sf));
        }
        return p;
    } catch (nlohmann::json::exception const& e) {
        throw Error(ErrorCode::ParseError, std::string("patch: ") + e.what());
    }
}

namespace {

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json one_based(std::array<std::size_t, 3> const& s)
{
    Json j = Json::array();
    for (auto k : s)
        j.push_back(std::to_string(k + 1));
    return j;
}

Json cones_json(std::vector<Cone> const& cs)
{
    Json j = Json::array();
    for (auto const& c : cs)
        j.push_back(c.to_string());
    return j;
}

Json witness_json(ClassWitness const& w)
{
    return Json{{"class", std::to_string(w.class_id)},
                {"condition", condition_label(w.class_id)},
                {"X", to_json(w.x)},
                {"canonical_form", "F" + std::to_string(w.class_id)},
                {"omega", to_json(w.omega)},
                {"omega_minpoly", to_json(w.omega_minpoly)},
                {"partner", to_json(w.partner)},
                {"trace", to_json(w.trace)},
                {"norm", to_json(w.norm)},
                {"automorphism", std::to_string(w.tau)}};
}

}  // namespace

Json to_json(NumberField const& k)
{
    return Json{{"minpoly", to_json(k.poly())}, {"root_index", std::to_string(k.root_index())}};
}

Json to_json(FieldElement const& x)
{
    Json j = Json::array();
    for (auto const& c : x.coords())
        j.push_back(c.get_str());
    return j;
}

FieldElement element_from_json(NumberField const& k, Json const& j)
{
    if (!j.is_array() || j.size() > k.degree())
        throw Error(ErrorCode::ParseError, "field element: expected at most " + std::to_string(k.degree()) +
                                               " coordinates");
    RatVector c;
    for (auto const& x : j)
        c.push_back(rat_from_json(x));
    while (c.size() < k.degree())
        c.emplace_back(0);
    return FieldElement(k, c);
}

Json to_json(SymmetryReport const& r)
{
    Json j{{"g", to_json(r.g)},
           {"kind", r.kind == SymKind::Dirichlet ? "dirichlet" : "palindromic"},
           {"sigma", one_based(r.sigma)},
           {"automorphism", std::to_string(r.tau)},
           {"det", std::to_string(r.det)}};
    if (r.order3) {
        auto const& o = *r.order3;
        j["order3"] = Json{{"g_plus", to_json(o.g_plus)},
                           {"g_minus", to_json(o.g_minus)},
                           {"g_cubed_sign", std::to_string(o.g_cubed_sign)},
                           {"invariant_line", to_json(o.invariant_line)},
                           {"plane_normal", to_json(o.plane_normal)},
                           {"fixed_cone", o.fixed_cone.to_string()},
                           {"minus_orbit", cones_json(o.minus_orbit)}};
    }
    return j;
}

Json to_json(DirichletGroup const& g)
{
    Json gens = Json::array(), units = Json::array(), logs = Json::array();
    for (std::size_t i = 0; i < 2; ++i) {
        gens.push_back(to_json(g.generators[i]));
        units.push_back(Json{{"element", to_json(g.units[i])}, {"minpoly", to_json(minimal_polynomial(g.units[i]))}});
        Json l = Json::array();
        for (double x : g.log_vectors[i])
            l.push_back(fmt(x));
        logs.push_back(l);
    }
    Json basis = Json::array();
    for (auto const& m : g.commutant_basis)
        basis.push_back(to_json(m));
    return Json{{"torsion", to_json(g.torsion)},
                {"generators", gens},
                {"units", units},
                {"log_vectors", logs},
                {"regulator", fmt(g.regulator)},
                {"commutant_basis", basis},
                {"candidates", std::to_string(g.candidates)},
                {"units_found", std::to_string(g.units_found)},
                {"fundamental_certified", g.fundamental_certified}};
}

Json to_json(PalindromeCertificate const& c)
{
    Json j{{"found", c.found()}, {"status", status_label(c.status)}};
    if (!c.reason.empty())
        j["reason"] = c.reason;
    if (c.symmetry) {
        SymmetryReport const& r = *c.symmetry;
        j["g"] = to_json(r.g);
        j["kind"] = r.kind == SymKind::Dirichlet ? "dirichlet" : "palindromic";
        j["sigma"] = one_based(r.sigma);
        j["det"] = std::to_string(r.det);
        if (r.order3) {
            j["g_plus"] = to_json(r.order3->g_plus);
            j["invariant_line"] = to_json(r.order3->invariant_line);
            j["plane_normal"] = to_json(r.order3->plane_normal);
            j["fixed_cone"] = r.order3->fixed_cone.to_string();
            j["minus_orbit"] = cones_json(r.order3->minus_orbit);
        }
    }
    if (c.gamma)
        j["gamma"] = to_json(*c.gamma);
    if (c.case_tag) {
        j["case"] = std::string(1, c.case_tag);
        j["v1"] = to_json(c.v1);
        Json areas = Json::array();
        for (auto const& a : c.areas)
            areas.push_back(a.get_str());
        j["areas"] = areas;
        j["z"] = Json{to_json(c.z[0]), to_json(c.z[1]), to_json(c.z[2])};
        Json w = Json::array();
        for (auto const& x : c.w)
            w.push_back(x.get_str());
        j["w"] = w;
    }
    if (!c.witnesses.empty()) {
        ClassWitness const& w = c.witnesses.front();
        j["X"] = to_json(w.x);
        j["canonical_form"] = "F" + std::to_string(w.class_id);
        j["omega"] = to_json(w.omega);
        j["omega_minpoly"] = to_json(w.omega_minpoly);
        j["condition"] = condition_label(w.class_id);
        j["trace"] = to_json(w.trace);
        j["norm"] = to_json(w.norm);
        Json all = Json::array();
        for (auto const& x : c.witnesses)
            all.push_back(witness_json(x));
        j["conjugators"] = all;
    }
    j["sweep_bound"] = std::to_string(c.sweep_bound);
    j["candidates"] = std::to_string(c.candidates);
    return j;
}

Json to_json(SymmetryReport2D const& r)
{
    Json cm = Json::array(), fixed = Json::array();
    for (int x : r.cone_map)
        cm.push_back(std::to_string(x));
    for (int x : r.fixed_cones)
        fixed.push_back(std::to_string(x));
    return Json{{"g", to_json(r.g)},
                {"kind", r.kind == SymmetryKind::Dirichlet ? "dirichlet" : "palindromic"},
                {"det", std::to_string(r.det)},
                {"cone_map", cm},
                {"fixed_cones", fixed}};
}

std::string polygons_svg(std::vector<std::vector<Point2>> const& chains, int size)
{
    double lo[2] = {0, 0}, hi[2] = {0, 0};
    for (auto const& ch : chains)
        for (auto const& p : ch)
            for (int i = 0; i < 2; ++i) {
                lo[i] = std::min(lo[i], p[i].get_d());
                hi[i] = std::max(hi[i], p[i].get_d());
            }
    double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1.0});
    double pad = 16, k = (size - 2 * pad) / span;
    auto px = [&](Point2 const& p) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", pad + (p[0].get_d() - lo[0]) * k,
                      size - pad - (p[1].get_d() - lo[1]) * k);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    auto dot = [&](Point2 const& p, int r) {
        auto xy = px(p);
        os << "  <circle cx=\"" << xy.substr(0, xy.find(',')) << "\" cy=\"" << xy.substr(xy.find(',') + 1)
           << "\" r=\"" << r << "\"/>\n";
    };
    dot({Int(0), Int(0)}, 3);
    for (auto const& ch : chains) {
        os << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ch.size(); ++i)
            os << (i ? " " : "") << px(ch[i]);
        os << "\"/>\n";
        for (auto const& p : ch)
            dot(p, 2);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace klein
