#ifndef KLEIN_IO_HPP
#define KLEIN_IO_HPP

#include <string>

#include "json.hpp"
#include "klein/cf1d.hpp"
#include "klein/exactint.hpp"
#include "klein/sail3d.hpp"
#include "klein/sym3d.hpp"

namespace klein {

using Json = nlohmann::ordered_json;

/* Every number goes out as a decimal string. */
Json to_json(Int const& x);
Json to_json(Rat const& x);
Json to_json(IntVector const& v);
Json to_json(IntMatrix const& m);
Json to_json(IntPolynomial const& p);

/* Accepts strings or JSON integers; ParseError otherwise. */
Int int_from_json(Json const& j);
Rat rat_from_json(Json const& j);
IntVector vector_from_json(Json const& j);
IntMatrix matrix_from_json(Json const& j);
IntPolynomial poly_from_json(Json const& j);

/* "[[0,1,0],[2,0,1],[-1,1,0]]" or "0 1 0; 2 0 1; -1 1 0" */
IntMatrix parse_matrix(std::string const& text);

Json to_json(QuadraticSurd const& s);
QuadraticSurd surd_from_json(Json const& j);
Json to_json(PeriodicCF const& cf);
Json to_json(PalindromeAxes const& a);
Json to_json(Prop1Report const& r);
Json cf1d_report(QuadraticSurd const& s, long height_bound);

Json patch_to_json(SailPatch const& p);
SailPatch patch_from_json(Json const& j);

/* {"minpoly": [...], "root_index": "i"}; elements as coordinate strings "p/q" */
Json to_json(NumberField const& k);
Json to_json(FieldElement const& x);
FieldElement element_from_json(NumberField const& k, Json const& j);

/* eigenline and embedding indices are 1-based in JSON */
Json to_json(SymmetryReport const& r);
Json to_json(DirichletGroup const& g);
Json to_json(PalindromeCertificate const& c);
Json to_json(SymmetryReport2D const& r);

/* polylines in one SVG, y axis up, scaled to fit a square canvas */
std::string polygons_svg(std::vector<std::vector<Point2>> const& chains, int size = 512);

}  // namespace klein

#endif
