#ifndef KLEIN_SAIL3D_HPP
#define KLEIN_SAIL3D_HPP

#include <array>
#include <string>
#include <vector>

#include "klein/algnum.hpp"
#include "klein/exactint.hpp"

namespace klein {

/* The algebraic continued fraction of a hyperbolic 3x3 operator.
 *
 * eigenvector is the eigenvector of a for theta (embedding 0 of field),
 * normalized to first coordinate 1; the eigenvector for eigenvalue
 * sigma_k(theta) is its image under embedding k.  covector is the left
 * eigenvector with <covector, eigenvector> = 1, so the k-th eigencoordinate
 * of x is sigma_k(<covector, x>). */
struct GeoCF {
    IntMatrix a;
    NumberField field;
    std::array<FieldElement, 3> eigenvector;
    std::array<FieldElement, 3> covector;

    /* eigenvector k as an interval vector of the given width */
    std::array<RatInterval, 3> eigenvector_interval(std::size_t k, Rat const& width) const;
    double eigenvalue_approx(std::size_t k) const;
};

GeoCF geocf_from_operator(IntMatrix const& a, std::size_t root_index = 0);

/* the integer matrix B with B (b0, b1, b2)^T = eps (b0, b1, b2)^T, b0 = 1 */
IntMatrix geocf_from_unit(std::vector<FieldElement> const& basis, FieldElement const& eps);

/* sign pattern in eigencoordinates; all signs nonzero */
struct Cone {
    std::array<int, 3> s{1, 1, 1};

    Cone operator-() const { return Cone{{-s[0], -s[1], -s[2]}}; }
    friend bool operator==(Cone const& a, Cone const& b) { return a.s == b.s; }
    friend bool operator!=(Cone const& a, Cone const& b) { return !(a == b); }
    friend bool operator<(Cone const& a, Cone const& b) { return a.s < b.s; }
    std::string to_string() const;  // "+-+"
};

/* all eight cones, ordered +++ first */
std::vector<Cone> all_cones();
Cone parse_cone(std::string const& text);

/* <covector, x> as a field element; its k-th embedding is eigencoordinate k */
FieldElement eigencoordinate(GeoCF const& g, IntVector const& x);
std::array<double, 3> eigencoordinates_approx(GeoCF const& g, IntVector const& x);

Cone locate_cone(IntVector const& p, GeoCF const& g);
/* a real point given by a vector over the field, read in embedding 0 */
Cone locate_cone(std::array<FieldElement, 3> const& p, GeoCF const& g);

struct SailVertex {
    IntVector coords;
    bool certified = false;
    friend bool operator==(SailVertex const& a, SailVertex const& b)
    {
        return a.coords == b.coords && a.certified == b.certified;
    }
};

struct SailFace {
    std::vector<std::size_t> vertices;  // counterclockwise seen from the origin
    IntVector normal;                   // primitive, positive on the cone
    Int height;                         // normal . x on the face
    bool certified = false;
    friend bool operator==(SailFace const& a, SailFace const& b)
    {
        return a.vertices == b.vertices && a.normal == b.normal && a.height == b.height &&
               a.certified == b.certified;
    }
};

struct SailPatch {
    Cone cone;
    Rat radius;
    std::vector<SailVertex> vertices;  // sorted by coordinates
    std::vector<SailFace> faces;
    /* lattice points of the cone inside the eigencoordinate box */
    std::size_t enumerated = 0;

    std::vector<IntVector> certified_vertices() const;
    friend bool operator==(SailPatch const& a, SailPatch const& b)
    {
        return a.cone == b.cone && a.radius == b.radius && a.vertices == b.vertices && a.faces == b.faces;
    }
};

/* Lattice points x of the cone with |eigencoordinate_k(x)| <= radius, their
 * hull, and the hull faces turned towards the origin.  A face is certified
 * when the simplex { x in cone : normal . x <= height } fits in the box, so no
 * lattice point outside the box can cut it; a vertex is certified when it is
 * a vertex of a certified face. */
SailPatch sail_patch(GeoCF const& g, Cone const& cone, Rat const& radius);

enum class PatchFormat { OFF, JSON };
std::string export_patch(SailPatch const& p, PatchFormat format);

}  // namespace klein

#endif
