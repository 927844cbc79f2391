#ifndef KLEIN_SYM3D_HPP
#define KLEIN_SYM3D_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "klein/algnum.hpp"
#include "klein/exactint.hpp"
#include "klein/sail3d.hpp"

namespace klein {

enum class SymKind { Dirichlet, Palindromic };

struct Order3Data {
    IntMatrix g_plus, g_minus;
    int g_cubed_sign = 1;      // g^3 = sign * I
    IntVector invariant_line;  // primitive, fixed by g_plus
    IntVector plane_normal;    // primitive, <normal, line> > 0
    Cone fixed_cone;           // contains invariant_line
    /* cones met by the g_minus orbit of the first cone other than +-fixed */
    std::vector<Cone> minus_orbit;
};

struct SymmetryReport {
    IntMatrix g;
    SymKind kind = SymKind::Dirichlet;
    /* g maps eigenline k onto eigenline sigma[k] (0-based, eigenline 0 belongs
     * to embedding 0 of the field) */
    std::array<std::size_t, 3> sigma{0, 1, 2};
    /* index into automorphisms(field) of tau with g v = mu tau(v) */
    std::size_t tau = 0;
    int det = 1;
    std::optional<Order3Data> order3;
};

/* exact: g is a symmetry iff g a g^-1 commutes with a; NotASymmetry otherwise */
SymmetryReport is_cf_symmetry(IntMatrix const& g, IntMatrix const& a);
SymmetryReport is_cf_symmetry(IntMatrix const& g, GeoCF const& cf);

/* image of a cone under a symmetry, from the signs of the multipliers */
Cone map_cone(SymmetryReport const& r, GeoCF const& cf, Cone const& c);

std::pair<IntMatrix, IntMatrix> g_plus_minus(IntMatrix const& g);
Order3Data order3_analysis(IntMatrix const& g, IntMatrix const& a);
Order3Data order3_analysis(SymmetryReport const& r, GeoCF const& cf);

struct DirichletGroup {
    IntMatrix torsion;                    // -I
    std::array<IntMatrix, 2> generators;  // Gauss-reduced in log space
    std::vector<IntMatrix> commutant_basis;
    std::array<FieldElement, 2> units;    // eigenvalues on eigenvector 0
    std::array<std::array<double, 3>, 2> log_vectors;
    double regulator = 0;
    std::size_t candidates = 0;
    std::size_t units_found = 0;
    /* unit-ness and independence are certified; fundamentality is not */
    bool fundamental_certified = false;
};

/* units of the commutant lattice among the first `search_depth` small
 * combinations of an LLL basis; InsufficientDepth below rank 2 */
DirichletGroup dirichlet_group(IntMatrix const& a, long search_depth);

enum class SearchStatus { Found, NotFound, Inconclusive };

/* X (CF(a)) in class k: X g_plus X^-1 = F_k and omega with the class relation */
struct ClassWitness {
    int class_id = 0;  // 1..4, condition a..d
    IntMatrix x;
    FieldElement omega;
    FieldElement partner;  // beta of X v = c (1, omega, partner)
    IntPolynomial omega_minpoly;
    Rat trace, norm;
    std::size_t tau = 0;  // automorphism realising the relation
};

struct PalindromeCertificate {
    SearchStatus status = SearchStatus::NotFound;
    bool found() const { return status == SearchStatus::Found; }
    std::string reason;
    std::optional<SymmetryReport> symmetry;  // with order3 data
    char case_tag = 0;                       // 'a': z1, z2, w basis; 'b': z1, z2, z3 basis
    IntVector v1;
    std::array<IntVector, 3> z;
    RatVector w;
    std::vector<Int> areas;  // twice the lattice area of each triangle
    std::vector<ClassWitness> witnesses;
    std::optional<FieldElement> gamma;  // g v = gamma tau(v)
    long sweep_bound = 0;
    std::size_t candidates = 0;
};

IntMatrix canonical_matrix(int class_id);  // F_1 .. F_4

/* every palindromic symmetry through the colon modules (M : tau M) */
PalindromeCertificate find_palindromic(IntMatrix const& a, long depth);
/* reduce a palindromic symmetry to one of F_1 .. F_4 */
PalindromeCertificate canonicalize(IntMatrix const& g, IntMatrix const& a);

/* operator A with eigenvector (1, alpha, beta) of the class, alpha the root of
 * f with index root_index; ConditionViolated, NotGalois, NoUnitFound */
IntMatrix make_class_example(int class_id, IntPolynomial const& f,
                             std::optional<FieldElement> const& unit_hint = std::nullopt,
                             std::size_t root_index = 0);

/* the (1, alpha, beta) relation of class k for a 3-vector over a field;
 * returns the automorphism index realising it */
std::optional<std::size_t> class_relation(int class_id, std::array<FieldElement, 3> const& v);

PalindromeCertificate theorem_check(IntMatrix const& a, long depth);

char const* condition_label(int class_id);
char const* status_label(SearchStatus s);

}  // namespace klein

#endif
