#ifndef KLEIN_CF1D_HPP
#define KLEIN_CF1D_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "klein/exactint.hpp"

namespace klein {

/* x + y sqrt(D), D > 1 not a square.  y = 0 gives a rational number. */
class QuadNum {
  public:
    QuadNum(Rat x, Rat y, Int d);

    Rat const& x() const { return x_; }
    Rat const& y() const { return y_; }
    Int const& d() const { return d_; }
    bool is_rational() const { return y_ == 0; }

    QuadNum conj() const { return QuadNum(x_, -y_, d_); }
    int sign() const;
    Int floor() const;
    double approx() const;
    Rat trace() const { return 2 * x_; }
    Rat norm() const { return x_ * x_ - y_ * y_ * Rat(d_); }

    friend QuadNum operator+(QuadNum const& a, QuadNum const& b);
    friend QuadNum operator-(QuadNum const& a, QuadNum const& b);
    friend QuadNum operator-(QuadNum const& a);
    friend QuadNum operator*(QuadNum const& a, QuadNum const& b);
    friend QuadNum operator/(QuadNum const& a, QuadNum const& b);
    friend bool operator==(QuadNum const& a, QuadNum const& b);
    friend bool operator<(QuadNum const& a, QuadNum const& b) { return (a - b).sign() < 0; }

    std::string to_string() const;

  private:
    Rat x_, y_;
    Int d_;
};

QuadNum quad(QuadNum const& like, Rat const& q);
/* the same number written over sqrt(d); InvalidArgument if not in Q(sqrt d) */
QuadNum rebase(QuadNum const& v, Int const& d);

/* (P + sqrt(D)) / Q with Q | D - P^2 */
struct QuadraticSurd {
    Int P, Q, D;

    QuadNum value() const;
    std::string to_string() const;
    friend bool operator==(QuadraticSurd const& a, QuadraticSurd const& b)
    {
        return a.P == b.P && a.Q == b.Q && a.D == b.D;
    }
};

/* validates D and Q, then rescales into canonical form */
QuadraticSurd make_surd(Int P, Int Q, Int D);
/* parses "(P+sqrt(D))/Q", "(P-sqrt(D))/Q" is rejected; ParseError with the
 * offending position in the message */
QuadraticSurd parse_surd(std::string const& text);
/* equality of the real numbers, across different canonical forms */
bool same_value(QuadraticSurd const& a, QuadraticSurd const& b);
/* an irrational quadratic number written as (P + sqrt(D)) / Q */
QuadraticSurd to_surd(QuadNum const& v);

struct PeriodicCF {
    std::vector<Int> preperiod;
    std::vector<Int> period;
};

PeriodicCF cf_expand(QuadraticSurd const& s);
/* the real number with the given eventually periodic expansion */
QuadNum cf_value(PeriodicCF const& cf);
std::size_t minimal_period(std::vector<Int> const& seq);
bool same_up_to_rotation(std::vector<Int> const& a, std::vector<Int> const& b);

QuadraticSurd surd_conjugate(QuadraticSurd const& s);
Rat surd_trace(QuadraticSurd const& s);
Rat surd_norm(QuadraticSurd const& s);
/* -1/s' as a surd */
QuadraticSurd negative_reciprocal_conjugate(QuadraticSurd const& s);
bool is_reduced(QuadraticSurd const& s);
/* all reduced surds (P+sqrt(D))/Q with D <= max_d, ordered by (D, P, Q) */
std::vector<QuadraticSurd> reduced_surds(long max_d);

/* -- cyclic palindromes ---------------------------------------------------- */

enum class AxisType { ThroughElement, BetweenElements };

/* ThroughElement: position k (1-based) is on the axis.
 * BetweenElements: the axis passes between k and k+1 (cyclically). */
struct Axis {
    AxisType type;
    std::size_t position;
    friend bool operator==(Axis const& a, Axis const& b) { return a.type == b.type && a.position == b.position; }
    friend bool operator<(Axis const& a, Axis const& b)
    {
        return a.type != b.type ? a.type < b.type : a.position < b.position;
    }
};

struct PalindromeAxes {
    bool is_palindrome = false;
    std::vector<Axis> axes;
};

PalindromeAxes is_cyclic_palindrome(std::vector<Int> const& seq);

/* -- Klein polygons ---------------------------------------------------------- */

using Point2 = std::array<Int, 2>;

/* The cone spanned by s1*(1, alpha) and s2*(1, beta), s1, s2 = +-1.
 * Returns `count` consecutive sail vertices ordered from the beta side to
 * the alpha side.  Every vertex is certified locally (edges at lattice
 * height one, strictly convex turns). */
std::vector<Point2> klein_polygon(QuadNum const& alpha, QuadNum const& beta, std::array<int, 2> cone,
                                  std::size_t count);
std::vector<Point2> klein_polygon(QuadraticSurd const& alpha, QuadraticSurd const& beta,
                                  std::array<int, 2> cone, std::size_t count);

/* integer length of a lattice segment and the integer angle (|det| of the
 * primitive edge vectors) at each inner vertex */
std::vector<Int> edge_lengths(std::vector<Point2> const& chain);
std::vector<Int> vertex_angles(std::vector<Point2> const& chain);

/* -- 2D symmetries --------------------------------------------------------- */

enum class SymmetryKind { Dirichlet, Palindromic };

struct SymmetryReport2D {
    IntMatrix g;
    SymmetryKind kind;
    int det;
    /* cone images: cones indexed by sign pattern (++, +-, -+, --) -> 0..3 */
    std::array<int, 4> cone_map;
    std::vector<int> fixed_cones;
};

/* alpha with A (1, alpha)^T = lambda (1, alpha)^T for the larger |lambda| */
QuadNum eigen_slope_2d(IntMatrix const& a);
std::vector<SymmetryReport2D> find_symmetries_2d(IntMatrix const& a, long entry_bound);

/* operator with eigenvector (1, s): the period product, conjugated through
 * the preperiod */
IntMatrix operator_from_surd(QuadraticSurd const& s);

/* -- Proposition-1 style witnesses ----------------------------------------- */

enum class Prop1Condition { TraceZero = 0, TraceOne = 1, NormOne = 2, NormMinusOne = 3 };

struct Prop1Witness {
    Int a, b, c, d;  // omega = (a s + b) / (c s + d), ad - bc = +-1
    QuadNum omega;
    Rat trace, norm;
    Int height;
};

struct Prop1Report {
    long height_bound = 0;
    /* empty slot: nothing within the bound (inconclusive, never "false") */
    std::array<std::optional<Prop1Witness>, 4> witnesses;
    bool any() const
    {
        for (auto const& w : witnesses)
            if (w)
                return true;
        return false;
    }
};

Prop1Report prop1_witness_search(QuadraticSurd const& s, long height_bound);
char const* condition_label(Prop1Condition c);

}  // namespace klein

#endif
