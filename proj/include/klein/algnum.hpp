#ifndef KLEIN_ALGNUM_HPP
#define KLEIN_ALGNUM_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klein/exactint.hpp"

namespace klein {

struct RatInterval {
    Rat lo;
    Rat hi;

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(Rat const& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    double approx() const { return mid().get_d(); }
};

/* 2^-bits */
Rat dyadic_width(unsigned bits);
/* default certification width 2^-64 */
inline constexpr unsigned default_precision_bits = 64;
/* width used by fields built without an explicit precision; process-wide */
unsigned working_precision();
void set_working_precision(unsigned bits);  // InvalidArgument outside 16..4096

/* Disjoint isolating intervals, one per real root, ascending.  An interval
 * is either degenerate (an exact rational root) or has f(lo) f(hi) < 0. */
std::vector<RatInterval> isolate_real_roots(IntPolynomial const& f);
RatInterval refine_root(IntPolynomial const& f, RatInterval iv, Rat const& width);

class AlgebraicReal {
  public:
    AlgebraicReal(IntPolynomial minpoly, RatInterval interval);

    IntPolynomial const& minpoly() const { return minpoly_; }
    RatInterval const& interval() const { return interval_; }
    AlgebraicReal refined(Rat const& width) const;
    int sign() const;

  private:
    IntPolynomial minpoly_;
    RatInterval interval_;
};

/* Q[x]/(f) for a monic irreducible totally real f of degree 2 or 3.
 * Embedding 0 is the designated root; embeddings 1..n-1 are the remaining
 * real roots in ascending order. */
class NumberField {
  public:
    NumberField(IntPolynomial f, std::size_t root_index, unsigned precision_bits = 0);  // 0: working_precision()

    std::size_t degree() const { return data_->degree; }
    IntPolynomial const& poly() const { return data_->f; }
    /* index of the designated root among the ascending real roots */
    std::size_t root_index() const { return data_->root_index; }
    unsigned precision_bits() const { return data_->precision_bits; }

    /* isolating interval of sigma_k(theta) */
    RatInterval const& root_interval(std::size_t k) const { return data_->embedded_roots[k]; }
    double root_approx(std::size_t k) const { return data_->root_doubles[k]; }
    /* position of sigma_k(theta) among the ascending roots */
    std::size_t sorted_position(std::size_t k) const { return data_->order[k]; }
    /* the embedding whose root is at ascending position p */
    std::size_t embedding_at_sorted(std::size_t p) const;

    friend bool operator==(NumberField const& a, NumberField const& b);
    friend bool operator!=(NumberField const& a, NumberField const& b) { return !(a == b); }

  private:
    struct Data {
        IntPolynomial f;
        std::size_t degree = 0;
        std::size_t root_index = 0;
        unsigned precision_bits = default_precision_bits;
        std::vector<RatInterval> embedded_roots;
        std::vector<double> root_doubles;
        std::vector<std::size_t> order;
    };
    std::shared_ptr<Data const> data_;
};

class FieldElement {
  public:
    explicit FieldElement(NumberField field);  // zero
    FieldElement(NumberField field, RatVector coords);

    static FieldElement rational(NumberField const& field, Rat const& q);
    static FieldElement theta(NumberField const& field);

    NumberField const& field() const { return field_; }
    RatVector const& coords() const { return coords_; }
    bool is_zero() const;
    bool is_rational() const;

    friend FieldElement operator+(FieldElement const& a, FieldElement const& b);
    friend FieldElement operator-(FieldElement const& a, FieldElement const& b);
    friend FieldElement operator-(FieldElement const& a);
    friend FieldElement operator*(FieldElement const& a, FieldElement const& b);
    friend FieldElement operator*(Rat const& q, FieldElement const& a);
    friend bool operator==(FieldElement const& a, FieldElement const& b);
    friend bool operator!=(FieldElement const& a, FieldElement const& b) { return !(a == b); }

    std::string to_string() const;

  private:
    NumberField field_;
    RatVector coords_;
};

FieldElement fe_add(FieldElement const& a, FieldElement const& b);
FieldElement fe_mul(FieldElement const& a, FieldElement const& b);
FieldElement fe_inv(FieldElement const& a);
FieldElement fe_pow(FieldElement const& a, long e);

/* column j holds the coordinates of a * theta^j */
RatMatrix multiplication_matrix(FieldElement const& a);
Rat trace(FieldElement const& a);
Rat norm(FieldElement const& a);
/* primitive integer minimal polynomial (degree 1 or n) */
IntPolynomial minimal_polynomial(FieldElement const& a);

/* interval of width <= width containing sigma_k(a) */
RatInterval embed(FieldElement const& a, std::size_t k, Rat const& width);
double embed_approx(FieldElement const& a, std::size_t k);
/* exact sign of sigma_k(a) */
int embedding_sign(FieldElement const& a, std::size_t k);
AlgebraicReal as_algebraic_real(FieldElement const& a, std::size_t k);
/* which embedding index j has sigma_j(theta) equal to the real number
 * sigma_k(g) (g must be a conjugate of theta) */
std::size_t locate_conjugate(FieldElement const& g, std::size_t k);

/* The automorphisms theta -> g(theta) of the field, identity first.  For a
 * cubic the list has 1 (non-Galois) or 3 entries. */
std::vector<FieldElement> automorphisms(NumberField const& field);
/* tau(a) for the automorphism theta -> image */
FieldElement apply_automorphism(FieldElement const& a, FieldElement const& image);
bool is_galois(NumberField const& field);

/* A full-rank Z-module in the field, stored canonically as
 * (1/denominator) * rows of an integer HNF in power-basis coordinates. */
class FullModule {
  public:
    FullModule(NumberField field, Int denominator, IntMatrix hnf);

    NumberField const& field() const { return field_; }
    Int const& denominator() const { return den_; }
    IntMatrix const& hnf() const { return hnf_; }
    /* canonical basis read off the HNF rows */
    std::vector<FieldElement> basis() const;
    RatMatrix basis_matrix() const;
    bool contains(FieldElement const& x) const;
    /* coordinates of x in the canonical basis */
    RatVector coordinates(FieldElement const& x) const;

    friend bool operator==(FullModule const& a, FullModule const& b);
    friend bool operator!=(FullModule const& a, FullModule const& b) { return !(a == b); }

  private:
    NumberField field_;
    Int den_;
    IntMatrix hnf_;
};

FullModule module_from_basis(std::vector<FieldElement> const& elems);
FullModule scale(FieldElement const& g, FullModule const& m);
FullModule apply_automorphism(FullModule const& m, FieldElement const& image);
bool is_unit_of_module(FieldElement const& e, FullModule const& m);
/* (M : N) = { x : x N is contained in M } */
FullModule colon_module(FullModule const& m, FullModule const& n);
FullModule multiplier_ring(FullModule const& m);

}  // namespace klein

#endif
