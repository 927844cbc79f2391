#ifndef KLEIN_EXACTINT_HPP
#define KLEIN_EXACTINT_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "klein/error.hpp"

namespace klein {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/* n/d in lowest terms; DivisionByZero when d = 0 */
Rat ratio(Int const& n, Int const& d);

/* Dense matrix over Z, row-major.  Most of the library works with square
 * 2x2 and 3x3 operators, but the lattice routines (kernels, HNF) need
 * rectangular shapes too. */
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    explicit IntMatrix(std::vector<IntVector> const& rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(std::vector<IntVector> const& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::size_t n() const { return rows_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector col(std::size_t j) const;
    std::vector<IntVector> row_list() const;

    IntMatrix transpose() const;
    /* flatten row-major; used for commutant lattices */
    IntVector vectorize() const;
    static IntMatrix unvectorize(IntVector const& v, std::size_t n);

    bool is_zero() const;

    friend bool operator==(IntMatrix const& a, IntMatrix const& b);
    friend bool operator!=(IntMatrix const& a, IntMatrix const& b) { return !(a == b); }
    friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b);
    friend IntMatrix operator+(IntMatrix const& a, IntMatrix const& b);
    friend IntMatrix operator-(IntMatrix const& a, IntMatrix const& b);
    friend IntMatrix operator-(IntMatrix const& a);
    friend IntMatrix operator*(Int const& s, IntMatrix const& a);
    friend IntVector operator*(IntMatrix const& a, IntVector const& v);
    friend bool operator<(IntMatrix const& a, IntMatrix const& b);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, IntMatrix const& m);

class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    explicit RatMatrix(IntMatrix const& m);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Rat const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMatrix transpose() const;
    bool is_integral() const;
    /* throws InvalidArgument if some entry is not an integer */
    IntMatrix to_int() const;

    friend bool operator==(RatMatrix const& a, RatMatrix const& b);
    friend RatMatrix operator*(RatMatrix const& a, RatMatrix const& b);
    friend RatVector operator*(RatMatrix const& a, RatVector const& v);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/* Univariate polynomial with integer coefficients, constant term first.
 * The zero polynomial has an empty coefficient list. */
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(IntVector coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    IntVector const& coeffs() const { return coeffs_; }
    Int const& coeff(int i) const;
    Int const& leading() const { return coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    Int content() const;
    /* primitive, positive leading coefficient */
    IntPolynomial normalized() const;
    IntPolynomial derivative() const;

    Rat eval(Rat const& x) const;
    int sign_at(Rat const& x) const;

    std::string to_string() const;

    friend bool operator==(IntPolynomial const& a, IntPolynomial const& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(IntPolynomial const& a, IntPolynomial const& b) { return !(a == b); }

  private:
    void trim();
    IntVector coeffs_;
};

std::ostream& operator<<(std::ostream& os, IntPolynomial const& p);

/* -- determinants and inverses ------------------------------------------ */

Int det(IntMatrix const& m);
Rat det(RatMatrix const& m);
IntPolynomial charpoly(IntMatrix const& m);
bool is_unimodular(IntMatrix const& m);
RatMatrix inverse_rat(IntMatrix const& m);
RatMatrix inverse(RatMatrix const& m);
/* inverse of a matrix in GL_n(Z); NotAUnit-free: throws SingularMatrix if
 * det is not +-1 */
IntMatrix inverse_unimodular(IntMatrix const& m);
IntMatrix adjugate(IntMatrix const& m);
IntMatrix power(IntMatrix const& m, long e);
std::size_t rank(RatMatrix m);
/* unique solution of m x = b; SingularMatrix if m is singular */
RatVector solve(RatMatrix const& m, RatVector const& b);

/* -- lattices ------------------------------------------------------------ */

/* Row-style Hermite normal form of the lattice spanned by `basis`: upper
 * triangular (echelon), positive pivots, entries above a pivot in
 * [0, pivot).  Zero rows are dropped, so the result has rank() rows. */
IntMatrix hnf_row(std::vector<IntVector> const& basis);

struct HnfWithTransform {
    IntMatrix h;  // all rows, zero rows at the bottom
    IntMatrix u;  // unimodular, u * input = h
    std::size_t rank = 0;
};
HnfWithTransform hnf_with_transform(IntMatrix const& m);

/* Z-basis (HNF rows) of { x in Z^cols : m x = 0 } */
std::vector<IntVector> integer_kernel(IntMatrix const& m);

/* LLL-reduced basis (delta = 3/4) of the lattice spanned by independent rows */
std::vector<IntVector> lll_reduce(std::vector<IntVector> basis);

IntVector primitive_part(IntVector v);
Int dot(IntVector const& a, IntVector const& b);

std::vector<IntMatrix> commutant_lattice(IntMatrix const& a);

/* -- polynomial facts used for hyperbolicity ------------------------------ */

std::vector<Rat> rational_roots(IntPolynomial const& f);
/* irreducibility over Q; degrees 1..3 only (UnsupportedDimension above) */
bool is_irreducible(IntPolynomial const& f);
Int discriminant(IntPolynomial const& f);
bool is_square(Int const& x);
bool is_hyperbolic(IntMatrix const& a);

}  // namespace klein

#endif
