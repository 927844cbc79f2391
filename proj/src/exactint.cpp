#include "klein/exactint.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace klein {

std::string_view error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotTotallyReal: return "NotTotallyReal";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::PerfectSquareD: return "PerfectSquareD";
    case ErrorCode::RationalCone: return "RationalCone";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::FirstCoordinateZero: return "FirstCoordinateZero";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::EmptyPatch: return "EmptyPatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotASymmetry: return "NotASymmetry";
    case ErrorCode::NonGaloisObstruction: return "NonGaloisObstruction";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::NotGalois: return "NotGalois";
    case ErrorCode::NoUnitFound: return "NoUnitFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

Rat ratio(Int const& n, Int const& d)
{
    if (d == 0)
        throw Error(ErrorCode::DivisionByZero, "zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

namespace {

Int floor_div(Int const& a, Int const& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void check_square(IntMatrix const& m, char const* what)
{
    if (!m.is_square())
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs a square matrix");
}

}  // namespace

/* ---- IntMatrix ---------------------------------------------------------- */

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0))
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (auto const& r : rows) {
        if (r.size() != cols_)
            throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix::IntMatrix(std::vector<IntVector> const& rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.front().size() : 0;
    for (auto const& r : rows) {
        if (r.size() != cols_)
            throw Error(ErrorCode::InvalidArgument, "ragged matrix");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::vector<IntVector> const& cols)
{
    return IntMatrix(cols).transpose();
}

IntVector IntMatrix::row(std::size_t i) const
{
    return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

IntVector IntMatrix::col(std::size_t j) const
{
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

std::vector<IntVector> IntMatrix::row_list() const
{
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i)
        out.push_back(row(i));
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntVector IntMatrix::vectorize() const { return data_; }

IntMatrix IntMatrix::unvectorize(IntVector const& v, std::size_t n)
{
    if (v.size() != n * n)
        throw Error(ErrorCode::InvalidArgument, "unvectorize: wrong length");
    IntMatrix m(n, n);
    m.data_ = v;
    return m;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Int const& x) { return x == 0; });
}

bool operator==(IntMatrix const& a, IntMatrix const& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool operator<(IntMatrix const& a, IntMatrix const& b)
{
    if (a.rows_ != b.rows_)
        return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_)
        return a.cols_ < b.cols_;
    return a.data_ < b.data_;
}

IntMatrix operator*(IntMatrix const& a, IntMatrix const& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorCode::InvalidArgument, "matrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            Int const& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += x * b(k, j);
        }
    return c;
}

IntMatrix operator+(IntMatrix const& a, IntMatrix const& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorCode::InvalidArgument, "matrix sum: shape mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

IntMatrix operator-(IntMatrix const& a, IntMatrix const& b) { return a + (-b); }

IntMatrix operator-(IntMatrix const& a)
{
    IntMatrix c = a;
    for (auto& x : c.data_)
        x = -x;
    return c;
}

IntMatrix operator*(Int const& s, IntMatrix const& a)
{
    IntMatrix c = a;
    for (auto& x : c.data_)
        x *= s;
    return c;
}

IntVector operator*(IntMatrix const& a, IntVector const& v)
{
    if (a.cols_ != v.size())
        throw Error(ErrorCode::InvalidArgument, "matrix-vector product: shape mismatch");
    IntVector r(a.rows_, Int(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            r[i] += a(i, j) * v[j];
    return r;
}

std::ostream& operator<<(std::ostream& os, IntMatrix const& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

/* ---- RatMatrix ---------------------------------------------------------- */

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0))
{
}

RatMatrix::RatMatrix(IntMatrix const& m) : RatMatrix(m.rows(), m.cols())
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = Rat(m(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool RatMatrix::is_integral() const
{
    return std::all_of(data_.begin(), data_.end(),
                       [](Rat const& x) { return x.get_den() == 1; });
}

IntMatrix RatMatrix::to_int() const
{
    if (!is_integral())
        throw Error(ErrorCode::InvalidArgument, "matrix has non-integer entries");
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(i, j).get_num();
    return m;
}

bool operator==(RatMatrix const& a, RatMatrix const& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RatMatrix operator*(RatMatrix const& a, RatMatrix const& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorCode::InvalidArgument, "matrix product: shape mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            Rat const& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += x * b(k, j);
        }
    return c;
}

RatVector operator*(RatMatrix const& a, RatVector const& v)
{
    if (a.cols_ != v.size())
        throw Error(ErrorCode::InvalidArgument, "matrix-vector product: shape mismatch");
    RatVector r(a.rows_, Rat(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            r[i] += a(i, j) * v[j];
    return r;
}

/* ---- IntPolynomial ------------------------------------------------------ */

IntPolynomial::IntPolynomial(IntVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Int const& IntPolynomial::coeff(int i) const
{
    static Int const zero(0);
    if (i < 0 || i > degree())
        return zero;
    return coeffs_[static_cast<std::size_t>(i)];
}

Int IntPolynomial::content() const
{
    Int g(0);
    for (auto const& c : coeffs_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::normalized() const
{
    if (is_zero())
        return *this;
    Int g = content();
    if (leading() < 0)
        g = -g;
    IntVector c = coeffs_;
    for (auto& x : c)
        x /= g;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::derivative() const
{
    IntVector d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
    return IntPolynomial(std::move(d));
}

Rat IntPolynomial::eval(Rat const& x) const
{
    Rat r(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * x + Rat(*it);
    return r;
}

int IntPolynomial::sign_at(Rat const& x) const { return sgn(eval(x)); }

std::string IntPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Int c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        if (c < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        Int a = abs(c);
        if (a != 1 || i == 0)
            os << a;
        if (i >= 1)
            os << "x";
        if (i >= 2)
            os << "^" << i;
        first = false;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, IntPolynomial const& p) { return os << p.to_string(); }

/* ---- determinants ------------------------------------------------------- */

Int det(IntMatrix const& m)
{
    check_square(m, "det");
    std::size_t n = m.n();
    if (n == 0)
        return 1;
    /* Bareiss fraction-free elimination */
    IntMatrix a = m;
    int sign = 1;
    Int prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rat det(RatMatrix const& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorCode::InvalidArgument, "det needs a square matrix");
    std::size_t n = m.rows();
    RatMatrix a = m;
    Rat d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            Rat f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

IntPolynomial charpoly(IntMatrix const& m)
{
    check_square(m, "charpoly");
    std::size_t n = m.n();
    /* det(xI - m) = sum_k (-1)^k E_k x^(n-k), E_k = sum of k x k principal
     * minors; integer-only, and n is tiny */
    IntVector c(n + 1, Int(0));
    c[n] = 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        IntMatrix sub(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                sub(i, j) = m(idx[i], idx[j]);
        std::size_t k = idx.size();
        Int minor = det(sub);
        if (k % 2)
            c[n - k] -= minor;
        else
            c[n - k] += minor;
    }
    return IntPolynomial(std::move(c));
}

bool is_unimodular(IntMatrix const& m)
{
    if (!m.is_square())
        return false;
    Int d = det(m);
    return d == 1 || d == -1;
}

RatMatrix inverse(RatMatrix const& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorCode::InvalidArgument, "inverse needs a square matrix");
    std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0)
            ++p;
        if (p == n)
            throw Error(ErrorCode::SingularMatrix, "matrix is singular");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        Rat piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0)
                continue;
            Rat f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

RatMatrix inverse_rat(IntMatrix const& m)
{
    check_square(m, "inverse_rat");
    return inverse(RatMatrix(m));
}

IntMatrix adjugate(IntMatrix const& m)
{
    check_square(m, "adjugate");
    std::size_t n = m.n();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i)
                    continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j)
                        continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            Int cof = det(minor);
            adj(j, i) = ((i + j) % 2) ? Int(-cof) : cof;
        }
    return adj;
}

IntMatrix inverse_unimodular(IntMatrix const& m)
{
    Int d = det(m);
    if (d != 1 && d != -1)
        throw Error(ErrorCode::SingularMatrix, "matrix is not in GL_n(Z)");
    return d * adjugate(m);
}

IntMatrix power(IntMatrix const& m, long e)
{
    check_square(m, "power");
    IntMatrix base = e < 0 ? inverse_unimodular(m) : m;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    IntMatrix r = IntMatrix::identity(m.n());
    while (k) {
        if (k & 1)
            r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::size_t rank(RatMatrix a)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0)
                continue;
            Rat f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

RatVector solve(RatMatrix const& m, RatVector const& b)
{
    return inverse(m) * b;
}

/* ---- lattices ----------------------------------------------------------- */

HnfWithTransform hnf_with_transform(IntMatrix const& m)
{
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(rows);
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(h(a, j), h(b, j));
        for (std::size_t j = 0; j < rows; ++j)
            std::swap(u(a, j), u(b, j));
    };
    auto sub_row = [&](std::size_t dst, std::size_t src, Int const& q) {
        if (q == 0)
            return;
        for (std::size_t j = 0; j < cols; ++j)
            h(dst, j) -= q * h(src, j);
        for (std::size_t j = 0; j < rows; ++j)
            u(dst, j) -= q * u(src, j);
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < cols; ++j)
            h(r, j) = -h(r, j);
        for (std::size_t j = 0; j < rows; ++j)
            u(r, j) = -u(r, j);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (h(i, c) != 0 && (best == rows || abs(h(i, c)) < abs(h(best, c))))
                    best = i;
            if (best == rows)
                break;
            if (best != r)
                swap_rows(best, r);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0)
                    continue;
                sub_row(i, r, floor_div(h(i, c), h(r, c)));
                if (h(i, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (h(r, c) == 0)
            continue;
        if (h(r, c) < 0)
            negate_row(r);
        for (std::size_t i = 0; i < r; ++i)
            sub_row(i, r, floor_div(h(i, c), h(r, c)));
        ++r;
    }
    return {std::move(h), std::move(u), r};
}

IntMatrix hnf_row(std::vector<IntVector> const& basis)
{
    if (basis.empty())
        return IntMatrix();
    auto res = hnf_with_transform(IntMatrix(basis));
    IntMatrix out(res.rank, res.h.cols());
    for (std::size_t i = 0; i < res.rank; ++i)
        for (std::size_t j = 0; j < res.h.cols(); ++j)
            out(i, j) = res.h(i, j);
    return out;
}

std::vector<IntVector> integer_kernel(IntMatrix const& m)
{
    /* rows of U with U m^T = H beyond rank(H) span the left kernel of m^T */
    auto res = hnf_with_transform(m.transpose());
    std::vector<IntVector> ker;
    for (std::size_t i = res.rank; i < res.u.rows(); ++i)
        ker.push_back(res.u.row(i));
    if (ker.empty())
        return ker;
    return hnf_row(ker).row_list();
}

Int dot(IntVector const& a, IntVector const& b)
{
    Int s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

IntVector primitive_part(IntVector v)
{
    Int g(0);
    for (auto const& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0)
        return v;
    for (auto& x : v)
        x /= g;
    return v;
}

std::vector<IntVector> lll_reduce(std::vector<IntVector> b)
{
    std::size_t k = b.size();
    if (k <= 1)
        return b;
    std::vector<RatVector> bstar(k);
    std::vector<Rat> bnorm(k);
    std::vector<std::vector<Rat>> mu(k, std::vector<Rat>(k));
    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < k; ++i) {
            bstar[i].assign(b[i].begin(), b[i].end());
            for (std::size_t j = 0; j < i; ++j) {
                Rat s(0);
                for (std::size_t t = 0; t < b[i].size(); ++t)
                    s += Rat(b[i][t]) * bstar[j][t];
                mu[i][j] = bnorm[j] == 0 ? Rat(0) : Rat(s / bnorm[j]);
                for (std::size_t t = 0; t < b[i].size(); ++t)
                    bstar[i][t] -= mu[i][j] * bstar[j][t];
            }
            bnorm[i] = 0;
            for (auto const& x : bstar[i])
                bnorm[i] += x * x;
        }
    };
    gram_schmidt();
    std::size_t i = 1;
    Rat const delta(3, 4);
    while (i < k) {
        for (std::size_t j = i; j-- > 0;) {
            Rat m = mu[i][j];
            Int q;
            /* round to nearest */
            Rat shifted = m + Rat(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
            if (q != 0) {
                for (std::size_t t = 0; t < b[i].size(); ++t)
                    b[i][t] -= q * b[j][t];
                gram_schmidt();
            }
        }
        if (bnorm[i] >= (delta - mu[i][i - 1] * mu[i][i - 1]) * bnorm[i - 1]) {
            ++i;
        } else {
            std::swap(b[i], b[i - 1]);
            gram_schmidt();
            i = std::max<std::size_t>(i - 1, 1);
        }
    }
    return b;
}

std::vector<IntMatrix> commutant_lattice(IntMatrix const& a)
{
    check_square(a, "commutant_lattice");
    std::size_t n = a.n();
    if (!is_irreducible(charpoly(a)))
        throw Error(ErrorCode::ReduciblePolynomial, "characteristic polynomial is reducible");
    /* unknown X (row-major), equations (XA - AX)_{ij} = 0 */
    IntMatrix sys(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t eq = i * n + j;
            for (std::size_t k = 0; k < n; ++k) {
                sys(eq, i * n + k) += a(k, j);
                sys(eq, k * n + j) -= a(i, k);
            }
        }
    std::vector<IntMatrix> out;
    for (auto const& v : integer_kernel(sys))
        out.push_back(IntMatrix::unvectorize(v, n));
    return out;
}

/* ---- polynomial facts --------------------------------------------------- */

namespace {

std::vector<Int> positive_divisors(Int x)
{
    x = abs(x);
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= x; ++d) {
        if (x % d == 0) {
            small.push_back(d);
            if (d * d != x)
                large.push_back(x / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rat> rational_roots(IntPolynomial const& f)
{
    std::vector<Rat> roots;
    if (f.degree() < 1)
        return roots;
    IntPolynomial g = f;
    /* strip x^k factors */
    if (g.coeff(0) == 0) {
        roots.emplace_back(0);
        IntVector c = g.coeffs();
        while (!c.empty() && c.front() == 0)
            c.erase(c.begin());
        g = IntPolynomial(c);
        if (g.degree() < 1)
            return roots;
    }
    for (auto const& q : positive_divisors(g.leading()))
        for (auto const& p : positive_divisors(g.coeff(0)))
            for (int s : {1, -1}) {
                Rat r(s * p, q);
                r.canonicalize();
                if (g.eval(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_irreducible(IntPolynomial const& f)
{
    int d = f.degree();
    if (d < 1)
        return false;
    if (d > 3)
        throw Error(ErrorCode::UnsupportedDimension, "irreducibility test supports degree <= 3");
    if (d == 1)
        return true;
    return rational_roots(f).empty();
}

Int discriminant(IntPolynomial const& f)
{
    int d = f.degree();
    if (d == 2) {
        Int const &c = f.coeff(0), &b = f.coeff(1), &a = f.coeff(2);
        return b * b - 4 * a * c;
    }
    if (d == 3) {
        Int const &dd = f.coeff(0), &c = f.coeff(1), &b = f.coeff(2), &a = f.coeff(3);
        return 18 * a * b * c * dd - 4 * b * b * b * dd + b * b * c * c - 4 * a * c * c * c -
               27 * a * a * dd * dd;
    }
    throw Error(ErrorCode::UnsupportedDimension, "discriminant supports degree 2 and 3");
}

bool is_square(Int const& x)
{
    return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

bool is_hyperbolic(IntMatrix const& a)
{
    if (!a.is_square() || (a.n() != 2 && a.n() != 3))
        throw Error(ErrorCode::UnsupportedDimension, "only 2x2 and 3x3 operators are supported");
    if (!is_unimodular(a))
        return false;
    IntPolynomial chi = charpoly(a);
    if (!is_irreducible(chi))
        return false;
    return discriminant(chi) > 0;
}

}  // namespace klein
