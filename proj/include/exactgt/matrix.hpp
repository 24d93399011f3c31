#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactgt/errors.hpp"
#include "exactgt/scalars.hpp"

namespace exactgt {

namespace detail {

template <typename T>
struct scalar_ops {
    static T zero(const T&) { return T(0); }
    static T one(const T&) { return T(1); }
    static bool is_zero(const T& x) { return x == 0; }
};

template <>
struct scalar_ops<Quad> {
    static Quad zero(const Quad& like) { return Quad::zero(like.field()); }
    static Quad one(const Quad& like) { return Quad::one(like.field()); }
    static bool is_zero(const Quad& x) { return x.is_zero(); }
};

} // namespace detail

// Dense rectangular matrix over one exact scalar domain (Int, Rat or Quad
// with a fixed field parameter). Row-major, 0-indexed.
template <typename T>
class Matrix {
public:
    Matrix(int rows, int cols, const T& fill)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, fill) {
        if (rows <= 0 || cols <= 0)
            throw DomainError("matrix dimensions must be positive");
    }

    static Matrix identity(int n, const T& exemplar) {
        Matrix m(n, n, detail::scalar_ops<T>::zero(exemplar));
        T one = detail::scalar_ops<T>::one(exemplar);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const T& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_, e_[0]);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero() const {
        for (const T& x : e_)
            if (!detail::scalar_ops<T>::is_zero(x))
                return false;
        return true;
    }

    bool is_identity() const {
        if (!square())
            return false;
        T one = detail::scalar_ops<T>::one(e_[0]);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (i == j ? !(at(i, j) == one) : !detail::scalar_ops<T>::is_zero(at(i, j)))
                    return false;
            }
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_)
            throw DomainError("matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_, detail::scalar_ops<T>::zero(x.e_[0]));
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const T& xik = x.at(i, k);
                if (detail::scalar_ops<T>::is_zero(xik))
                    continue;
                for (int j = 0; j < y.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + xik * y.at(k, j);
            }
        return r;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same_shape(x, y);
        Matrix r = x;
        for (size_t i = 0; i < r.e_.size(); ++i)
            r.e_[i] = r.e_[i] + y.e_[i];
        return r;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same_shape(x, y);
        Matrix r = x;
        for (size_t i = 0; i < r.e_.size(); ++i)
            r.e_[i] = r.e_[i] - y.e_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (T& x : r.e_)
            x = detail::scalar_ops<T>::zero(e_[0]) - x;
        return r;
    }

private:
    static void check_same_shape(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw DomainError("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<T> e_;
};

using IMat = Matrix<Int>;
using QMat = Matrix<Rat>;
using KMat = Matrix<Quad>;

IMat imat_identity(int n);
QMat qmat_identity(int n);

// Elementary matrix id + e_ij, the (i,j) entry 1-based.
IMat elementary(int d, int i, int j);

QMat to_rational(const IMat& m);
IMat to_integer(const QMat& m); // DomainError if any entry is non-integral

template <typename T>
Matrix<T> mat_pow(Matrix<T> base, unsigned long e) {
    if (!base.square())
        throw DomainError("matrix power of non-square matrix");
    Matrix<T> acc = Matrix<T>::identity(base.rows(), base.at(0, 0));
    while (e > 0) {
        if (e & 1)
            acc = acc * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return acc;
}

// Fraction-free (Bareiss) determinant; works over Int and over the field
// domains alike.
Int determinant(const IMat& m);
Rat determinant(const QMat& m);
Quad determinant(const KMat& m);

// Gauss-Jordan inverse over a field; DomainError on singular input.
QMat inverse(const QMat& m);
KMat inverse(const KMat& m);
// Integer inverse; requires |det| = 1.
IMat inverse_unimodular(const IMat& m);

int rank(const QMat& m);
int rank(const KMat& m);
int rank(const IMat& m);

template <typename T>
bool is_unipotent(const Matrix<T>& m) {
    if (!m.square())
        throw DomainError("unipotency test needs a square matrix");
    Matrix<T> n = m - Matrix<T>::identity(m.rows(), m.at(0, 0));
    Matrix<T> p = n;
    for (int k = 1; k < m.rows(); ++k) {
        if (p.is_zero())
            return true;
        p = p * n;
    }
    return p.is_zero();
}

bool rank_one_defect(const IMat& m);
bool rank_one_defect(const QMat& m);

// Least k <= cap with m^k = id; nullopt when the cap is exceeded.
// DomainError on singular input.
template <typename T>
std::optional<long> matrix_order(const Matrix<T>& m, long cap);

// The r-subsets of {0,..,d-1} in lexicographic order; the wedge basis index
// set for exterior powers.
std::vector<std::vector<int>> lex_subsets(int d, int r);

// Matrix of the r-th exterior power on the lexicographically ordered wedge
// basis x_I; entry (J, I) is the r x r minor with rows J and columns I.
template <typename T>
Matrix<T> exterior_power(const Matrix<T>& m, int r);

struct SNFResult {
    IMat u, s, v; // u * input * v = s
};

// Smith normal form with unimodular transforms. Deterministic pivot rule:
// the nonzero entry of least absolute value in the remaining block, ties by
// smallest (row, col). Diagonal entries nonnegative, each dividing the next,
// zeros last.
SNFResult smith_normal_form(const IMat& m);

// Right null space over Q as a raw basis (used through Subspace below) and
// the generic field version for Q(sqrt(D)).
std::vector<std::vector<Rat>> kernel_basis(const QMat& m);
std::vector<std::vector<Quad>> kernel_basis(const KMat& m);

// Primitive integer kernel basis of an integer matrix, via SNF.
std::vector<std::vector<Int>> integer_kernel(const IMat& m);

// Invariant factors (each > 1) of the solution group {v in (Z/n)^m : Av = 0},
// computed by lifting to Z; valid for composite n where Z/n is not a field.
std::vector<Int> mod_kernel_invariants(const IMat& a, const Int& n);

// Whether x lies in the lattice spanned by the columns of m.
bool lattice_contains(const IMat& m, const std::vector<Int>& x);

// Rational subspace in canonical form: the basis is stored as the reduced
// row echelon form of the row space spanned by the input vectors, so two
// subspaces are equal iff their canonical bases agree entrywise.
class Subspace {
public:
    Subspace(int ambient_dim, const std::vector<std::vector<Rat>>& basis);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::vector<Rat>>& basis() const { return basis_; }

    bool contains(const std::vector<Rat>& v) const;

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
    }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

private:
    int ambient_;
    std::vector<std::vector<Rat>> basis_; // canonical, each of length ambient_
};

Subspace kernel(const QMat& m);
Subspace kernel(const IMat& m);

// Basis of the space of linear functionals vanishing on s.
std::vector<std::vector<Rat>> annihilator(const Subspace& s);
Subspace intersect(const std::vector<Subspace>& spaces);

// Text format: rows separated by ';', entries by ',':  "1,0;0,1".
std::string render(const IMat& m);
std::string render(const QMat& m);
std::string render(const KMat& m);
IMat parse_int_matrix(std::string_view text);
QMat parse_rat_matrix(std::string_view text);
KMat parse_quad_matrix(std::string_view text, const Int& D);

// Canonical hash key; equal matrices over the same domain get equal keys.
std::string matrix_key(const IMat& m);
std::string matrix_key(const QMat& m);
std::string matrix_key(const KMat& m);

} // namespace exactgt
