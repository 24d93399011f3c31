#include "exactgt/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace exactgt {

IMat imat_identity(int n) { return IMat::identity(n, Int(0)); }
QMat qmat_identity(int n) { return QMat::identity(n, Rat(0)); }

IMat elementary(int d, int i, int j) {
    if (i < 1 || j < 1 || i > d || j > d || i == j)
        throw DomainError("elementary matrix needs distinct 1-based indices within dimension");
    IMat m = imat_identity(d);
    m.at(i - 1, j - 1) = 1;
    return m;
}

QMat to_rational(const IMat& m) {
    QMat r(m.rows(), m.cols(), Rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r.at(i, j) = Rat(m.at(i, j));
    return r;
}

IMat to_integer(const QMat& m) {
    IMat r(m.rows(), m.cols(), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (!is_integral(m.at(i, j)))
                throw DomainError("matrix entry " + to_string(m.at(i, j)) + " is not an integer");
            r.at(i, j) = numerator(m.at(i, j));
        }
    return r;
}

namespace {

Int exact_div(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
Rat exact_div(const Rat& a, const Rat& b) { return Rat(a / b); }
Quad exact_div(const Quad& a, const Quad& b) { return a / b; }

template <typename T>
T bareiss_det(Matrix<T> m) {
    if (!m.square())
        throw DomainError("determinant of non-square matrix");
    const int n = m.rows();
    T one = detail::scalar_ops<T>::one(m.at(0, 0));
    T prev = one;
    bool neg = false;
    for (int k = 0; k + 1 < n; ++k) {
        if (detail::scalar_ops<T>::is_zero(m.at(k, k))) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (!detail::scalar_ops<T>::is_zero(m.at(i, k))) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0)
                return detail::scalar_ops<T>::zero(one);
            for (int j = 0; j < n; ++j)
                std::swap(m.at(k, j), m.at(swap_row, j));
            neg = !neg;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                T t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = exact_div(t, prev);
            }
            m.at(i, k) = detail::scalar_ops<T>::zero(one);
        }
        prev = m.at(k, k);
    }
    T d = m.at(n - 1, n - 1);
    return neg ? detail::scalar_ops<T>::zero(one) - d : d;
}

// Reduced row echelon form in place; returns the pivot column per pivot row.
template <typename T>
std::vector<int> rref(Matrix<T>& m) {
    std::vector<int> pivots;
    int row = 0;
    T one = detail::scalar_ops<T>::one(m.at(0, 0));
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!detail::scalar_ops<T>::is_zero(m.at(i, col))) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m.at(p, j), m.at(row, j));
        T inv_pivot = exact_div(one, m.at(row, col));
        for (int j = col; j < m.cols(); ++j)
            m.at(row, j) = m.at(row, j) * inv_pivot;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || detail::scalar_ops<T>::is_zero(m.at(i, col)))
                continue;
            T f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename T>
Matrix<T> gauss_inverse(const Matrix<T>& m) {
    if (!m.square())
        throw DomainError("inverse of non-square matrix");
    const int n = m.rows();
    T zero = detail::scalar_ops<T>::zero(m.at(0, 0));
    Matrix<T> aug(n, 2 * n, zero);
    T one = detail::scalar_ops<T>::one(m.at(0, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = one;
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n)
        throw DomainError("matrix is singular");
    Matrix<T> r(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.at(i, j) = aug.at(i, n + j);
    return r;
}

template <typename T>
std::vector<std::vector<T>> kernel_from_rref(const Matrix<T>& m) {
    Matrix<T> r = m;
    std::vector<int> pivots = rref(r);
    T zero = detail::scalar_ops<T>::zero(m.at(0, 0));
    T one = detail::scalar_ops<T>::one(m.at(0, 0));
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<T> v(m.cols(), zero);
        v[f] = one;
        for (size_t row = 0; row < pivots.size(); ++row)
            v[pivots[row]] = zero - r.at(static_cast<int>(row), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

Int determinant(const IMat& m) { return bareiss_det(m); }
Rat determinant(const QMat& m) { return bareiss_det(m); }
Quad determinant(const KMat& m) { return bareiss_det(m); }

QMat inverse(const QMat& m) { return gauss_inverse(m); }
KMat inverse(const KMat& m) { return gauss_inverse(m); }

IMat inverse_unimodular(const IMat& m) {
    Int d = determinant(m);
    if (d != 1 && d != -1)
        throw DomainError("matrix is not unimodular (det " + to_string(d) + ")");
    return to_integer(gauss_inverse(to_rational(m)));
}

int rank(const QMat& m) {
    QMat r = m;
    return static_cast<int>(rref(r).size());
}

int rank(const KMat& m) {
    KMat r = m;
    return static_cast<int>(rref(r).size());
}

int rank(const IMat& m) { return rank(to_rational(m)); }

bool rank_one_defect(const IMat& m) {
    if (!m.square())
        throw DomainError("rank-one test needs a square matrix");
    return rank(m - imat_identity(m.rows())) == 1;
}

bool rank_one_defect(const QMat& m) {
    if (!m.square())
        throw DomainError("rank-one test needs a square matrix");
    return rank(m - qmat_identity(m.rows())) == 1;
}

template <typename T>
std::optional<long> matrix_order(const Matrix<T>& m, long cap) {
    if (!m.square())
        throw DomainError("order of non-square matrix");
    if (detail::scalar_ops<T>::is_zero(determinant(m)))
        throw DomainError("order of singular matrix");
    if (cap < 1)
        throw DomainError("matrix_order cap must be >= 1");
    Matrix<T> acc = m;
    for (long k = 1; k <= cap; ++k) {
        if (acc.is_identity())
            return k;
        acc = acc * m;
    }
    return std::nullopt;
}

template std::optional<long> matrix_order<Int>(const Matrix<Int>&, long);
template std::optional<long> matrix_order<Rat>(const Matrix<Rat>&, long);
template std::optional<long> matrix_order<Quad>(const Matrix<Quad>&, long);

std::vector<std::vector<int>> lex_subsets(int d, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    for (int i = 0; i < r; ++i)
        cur[i] = i;
    if (r == 0) {
        out.push_back({});
        return out;
    }
    if (r > d)
        return out;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == d - r + i)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

template <typename T>
Matrix<T> exterior_power(const Matrix<T>& m, int r) {
    if (!m.square())
        throw DomainError("exterior power of non-square matrix");
    const int d = m.rows();
    if (r < 0 || r > d)
        throw DomainError("exterior power index out of range");
    T one = detail::scalar_ops<T>::one(m.at(0, 0));
    if (r == 0)
        return Matrix<T>::identity(1, one);
    std::vector<std::vector<int>> subsets = lex_subsets(d, r);
    const int n = static_cast<int>(subsets.size());
    Matrix<T> w(n, n, detail::scalar_ops<T>::zero(one));
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            Matrix<T> minor(r, r, detail::scalar_ops<T>::zero(one));
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    minor.at(a, b) = m.at(subsets[row][a], subsets[col][b]);
            w.at(row, col) = determinant(minor);
        }
    }
    return w;
}

template Matrix<Int> exterior_power<Int>(const Matrix<Int>&, int);
template Matrix<Rat> exterior_power<Rat>(const Matrix<Rat>&, int);
template Matrix<Quad> exterior_power<Quad>(const Matrix<Quad>&, int);

namespace {

void add_row_multiple(IMat& m, int dst, int src, const Int& f) {
    for (int j = 0; j < m.cols(); ++j)
        m.at(dst, j) += f * m.at(src, j);
}

void add_col_multiple(IMat& m, int dst, int src, const Int& f) {
    for (int i = 0; i < m.rows(); ++i)
        m.at(i, dst) += f * m.at(i, src);
}

void swap_rows(IMat& m, int a, int b) {
    if (a == b)
        return;
    for (int j = 0; j < m.cols(); ++j)
        std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IMat& m, int a, int b) {
    if (a == b)
        return;
    for (int i = 0; i < m.rows(); ++i)
        std::swap(m.at(i, a), m.at(i, b));
}

void negate_row(IMat& m, int r) {
    for (int j = 0; j < m.cols(); ++j)
        m.at(r, j) = -m.at(r, j);
}

// Smallest nonzero |entry| in the block with corner (t,t); ties by (row,col).
bool find_pivot(const IMat& a, int t, int& pi, int& pj) {
    bool found = false;
    Int best;
    for (int i = t; i < a.rows(); ++i)
        for (int j = t; j < a.cols(); ++j) {
            if (a.at(i, j) == 0)
                continue;
            Int v = abs(a.at(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pi = i;
                pj = j;
            }
        }
    return found;
}

Int tdiv(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SNFResult smith_normal_form(const IMat& m) {
    IMat a = m;
    IMat u = imat_identity(m.rows());
    IMat v = imat_identity(m.cols());
    const int steps = std::min(m.rows(), m.cols());

    for (int t = 0; t < steps; ++t) {
        while (true) {
            int pi = 0, pj = 0;
            if (!find_pivot(a, t, pi, pj))
                break;
            swap_rows(a, t, pi);
            swap_rows(u, t, pi);
            swap_cols(a, t, pj);
            swap_cols(v, t, pj);

            bool clean = true;
            for (int i = t + 1; i < a.rows(); ++i) {
                if (a.at(i, t) == 0)
                    continue;
                Int q = -tdiv(a.at(i, t), a.at(t, t));
                add_row_multiple(a, i, t, q);
                add_row_multiple(u, i, t, q);
                if (a.at(i, t) != 0)
                    clean = false;
            }
            for (int j = t + 1; j < a.cols(); ++j) {
                if (a.at(t, j) == 0)
                    continue;
                Int q = -tdiv(a.at(t, j), a.at(t, t));
                add_col_multiple(a, j, t, q);
                add_col_multiple(v, j, t, q);
                if (a.at(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Pivot divides the remaining block; if not, fold the offending
            // row in and continue reducing.
            bool divisible = true;
            for (int i = t + 1; i < a.rows() && divisible; ++i)
                for (int j = t + 1; j < a.cols() && divisible; ++j)
                    if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(t, t).get_mpz_t())) {
                        add_row_multiple(a, t, i, Int(1));
                        add_row_multiple(u, t, i, Int(1));
                        divisible = false;
                    }
            if (divisible)
                break;
        }
        if (a.at(t, t) < 0) {
            negate_row(a, t);
            negate_row(u, t);
        }
    }
    return SNFResult{u, a, v};
}

std::vector<std::vector<Rat>> kernel_basis(const QMat& m) { return kernel_from_rref(m); }
std::vector<std::vector<Quad>> kernel_basis(const KMat& m) { return kernel_from_rref(m); }

std::vector<std::vector<Int>> integer_kernel(const IMat& m) {
    SNFResult snf = smith_normal_form(m);
    const int mn = std::min(m.rows(), m.cols());
    std::vector<std::vector<Int>> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (c < mn && snf.s.at(c, c) != 0)
            continue;
        std::vector<Int> v(m.cols());
        for (int i = 0; i < m.cols(); ++i)
            v[i] = snf.v.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Int> mod_kernel_invariants(const IMat& a, const Int& n) {
    if (n < 2)
        throw DomainError("modulus must be >= 2");
    const int k = a.rows(), m = a.cols();
    IMat b(k, m + k, Int(0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < m; ++j)
            b.at(i, j) = a.at(i, j);
        b.at(i, m + i) = -n;
    }
    std::vector<std::vector<Int>> kb = integer_kernel(b);
    // Columns of w span the preimage lattice L = {v : Av = 0 mod n} >= nZ^m.
    IMat w(m, std::max<size_t>(kb.size(), 1), Int(0));
    for (size_t c = 0; c < kb.size(); ++c)
        for (int i = 0; i < m; ++i)
            w.at(i, static_cast<int>(c)) = kb[c][i];

    SNFResult snf = smith_normal_form(w);
    IMat uinv = inverse_unimodular(snf.u);
    // Basis of L is uinv * diag(d_0..d_{m-1}); the quotient L/nZ^m has
    // relation matrix X with basis * X = n*id, i.e. X = diag(1/d_i) * u * n.
    IMat x(m, m, Int(0));
    for (int i = 0; i < m; ++i) {
        const Int& di = snf.s.at(i, i);
        if (di == 0)
            throw DomainError("solution lattice not of full rank");
        for (int j = 0; j < m; ++j) {
            Int t = n * snf.u.at(i, j);
            if (!mpz_divisible_p(t.get_mpz_t(), di.get_mpz_t()))
                throw DomainError("internal error: nZ^m not contained in solution lattice");
            x.at(i, j) = exact_div(t, di);
        }
    }
    SNFResult q = smith_normal_form(x);
    std::vector<Int> factors;
    for (int i = 0; i < m; ++i)
        if (q.s.at(i, i) != 1)
            factors.push_back(q.s.at(i, i));
    return factors;
}

bool lattice_contains(const IMat& m, const std::vector<Int>& x) {
    if (static_cast<int>(x.size()) != m.rows())
        throw DomainError("vector length does not match lattice ambient dimension");
    SNFResult snf = smith_normal_form(m);
    std::vector<Int> c(m.rows(), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j)
            c[i] += snf.u.at(i, j) * x[j];
    const int mn = std::min(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        if (i < mn && snf.s.at(i, i) != 0) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), snf.s.at(i, i).get_mpz_t()))
                return false;
        } else if (c[i] != 0) {
            return false;
        }
    }
    return true;
}

Subspace::Subspace(int ambient_dim, const std::vector<std::vector<Rat>>& basis)
    : ambient_(ambient_dim) {
    if (ambient_dim <= 0)
        throw DomainError("ambient dimension must be positive");
    if (basis.empty())
        return;
    QMat m(static_cast<int>(basis.size()), ambient_dim, Rat(0));
    for (size_t i = 0; i < basis.size(); ++i) {
        if (static_cast<int>(basis[i].size()) != ambient_dim)
            throw DomainError("basis vector length does not match ambient dimension");
        for (int j = 0; j < ambient_dim; ++j)
            m.at(static_cast<int>(i), j) = basis[i][j];
    }
    std::vector<int> pivots = rref(m);
    if (pivots.size() != basis.size())
        throw DomainError("subspace basis is linearly dependent");
    basis_.resize(pivots.size(), std::vector<Rat>(ambient_dim, Rat(0)));
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j)
            basis_[i][j] = m.at(static_cast<int>(i), j);
}

bool Subspace::contains(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw DomainError("vector length does not match ambient dimension");
    std::vector<Rat> w = v;
    for (const auto& row : basis_) {
        int pivot = -1;
        for (int j = 0; j < ambient_; ++j)
            if (row[j] != 0) {
                pivot = j;
                break;
            }
        if (pivot < 0)
            continue;
        Rat f = w[pivot]; // canonical rows have pivot 1
        if (f == 0)
            continue;
        for (int j = 0; j < ambient_; ++j)
            w[j] -= f * row[j];
    }
    for (const Rat& x : w)
        if (x != 0)
            return false;
    return true;
}

Subspace kernel(const QMat& m) {
    return Subspace(m.cols(), kernel_basis(m));
}

Subspace kernel(const IMat& m) { return kernel(to_rational(m)); }

std::vector<std::vector<Rat>> annihilator(const Subspace& s) {
    if (s.dim() == 0) {
        std::vector<std::vector<Rat>> full;
        for (int i = 0; i < s.ambient_dim(); ++i) {
            std::vector<Rat> e(s.ambient_dim(), Rat(0));
            e[i] = 1;
            full.push_back(std::move(e));
        }
        return full;
    }
    QMat m(s.dim(), s.ambient_dim(), Rat(0));
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.ambient_dim(); ++j)
            m.at(i, j) = s.basis()[i][j];
    return kernel_basis(m);
}

Subspace intersect(const std::vector<Subspace>& spaces) {
    if (spaces.empty())
        throw DomainError("intersection of empty family");
    const int n = spaces[0].ambient_dim();
    std::vector<std::vector<Rat>> rows;
    for (const Subspace& s : spaces) {
        if (s.ambient_dim() != n)
            throw DomainError("intersection of subspaces with different ambient dimensions");
        for (auto& f : annihilator(s))
            rows.push_back(std::move(f));
    }
    if (rows.empty())
        rows.emplace_back(n, Rat(0)); // every space is full: kernel of the zero functional
    QMat m(static_cast<int>(rows.size()), n, Rat(0));
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n; ++j)
            m.at(static_cast<int>(i), j) = rows[i][j];
    return kernel(m);
}

namespace {

template <typename T, typename Fmt>
std::string render_with(const Matrix<T>& m, Fmt fmt) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        if (i)
            out += ';';
        for (int j = 0; j < m.cols(); ++j) {
            if (j)
                out += ',';
            out += fmt(m.at(i, j));
        }
    }
    return out;
}

std::vector<std::vector<std::string>> split_matrix_text(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::string cur;
    std::vector<std::string> row;
    auto push_entry = [&]() {
        row.push_back(cur);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            push_entry();
        } else if (c == ';') {
            push_entry();
            rows.push_back(std::move(row));
            row.clear();
        } else {
            cur.push_back(c);
        }
    }
    push_entry();
    rows.push_back(std::move(row));
    if (rows.empty() || rows[0].empty())
        throw ParseError("empty matrix text");
    for (const auto& r : rows)
        if (r.size() != rows[0].size())
            throw ParseError("ragged matrix text");
    return rows;
}

} // namespace

std::string render(const IMat& m) {
    return render_with(m, [](const Int& x) { return to_string(x); });
}
std::string render(const QMat& m) {
    return render_with(m, [](const Rat& x) { return to_string(x); });
}
std::string render(const KMat& m) {
    return render_with(m, [](const Quad& x) { return to_string(x); });
}

IMat parse_int_matrix(std::string_view text) {
    auto cells = split_matrix_text(text);
    IMat m(static_cast<int>(cells.size()), static_cast<int>(cells[0].size()), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = parse_int(cells[i][j]);
    return m;
}

QMat parse_rat_matrix(std::string_view text) {
    auto cells = split_matrix_text(text);
    QMat m(static_cast<int>(cells.size()), static_cast<int>(cells[0].size()), Rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = parse_rational(cells[i][j]);
    return m;
}

KMat parse_quad_matrix(std::string_view text, const Int& D) {
    auto cells = split_matrix_text(text);
    KMat m(static_cast<int>(cells.size()), static_cast<int>(cells[0].size()), Quad::zero(D));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = parse_quad(cells[i][j], D);
    return m;
}

std::string matrix_key(const IMat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":" + render(m);
}

std::string matrix_key(const QMat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":" + render(m);
}

std::string matrix_key(const KMat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":" + render(m);
}

} // namespace exactgt
