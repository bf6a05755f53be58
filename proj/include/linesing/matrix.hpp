#ifndef LINESING_MATRIX_HPP
#define LINESING_MATRIX_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/ffdet.hpp"
#include "linesing/rational.hpp"
#include "linesing/unipoly.hpp"

namespace linesing {

/// Dense matrix over the rationals.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

    static RatMatrix identity(size_t n) {
        RatMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rat& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Rat& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool is_zero() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        RatMatrix c(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const Rat& aik = a.at(i, k);
                if (aik == 0) continue;
                for (size_t j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
            }
        return c;
    }
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        RatMatrix c = a;
        for (size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
        return c;
    }
    friend RatMatrix operator*(const Rat& s, const RatMatrix& a) {
        RatMatrix c = a;
        for (auto& x : c.e_) x *= s;
        return c;
    }

    Rat determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        std::vector<std::vector<Rat>> m(rows_, std::vector<Rat>(cols_));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m[i][j] = at(i, j);
        return ff_det(m);
    }

    /// Rank over Q. Rows are cleared to primitive integer vectors and
    /// elimination cross-multiplies, stripping content per step; this keeps
    /// entries near minimal size without any rational gcd churn.
    size_t rank() const {
        std::vector<std::vector<Int>> a;
        a.reserve(rows_);
        for (size_t i = 0; i < rows_; ++i) {
            std::vector<Int> row(cols_);
            Int den(1);
            for (size_t j = 0; j < cols_; ++j) {
                const Int& d = at(i, j).get_den();
                den = den / gcd(den, d) * d;
            }
            bool nonzero = false;
            for (size_t j = 0; j < cols_; ++j) {
                row[j] = at(i, j).get_num() * (den / at(i, j).get_den());
                nonzero = nonzero || row[j] != 0;
            }
            if (nonzero) a.push_back(strip_content(std::move(row)));
        }
        size_t r = 0;
        for (size_t col = 0; col < cols_ && r < a.size(); ++col) {
            size_t piv = r;
            while (piv < a.size() && a[piv][col] == 0) ++piv;
            if (piv == a.size()) continue;
            std::swap(a[r], a[piv]);
            for (size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Int g = gcd(a[i][col], a[r][col]);
                Int ci = a[i][col] / g, cr = a[r][col] / g;
                for (size_t j = col; j < cols_; ++j) a[i][j] = a[i][j] * cr - a[r][j] * ci;
                a[i] = strip_content(std::move(a[i]));
            }
            a.erase(std::remove_if(a.begin() + static_cast<long>(r) + 1, a.end(),
                                   [](const std::vector<Int>& row) {
                                       for (const auto& x : row)
                                           if (x != 0) return false;
                                       return true;
                                   }),
                    a.end());
            ++r;
        }
        return r;
    }

  private:
    static std::vector<Int> strip_content(std::vector<Int> row) {
        Int g(0);
        for (const auto& x : row) {
            g = gcd(g, x);
            if (g == 1) return row;
        }
        if (g > 1)
            for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        return row;
    }

    size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

/// Monic characteristic polynomial det(lambda*I - M) by the Berkowitz
/// division-free algorithm; exact over Q and immune to pivoting issues.
inline UniPoly char_poly(const RatMatrix& m, const std::string& var = "lambda") {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return UniPoly::constant(var, Rat(1));

    // Berkowitz: iteratively build the coefficient vector of the char poly of
    // the leading principal r x r submatrix, stored degree-descending.
    std::vector<Rat> coeffs{Rat(1), -m.at(0, 0)};
    for (size_t r = 1; r < n; ++r) {
        // Toeplitz column entries: c_0 = 1... built from a_rr, row R, col S of
        // the bordered submatrix.
        size_t k = r;  // current submatrix is (k+1) x (k+1)
        std::vector<Rat> row(k), col(k);
        for (size_t i = 0; i < k; ++i) {
            row[i] = m.at(r, i);
            col[i] = m.at(i, r);
        }
        std::vector<Rat> toep(k + 2);
        toep[0] = Rat(1);
        toep[1] = -m.at(r, r);
        std::vector<Rat> v = col;
        for (size_t j = 2; j <= k + 1; ++j) {
            Rat dot(0);
            for (size_t i = 0; i < k; ++i) dot += row[i] * v[i];
            toep[j] = -dot;
            if (j <= k) {
                std::vector<Rat> nv(k, Rat(0));
                for (size_t i = 0; i < k; ++i) {
                    if (v[i] == 0) continue;
                    for (size_t l = 0; l < k; ++l) nv[l] += m.at(l, i) * v[i];
                }
                v = std::move(nv);
            }
        }
        std::vector<Rat> next(coeffs.size() + 1, Rat(0));
        for (size_t i = 0; i < coeffs.size(); ++i)
            for (size_t j = 0; j < toep.size() && i + j < next.size(); ++j)
                next[i + j] += coeffs[i] * toep[j];
        coeffs = std::move(next);
    }

    std::vector<Rat> ascending(coeffs.rbegin(), coeffs.rend());
    return UniPoly(var, std::move(ascending));
}

/// Evaluate a univariate polynomial at a square matrix (Horner).
inline RatMatrix eval_at_matrix(const UniPoly& p, const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eval_at_matrix: non-square");
    size_t n = m.rows();
    RatMatrix acc(n, n);
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * m;
        Rat c = p.coeff(k);
        for (size_t i = 0; i < n; ++i) acc.at(i, i) += c;
    }
    return acc;
}

}  // namespace linesing

#endif
