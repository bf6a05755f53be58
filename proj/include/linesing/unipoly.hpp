#ifndef LINESING_UNIPOLY_HPP
#define LINESING_UNIPOLY_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linesing/ffdet.hpp"
#include "linesing/rational.hpp"

namespace linesing {

/// Dense univariate polynomial over the rationals, coefficients ascending by
/// degree. Degrees stay small in this project, so dense storage wins.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::string var) : var_(std::move(var)) {}
    UniPoly(std::string var, std::vector<Rat> coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {
        trim();
    }

    static UniPoly zero(const std::string& var) { return UniPoly(var); }
    static UniPoly constant(const std::string& var, const Rat& value) {
        return UniPoly(var, {value});
    }
    // c * x^k
    static UniPoly monomial(const std::string& var, const Rat& c, int k) {
        std::vector<Rat> v(static_cast<size_t>(k) + 1, Rat(0));
        v.back() = c;
        return UniPoly(var, std::move(v));
    }

    const std::string& var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
        return c_[static_cast<size_t>(k)];
    }
    Rat leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool operator==(const UniPoly& o) const { return var_ == o.var_ && c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator-() const {
        UniPoly r(var_);
        r.c_.reserve(c_.size());
        for (const auto& a : c_) r.c_.push_back(-a);
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        a.check_var(b);
        UniPoly r(a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        a.check_var(b);
        if (a.is_zero() || b.is_zero()) return zero(a.var_);
        UniPoly r(a.var_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend UniPoly operator*(const Rat& s, const UniPoly& a) {
        if (s == 0) return zero(a.var_);
        UniPoly r(a.var_);
        r.c_.reserve(a.c_.size());
        for (const auto& x : a.c_) r.c_.push_back(s * x);
        return r;
    }

    UniPoly derivative() const {
        UniPoly r(var_);
        for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(Rat(static_cast<long>(i)) * c_[i]);
        r.trim();
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly monic() const {
        if (is_zero()) throw std::domain_error("monic of zero polynomial");
        Rat inv = Rat(1) / leading();
        return inv * (*this);
    }

    // Euclidean division; divisor must be nonzero.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        a.check_var(b);
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        UniPoly rem = a;
        UniPoly quot(a.var_);
        if (a.degree() >= b.degree())
            quot.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rat(0));
        Rat blead = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int shift = rem.degree() - b.degree();
            Rat q = rem.leading() / blead;
            quot.c_[static_cast<size_t>(shift)] = q;
            for (size_t i = 0; i < b.c_.size(); ++i)
                rem.c_[i + static_cast<size_t>(shift)] -= q * b.c_[i];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = c_.size(); i-- > 0;) {
            const Rat& a = c_[i];
            if (a == 0) continue;
            bool neg = a < 0;
            Rat mag = neg ? Rat(-a) : a;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? "-" : "+";
            bool unit = (mag == 1);
            if (i == 0) {
                out += rat_to_string(mag);
            } else {
                if (!unit) out += rat_to_string(mag) + "*";
                out += var_;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check_var(const UniPoly& o) const {
        if (var_ != o.var_)
            throw std::invalid_argument("univariate variable mismatch: " + var_ + " vs " + o.var_);
    }

    std::string var_;
    std::vector<Rat> c_;
};

inline UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        (void)q;
        r0 = r1;
        r1 = r;
    }
    if (r0.is_zero()) return r0;
    return r0.monic();
}

/// Sylvester resultant Res(p, q): determinant of the (deg p + deg q)-square
/// Sylvester matrix, evaluated fraction-free.
inline Rat resultant(const UniPoly& p, const UniPoly& q) {
    if (p.var() != q.var())
        throw std::invalid_argument("resultant: variable mismatch: " + p.var() + " vs " + q.var());
    if (p.is_zero() && q.is_zero())
        throw std::invalid_argument("resultant of two zero polynomials");
    if (p.is_zero() || q.is_zero()) return Rat(0);
    int dp = p.degree(), dq = q.degree();
    if (dp == 0 && dq == 0) return Rat(1);  // empty Sylvester matrix
    if (dp == 0) return rat_pow(p.coeff(0), static_cast<unsigned long>(dq));
    if (dq == 0) return rat_pow(q.coeff(0), static_cast<unsigned long>(dp));
    size_t n = static_cast<size_t>(dp + dq);
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (int row = 0; row < dq; ++row)
        for (int k = 0; k <= dp; ++k) m[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = p.coeff(dp - k);
    for (int row = 0; row < dp; ++row)
        for (int k = 0; k <= dq; ++k)
            m[static_cast<size_t>(dq + row)][static_cast<size_t>(row + k)] = q.coeff(dq - k);
    return sylvester_determinant(m);
}

/// Discriminant (-1)^{n(n-1)/2}/a_n * Res(p, p'). Degree-1 input gives 1
/// (empty product over root pairs).
inline Rat discriminant(const UniPoly& p) {
    if (p.degree() < 1) throw std::invalid_argument("discriminant of a constant");
    int n = p.degree();
    Rat res = resultant(p, p.derivative());
    Rat sign = ((static_cast<long>(n) * (n - 1) / 2) % 2 == 0) ? Rat(1) : Rat(-1);
    return sign * res / p.leading();
}

/// p / gcd(p, p'), made monic.
inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree part of zero polynomial");
    if (p.degree() == 0) return UniPoly::constant(p.var(), Rat(1));
    UniPoly g = gcd(p, p.derivative());
    auto [q, r] = divmod(p, g);
    if (!r.is_zero()) throw std::logic_error("squarefree_part: non-exact division");
    return q.monic();
}

inline bool is_squarefree(const UniPoly& p) {
    if (p.is_zero()) return false;
    if (p.degree() == 0) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

/// Bareiss fraction-free determinant over Q[z]; divisions are exact by the
/// Bareiss identity over an integral domain.
inline UniPoly ff_det_poly(std::vector<std::vector<UniPoly>> m, const std::string& var) {
    size_t n = m.size();
    if (n == 0) return UniPoly::constant(var, Rat(1));
    UniPoly prev = UniPoly::constant(var, Rat(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return UniPoly::zero(var);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                UniPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto [q, r] = divmod(t, prev);
                if (!r.is_zero()) throw std::logic_error("ff_det_poly: inexact Bareiss division");
                m[i][j] = q;
            }
            m[i][k] = UniPoly::zero(var);
        }
        prev = m[k][k];
    }
    UniPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

/// Resultant of two binary forms of formal degrees dg and dh, given by
/// coefficient lists (index i = coefficient of s^i, possibly zero at the
/// top): the full (dg+dh)-square Sylvester determinant over Q[z].
inline UniPoly homogeneous_resultant(const std::vector<UniPoly>& g, long dg,
                                     const std::vector<UniPoly>& h, long dh,
                                     const std::string& var) {
    size_t n = static_cast<size_t>(dg + dh);
    if (n == 0) return UniPoly::constant(var, Rat(1));
    auto coef = [&](const std::vector<UniPoly>& c, long k) {
        if (k < 0 || k >= static_cast<long>(c.size())) return UniPoly::zero(var);
        return c[static_cast<size_t>(k)];
    };
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n, UniPoly::zero(var)));
    for (long row = 0; row < dh; ++row)
        for (long k = 0; k <= dg; ++k) m[row][row + k] = coef(g, dg - k);
    for (long row = 0; row < dg; ++row)
        for (long k = 0; k <= dh; ++k) m[dh + row][row + k] = coef(h, dh - k);
    return ff_det_poly(std::move(m), var);
}

}  // namespace linesing

#endif
