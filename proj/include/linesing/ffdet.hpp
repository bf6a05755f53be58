#ifndef LINESING_FFDET_HPP
#define LINESING_FFDET_HPP

#include <stdexcept>
#include <vector>

#include "linesing/rational.hpp"

namespace linesing {

/// Determinant of a square rational matrix by Bareiss fraction-free
/// elimination. Denominators are cleared once per row up front so all interior
/// arithmetic stays in Z with exact divisions.
inline Rat ff_det(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    if (n == 0) return Rat(1);
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("ff_det: non-square matrix");

    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    Rat scale(1);
    for (size_t i = 0; i < n; ++i) {
        Int den(1);
        for (const auto& x : m[i]) den = den / gcd(den, x.get_den()) * x.get_den();
        scale /= Rat(den);
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (den / m[i][j].get_den());
    }

    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return Rat(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat det(a[n - 1][n - 1]);
    if (sign < 0) det = -det;
    return det * scale;
}

inline Rat sylvester_determinant(const std::vector<std::vector<Rat>>& m) { return ff_det(m); }

}  // namespace linesing

#endif
