#include "padml/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace padml {

namespace {

// Clears one row of [A | b] to integers by multiplying with the lcm of
// the denominators. Row scaling preserves the solution set.
std::vector<Integer> clear_row(const RationalVector& row, const Rational& rhs) {
    Integer l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs.denominator().get_mpz_t());
    std::vector<Integer> out;
    out.reserve(row.size() + 1);
    for (const auto& x : row) out.push_back(x.numerator() * (l / x.denominator()));
    out.push_back(rhs.numerator() * (l / rhs.denominator()));
    return out;
}

}  // namespace

std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("solve_square: size mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("solve_square: matrix not square");

    // Bareiss fraction-free elimination on the integer augmented matrix.
    std::vector<std::vector<Integer>> m;
    m.reserve(n);
    for (std::size_t i = 0; i < n; ++i) m.push_back(clear_row(a[i], b[i]));

    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && sgn(m[piv][k]) == 0) ++piv;
        if (piv == n) return std::nullopt;  // singular
        if (piv != k) std::swap(m[piv], m[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    RationalVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc(m[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * x[j];
        x[i] = acc / Rational(m[i][i]);
    }
    return x;
}

namespace {

// Reduced row echelon form in place; returns pivot column list.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        Rational inv = m[row][col].reciprocal();
        for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const RationalMatrix& a) {
    if (a.empty()) return 0;
    RationalMatrix m = a;
    return rref(m, a[0].size()).size();
}

std::vector<RationalVector> nullspace(const RationalMatrix& a, std::size_t cols) {
    RationalMatrix m = a;
    for (const auto& row : m)
        if (row.size() != cols) throw std::invalid_argument("nullspace: ragged matrix");
    std::vector<std::size_t> pivots = rref(m, cols);

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols, Rational(0));
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Integer> to_coprime_integers(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    int lead = 0;
    for (const auto& x : v) {
        Integer e = x.numerator() * (l / x.denominator());
        if (lead == 0 && sgn(e) != 0) lead = sgn(e);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        out.push_back(std::move(e));
    }
    if (lead == 0) throw std::invalid_argument("to_coprime_integers: zero vector");
    if (lead < 0) g = -g;
    for (auto& e : out) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    return out;
}

}  // namespace padml
