#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials with exact rational coefficients.
 *
 * Coefficients are stored little-endian (index i holds the coefficient
 * of x^i) with trailing zeros trimmed; the zero polynomial has an empty
 * coefficient list and no degree.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padml/rational.hpp"

namespace padml {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Highest index with nonzero coefficient; nullopt for the zero
    /// polynomial.
    std::optional<std::size_t> degree() const;
    Rational leading_coefficient() const;
    Rational coefficient(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }

    Rational evaluate(const Rational& x) const;  // Horner

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Little-endian comma-separated coefficients: "-2,3,0,1" is
    /// x^3 + 3x - 2. The zero polynomial prints "0".
    std::string to_coefficient_string() const;
    static Polynomial parse(std::string_view text);

    /// Descending-power display: "x^3 + 3*x - 2".
    std::string pretty(const std::string& var = "x") const;

private:
    std::vector<Rational> coeffs_;
};

}  // namespace padml
