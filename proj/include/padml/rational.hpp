#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rational numbers.
 *
 * The scalar type for the whole library. Backed by GMP's mpq_class,
 * which keeps every value in canonical form: denominator > 0,
 * gcd(|num|, den) = 1, zero stored as 0/1. No floating point anywhere;
 * loss comparisons routinely involve values like p^(-t) for large t
 * that no float can distinguish.
 */

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace padml {

using Integer = mpz_class;

class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(static_cast<long>(n)) {}
    Rational(long long n) : q_(Integer(std::to_string(n))) {}
    Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    Integer numerator() const { return Integer(q_.get_num()); }
    Integer denominator() const { return Integer(q_.get_den()); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return mpq_equal(q_.get_mpq_t(), o.q_.get_mpq_t()) != 0; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return cmp(q_, o.q_) < 0; }
    bool operator<=(const Rational& o) const { return cmp(q_, o.q_) <= 0; }
    bool operator>(const Rational& o) const { return cmp(q_, o.q_) > 0; }
    bool operator>=(const Rational& o) const { return cmp(q_, o.q_) >= 0; }

    Rational reciprocal() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const { return q_.get_d(); }

    /// Canonical text form: "-3/4", "27", "0".
    std::string to_string() const;

    /// Parses the canonical text format: optional '-', digits, optional
    /// "/digits". Non-canonical input ("2/4", "-0") is normalized.
    /// Throws ParseError on malformed text or zero denominator.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// b^e for integer bases; e >= 0.
Integer pow_integer(const Integer& base, unsigned long e);

/// b^e for rational results, any sign of e. b must be nonzero when e < 0.
Rational pow_rational(const Integer& base, long e);

}  // namespace padml
