#pragma once

/**
 * @file padic.hpp
 * @brief p-adic valuation, absolute value and metric over the rationals.
 *
 * For prime p and nonzero x = a/b, vp(x) is the power of p dividing a
 * minus the power dividing b, and |x|_p = p^(-vp(x)). The absolute value
 * is multiplicative and satisfies the strong triangle inequality
 * |x+y|_p <= max(|x|_p, |y|_p), which makes d(x,y) = |x-y|_p an
 * ultrametric. Everything here is exact; |x|_p is returned as a Rational
 * even when that means a numerator or denominator like p^(10^6).
 */

#include <string>

#include "padml/rational.hpp"

namespace padml {

/// vp of a rational: an integer, or Infinity exactly for the value zero.
/// Infinity compares greater than every finite valuation.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const;

    bool operator==(const Valuation& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    bool operator!=(const Valuation& o) const { return !(*this == o); }
    bool operator<(const Valuation& o) const {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return value_ < o.value_;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return o <= *this; }

    std::string to_string() const;

private:
    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

/// A validated prime. Construction runs a deterministic primality check
/// (trial division, then Miller-Rabin over a fixed witness set that is
/// proven exact far beyond 64-bit inputs).
class Prime {
public:
    explicit Prime(const Integer& value);
    explicit Prime(long value) : Prime(Integer(value)) {}

    const Integer& value() const { return value_; }

    bool operator==(const Prime& o) const { return value_ == o.value_; }
    bool operator!=(const Prime& o) const { return value_ != o.value_; }

private:
    Integer value_;
};

/// Deterministic primality test used by Prime's constructor.
bool is_prime(const Integer& n);

/// Smallest prime strictly greater than n.
Integer next_prime_above(const Integer& n);

/// The p-adic valuation. Total: vp(0) = Infinity.
Valuation vp(const Rational& x, const Prime& p);

/// |x|_p = p^(-vp(x)), exact; 0 for x = 0.
Rational abs_p(const Rational& x, const Prime& p);

/// The p-adic metric d(x, y) = |x - y|_p.
Rational dist_p(const Rational& x, const Rational& y, const Prime& p);

}  // namespace padml
