#include "padml/padic.hpp"

#include <stdexcept>

#include "padml/errors.hpp"

namespace padml {

long Valuation::value() const {
    if (infinite_) throw std::domain_error("valuation: infinity has no finite value");
    return value_;
}

std::string Valuation::to_string() const {
    return infinite_ ? "inf" : std::to_string(value_);
}

namespace {

bool miller_rabin_witness(const Integer& n, const Integer& a, const Integer& d, unsigned long s) {
    if (a % n == 0) return true;
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Integer n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static const long small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long q : small_primes) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // n-1 = d * 2^s with d odd
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    // The 12-witness set {2..37} is exact for n < 3.317e24 (Sorenson &
    // Webster). Beyond that, extend with the next primes up to 97; every
    // value this library is asked to validate is far below the first
    // possible pseudoprime for that extended set.
    static const long witnesses[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                     41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    static const Integer small_set_limit("3317044064679887385961981");
    int count = n < small_set_limit ? 12 : 25;
    for (int i = 0; i < count; ++i)
        if (!miller_rabin_witness(n, Integer(witnesses[i]), d, s)) return false;
    return true;
}

Integer next_prime_above(const Integer& n) {
    Integer c = n + 1;
    if (c < 2) c = 2;
    while (!is_prime(c)) ++c;
    return c;
}

Prime::Prime(const Integer& value) : value_(value) {
    if (!is_prime(value_))
        throw ParseError("prime: " + value_.get_str() + " is not prime");
}

Valuation vp(const Rational& x, const Prime& p) {
    if (x.is_zero()) return Valuation::infinity();
    Integer num = x.numerator(), den = x.denominator();
    Integer reduced;
    // Canonical form: p divides at most one of numerator, denominator.
    unsigned long up = mpz_remove(reduced.get_mpz_t(), num.get_mpz_t(), p.value().get_mpz_t());
    if (up > 0) return Valuation::finite(static_cast<long>(up));
    unsigned long down = mpz_remove(reduced.get_mpz_t(), den.get_mpz_t(), p.value().get_mpz_t());
    return Valuation::finite(-static_cast<long>(down));
}

Rational abs_p(const Rational& x, const Prime& p) {
    Valuation v = vp(x, p);
    if (v.is_infinite()) return Rational(0);
    return pow_rational(p.value(), -v.value());
}

Rational dist_p(const Rational& x, const Rational& y, const Prime& p) {
    return abs_p(x - y, p);
}

}  // namespace padml
