#include "padml/rational.hpp"

#include <cctype>
#include <ostream>

#include "padml/errors.hpp"

namespace padml {

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
    if (sgn(den) == 0) throw ParseError("rational: zero denominator");
    q_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    return Rational(mpq_class(q_ / o.q_));
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("rational: reciprocal of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
    return Rational(r);
}

std::string Rational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    std::string_view num = body, den = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("rational: malformed literal '" + std::string(text) + "'");
    Integer n(std::string(num), 10), d(std::string(den), 10);
    if (sgn(d) == 0)
        throw ParseError("rational: zero denominator in '" + std::string(text) + "'");
    if (negative) n = -n;
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational pow_rational(const Integer& base, long e) {
    if (e >= 0) return Rational(pow_integer(base, static_cast<unsigned long>(e)));
    if (sgn(base) == 0) throw std::domain_error("pow_rational: 0 to a negative power");
    return Rational(Integer(1), pow_integer(base, static_cast<unsigned long>(-e)));
}

}  // namespace padml
