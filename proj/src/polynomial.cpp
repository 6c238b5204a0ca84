#include "padml/polynomial.hpp"

#include <stdexcept>

#include "padml/errors.hpp"

namespace padml {

namespace {

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    trim(coeffs_);
}

std::optional<std::size_t> Polynomial::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

Rational Polynomial::leading_coefficient() const {
    if (coeffs_.empty()) return Rational(0);
    return coeffs_.back();
}

Rational Polynomial::evaluate(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    std::vector<Rational> c = coeffs_;
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Rational& c) const {
    std::vector<Rational> out = coeffs_;
    for (auto& x : out) x *= c;
    return Polynomial(std::move(out));
}

std::string Polynomial::to_coefficient_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ",";
        out += coeffs_[i].to_string();
    }
    return out;
}

Polynomial Polynomial::parse(std::string_view text) {
    std::vector<Rational> c;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view cell =
            text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        c.push_back(Rational::parse(cell));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Polynomial(std::move(c));
}

std::string Polynomial::pretty(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c.is_zero()) continue;
        Rational mag = c.abs();
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        if (i == 0) {
            out += mag.to_string();
        } else {
            if (mag != Rational(1)) out += mag.to_string() + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace padml
