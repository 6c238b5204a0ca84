#include "padml/model.hpp"

#include <stdexcept>

#include "padml/linalg.hpp"

namespace padml {

AffineModel::AffineModel(std::vector<Rational> weights, Rational intercept)
    : weights_(std::move(weights)), intercept_(std::move(intercept)) {
    if (weights_.empty()) throw std::invalid_argument("model: needs at least one weight");
}

Rational AffineModel::evaluate(const std::vector<Rational>& features) const {
    if (features.size() != weights_.size())
        throw std::invalid_argument("model: feature dimension mismatch");
    Rational acc = intercept_;
    for (std::size_t i = 0; i < weights_.size(); ++i) acc += weights_[i] * features[i];
    return acc;
}

CanonicalKey AffineModel::canonical_key() const {
    RationalVector graph;
    graph.reserve(weights_.size() + 2);
    for (const auto& w : weights_) graph.push_back(w);
    graph.push_back(Rational(-1));
    graph.push_back(intercept_);
    return to_coprime_integers(graph);
}

std::vector<Rational> AffineModel::coefficients() const {
    std::vector<Rational> v = weights_;
    v.push_back(intercept_);
    return v;
}

AffineModel AffineModel::from_coefficients(const std::vector<Rational>& v) {
    if (v.size() < 2) throw std::invalid_argument("model: coefficient vector too short");
    return AffineModel(std::vector<Rational>(v.begin(), v.end() - 1), v.back());
}

std::string AffineModel::to_string(const std::vector<std::string>& var_names,
                                   const std::string& target_name) const {
    auto name = [&](std::size_t i) {
        if (i < var_names.size()) return var_names[i];
        if (weights_.size() == 1) return std::string("x");
        return "x" + std::to_string(i + 1);
    };
    std::string out = target_name + " = ";
    bool first = true;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const Rational& w = weights_[i];
        if (w.is_zero()) continue;
        Rational mag = w.abs();
        if (first) {
            if (w.sign() < 0) out += "-";
        } else {
            out += w.sign() < 0 ? " - " : " + ";
        }
        if (mag != Rational(1)) out += mag.to_string() + "*";
        out += name(i);
        first = false;
    }
    if (!intercept_.is_zero() || first) {
        if (first) {
            out += intercept_.to_string();
        } else {
            out += intercept_.sign() < 0 ? " - " : " + ";
            out += intercept_.abs().to_string();
        }
    }
    return out;
}

bool key_less(const CanonicalKey& a, const CanonicalKey& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

}  // namespace padml
