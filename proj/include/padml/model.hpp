#pragma once

/**
 * @file model.hpp
 * @brief Affine models V = (weights, intercept) and their canonical keys.
 *
 * A model is the function X -> weights . X + intercept, i.e. V . (X, 1).
 * The canonical key is the graph equation w . X - y + b = 0 scaled to
 * coprime integers with positive leading nonzero entry. Scaling the
 * raw (weights, intercept) tuple instead would conflate distinct
 * functions (y = x and y = 2x share the cleared tuple (1, 0)); pinning
 * the -1 coefficient of y before clearing makes the key injective on
 * functions, so deduplication and set comparison are exact.
 */

#include <string>
#include <vector>

#include "padml/dataset.hpp"
#include "padml/rational.hpp"

namespace padml {

using CanonicalKey = std::vector<Integer>;

class AffineModel {
public:
    AffineModel(std::vector<Rational> weights, Rational intercept);

    std::size_t dim() const { return weights_.size(); }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& intercept() const { return intercept_; }

    Rational evaluate(const std::vector<Rational>& features) const;
    Rational residual(const Row& row) const { return evaluate(row.features) - row.target; }
    bool fits(const Row& row) const { return residual(row).is_zero(); }

    /// Coprime-integer form of (w_1, ..., w_n, -1, b); injective on
    /// model functions.
    CanonicalKey canonical_key() const;

    /// The full coefficient vector V = (w_1, ..., w_n, b).
    std::vector<Rational> coefficients() const;
    static AffineModel from_coefficients(const std::vector<Rational>& v);

    bool operator==(const AffineModel& o) const {
        return weights_ == o.weights_ && intercept_ == o.intercept_;
    }

    /// "y = 2*x1 - x2 + 1/2"; single-variable models print plain "x".
    /// Custom names let the taxonomy demo print "x = y + ...".
    std::string to_string(const std::vector<std::string>& var_names = {},
                          const std::string& target_name = "y") const;

private:
    std::vector<Rational> weights_;
    Rational intercept_;
};

/// Lexicographic order on canonical keys; the deterministic listing
/// order for reports.
bool key_less(const CanonicalKey& a, const CanonicalKey& b);

}  // namespace padml
