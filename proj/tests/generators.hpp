#pragma once

// Test-only helpers: random datasets and models, plus an early-exit loss
// bound check. Kept independent of the solver's internal enumeration so
// property tests can use them as oracles.

#include <random>

#include "padml/dataset.hpp"
#include "padml/model.hpp"
#include "padml/padic.hpp"
#include "padml/solver.hpp"

namespace padml::testgen {

inline Rational Q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

/// Non-degenerate, functionally-consistent dataset with integer
/// coordinates in [-9, 9].
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::uniform_int_distribution<long> coord(-9, 9);
    while (true) {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < k; ++i) {
            Row r;
            for (std::size_t j = 0; j < n; ++j) r.features.push_back(Q(coord(rng)));
            r.target = Q(coord(rng));
            for (const Row& prev : rows)
                if (prev.features == r.features) {
                    r.target = prev.target;  // duplicate X keeps its first target
                    break;
                }
            rows.push_back(std::move(r));
        }
        Dataset data(n, std::move(rows));
        if (check_nondegenerate(data).nondegenerate) return data;
    }
}

inline AffineModel random_model(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 9);
    std::vector<Rational> w;
    for (std::size_t j = 0; j < n; ++j) w.push_back(Q(num(rng), den(rng)));
    return AffineModel(std::move(w), Q(num(rng), den(rng)));
}

/// True iff the model's loss is >= bound; stops summing as soon as the
/// (non-negative) partial sums prove it.
inline bool loss_at_least(const AffineModel& model, const Dataset& data, const Prime& p,
                          const Rational& bound) {
    Rational sum(0);
    for (const Row& row : data.rows()) {
        sum += abs_p(model.residual(row), p);
        if (sum >= bound) return true;
    }
    return sum >= bound;
}

}  // namespace padml::testgen
