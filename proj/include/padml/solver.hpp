#pragma once

/**
 * @file solver.hpp
 * @brief Multivariate p-adic linear regression by exact enumeration.
 *
 * The loss of a model V on a dataset is sum_i |V.(X_i,1) - y_i|_p.
 * Every loss-optimal affine model passes through at least n+1 data
 * points, so the global optimum can be found by solving the hyperplane
 * through every (n+1)-subset of rows and keeping the candidates of
 * minimal loss. A constructive descent step lowers the loss of any
 * model fitting fewer than n+1 rows while preserving the rows it
 * already fits. For primes so large that every nonzero candidate
 * residual has absolute value exactly 1, minimizing the loss reduces
 * to maximizing the exact-fit count; that fast path is guarded by a
 * per-run verification and falls back to the exact path otherwise.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padml/dataset.hpp"
#include "padml/linalg.hpp"
#include "padml/model.hpp"
#include "padml/padic.hpp"

namespace padml {

enum class FitMode { Exact, LargePrime };
enum class RequestedMode { Auto, Exact, LargePrime };

std::string to_string(FitMode mode);
std::string to_string(RequestedMode mode);
RequestedMode requested_mode_from_string(const std::string& name);

struct FitReport {
    Rational loss;
    std::vector<AffineModel> models;      // all optima, canonical-key order
    std::vector<std::size_t> fit_counts;  // exactly-fitted rows, aligned with models
    std::size_t candidates_examined = 0;  // (n+1)-subsets enumerated
    std::size_t singular_skipped = 0;     // subsets with no unique hyperplane
    FitMode mode = FitMode::Exact;
    std::size_t dim = 0;
    std::size_t rows = 0;

    bool operator==(const FitReport& o) const;
};

/// One application of the constructive step from the optimality proof:
/// direction annihilates every fitted row, each alpha moves one further
/// row onto the model, and the p-adically smallest alpha wins.
struct DescentStep {
    RationalVector direction;  // V', length n+1
    std::map<std::size_t, Rational> alphas;
    std::size_t chosen_index = 0;
    Rational step_size;
};

struct NondegeneracyCheck {
    bool nondegenerate = false;
    /// Nonzero phi with phi . (X_i, 1) = 0 for every row; empty when
    /// the data is non-degenerate.
    RationalVector certificate;
};

/// Exact sum of p-adic absolute residuals; 0 iff the model fits every row.
Rational evaluate_loss(const AffineModel& model, const Dataset& data, const Prime& p);

/// r_i = model(X_i) - y_i, in row order.
std::vector<Rational> residuals(const AffineModel& model, const Dataset& data);

/// True iff the rows (X_i, 1) span Q^(n+1); otherwise produces a
/// certificate vector found by exact elimination.
NondegeneracyCheck check_nondegenerate(const Dataset& data);

/// The unique affine model through exactly n+1 rows, or nullopt when the
/// (n+1)x(n+1) system is singular.
std::optional<AffineModel> hyperplane_through(const std::vector<Row>& rows);

/// Brute-force enumeration of all C(k, n+1) candidate hyperplanes,
/// deduplicated by canonical key. Returns the exact minimal loss and
/// every model attaining it. Subset evaluation may be partitioned
/// across `threads` workers; the merge is a deterministic reduction.
FitReport fit_exact(const Dataset& data, const Prime& p, unsigned threads = 1);

/// One descent step from a model fitting m < n+1 rows: the result fits
/// every previously-fitted row plus at least one more and has strictly
/// smaller loss. Ties in the minimal p-adic alpha break to the lowest
/// row index; the direction is the first usable basis vector of the
/// fitted rows' null space.
std::pair<AffineModel, DescentStep> descend(const AffineModel& model, const Dataset& data,
                                            const Prime& p);

/// Fit-count maximization for the large-prime regime. Verifies the
/// hypothesis on this run (every nonzero candidate residual, and every
/// nonzero pairwise coordinate/target difference, has valuation 0);
/// falls back to fit_exact with mode Exact when verification fails.
FitReport fit_large_prime(const Dataset& data, const Prime& p, unsigned threads = 1);

/// Mode dispatcher: Auto accepts the large-prime path only when its
/// verification passes; results agree with Exact whenever it does.
FitReport fit(const Dataset& data, const Prime& p, RequestedMode mode = RequestedMode::Auto,
              unsigned threads = 1);

/// Ordinary least squares in binary64 via the normal equations, for
/// contrast display only. Returns (weights..., intercept).
std::vector<double> ols_baseline(const Dataset& data);

}  // namespace padml
