#pragma once

/**
 * @file polyfit.hpp
 * @brief Degree-bounded p-adic polynomial fitting and its certificates.
 *
 * A polynomial of degree at most n corresponds one-to-one with an
 * affine function on the feature map x -> (x, x^2, ..., x^n), so
 * fitting reduces to the regression solver. An optimal degree-n
 * approximant of data or of a higher-degree polynomial agrees with it
 * at n+1 or more of the evaluation points, which certifies that the
 * residual polynomial has that many distinct rational roots. On a
 * widespread evaluation set (all pairwise p-adic distances equal) the
 * n+1 leave-one-out approximants of an exactly-degree-n interpolant
 * share one common loss.
 */

#include <optional>
#include <vector>

#include "padml/padic.hpp"
#include "padml/polynomial.hpp"
#include "padml/rational.hpp"
#include "padml/solver.hpp"

namespace padml {

/// A set S of pairwise-distinct evaluation points, optionally paired
/// with targets T.
struct EvaluationSet {
    std::vector<Rational> xs;
    std::optional<std::vector<Rational>> ys;

    EvaluationSet(std::vector<Rational> xs_in, std::optional<std::vector<Rational>> ys_in = {});
};

struct PolyFitResult {
    std::vector<Polynomial> optima;  // canonical-key order of the affine image
    Rational loss;
    FitReport report;  // underlying regression report
};

/// (x, x^2, ..., x^n).
std::vector<Rational> vandermonde_features(const Rational& x, std::size_t n);

/// All optimal polynomials of degree <= n under the p-adic residual-sum
/// loss, via reduction to the affine solver. Requires at least n+1
/// distinct x values and functional consistency.
PolyFitResult fit_poly(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                       std::size_t n, const Prime& p, RequestedMode mode = RequestedMode::Auto,
                       unsigned threads = 1);

/// The unique polynomial of degree <= |S|-1 through all points.
Polynomial interpolate(const EvaluationSet& s);

/// The elements x of S with P(x) = Q(x), in S order.
std::vector<Rational> residual_roots_in_S(const Polynomial& p, const Polynomial& q,
                                          const EvaluationSet& s);

/// True iff all pairwise p-adic distances within S are equal.
bool is_widespread(const EvaluationSet& s, const Prime& p);

struct LeaveOneOutApproximant {
    Polynomial approximant;  // Q_j, degree <= n-1
    Polynomial residual;     // R_j = P - Q_j, vanishing on S \ {x_j}
    Rational loss;           // sum over S of |Q_j(x_c) - y_c|_p
};

/// For |S| = n+1 widespread points whose interpolant P has degree
/// exactly n: the n+1 candidate approximants Q_j = P - R_j with
/// R_j = lead(P) * prod_{i != j} (x - x_i). All losses are equal.
std::vector<LeaveOneOutApproximant> leave_one_out_approximants(const EvaluationSet& s,
                                                               const Prime& p);

}  // namespace padml
