#include "padml/polyfit.hpp"

#include <set>
#include <stdexcept>

#include "padml/errors.hpp"

namespace padml {

EvaluationSet::EvaluationSet(std::vector<Rational> xs_in,
                             std::optional<std::vector<Rational>> ys_in)
    : xs(std::move(xs_in)), ys(std::move(ys_in)) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j])
                throw PreconditionError("evaluation set: duplicate point " + xs[i].to_string());
    if (ys && ys->size() != xs.size())
        throw PreconditionError("evaluation set: xs/ys length mismatch");
}

std::vector<Rational> vandermonde_features(const Rational& x, std::size_t n) {
    if (n == 0) throw std::invalid_argument("vandermonde_features: degree bound must be positive");
    std::vector<Rational> v;
    v.reserve(n);
    Rational cur(1);
    for (std::size_t i = 0; i < n; ++i) {
        cur *= x;
        v.push_back(cur);
    }
    return v;
}

namespace {

Polynomial model_to_polynomial(const AffineModel& m) {
    std::vector<Rational> c;
    c.reserve(m.dim() + 1);
    c.push_back(m.intercept());
    for (const auto& w : m.weights()) c.push_back(w);
    return Polynomial(std::move(c));
}

}  // namespace

PolyFitResult fit_poly(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                       std::size_t n, const Prime& p, RequestedMode mode, unsigned threads) {
    if (n == 0) throw PreconditionError("fit_poly: degree bound must be at least 1");
    if (xs.size() != ys.size()) throw PreconditionError("fit_poly: xs/ys length mismatch");
    // y_i != y_j requires x_i != x_j.
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j] && ys[i] != ys[j])
                throw PreconditionError("fit_poly: rows " + std::to_string(i) + " and " +
                                        std::to_string(j) + " repeat x = " + xs[i].to_string() +
                                        " with different targets");
    std::set<std::string> distinct;
    for (const auto& x : xs) distinct.insert(x.to_string());
    if (distinct.size() < n + 1)
        throw PreconditionError("fit_poly: need at least n+1 = " + std::to_string(n + 1) +
                                " distinct x values, got " + std::to_string(distinct.size()));

    std::vector<Row> rows;
    rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        rows.push_back({vandermonde_features(xs[i], n), ys[i]});
    Dataset data(n, std::move(rows));

    PolyFitResult result{.optima = {}, .loss = Rational(0), .report = fit(data, p, mode, threads)};
    result.loss = result.report.loss;
    for (const auto& m : result.report.models) result.optima.push_back(model_to_polynomial(m));
    return result;
}

Polynomial interpolate(const EvaluationSet& s) {
    if (!s.ys) throw PreconditionError("interpolate: evaluation set has no targets");
    if (s.xs.empty()) throw PreconditionError("interpolate: empty evaluation set");
    const std::size_t m = s.xs.size();
    RationalMatrix a(m, RationalVector(m));
    for (std::size_t i = 0; i < m; ++i) {
        Rational cur(1);
        for (std::size_t j = 0; j < m; ++j) {
            a[i][j] = cur;
            cur *= s.xs[i];
        }
    }
    auto c = solve_square(a, *s.ys);
    // Vandermonde on distinct points is nonsingular.
    if (!c) throw std::logic_error("interpolate: singular Vandermonde system");
    return Polynomial(std::move(*c));
}

std::vector<Rational> residual_roots_in_S(const Polynomial& p, const Polynomial& q,
                                          const EvaluationSet& s) {
    std::vector<Rational> roots;
    for (const auto& x : s.xs)
        if (p.evaluate(x) == q.evaluate(x)) roots.push_back(x);
    return roots;
}

bool is_widespread(const EvaluationSet& s, const Prime& p) {
    if (s.xs.size() < 2) throw PreconditionError("is_widespread: need at least two points");
    std::optional<Rational> common;
    for (std::size_t i = 0; i < s.xs.size(); ++i)
        for (std::size_t j = i + 1; j < s.xs.size(); ++j) {
            Rational d = dist_p(s.xs[i], s.xs[j], p);
            if (!common) common = d;
            else if (*common != d) return false;
        }
    return true;
}

std::vector<LeaveOneOutApproximant> leave_one_out_approximants(const EvaluationSet& s,
                                                               const Prime& p) {
    if (!s.ys) throw PreconditionError("leave_one_out: evaluation set has no targets");
    if (s.xs.size() < 2) throw PreconditionError("leave_one_out: need at least two points");
    const std::size_t n = s.xs.size() - 1;

    Polynomial interpolant = interpolate(s);
    if (!interpolant.degree() || *interpolant.degree() != n)
        throw PreconditionError("leave_one_out: interpolant has degree below n = " +
                                std::to_string(n));
    if (!is_widespread(s, p))
        throw PreconditionError("leave_one_out: evaluation set is not widespread at p = " +
                                p.value().get_str());

    const Rational lead = interpolant.leading_coefficient();
    std::vector<LeaveOneOutApproximant> out;
    out.reserve(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        Polynomial r = Polynomial::constant(lead);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == j) continue;
            r = r * Polynomial({-s.xs[i], Rational(1)});
        }
        Polynomial q = interpolant - r;
        Rational loss(0);
        for (std::size_t c = 0; c <= n; ++c)
            loss += abs_p(q.evaluate(s.xs[c]) - (*s.ys)[c], p);
        out.push_back({std::move(q), std::move(r), std::move(loss)});
    }
    return out;
}

}  // namespace padml
