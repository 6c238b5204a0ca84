#include "padml/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "padml/errors.hpp"

namespace padml {

std::string to_string(FitMode mode) {
    return mode == FitMode::Exact ? "exact" : "large_prime";
}

std::string to_string(RequestedMode mode) {
    switch (mode) {
        case RequestedMode::Auto: return "auto";
        case RequestedMode::Exact: return "exact";
        case RequestedMode::LargePrime: return "large_prime";
    }
    return "auto";
}

RequestedMode requested_mode_from_string(const std::string& name) {
    if (name == "auto") return RequestedMode::Auto;
    if (name == "exact") return RequestedMode::Exact;
    if (name == "large_prime" || name == "large-prime") return RequestedMode::LargePrime;
    throw ParseError("fit: unknown mode '" + name + "'");
}

bool FitReport::operator==(const FitReport& o) const {
    return loss == o.loss && models == o.models && fit_counts == o.fit_counts &&
           candidates_examined == o.candidates_examined && singular_skipped == o.singular_skipped &&
           mode == o.mode && dim == o.dim && rows == o.rows;
}

Rational evaluate_loss(const AffineModel& model, const Dataset& data, const Prime& p) {
    if (model.dim() != data.dim())
        throw std::invalid_argument("evaluate_loss: model/dataset dimension mismatch");
    Rational sum(0);
    for (const Row& row : data.rows()) sum += abs_p(model.residual(row), p);
    return sum;
}

std::vector<Rational> residuals(const AffineModel& model, const Dataset& data) {
    if (model.dim() != data.dim())
        throw std::invalid_argument("residuals: model/dataset dimension mismatch");
    std::vector<Rational> out;
    out.reserve(data.size());
    for (const Row& row : data.rows()) out.push_back(model.residual(row));
    return out;
}

namespace {

// Row (X_i, 1) of the design matrix.
RationalVector lifted_row(const Row& row) {
    RationalVector v = row.features;
    v.push_back(Rational(1));
    return v;
}

RationalMatrix lifted_matrix(const Dataset& data, const std::vector<std::size_t>& indices) {
    RationalMatrix m;
    m.reserve(indices.size());
    for (std::size_t i : indices) m.push_back(lifted_row(data.row(i)));
    return m;
}

std::optional<AffineModel> solve_subset(const Dataset& data, const std::vector<std::size_t>& subset) {
    RationalMatrix a = lifted_matrix(data, subset);
    RationalVector b;
    b.reserve(subset.size());
    for (std::size_t i : subset) b.push_back(data.row(i).target);
    auto v = solve_square(a, b);
    if (!v) return std::nullopt;
    return AffineModel::from_coefficients(*v);
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t k, std::size_t r) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // next combination in lexicographic order
        std::size_t i = r;
        while (i-- > 0) {
            if (cur[i] != i + k - r) {
                ++cur[i];
                for (std::size_t j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
}

struct Candidate {
    AffineModel model;
    Rational loss;
    std::size_t fit_count = 0;
    bool residuals_unit = true;  // every nonzero residual has valuation 0
};

struct EnumerationResult {
    std::map<CanonicalKey, Candidate, bool (*)(const CanonicalKey&, const CanonicalKey&)> candidates{
        key_less};
    std::size_t examined = 0;
    std::size_t singular = 0;
};

Candidate evaluate_candidate(const AffineModel& model, const Dataset& data, const Prime& p) {
    Candidate c{model, Rational(0), 0, true};
    for (const Row& row : data.rows()) {
        Rational r = model.residual(row);
        if (r.is_zero()) {
            ++c.fit_count;
            continue;
        }
        Valuation v = vp(r, p);
        if (v.value() != 0) c.residuals_unit = false;
        c.loss += pow_rational(p.value(), -v.value());
    }
    return c;
}

EnumerationResult enumerate_candidates(const Dataset& data, const Prime& p, unsigned threads) {
    const auto subsets = all_subsets(data.size(), data.dim() + 1);
    threads = std::max(1u, std::min<unsigned>(threads, subsets.size()));

    auto work = [&](std::size_t begin, std::size_t end, EnumerationResult& local) {
        for (std::size_t s = begin; s < end; ++s) {
            ++local.examined;
            auto model = solve_subset(data, subsets[s]);
            if (!model) {
                ++local.singular;
                continue;
            }
            CanonicalKey key = model->canonical_key();
            if (local.candidates.contains(key)) continue;
            local.candidates.emplace(std::move(key), evaluate_candidate(*model, data, p));
        }
    };

    std::vector<EnumerationResult> partial(threads);
    if (threads == 1) {
        work(0, subsets.size(), partial[0]);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (subsets.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t begin = std::min<std::size_t>(t * chunk, subsets.size());
            std::size_t end = std::min<std::size_t>(begin + chunk, subsets.size());
            pool.emplace_back(work, begin, end, std::ref(partial[t]));
        }
        for (auto& th : pool) th.join();
    }

    EnumerationResult merged;
    for (auto& part : partial) {
        merged.examined += part.examined;
        merged.singular += part.singular;
        for (auto& [key, cand] : part.candidates)
            merged.candidates.emplace(key, std::move(cand));
    }
    return merged;
}

void require_fit_preconditions(const Dataset& data) {
    if (data.size() < data.dim() + 1)
        throw PreconditionError("fit: need at least n+1 = " + std::to_string(data.dim() + 1) +
                                " rows, got " + std::to_string(data.size()));
    NondegeneracyCheck check = check_nondegenerate(data);
    if (!check.nondegenerate) {
        std::string phi;
        for (const auto& c : check.certificate) phi += (phi.empty() ? "" : ", ") + c.to_string();
        throw PreconditionError("fit: degenerate dataset; certificate phi = (" + phi + ")");
    }
}

FitReport report_from(const EnumerationResult& enumeration, const Dataset& data, FitMode mode,
                      bool count_based_loss) {
    if (enumeration.candidates.empty())
        throw PreconditionError("fit: no candidate hyperplane exists");

    FitReport report;
    report.mode = mode;
    report.dim = data.dim();
    report.rows = data.size();
    report.candidates_examined = enumeration.examined;
    report.singular_skipped = enumeration.singular;

    if (count_based_loss) {
        std::size_t best = 0;
        for (const auto& [key, c] : enumeration.candidates) best = std::max(best, c.fit_count);
        report.loss = Rational(static_cast<long>(data.size() - best));
        for (const auto& [key, c] : enumeration.candidates)
            if (c.fit_count == best) {
                // Unit residuals make k - fit_count the exact loss.
                if (c.loss != report.loss)
                    throw std::logic_error("fit: count-based loss disagrees with the exact loss");
                report.models.push_back(c.model);
                report.fit_counts.push_back(c.fit_count);
            }
    } else {
        const Rational* best = nullptr;
        for (const auto& [key, c] : enumeration.candidates)
            if (!best || c.loss < *best) best = &c.loss;
        report.loss = *best;
        for (const auto& [key, c] : enumeration.candidates)
            if (c.loss == report.loss) {
                report.models.push_back(c.model);
                report.fit_counts.push_back(c.fit_count);
            }
    }

    // Optimality theorem guarantee; a violation here is a solver bug.
    for (std::size_t c : report.fit_counts)
        if (c < data.dim() + 1)
            throw std::logic_error("fit: optimal model fits fewer than n+1 rows");
    return report;
}

}  // namespace

NondegeneracyCheck check_nondegenerate(const Dataset& data) {
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) all[i] = i;
    auto basis = nullspace(lifted_matrix(data, all), data.dim() + 1);
    if (basis.empty()) return {true, {}};
    auto ints = to_coprime_integers(basis.front());
    RationalVector cert;
    cert.reserve(ints.size());
    for (const auto& e : ints) cert.push_back(Rational(e));
    return {false, cert};
}

std::optional<AffineModel> hyperplane_through(const std::vector<Row>& rows) {
    if (rows.empty()) throw std::invalid_argument("hyperplane_through: no rows");
    std::size_t n = rows.front().features.size();
    if (rows.size() != n + 1)
        throw std::invalid_argument("hyperplane_through: need exactly n+1 rows");
    RationalMatrix a;
    RationalVector b;
    for (const Row& row : rows) {
        if (row.features.size() != n)
            throw std::invalid_argument("hyperplane_through: inconsistent dimensions");
        a.push_back(lifted_row(row));
        b.push_back(row.target);
    }
    auto v = solve_square(a, b);
    if (!v) return std::nullopt;
    return AffineModel::from_coefficients(*v);
}

FitReport fit_exact(const Dataset& data, const Prime& p, unsigned threads) {
    require_fit_preconditions(data);
    auto enumeration = enumerate_candidates(data, p, threads);
    return report_from(enumeration, data, FitMode::Exact, false);
}

std::pair<AffineModel, DescentStep> descend(const AffineModel& model, const Dataset& data,
                                            const Prime& p) {
    if (model.dim() != data.dim())
        throw std::invalid_argument("descend: model/dataset dimension mismatch");
    require_fit_preconditions(data);

    std::vector<std::size_t> fitted;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (model.fits(data.row(i))) fitted.push_back(i);
    if (fitted.size() >= data.dim() + 1)
        throw PreconditionError("descend: model already fits " + std::to_string(fitted.size()) +
                                " rows (>= n+1); nothing to improve");

    // V' must annihilate every fitted row; scan the null-space basis in
    // free-column order for a vector that moves at least one row.
    auto basis = nullspace(lifted_matrix(data, fitted), data.dim() + 1);
    const RationalVector* direction = nullptr;
    std::vector<Rational> dots(data.size());
    for (const auto& candidate : basis) {
        bool moves = false;
        for (std::size_t i = 0; i < data.size(); ++i) {
            Rational d(0);
            for (std::size_t j = 0; j < data.dim(); ++j) d += candidate[j] * data.row(i).features[j];
            d += candidate[data.dim()];
            if (!d.is_zero()) moves = true;
            dots[i] = d;
        }
        if (moves) {
            direction = &candidate;
            break;
        }
    }
    if (!direction) throw std::logic_error("descend: no usable direction in a non-degenerate dataset");

    DescentStep step;
    step.direction = *direction;
    bool have_choice = false;
    Valuation best_v = Valuation::infinity();
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (dots[i].is_zero()) continue;
        Rational alpha = model.residual(data.row(i)) / (-dots[i]);
        step.alphas.emplace(i, alpha);
        Valuation v = vp(alpha, p);  // smallest |alpha|_p = largest valuation
        if (!have_choice || best_v < v) {
            have_choice = true;
            best_v = v;
            step.chosen_index = i;
            step.step_size = alpha;
        }
    }

    std::vector<Rational> coeffs = model.coefficients();
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] += step.step_size * step.direction[j];
    AffineModel next = AffineModel::from_coefficients(coeffs);

    for (std::size_t i : fitted)
        if (!next.fits(data.row(i))) throw std::logic_error("descend: lost a fitted row");
    if (!next.fits(data.row(step.chosen_index)))
        throw std::logic_error("descend: chosen row not fitted");
    if (!(evaluate_loss(next, data, p) < evaluate_loss(model, data, p)))
        throw std::logic_error("descend: loss did not strictly decrease");
    return {std::move(next), std::move(step)};
}

namespace {

// Necessary condition from the large-prime bound: the prime must not
// divide any nonzero pairwise difference of targets or of a feature
// coordinate. Catches regimes like small p on integer ladders where the
// candidate set alone cannot witness the violation.
bool differences_are_units(const Dataset& data, const Prime& p) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            Rational dy = data.row(i).target - data.row(j).target;
            if (!dy.is_zero() && vp(dy, p).value() != 0) return false;
            for (std::size_t c = 0; c < data.dim(); ++c) {
                Rational dx = data.row(i).features[c] - data.row(j).features[c];
                if (!dx.is_zero() && vp(dx, p).value() != 0) return false;
            }
        }
    }
    return true;
}

}  // namespace

FitReport fit_large_prime(const Dataset& data, const Prime& p, unsigned threads) {
    require_fit_preconditions(data);
    if (differences_are_units(data, p)) {
        auto enumeration = enumerate_candidates(data, p, threads);
        bool units = true;
        for (const auto& [key, c] : enumeration.candidates)
            if (!c.residuals_unit) {
                units = false;
                break;
            }
        if (units) return report_from(enumeration, data, FitMode::LargePrime, true);
    }
    return fit_exact(data, p, threads);
}

FitReport fit(const Dataset& data, const Prime& p, RequestedMode mode, unsigned threads) {
    if (mode == RequestedMode::Exact) return fit_exact(data, p, threads);
    return fit_large_prime(data, p, threads);
}

std::vector<double> ols_baseline(const Dataset& data) {
    const std::size_t n = data.dim() + 1;
    if (data.size() < n)
        throw PreconditionError("ols: need at least n+1 rows");

    // Normal equations (X^T X) beta = X^T y in binary64.
    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (const Row& row : data.rows()) {
        std::vector<double> r;
        for (const auto& f : row.features) r.push_back(f.to_double());
        r.push_back(1.0);
        design.push_back(std::move(r));
        y.push_back(row.target.to_double());
    }
    std::vector<std::vector<double>> ata(n, std::vector<double>(n, 0.0));
    std::vector<double> atb(n, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a; b < n; ++b) ata[a][b] += design[i][a] * design[i][b];
            atb[a] += design[i][a] * y[i];
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < a; ++b) ata[a][b] = ata[b][a];

    // Gaussian elimination with partial pivoting. A zero pivot marks a
    // rank-deficient system; anything else is solved as-is, matching the
    // "full rank in float arithmetic" precondition even when the columns
    // are scaled wildly apart.
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(ata[i][k]) > std::fabs(ata[piv][k])) piv = i;
        if (ata[piv][k] == 0.0)
            throw PreconditionError("ols: rank-deficient design matrix");
        std::swap(ata[piv], ata[k]);
        std::swap(atb[piv], atb[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = ata[i][k] / ata[k][k];
            for (std::size_t j = k; j < n; ++j) ata[i][j] -= f * ata[k][j];
            atb[i] -= f * atb[k];
        }
    }
    std::vector<double> beta(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = atb[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= ata[i][j] * beta[j];
        beta[i] = acc / ata[i][i];
    }
    return beta;
}

}  // namespace padml
