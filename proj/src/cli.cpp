#include "padml/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "padml/errors.hpp"
#include "padml/hierarchy.hpp"
#include "padml/io.hpp"
#include "padml/polyfit.hpp"
#include "padml/solver.hpp"

namespace padml {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

struct Options {
    std::string prime;
    std::string mode = "auto";
    bool json = false;
    unsigned threads = 1;
    bool header = false;
};

Prime require_prime(const Options& opt) {
    if (opt.prime.empty()) throw ParseError("a prime is required; pass --prime/-p");
    Integer v;
    try {
        v = Integer(opt.prime, 10);
    } catch (const std::invalid_argument&) {
        throw ParseError("prime: '" + opt.prime + "' is not an integer");
    }
    return Prime(v);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string cell = text.substr(
            start, comma == std::string::npos ? text.size() - start : comma - start);
        out.push_back(Rational::parse(cell));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Dataset dataset_from(const std::string& path, const std::string& bundled_name, const Options& opt) {
    if (!bundled_name.empty() && !path.empty())
        throw ParseError("pass either a dataset file or --bundled, not both");
    if (!bundled_name.empty()) return bundled(bundled_name).payload;
    if (path.empty()) throw ParseError("a dataset file or --bundled name is required");
    return parse_dataset(read_file(path), ParseOptions{opt.header});
}

TaxonomyTree tree_from(const std::string& path, bool use_bundled) {
    if (use_bundled && !path.empty())
        throw ParseError("pass either --tree or --bundled-tree, not both");
    if (use_bundled) return load_tree(bundled_taxonomy_fragment());
    if (path.empty()) throw ParseError("a tree is required; pass --tree FILE or --bundled-tree");
    return load_tree(read_file(path));
}

void print_report_text(const FitReport& report, std::ostream& out) {
    out << "loss: " << report.loss << "\n";
    out << "mode: " << to_string(report.mode) << "\n";
    out << "candidates: " << report.candidates_examined << " subsets ("
        << report.singular_skipped << " singular skipped)\n";
    out << "optimal models (" << report.models.size() << "):\n";
    for (std::size_t i = 0; i < report.models.size(); ++i)
        out << "  " << report.models[i].to_string() << "   [fits " << report.fit_counts[i] << "/"
            << report.rows << " rows]\n";
}

int cmd_vp(const Options& opt, const std::string& value, std::ostream& out) {
    Prime p = require_prime(opt);
    Rational x = Rational::parse(value);
    Valuation v = vp(x, p);
    Rational a = abs_p(x, p);
    if (opt.json) {
        nlohmann::json j{{"valuation", v.to_string()}, {"abs", a.to_string()}};
        out << j.dump(2) << "\n";
    } else {
        out << "v=" << v.to_string() << " |x|=" << a << "\n";
    }
    return 0;
}

int cmd_dist(const Options& opt, const std::string& xs, const std::string& ys, std::ostream& out) {
    Prime p = require_prime(opt);
    Rational d = dist_p(Rational::parse(xs), Rational::parse(ys), p);
    if (opt.json) {
        nlohmann::json j{{"distance", d.to_string()}};
        out << j.dump(2) << "\n";
    } else {
        out << "d=" << d << "\n";
    }
    return 0;
}

int cmd_fit(const Options& opt, const std::string& path, const std::string& bundled_name,
            std::ostream& out) {
    Prime p = require_prime(opt);
    Dataset data = dataset_from(path, bundled_name, opt);
    FitReport report = fit(data, p, requested_mode_from_string(opt.mode), opt.threads);
    if (opt.json)
        out << serialize_report(report);
    else
        print_report_text(report, out);
    return 0;
}

int cmd_descend(const Options& opt, const std::string& path, const std::string& bundled_name,
                const std::string& model_text, std::ostream& out) {
    Prime p = require_prime(opt);
    Dataset data = dataset_from(path, bundled_name, opt);
    AffineModel start = AffineModel::from_coefficients(parse_rational_list(model_text));
    Rational loss_before = evaluate_loss(start, data, p);
    auto [next, step] = descend(start, data, p);
    Rational loss_after = evaluate_loss(next, data, p);

    if (opt.json) {
        nlohmann::json j;
        j["direction"] = nlohmann::json::array();
        for (const auto& d : step.direction) j["direction"].push_back(d.to_string());
        j["alphas"] = nlohmann::json::object();
        for (const auto& [i, a] : step.alphas) j["alphas"][std::to_string(i)] = a.to_string();
        j["chosen_index"] = step.chosen_index;
        j["step_size"] = step.step_size.to_string();
        j["model"] = {{"intercept", next.intercept().to_string()}};
        j["model"]["weights"] = nlohmann::json::array();
        for (const auto& w : next.weights()) j["model"]["weights"].push_back(w.to_string());
        j["loss_before"] = loss_before.to_string();
        j["loss_after"] = loss_after.to_string();
        out << j.dump(2) << "\n";
    } else {
        out << "start: " << start.to_string() << "   (loss " << loss_before << ")\n";
        out << "direction: (";
        for (std::size_t i = 0; i < step.direction.size(); ++i)
            out << (i ? ", " : "") << step.direction[i];
        out << ")\n";
        out << "alphas:";
        for (const auto& [i, a] : step.alphas) out << " [row " << i << "] " << a;
        out << "\n";
        out << "chosen: row " << step.chosen_index << ", step " << step.step_size << "\n";
        out << "next: " << next.to_string() << "   (loss " << loss_after << ")\n";
    }
    return 0;
}

int cmd_polyfit(const Options& opt, const std::string& path, std::size_t degree,
                std::ostream& out) {
    Prime p = require_prime(opt);
    Dataset data = parse_dataset(read_file(path), ParseOptions{opt.header});
    if (data.dim() != 1) throw ParseError("polyfit: expected a two-column CSV (x, y)");
    std::vector<Rational> xs, ys;
    for (const Row& row : data.rows()) {
        xs.push_back(row.features[0]);
        ys.push_back(row.target);
    }
    PolyFitResult result =
        fit_poly(xs, ys, degree, p, requested_mode_from_string(opt.mode), opt.threads);
    if (opt.json) {
        nlohmann::json j;
        j["loss"] = result.loss.to_string();
        j["mode"] = to_string(result.report.mode);
        j["polynomials"] = nlohmann::json::array();
        for (const auto& q : result.optima)
            j["polynomials"].push_back(
                {{"coefficients", q.to_coefficient_string()}, {"pretty", q.pretty()}});
        out << j.dump(2) << "\n";
    } else {
        out << "loss: " << result.loss << "\n";
        out << "optimal polynomials (" << result.optima.size() << "):\n";
        for (const auto& q : result.optima)
            out << "  " << q.pretty() << "   [" << q.to_coefficient_string() << "]\n";
    }
    return 0;
}

int cmd_interp(const Options& opt, const std::string& path, std::ostream& out) {
    Dataset data = parse_dataset(read_file(path), ParseOptions{opt.header});
    if (data.dim() != 1) throw ParseError("interp: expected a two-column CSV (x, y)");
    std::vector<Rational> xs, ys;
    for (const Row& row : data.rows()) {
        xs.push_back(row.features[0]);
        ys.push_back(row.target);
    }
    Polynomial q = interpolate(EvaluationSet(std::move(xs), std::move(ys)));
    if (opt.json) {
        nlohmann::json j{{"coefficients", q.to_coefficient_string()}, {"pretty", q.pretty()}};
        out << j.dump(2) << "\n";
    } else {
        out << q.pretty() << "\n";
    }
    return 0;
}

int cmd_residual_check(const Options& opt, const std::string& p_text, const std::string& q_text,
                       const std::string& points, std::ostream& out) {
    Polynomial target = Polynomial::parse(p_text);
    Polynomial approx = Polynomial::parse(q_text);
    EvaluationSet s(parse_rational_list(points));
    auto roots = residual_roots_in_S(target, approx, s);
    if (opt.json) {
        nlohmann::json j;
        j["roots"] = nlohmann::json::array();
        for (const auto& r : roots) j["roots"].push_back(r.to_string());
        j["count"] = roots.size();
        out << j.dump(2) << "\n";
    } else {
        out << "roots in S (" << roots.size() << "):";
        for (const auto& r : roots) out << " " << r;
        out << "\n";
    }
    return 0;
}

int cmd_encode(const Options& opt, const std::string& tree_path, bool use_bundled,
               const std::string& node, std::ostream& out) {
    TaxonomyTree tree = tree_from(tree_path, use_bundled);
    Prime p = opt.prime.empty() ? min_safe_prime(tree) : require_prime(opt);
    PathCode code = PathCode::of(tree, node, p);
    if (opt.json) {
        nlohmann::json j{{"path", code.dotted()},
                         {"value", code.value.get_str()},
                         {"prime", p.value().get_str()}};
        out << j.dump(2) << "\n";
    } else {
        out << "path=" << code.dotted() << " value=" << code.value.get_str() << " p="
            << p.value().get_str() << "\n";
    }
    return 0;
}

int cmd_decode(const Options& opt, const std::string& value_text, std::ostream& out) {
    Prime p = require_prime(opt);
    Integer value;
    try {
        value = Integer(value_text, 10);
    } catch (const std::invalid_argument&) {
        throw ParseError("decode: '" + value_text + "' is not an integer");
    }
    auto digits = decode(value, p);
    PathCode code{digits, p, value};
    if (opt.json) {
        nlohmann::json j{{"path", code.dotted()}};
        out << j.dump(2) << "\n";
    } else {
        out << "path=" << code.dotted() << "\n";
    }
    return 0;
}

int cmd_similar(const Options& opt, const std::string& tree_path, bool use_bundled,
                const std::string& a, const std::string& b, std::ostream& out) {
    TaxonomyTree tree = tree_from(tree_path, use_bundled);
    Prime p = opt.prime.empty() ? min_safe_prime(tree) : require_prime(opt);
    PathCode ca = PathCode::of(tree, a, p);
    PathCode cb = PathCode::of(tree, b, p);
    Rational d = similarity(ca, cb);
    // Depth of the deepest common ancestor = length of the common prefix.
    std::size_t depth = 0;
    while (depth < ca.digits.size() && depth < cb.digits.size() &&
           ca.digits[depth] == cb.digits[depth])
        ++depth;
    if (opt.json) {
        nlohmann::json j{{"distance", d.to_string()},
                         {"common_ancestor_depth", depth},
                         {"prime", p.value().get_str()}};
        out << j.dump(2) << "\n";
    } else {
        if (d.is_zero())
            out << "distance=0";
        else
            out << "distance=" << p.value().get_str() << "^" << vp(d, p).value() << " = " << d;
        out << " depth=" << depth << "\n";
    }
    return 0;
}

// Zero-coefficient reading of an optimal model: a vanishing weight means
// the corresponding robot's loot carries no signal.
std::string padic_verdict(const AffineModel& model) {
    bool b_zero = model.weights()[0].is_zero();
    bool c_zero = model.weights()[1].is_zero();
    if (b_zero && c_zero) return "robot 1 faulty";
    if (b_zero) return "robot 2 faulty";
    if (c_zero) return "robot 3 faulty";
    return "no robot implicated";
}

int cmd_zorgette(const Options& opt, std::ostream& out) {
    Prime p = opt.prime.empty() ? Prime(409) : require_prime(opt);
    const Dataset& data = bundled("zorgette").payload;
    FitReport report = fit(data, p, requested_mode_from_string(opt.mode), opt.threads);

    std::vector<double> beta = ols_baseline(data);
    // The float fit is read off its raw coefficients, smallest first.
    std::string ols_verdict =
        std::fabs(beta[0]) < std::fabs(beta[1]) ? "robot 2 faulty" : "robot 3 faulty";
    bool ols_agrees = false;
    std::vector<std::string> verdicts;
    for (const auto& m : report.models) {
        std::string v = padic_verdict(m);
        if (std::find(verdicts.begin(), verdicts.end(), v) == verdicts.end()) verdicts.push_back(v);
        if (v == ols_verdict) ols_agrees = true;
    }

    if (opt.json) {
        nlohmann::json j;
        j["prime"] = p.value().get_str();
        j["padic"] = nlohmann::json::parse(serialize_report(report));
        j["padic"]["verdicts"] = verdicts;
        j["ols"] = {{"coefficients", nlohmann::json::array()},
                    {"verdict", ols_verdict + (ols_agrees ? "" : " (incorrect)")}};
        for (double v : beta) j["ols"]["coefficients"].push_back(format_double(v));
        out << j.dump(2) << "\n";
        return 0;
    }

    out << "p-adic regression (p=" << p.value().get_str() << ", mode=" << to_string(report.mode)
        << "):\n";
    out << "  loss: " << report.loss << "\n";
    for (const auto& m : report.models)
        out << "  " << m.to_string({"y", "z"}, "x") << "\n";
    out << "  verdict:";
    for (const auto& v : verdicts) out << " " << v;
    out << "\n";
    out << "ordinary least squares (binary64):\n";
    out << "  x = " << format_double(beta[0]) << "*y "
        << (beta[1] < 0 ? "- " : "+ ") << format_double(std::fabs(beta[1])) << "*z "
        << (beta[2] < 0 ? "- " : "+ ") << format_double(std::fabs(beta[2])) << "\n";
    out << "  verdict: " << ols_verdict << (ols_agrees ? "" : " (incorrect)") << "\n";
    return 0;
}

int cmd_dump(const std::string& bundled_name, bool tree, bool list, std::ostream& out) {
    if (list) {
        for (const auto& name : bundled_names()) {
            const auto& b = bundled(name);
            out << name << ": " << b.description << " (" << b.payload.size() << " rows, dim "
                << b.payload.dim() << ")\n";
        }
        out << "taxonomy-fragment: tree around mammoth.n.01 and dog.n.01 (edge-list CSV)\n";
        return 0;
    }
    if (tree) {
        out << bundled_taxonomy_fragment();
        return 0;
    }
    if (bundled_name.empty()) throw ParseError("dump: pass --bundled NAME, --bundled-tree or --list");
    out << serialize_dataset(bundled(bundled_name).payload);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact p-adic regression, polynomial approximation and taxonomy encoding"};
    app.name("padml");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    app.add_option("-p,--prime", opt.prime, "Prime for the p-adic metric");
    app.add_option("--mode", opt.mode, "Fit mode: auto, exact, large-prime")
        ->check(CLI::IsMember({"auto", "exact", "large-prime", "large_prime"}));
    app.add_flag("--json", opt.json, "Machine-readable JSON output");
    app.add_option("--threads", opt.threads, "Worker threads for subset enumeration")
        ->check(CLI::PositiveNumber);

    std::string x_text, y_text, dataset_path, bundled_name, model_text, tree_path;
    std::string poly_p, poly_q, points_text, node_a, node_b, value_text;
    std::size_t degree = 1;
    bool use_bundled_tree = false, list_bundled = false;

    auto* vp_cmd = app.add_subcommand("vp", "p-adic valuation and absolute value of a rational");
    vp_cmd->add_option("x", x_text, "Rational, e.g. -3/4")->required();

    auto* dist_cmd = app.add_subcommand("dist", "p-adic distance between two rationals");
    dist_cmd->add_option("x", x_text)->required();
    dist_cmd->add_option("y", y_text)->required();

    auto* fit_cmd = app.add_subcommand("fit", "p-adic linear regression on a CSV dataset");
    fit_cmd->add_option("dataset", dataset_path, "CSV file: n feature columns then the target");
    fit_cmd->add_option("--bundled", bundled_name, "Use a bundled dataset instead of a file");
    fit_cmd->add_flag("--header", opt.header, "Skip the first CSV row");

    auto* descend_cmd =
        app.add_subcommand("descend", "One loss-lowering step from a starting model");
    descend_cmd->add_option("dataset", dataset_path);
    descend_cmd->add_option("--bundled", bundled_name);
    descend_cmd->add_option("--model", model_text, "Start coefficients: w1,...,wn,intercept")
        ->required();
    descend_cmd->add_flag("--header", opt.header);

    auto* polyfit_cmd =
        app.add_subcommand("polyfit", "Optimal degree-bounded polynomials for (x, y) data");
    polyfit_cmd->add_option("dataset", dataset_path, "Two-column CSV of x,y")->required();
    polyfit_cmd->add_option("-n,--degree", degree, "Degree bound")->required();
    polyfit_cmd->add_flag("--header", opt.header);

    auto* interp_cmd = app.add_subcommand("interp", "Exact polynomial interpolation of (x, y) data");
    interp_cmd->add_option("dataset", dataset_path, "Two-column CSV of x,y")->required();
    interp_cmd->add_flag("--header", opt.header);

    auto* residual_cmd = app.add_subcommand(
        "residual-check", "Points of S where two polynomials agree (residual roots)");
    residual_cmd
        ->add_option("-P,--target", poly_p,
                     "P coefficients, little-endian (use --target=-2,3 for a leading minus)")
        ->required();
    residual_cmd->add_option("-Q,--approx", poly_q, "Q coefficients, little-endian")->required();
    residual_cmd->add_option("--points", points_text, "Evaluation set: x1,x2,...")->required();

    auto* encode_cmd = app.add_subcommand("encode", "Path code of a taxonomy node");
    encode_cmd->add_option("node", node_a, "Node id or label")->required();
    encode_cmd->add_option("--tree", tree_path, "Tree document (JSON or edge-list CSV)");
    encode_cmd->add_flag("--bundled-tree", use_bundled_tree, "Use the bundled taxonomy fragment");

    auto* decode_cmd = app.add_subcommand("decode", "Digits of a path code integer");
    decode_cmd->add_option("value", value_text, "Non-negative integer")->required();

    auto* similar_cmd =
        app.add_subcommand("similar", "p-adic distance and common-ancestor depth of two nodes");
    similar_cmd->add_option("a", node_a)->required();
    similar_cmd->add_option("b", node_b)->required();
    similar_cmd->add_option("--tree", tree_path);
    similar_cmd->add_flag("--bundled-tree", use_bundled_tree);

    auto* zorgette_cmd = app.add_subcommand(
        "zorgette", "Faulty-robot demo: p-adic fit vs least squares on the bundled missions");

    auto* dump_cmd = app.add_subcommand("dump", "Export bundled data");
    dump_cmd->add_option("--bundled", bundled_name, "Dataset name");
    dump_cmd->add_flag("--bundled-tree", use_bundled_tree, "Export the taxonomy fragment");
    dump_cmd->add_flag("--list", list_bundled, "List bundled names");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (vp_cmd->parsed()) return cmd_vp(opt, x_text, out);
        if (dist_cmd->parsed()) return cmd_dist(opt, x_text, y_text, out);
        if (fit_cmd->parsed()) return cmd_fit(opt, dataset_path, bundled_name, out);
        if (descend_cmd->parsed())
            return cmd_descend(opt, dataset_path, bundled_name, model_text, out);
        if (polyfit_cmd->parsed()) return cmd_polyfit(opt, dataset_path, degree, out);
        if (interp_cmd->parsed()) return cmd_interp(opt, dataset_path, out);
        if (residual_cmd->parsed())
            return cmd_residual_check(opt, poly_p, poly_q, points_text, out);
        if (encode_cmd->parsed()) return cmd_encode(opt, tree_path, use_bundled_tree, node_a, out);
        if (decode_cmd->parsed()) return cmd_decode(opt, value_text, out);
        if (similar_cmd->parsed())
            return cmd_similar(opt, tree_path, use_bundled_tree, node_a, node_b, out);
        if (zorgette_cmd->parsed()) return cmd_zorgette(opt, out);
        if (dump_cmd->parsed()) return cmd_dump(bundled_name, use_bundled_tree, list_bundled, out);
        err << "usage error: no subcommand\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace padml
