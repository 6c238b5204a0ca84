#include "padml/io.hpp"

#include <map>
#include <stdexcept>

#include <json.hpp>

#include "padml/errors.hpp"

namespace padml {

namespace {

std::string strip(std::string s) {
    auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = text.find(sep, start);
        if (at == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            return out;
        }
        out.emplace_back(text.substr(start, at - start));
        start = at + 1;
    }
}

}  // namespace

Dataset parse_dataset(std::string_view csv, const ParseOptions& options) {
    std::vector<Row> rows;
    std::size_t width = 0, lineno = 0;
    bool skipped_header = !options.header;
    for (const std::string& raw_line : split(csv, '\n')) {
        ++lineno;
        std::string line = strip(raw_line);
        if (line.empty()) continue;
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() < 2)
            throw ParseError("dataset: line " + std::to_string(lineno) +
                             " needs at least one feature and a target");
        if (width == 0) width = cells.size();
        if (cells.size() != width)
            throw ParseError("dataset: ragged row on line " + std::to_string(lineno) + " (" +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(width) + ")");
        Row row;
        try {
            for (std::size_t i = 0; i + 1 < cells.size(); ++i)
                row.features.push_back(Rational::parse(strip(cells[i])));
            row.target = Rational::parse(strip(cells.back()));
        } catch (const ParseError& e) {
            throw ParseError("dataset: line " + std::to_string(lineno) + ": " + e.what());
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("dataset: no data rows");
    return Dataset(width - 1, std::move(rows));
}

std::string serialize_dataset(const Dataset& data) {
    std::string out;
    for (const Row& row : data.rows()) {
        for (const auto& f : row.features) out += f.to_string() + ",";
        out += row.target.to_string() + "\n";
    }
    return out;
}

namespace {

// The collection-mission table: ten rows of taxonomy codes at p = 409.
// Feature columns are what robots 2 and 3 fetched, the target is what
// robot 1 fetched.
constexpr std::string_view kZorgetteCsv =
    "326691034247600388922020237468,45991216075942090948,273116748704467022682724613459\n"
    "63666180040725573742299912260,655934845482986543017862842,117240465583858939981595536269\n"
    "63535191567514978714819971859,1573780139196323304716,117109477110648344954115595868\n"
    "162824454261146009544614795817,396171205890659683677595416,55675883174879277066023547799\n"
    "122218027565861551025833271507,800684989475070496403917474,68643742022728184786537647498\n"
    "63273214621093788659860091057,1285764896971742062431186,116847500164227154899155715066\n"
    "227794736973601143174665234713,5762476220082796694,120646165887334410696073986695\n"
    "2840359835158918966262076532658,394573092415095127486114211,375942700174784119254477828244\n"
    "56592802487353442258383130606,106017242436927074913158021,110167088030486808497678754615\n"
    "171338705019834686330810921882,99579452998956312316,224912990562968052570106545891\n";

constexpr std::string_view kFourSolutionCsv =
    "0,0\n"
    "1,0\n"
    "1,1\n"
    "1,2\n"
    "1,3\n";

constexpr std::string_view kIdentityCsv =
    "0,0\n"
    "1,1\n"
    "2,2\n"
    "3,3\n"
    "4,4\n";

// Taxonomy fragment around mammoth.n.01 / dog.n.01 with the full
// ancestor chain, so every node encodes to its absolute path.
constexpr std::string_view kTaxonomyCsv =
    ",entity.n.01,,entity.n.01\n"
    "entity.n.01,physical_entity.n.01,1,physical_entity.n.01\n"
    "physical_entity.n.01,object.n.01,2,object.n.01\n"
    "object.n.01,whole.n.02,3,whole.n.02\n"
    "whole.n.02,living_thing.n.01,37,living_thing.n.01\n"
    "living_thing.n.01,organism.n.01,5,organism.n.01\n"
    "organism.n.01,animal.n.01,4,animal.n.01\n"
    "animal.n.01,chordate.n.01,4,chordate.n.01\n"
    "chordate.n.01,craniate.n.01,5,craniate.n.01\n"
    "craniate.n.01,vertebrate.n.01,3,vertebrate.n.01\n"
    "vertebrate.n.01,mammal.n.01,8,mammal.n.01\n"
    "mammal.n.01,placental.n.01,4,placental.n.01\n"
    "placental.n.01,pachyderm.n.01,17,pachyderm.n.01\n"
    "pachyderm.n.01,elephant.n.01,1,elephant.n.01\n"
    "elephant.n.01,mammoth.n.01,4,mammoth.n.01\n"
    "elephant.n.01,indian_elephant.n.01,3,indian_elephant.n.01\n"
    "placental.n.01,carnivore.n.01,6,carnivore.n.01\n"
    "carnivore.n.01,canine.n.02,2,canine.n.02\n"
    "canine.n.02,dog.n.01,2,dog.n.01\n";

const std::map<std::string, BundledDataset>& bundled_table() {
    static const std::map<std::string, BundledDataset> table = [] {
        std::map<std::string, BundledDataset> t;
        t.emplace("zorgette",
                  BundledDataset{"zorgette",
                                 "ten collection missions at p=409: predict robot 1's taxonomy "
                                 "code from robots 2 and 3",
                                 parse_dataset(kZorgetteCsv)});
        t.emplace("padic-four-solution",
                  BundledDataset{"padic-four-solution",
                                 "five points with four equally good 2-adic lines of best fit",
                                 parse_dataset(kFourSolutionCsv)});
        t.emplace("identity",
                  BundledDataset{"identity",
                                 "y = x on 0..4; a zero-loss line with infinitely many near-optimal "
                                 "neighbours",
                                 parse_dataset(kIdentityCsv)});
        return t;
    }();
    return table;
}

}  // namespace

const BundledDataset& bundled(const std::string& name) {
    const auto& table = bundled_table();
    auto it = table.find(name);
    if (it == table.end()) throw ParseError("bundled: unknown dataset '" + name + "'");
    return it->second;
}

std::vector<std::string> bundled_names() {
    std::vector<std::string> names;
    for (const auto& [name, b] : bundled_table()) names.push_back(name);
    return names;
}

std::string_view bundled_taxonomy_fragment() { return kTaxonomyCsv; }

std::string serialize_report(const FitReport& report) {
    if (report.models.empty())
        throw std::logic_error("report: optimal set cannot be empty");
    nlohmann::json j;
    j["loss"] = report.loss.to_string();
    j["mode"] = to_string(report.mode);
    j["dim"] = report.dim;
    j["rows"] = report.rows;
    j["candidates_examined"] = report.candidates_examined;
    j["singular_skipped"] = report.singular_skipped;
    j["models"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.models.size(); ++i) {
        nlohmann::json m;
        m["weights"] = nlohmann::json::array();
        for (const auto& w : report.models[i].weights()) m["weights"].push_back(w.to_string());
        m["intercept"] = report.models[i].intercept().to_string();
        m["fit_count"] = report.fit_counts[i];
        j["models"].push_back(std::move(m));
    }
    return j.dump(2) + "\n";
}

FitReport parse_report(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: bad JSON: ") + e.what());
    }
    try {
        FitReport report;
        report.loss = Rational::parse(j.at("loss").get<std::string>());
        std::string mode = j.at("mode").get<std::string>();
        if (mode != "exact" && mode != "large_prime")
            throw ParseError("report: unknown mode '" + mode + "'");
        report.mode = mode == "exact" ? FitMode::Exact : FitMode::LargePrime;
        report.dim = j.at("dim").get<std::size_t>();
        report.rows = j.at("rows").get<std::size_t>();
        report.candidates_examined = j.at("candidates_examined").get<std::size_t>();
        report.singular_skipped = j.at("singular_skipped").get<std::size_t>();
        for (const auto& m : j.at("models")) {
            std::vector<Rational> weights;
            for (const auto& w : m.at("weights")) weights.push_back(Rational::parse(w.get<std::string>()));
            report.models.emplace_back(std::move(weights),
                                       Rational::parse(m.at("intercept").get<std::string>()));
            report.fit_counts.push_back(m.at("fit_count").get<std::size_t>());
        }
        if (report.models.empty()) throw ParseError("report: empty optimal set");
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

}  // namespace padml
