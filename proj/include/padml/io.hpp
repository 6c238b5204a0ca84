#pragma once

/**
 * @file io.hpp
 * @brief Dataset/report/tree (de)serialization and the bundled data.
 *
 * Datasets travel as UTF-8 CSV: n feature columns then one target
 * column, every cell in the canonical rational text format. Reports
 * travel as JSON with rationals as strings (the bundled integers exceed
 * every binary float's exact range) and models listed in canonical-key
 * order so identical inputs always serialize identically.
 */

#include <string>
#include <string_view>
#include <vector>

#include "padml/dataset.hpp"
#include "padml/solver.hpp"

namespace padml {

struct ParseOptions {
    bool header = false;  // skip the first CSV row
};

Dataset parse_dataset(std::string_view csv, const ParseOptions& options = {});
std::string serialize_dataset(const Dataset& data);

struct BundledDataset {
    std::string name;
    std::string description;
    Dataset payload;
};

/// Named datasets compiled into the library. Unknown names throw.
const BundledDataset& bundled(const std::string& name);
std::vector<std::string> bundled_names();

/// The taxonomy fragment used by the faulty-robot demo, as an edge-list
/// CSV document (loadable with load_tree).
std::string_view bundled_taxonomy_fragment();

std::string serialize_report(const FitReport& report);
FitReport parse_report(std::string_view json_text);

}  // namespace padml
