#pragma once

#include <cstddef>
#include <vector>

#include "padml/rational.hpp"

namespace padml {

struct Row {
    std::vector<Rational> features;
    Rational target;
};

/// k observations (X_i in Q^n, y_i in Q). Construction validates that
/// every feature vector has length n. Immutable after construction.
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<Row> rows);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }
    const Row& row(std::size_t i) const { return rows_[i]; }
    const std::vector<Row>& rows() const { return rows_; }

    bool operator==(const Dataset& o) const;

private:
    std::size_t dim_;
    std::vector<Row> rows_;
};

}  // namespace padml
