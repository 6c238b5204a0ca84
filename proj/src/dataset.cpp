#include "padml/dataset.hpp"

#include <string>

#include "padml/errors.hpp"

namespace padml {

Dataset::Dataset(std::size_t dim, std::vector<Row> rows) : dim_(dim), rows_(std::move(rows)) {
    if (dim_ == 0) throw PreconditionError("dataset: dimension must be positive");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].features.size() != dim_)
            throw PreconditionError("dataset: row " + std::to_string(i) + " has " +
                                    std::to_string(rows_[i].features.size()) +
                                    " features, expected " + std::to_string(dim_));
    // Repeated feature vectors with different targets are allowed; no
    // model can fit both such rows, but the optimality theorem and the
    // enumeration are unaffected (the multiple-minima ladder datasets
    // depend on exactly this shape).
}

bool Dataset::operator==(const Dataset& o) const {
    if (dim_ != o.dim_ || rows_.size() != o.rows_.size()) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].features != o.rows_[i].features || rows_[i].target != o.rows_[i].target)
            return false;
    return true;
}

}  // namespace padml
