#include "multicast/series.hpp"

#include <cmath>
#include <unordered_set>

#include "multicast/error.hpp"

namespace multicast {

void validate(const RealMatrix& values, const std::vector<std::string>& dim_names) {
    if (values.rows() == 0 || values.cols() == 0) {
        throw Error(ErrorCode::EmptySeries, "series must have at least one row and one column");
    }
    if (dim_names.size() != values.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(values.cols()) +
                                                  " dimension names, got " +
                                                  std::to_string(dim_names.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : dim_names) {
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::DuplicateDimName, "duplicate dimension name '" + name + "'");
        }
    }
    for (std::size_t r = 0; r < values.rows(); ++r) {
        for (std::size_t c = 0; c < values.cols(); ++c) {
            const double v = values(r, c);
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::NonFinite, "value " + std::to_string(v) + " at row " +
                                                      std::to_string(r) + ", column " +
                                                      std::to_string(c));
            }
        }
    }
}

MultiSeries::MultiSeries(RealMatrix values, std::vector<std::string> dim_names)
    : values_(std::move(values)), names_(std::move(dim_names)) {
    validate(values_, names_);
}

MultiSeries::MultiSeries(const std::vector<double>& column, std::string name)
    : MultiSeries(RealMatrix(column.size(), 1, column), {std::move(name)}) {}

MultiSeries MultiSeries::slice_rows(std::size_t begin, std::size_t end) const {
    return {values_.slice_rows(begin, end), names_};
}

MultiSeries MultiSeries::select_columns(const std::vector<std::size_t>& cols) const {
    RealMatrix out(values_.rows(), cols.size());
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= values_.cols()) {
            throw Error(ErrorCode::ShapeMismatch, "column index out of range");
        }
        for (std::size_t r = 0; r < values_.rows(); ++r) out(r, j) = values_(r, cols[j]);
        names.push_back(names_[cols[j]]);
    }
    return {std::move(out), std::move(names)};
}

}  // namespace multicast
