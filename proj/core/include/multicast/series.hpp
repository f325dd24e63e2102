#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multicast/matrix.hpp"

namespace multicast {

/// Throws Error{EmptySeries | NonFinite | DuplicateDimName | ShapeMismatch}
/// unless `values` is a non-empty, all-finite matrix with one unique name per column.
void validate(const RealMatrix& values, const std::vector<std::string>& dim_names);

/// An n x d real series with named dimensions. Timestamps are the row index.
/// Immutable once constructed; the constructor enforces the invariants.
class MultiSeries {
public:
    MultiSeries(RealMatrix values, std::vector<std::string> dim_names);

    /// Single-dimension convenience constructor.
    MultiSeries(const std::vector<double>& column, std::string name);

    [[nodiscard]] std::size_t length() const noexcept { return values_.rows(); }
    [[nodiscard]] std::size_t dims() const noexcept { return values_.cols(); }
    [[nodiscard]] const RealMatrix& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::string>& dim_names() const noexcept { return names_; }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const { return values_(row, col); }
    [[nodiscard]] std::vector<double> column(std::size_t col) const { return values_.column(col); }

    [[nodiscard]] MultiSeries slice_rows(std::size_t begin, std::size_t end) const;
    [[nodiscard]] MultiSeries select_columns(const std::vector<std::size_t>& cols) const;

    friend bool operator==(const MultiSeries&, const MultiSeries&) = default;

private:
    RealMatrix values_;
    std::vector<std::string> names_;
};

}  // namespace multicast
