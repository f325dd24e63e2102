#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace multicast {

/// Dense row-major matrix. Rows are timestamps, columns are dimensions.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        assert(data_.size() == rows_ * cols_);
    }

    /// Builds a matrix from per-dimension columns of equal length.
    static Matrix from_columns(const std::vector<std::vector<T>>& columns) {
        const std::size_t cols = columns.size();
        const std::size_t rows = cols == 0 ? 0 : columns.front().size();
        Matrix m(rows, cols);
        for (std::size_t c = 0; c < cols; ++c) {
            assert(columns[c].size() == rows);
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const T> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    [[nodiscard]] std::vector<T> column(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    void append_row(std::span<const T> values) {
        assert(values.size() == cols_ || (rows_ == 0 && cols_ == 0));
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    /// Rows [begin, end).
    [[nodiscard]] Matrix slice_rows(std::size_t begin, std::size_t end) const {
        assert(begin <= end && end <= rows_);
        return Matrix(end - begin, cols_,
                      std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
                                     data_.begin() + static_cast<std::ptrdiff_t>(end * cols_)));
    }

    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using IntMatrix = Matrix<std::int64_t>;

}  // namespace multicast
