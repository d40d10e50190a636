// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drcs/error.hpp"

namespace drcs {

// Row-major integer table. Sequences and matrices live as exponents of a root
// of unity until the ambiguity and PAPR code turns them into complex values.
class ExponentTable {
public:
    ExponentTable() = default;
    ExponentTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::vector<int> column(std::size_t c) const {
        std::vector<int> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    // First `cols` columns.
    ExponentTable truncated(std::size_t cols) const {
        ExponentTable out(rows_, cols);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(r, c);
        return out;
    }

    std::vector<std::vector<int>> to_nested() const {
        std::vector<std::vector<int>> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
        return out;
    }

    static ExponentTable from_nested(const std::vector<std::vector<int>>& nested) {
        ExponentTable out(nested.size(), nested.empty() ? 0 : nested.front().size());
        for (std::size_t r = 0; r < nested.size(); ++r) {
            if (nested[r].size() != out.cols_) throw Error(ErrorCode::ShapeMismatch, "ragged exponent table");
            for (std::size_t c = 0; c < out.cols_; ++c) out(r, c) = nested[r][c];
        }
        return out;
    }

    friend bool operator==(const ExponentTable&, const ExponentTable&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<int> data_;
};

}  // namespace drcs
