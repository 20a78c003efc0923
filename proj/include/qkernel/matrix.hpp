// Copyright 2026 The qkernel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "qkernel/error.hpp"

namespace qkernel {

/// Dense row-major matrix of doubles. Rows are samples when used as a data matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] static Matrix from_rows(const std::vector<std::vector<double>> &rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw DimensionError("ragged rows: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                     " entries, expected " + std::to_string(cols));
            }
            for (std::size_t j = 0; j < cols; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double &operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    /// Rows picked by `indices`, in that order.
    [[nodiscard]] Matrix select_rows(std::span<const std::size_t> indices) const {
        Matrix out(indices.size(), cols_);
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] >= rows_) {
                throw IndexError("row index " + std::to_string(indices[k]) + " >= " + std::to_string(rows_));
            }
            const auto src = row(indices[k]);
            auto dst = out.row(k);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        return out;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace qkernel
