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

/**
 * @file
 * Bundled Iris data, CSV loading, standardization and train/test splitting.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qkernel/error.hpp"
#include "qkernel/hash.hpp"
#include "qkernel/iris_data.hpp"
#include "qkernel/matrix.hpp"

namespace qkernel::data {

struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    /// class_names[id] is the text label of class id.
    std::vector<std::string> class_names;
};

namespace detail {

inline std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        std::string field(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) {
            field.pop_back();
        }
        const std::size_t lead = field.find_first_not_of(' ');
        out.push_back(lead == std::string::npos ? std::string{} : field.substr(lead));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

}  // namespace detail

/// Header row, then numeric feature columns followed by one text label column.
/// Class ids are assigned in order of first appearance.
[[nodiscard]] inline Dataset parse_csv(std::string_view text) {
    Dataset ds;
    std::vector<std::vector<double>> rows;
    std::map<std::string, int> ids;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \r\t") == std::string_view::npos) {
            continue;
        }
        auto fields = detail::split_fields(line);
        if (ds.feature_names.empty()) {
            if (fields.size() < 2) {
                throw ArgumentError("CSV header needs at least one feature column and a label column");
            }
            ds.feature_names.assign(fields.begin(), fields.end() - 1);
            continue;
        }
        if (fields.size() != ds.feature_names.size() + 1) {
            throw DimensionError("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(ds.feature_names.size() + 1));
        }
        std::vector<double> row;
        for (std::size_t k = 0; k + 1 < fields.size(); ++k) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(fields[k], &used);
            } catch (const std::logic_error &) {
                used = 0;
            }
            if (used == 0 || used != fields[k].size() || !std::isfinite(v)) {
                throw ArgumentError("CSV line " + std::to_string(line_no) + ": '" + fields[k] + "' is not a number");
            }
            row.push_back(v);
        }
        const auto [it, inserted] = ids.emplace(fields.back(), static_cast<int>(ds.class_names.size()));
        if (inserted) {
            ds.class_names.push_back(fields.back());
        }
        ds.labels.push_back(it->second);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ArgumentError("CSV contains no data rows");
    }
    ds.features = Matrix::from_rows(rows);
    return ds;
}

/// Fisher's Iris data, verified against the bundled checksum.
/// Labels: 0 setosa, 1 versicolor, 2 virginica.
[[nodiscard]] inline Dataset load_iris() {
    if (fnv1a64(detail::kIrisCsv) != detail::kIrisChecksum) {
        throw DataIntegrityError("bundled iris.csv does not match its checksum");
    }
    Dataset ds = parse_csv(detail::kIrisCsv);
    if (ds.features.rows() != 150 || ds.features.cols() != 4 || ds.class_names.size() != 3) {
        throw DataIntegrityError("bundled iris.csv has an unexpected shape");
    }
    return ds;
}

[[nodiscard]] inline Dataset load_csv_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open dataset");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

/// "builtin:iris" or a CSV path.
[[nodiscard]] inline Dataset load_dataset(const std::string &source) {
    if (source == "builtin:iris") {
        return load_iris();
    }
    return load_csv_file(source);
}

struct ScalerParams {
    std::vector<double> mean;
    /// Population standard deviation per feature, all > 0.
    std::vector<double> stddev;
};

[[nodiscard]] inline ScalerParams fit_scaler(const Matrix &x) {
    if (x.rows() == 0 || x.cols() == 0) {
        throw ArgumentError("cannot fit a scaler on an empty matrix");
    }
    const auto n = static_cast<double>(x.rows());
    ScalerParams p{std::vector<double>(x.cols(), 0.0), std::vector<double>(x.cols(), 0.0)};
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            m += x(i, j);
        }
        m /= n;
        double v = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            v += (x(i, j) - m) * (x(i, j) - m);
        }
        v /= n;
        if (!(v > 0.0)) {
            throw ArgumentError("feature " + std::to_string(j) + " has zero variance");
        }
        p.mean[j] = m;
        p.stddev[j] = std::sqrt(v);
    }
    return p;
}

[[nodiscard]] inline Matrix apply_scaler(const ScalerParams &p, const Matrix &x) {
    if (x.cols() != p.mean.size()) {
        throw DimensionError("scaler fit on " + std::to_string(p.mean.size()) + " features, got " +
                             std::to_string(x.cols()));
    }
    Matrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            out(i, j) = (x(i, j) - p.mean[j]) / p.stddev[j];
        }
    }
    return out;
}

[[nodiscard]] inline Matrix invert_scaler(const ScalerParams &p, const Matrix &z) {
    if (z.cols() != p.mean.size()) {
        throw DimensionError("scaler fit on " + std::to_string(p.mean.size()) + " features, got " +
                             std::to_string(z.cols()));
    }
    Matrix out = z;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        for (std::size_t j = 0; j < z.cols(); ++j) {
            out(i, j) = z(i, j) * p.stddev[j] + p.mean[j];
        }
    }
    return out;
}

struct SplitIndices {
    /// Both sorted ascending; together a partition of 0..n-1.
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::uint64_t seed = 0;
    double test_fraction = 0.2;
};

namespace detail {

// Unbiased draw in [0, bound) by rejection; independent of the standard library's distributions.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = rng();
    while (v >= limit) {
        v = rng();
    }
    return v % bound;
}

inline void shuffle(std::vector<std::size_t> &v, std::mt19937_64 &rng) {
    for (std::size_t k = v.size(); k > 1; --k) {
        std::swap(v[k - 1], v[uniform_below(rng, k)]);
    }
}

}  // namespace detail

/// Seeded split. With non-empty `stratify` labels, round(count * test_fraction) samples
/// of each class go to the test side.
[[nodiscard]] inline SplitIndices train_test_split(std::size_t n, double test_fraction, std::uint64_t seed,
                                                   std::span<const int> stratify = {}) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ArgumentError("test_fraction must lie strictly between 0 and 1");
    }
    if (n < 2) {
        throw ArgumentError("need at least 2 samples to split");
    }
    if (!stratify.empty() && stratify.size() != n) {
        throw DimensionError("stratify has " + std::to_string(stratify.size()) + " labels for " + std::to_string(n) +
                             " samples");
    }
    SplitIndices s;
    s.seed = seed;
    s.test_fraction = test_fraction;
    std::mt19937_64 rng(seed);

    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        groups[stratify.empty() ? 0 : stratify[i]].push_back(i);
    }
    for (auto &[label, members] : groups) {
        detail::shuffle(members, rng);
        const auto n_test = static_cast<std::size_t>(std::lround(static_cast<double>(members.size()) * test_fraction));
        s.test.insert(s.test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
        s.train.insert(s.train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    }
    if (s.train.empty() || s.test.empty()) {
        throw ArgumentError("test_fraction leaves one side of the split empty");
    }
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.test.begin(), s.test.end());
    return s;
}

}  // namespace qkernel::data
