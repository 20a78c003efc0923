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

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qkernel/error.hpp"

namespace qkernel {

struct ClassificationReport {
    /// Sorted union of the labels seen in y_true and y_pred.
    std::vector<int> classes;
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<double> f1;
    std::vector<std::size_t> support;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
};

/// Per-class precision/recall/F1 with 0 wherever a denominator is 0.
[[nodiscard]] inline ClassificationReport classification_report(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.empty()) {
        throw ArgumentError("classification_report needs at least one sample");
    }
    if (y_true.size() != y_pred.size()) {
        throw DimensionError("y_true has " + std::to_string(y_true.size()) + " labels, y_pred has " +
                             std::to_string(y_pred.size()));
    }
    ClassificationReport r;
    r.classes.assign(y_true.begin(), y_true.end());
    r.classes.insert(r.classes.end(), y_pred.begin(), y_pred.end());
    std::sort(r.classes.begin(), r.classes.end());
    r.classes.erase(std::unique(r.classes.begin(), r.classes.end()), r.classes.end());

    const std::size_t m = r.classes.size();
    std::vector<std::size_t> tp(m, 0), predicted(m, 0), actual(m, 0);
    const auto slot = [&](int label) {
        return static_cast<std::size_t>(std::lower_bound(r.classes.begin(), r.classes.end(), label) - r.classes.begin());
    };
    std::size_t correct = 0;
    for (std::size_t k = 0; k < y_true.size(); ++k) {
        const std::size_t t = slot(y_true[k]);
        const std::size_t p = slot(y_pred[k]);
        ++actual[t];
        ++predicted[p];
        if (t == p) {
            ++tp[t];
            ++correct;
        }
    }

    const auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
    double f1_sum = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        const double prec = ratio(static_cast<double>(tp[c]), static_cast<double>(predicted[c]));
        const double rec = ratio(static_cast<double>(tp[c]), static_cast<double>(actual[c]));
        const double f = ratio(2.0 * prec * rec, prec + rec);
        r.precision.push_back(prec);
        r.recall.push_back(rec);
        r.f1.push_back(f);
        r.support.push_back(actual[c]);
        f1_sum += f;
    }
    r.macro_f1 = f1_sum / static_cast<double>(m);
    r.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());
    return r;
}

}  // namespace qkernel
