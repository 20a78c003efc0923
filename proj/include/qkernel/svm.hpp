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
 * Soft-margin SVM over a precomputed kernel.
 *
 * The binary dual
 *
 *     min_a  1/2 a'Qa - e'a,   Q_ij = y_i y_j K_ij,   0 <= a_i <= C,   y'a = 0
 *
 * is solved by SMO with maximal-violating-pair working-set selection. Multiclass
 * problems are decomposed one-vs-one and predicted by majority vote.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qkernel/error.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/matrix.hpp"

namespace qkernel::svm {

struct SmoOptions {
    double tol = 1e-3;
    /// 0 means 10000 * n.
    std::size_t max_iter = 0;
    /// Record the dual objective after every step (O(n^2) per step; for debugging).
    bool track_objective = false;
};

struct BinaryDualSolution {
    /// One coefficient per sample of this sub-problem, in [0, C].
    std::vector<double> alpha;
    /// Labels in {-1, +1}, aligned with alpha.
    std::vector<int> signs;
    double bias = 0.0;
    /// Local indices with alpha > 0.
    std::vector<std::size_t> support_indices;
    /// Class ids mapped to +1 and -1 respectively.
    std::pair<int, int> label_pair{1, -1};
    /// Row/column of the full training kernel for each local sample.
    std::vector<std::size_t> train_indices;
    double C = 1.0;

    bool converged = false;
    std::size_t iterations = 0;
    /// Maximal KKT violation m(a) - M(a) at exit.
    double kkt_gap = 0.0;
    /// Dual objective sum(a) - 1/2 a'Qa at exit.
    double objective = 0.0;
    std::vector<double> objective_trace;
};

/// sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij
[[nodiscard]] inline double dual_objective(const Matrix &k, std::span<const int> y, std::span<const double> alpha) {
    double quad = 0.0;
    double lin = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        lin += alpha[i];
        if (alpha[i] == 0.0) {
            continue;
        }
        double row = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            row += alpha[j] * y[j] * k(i, j);
        }
        quad += alpha[i] * y[i] * row;
    }
    return lin - 0.5 * quad;
}

inline constexpr double kMinCurvature = 1e-12;

/// SMO on a square kernel. Non-positive pair curvature (indefinite kernels) is clamped to kMinCurvature.
[[nodiscard]] inline BinaryDualSolution solve_binary(const Matrix &k, std::span<const int> y, double C,
                                                     const SmoOptions &opt = {}) {
    const std::size_t n = k.rows();
    if (k.cols() != n) {
        throw DimensionError("kernel is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                             ", expected square");
    }
    if (y.size() != n) {
        throw DimensionError("got " + std::to_string(y.size()) + " labels for a " + std::to_string(n) + "-sample kernel");
    }
    if (!(C > 0.0) || !std::isfinite(C)) {
        throw ArgumentError("C must be a finite positive number");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (const int v : y) {
        if (v == 1) {
            has_pos = true;
        } else if (v == -1) {
            has_neg = true;
        } else {
            throw ArgumentError("binary labels must be +1 or -1");
        }
    }
    if (!has_pos || !has_neg) {
        throw ArgumentError("binary problem needs both +1 and -1 labels");
    }

    BinaryDualSolution sol;
    sol.C = C;
    sol.signs.assign(y.begin(), y.end());
    std::vector<double> &a = sol.alpha;
    a.assign(n, 0.0);
    // Gradient of the minimization form: G = Qa - e.
    std::vector<double> grad(n, -1.0);

    const std::size_t max_iter = opt.max_iter != 0 ? opt.max_iter : 10000 * n;
    const auto in_up = [&](std::size_t t) { return y[t] == 1 ? a[t] < C : a[t] > 0.0; };
    const auto in_low = [&](std::size_t t) { return y[t] == 1 ? a[t] > 0.0 : a[t] < C; };

    if (opt.track_objective) {
        sol.objective_trace.push_back(0.0);
    }

    std::size_t iter = 0;
    for (;;) {
        // i maximizes -y G over I_up, j minimizes it over I_low; lowest index wins ties.
        double up_max = -std::numeric_limits<double>::infinity();
        double low_min = std::numeric_limits<double>::infinity();
        std::size_t i = n;
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (in_up(t) && v > up_max) {
                up_max = v;
                i = t;
            }
            if (in_low(t) && v < low_min) {
                low_min = v;
                j = t;
            }
        }
        sol.kkt_gap = (i == n || j == n) ? 0.0 : up_max - low_min;
        if (sol.kkt_gap <= opt.tol) {
            sol.converged = true;
            break;
        }
        if (iter >= max_iter) {
            break;
        }
        ++iter;

        // Step a_i += y_i t, a_j -= y_j t keeps y'a fixed.
        double curvature = k(i, i) + k(j, j) - 2.0 * k(i, j);
        if (curvature <= 0.0) {
            curvature = kMinCurvature;
        }
        double t = sol.kkt_gap / curvature;
        t = std::min(t, y[i] == 1 ? C - a[i] : a[i]);
        t = std::min(t, y[j] == 1 ? a[j] : C - a[j]);

        const double old_i = a[i];
        const double old_j = a[j];
        a[i] = std::clamp(old_i + y[i] * t, 0.0, C);
        a[j] = std::clamp(old_j - y[j] * t, 0.0, C);
        const double di = a[i] - old_i;
        const double dj = a[j] - old_j;
        for (std::size_t r = 0; r < n; ++r) {
            grad[r] += y[r] * (y[i] * di * k(r, i) + y[j] * dj * k(r, j));
        }
        if (opt.track_objective) {
            sol.objective_trace.push_back(dual_objective(k, y, a));
        }
    }
    sol.iterations = iter;

    // Offset: mean of y G over free vectors, else midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (a[t] >= C) {
            if (y[t] == -1) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else if (a[t] <= 0.0) {
            if (y[t] == 1) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else {
            free_sum += yg;
            ++n_free;
        }
    }
    const double rho = n_free > 0 ? free_sum / static_cast<double>(n_free) : 0.5 * (ub + lb);
    sol.bias = -rho;

    for (std::size_t t = 0; t < n; ++t) {
        if (a[t] > 0.0) {
            sol.support_indices.push_back(t);
        }
    }
    sol.train_indices.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        sol.train_indices[t] = t;
    }
    sol.objective = dual_objective(k, y, a);
    return sol;
}

[[nodiscard]] inline BinaryDualSolution solve_binary(const KernelMatrix &k, std::span<const int> y, double C,
                                                     const SmoOptions &opt = {}) {
    if (!k.symmetric_same_set) {
        throw DimensionError("training kernel must be a same-set Gram matrix");
    }
    return solve_binary(k.values, y, C, opt);
}

/// sum_i a_i y_i K(x, x_i) + b for one row of a test x train kernel.
[[nodiscard]] inline double decision_value(const BinaryDualSolution &s, std::span<const double> kernel_row) {
    double f = s.bias;
    for (const std::size_t t : s.support_indices) {
        f += s.alpha[t] * s.signs[t] * kernel_row[s.train_indices[t]];
    }
    return f;
}

struct SvmModel {
    /// Sorted class ids.
    std::vector<int> classes;
    /// One classifier per class pair (classes[p] < classes[q]), in lexicographic pair order.
    std::vector<BinaryDualSolution> binaries;
    double C = 1.0;
    std::size_t n_train = 0;
};

/// One-vs-one training; binary (p, q) sees only the samples of classes p and q, with p mapped to +1.
[[nodiscard]] inline SvmModel fit(const KernelMatrix &k_train, std::span<const int> labels, double C,
                                  const SmoOptions &opt = {}) {
    if (!k_train.symmetric_same_set || k_train.n_rows() != k_train.n_cols()) {
        throw DimensionError("training kernel must be a square same-set Gram matrix");
    }
    if (labels.size() != k_train.n_rows()) {
        throw DimensionError("got " + std::to_string(labels.size()) + " labels for " +
                             std::to_string(k_train.n_rows()) + " training samples");
    }
    SvmModel model;
    model.C = C;
    model.n_train = labels.size();
    model.classes.assign(labels.begin(), labels.end());
    std::sort(model.classes.begin(), model.classes.end());
    model.classes.erase(std::unique(model.classes.begin(), model.classes.end()), model.classes.end());
    if (model.classes.size() < 2) {
        throw ArgumentError("need at least 2 classes to train, got " + std::to_string(model.classes.size()));
    }

    for (std::size_t p = 0; p < model.classes.size(); ++p) {
        for (std::size_t q = p + 1; q < model.classes.size(); ++q) {
            const int pos = model.classes[p];
            const int neg = model.classes[q];
            std::vector<std::size_t> idx;
            std::vector<int> y;
            for (std::size_t t = 0; t < labels.size(); ++t) {
                if (labels[t] == pos || labels[t] == neg) {
                    idx.push_back(t);
                    y.push_back(labels[t] == pos ? 1 : -1);
                }
            }
            Matrix sub(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r) {
                for (std::size_t c = 0; c < idx.size(); ++c) {
                    sub(r, c) = k_train(idx[r], idx[c]);
                }
            }
            BinaryDualSolution s = solve_binary(sub, y, C, opt);
            s.label_pair = {pos, neg};
            s.train_indices = std::move(idx);
            model.binaries.push_back(std::move(s));
        }
    }
    return model;
}

/// Majority vote over the pairwise classifiers. Ties go to the class whose winning
/// votes have the largest summed |decision value|, then to the lowest class id.
[[nodiscard]] inline std::vector<int> predict(const SvmModel &model, const KernelMatrix &k_cross) {
    if (k_cross.n_cols() != model.n_train) {
        throw DimensionError("cross kernel has " + std::to_string(k_cross.n_cols()) + " columns, model was trained on " +
                             std::to_string(model.n_train) + " samples");
    }
    std::vector<int> out;
    out.reserve(k_cross.n_rows());
    const std::size_t n_classes = model.classes.size();
    std::map<int, std::size_t> slot;
    for (std::size_t c = 0; c < n_classes; ++c) {
        slot[model.classes[c]] = c;
    }
    for (std::size_t r = 0; r < k_cross.n_rows(); ++r) {
        const auto row = k_cross.values.row(r);
        std::vector<int> votes(n_classes, 0);
        std::vector<double> strength(n_classes, 0.0);
        for (const auto &b : model.binaries) {
            const double f = decision_value(b, row);
            const std::size_t winner = slot.at(f > 0.0 ? b.label_pair.first : b.label_pair.second);
            ++votes[winner];
            strength[winner] += std::abs(f);
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < n_classes; ++c) {
            if (votes[c] > votes[best] || (votes[c] == votes[best] && strength[c] > strength[best])) {
                best = c;
            }
        }
        out.push_back(model.classes[best]);
    }
    return out;
}

}  // namespace qkernel::svm
