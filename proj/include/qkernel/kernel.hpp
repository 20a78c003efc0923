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
 * Gram-matrix builders: exact and shot-sampled quantum fidelity kernels, and
 * the classical RBF kernel.
 *
 * Every builder is deterministic regardless of the worker count. Sampled
 * entries draw from an RNG stream derived from (seed, row, col), so the order
 * in which workers visit entries does not matter.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qkernel/error.hpp"
#include "qkernel/feature_map.hpp"
#include "qkernel/hash.hpp"
#include "qkernel/matrix.hpp"
#include "qkernel/parallel.hpp"
#include "qkernel/statevector.hpp"

namespace qkernel {

struct KernelMatrix {
    Matrix values;
    /// Rows and columns index the same sample set.
    bool symmetric_same_set = false;

    [[nodiscard]] std::size_t n_rows() const noexcept { return values.rows(); }
    [[nodiscard]] std::size_t n_cols() const noexcept { return values.cols(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return values(i, j); }
};

namespace detail {

inline void check_samples(const Matrix &m, std::size_t n_features, const char *what) {
    if (m.rows() == 0) {
        throw DimensionError(std::string(what) + " has no samples");
    }
    if (m.cols() != n_features) {
        throw DimensionError(std::string(what) + " has " + std::to_string(m.cols()) + " features, expected " +
                             std::to_string(n_features));
    }
}

// Fills a Gram matrix from entry(i, j). For a same-set matrix only j > i is
// evaluated and mirrored; the diagonal is set to `diagonal`.
template <typename Entry>
KernelMatrix build_gram(std::size_t rows, std::size_t cols, bool same_set, double diagonal, std::size_t workers,
                        const Entry &entry) {
    KernelMatrix k{Matrix(rows, cols), same_set};
    Matrix &v = k.values;
    parallel_for(rows, workers, [&](std::size_t i) {
        const std::size_t first = same_set ? i + 1 : 0;
        for (std::size_t j = first; j < cols; ++j) {
            v(i, j) = entry(i, j);
        }
    });
    if (same_set) {
        for (std::size_t i = 0; i < rows; ++i) {
            v(i, i) = diagonal;
            for (std::size_t j = i + 1; j < cols; ++j) {
                v(j, i) = v(i, j);
            }
        }
    }
    return k;
}

inline std::vector<sim::Statevector> encode_all(const FeatureMapSpec &spec, const Matrix &samples, std::size_t workers) {
    std::vector<sim::Statevector> states(samples.rows(), sim::Statevector::zero(1));
    parallel_for(samples.rows(), workers, [&](std::size_t i) { states[i] = encode(spec, samples.row(i)); });
    return states;
}

inline double fidelity(const sim::Statevector &a, const sim::Statevector &b) {
    return std::min(1.0, std::norm(sim::inner_product(b, a)));
}

inline KernelMatrix fidelity_exact_impl(const FeatureMapSpec &spec, const Matrix &a, const Matrix *b,
                                        std::size_t workers) {
    spec.validate();
    check_samples(a, spec.n_features, "row sample set");
    if (b == nullptr) {
        const auto states = encode_all(spec, a, workers);
        return build_gram(a.rows(), a.rows(), true, 1.0, workers,
                          [&](std::size_t i, std::size_t j) { return fidelity(states[i], states[j]); });
    }
    check_samples(*b, spec.n_features, "column sample set");
    const auto row_states = encode_all(spec, a, workers);
    const auto col_states = encode_all(spec, *b, workers);
    return build_gram(a.rows(), b->rows(), false, 1.0, workers,
                      [&](std::size_t i, std::size_t j) { return fidelity(row_states[i], col_states[j]); });
}

inline KernelMatrix fidelity_sampled_impl(const FeatureMapSpec &spec, const Matrix &a, const Matrix *b,
                                          std::uint64_t shots, std::uint64_t seed, std::size_t workers) {
    if (shots == 0) {
        throw ArgumentError("shots must be >= 1");
    }
    spec.validate();
    check_samples(a, spec.n_features, "row sample set");
    const Matrix &cols = b != nullptr ? *b : a;
    if (b != nullptr) {
        check_samples(*b, spec.n_features, "column sample set");
    }
    const auto row_states = encode_all(spec, a, workers);
    std::vector<sim::Circuit> uncompute(cols.rows());
    parallel_for(cols.rows(), workers,
                 [&](std::size_t j) { uncompute[j] = sim::inverse(build_circuit(spec, cols.row(j))); });

    // Compute-uncompute: U(col)^dagger U(row)|0>, then count all-zeros outcomes.
    return build_gram(a.rows(), cols.rows(), b == nullptr, 1.0, workers, [&](std::size_t i, std::size_t j) {
        sim::Statevector s = row_states[i];
        s.apply(uncompute[j]);
        return sim::sample_all_zeros_frequency(s, shots, stream_seed(seed, i, j));
    });
}

}  // namespace detail

/// Same-set fidelity kernel K[i][j] = |<phi(A_j)|phi(A_i)>|^2 with an exact unit diagonal.
[[nodiscard]] inline KernelMatrix fidelity_kernel_exact(const FeatureMapSpec &spec, const Matrix &a,
                                                        std::size_t workers = 0) {
    return detail::fidelity_exact_impl(spec, a, nullptr, workers);
}

/// Cross fidelity kernel K[i][j] = |<phi(B_j)|phi(A_i)>|^2.
[[nodiscard]] inline KernelMatrix fidelity_kernel_exact(const FeatureMapSpec &spec, const Matrix &a, const Matrix &b,
                                                        std::size_t workers = 0) {
    return detail::fidelity_exact_impl(spec, a, &b, workers);
}

/// Same-set shot-sampled fidelity kernel; the diagonal is fixed at 1.
[[nodiscard]] inline KernelMatrix fidelity_kernel_sampled(const FeatureMapSpec &spec, const Matrix &a,
                                                          std::uint64_t shots, std::uint64_t seed,
                                                          std::size_t workers = 0) {
    return detail::fidelity_sampled_impl(spec, a, nullptr, shots, seed, workers);
}

[[nodiscard]] inline KernelMatrix fidelity_kernel_sampled(const FeatureMapSpec &spec, const Matrix &a, const Matrix &b,
                                                          std::uint64_t shots, std::uint64_t seed,
                                                          std::size_t workers = 0) {
    return detail::fidelity_sampled_impl(spec, a, &b, shots, seed, workers);
}

namespace detail {

inline double squared_distance(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        s += d * d;
    }
    return s;
}

inline void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ArgumentError("RBF gamma must be a finite positive number");
    }
}

}  // namespace detail

/// Same-set RBF kernel exp(-gamma * |x - y|^2); the diagonal is exactly 1.
[[nodiscard]] inline KernelMatrix rbf_kernel(const Matrix &a, double gamma, std::size_t workers = 0) {
    detail::check_gamma(gamma);
    detail::check_samples(a, a.cols(), "row sample set");
    return detail::build_gram(a.rows(), a.rows(), true, 1.0, workers, [&](std::size_t i, std::size_t j) {
        return std::exp(-gamma * detail::squared_distance(a.row(i), a.row(j)));
    });
}

[[nodiscard]] inline KernelMatrix rbf_kernel(const Matrix &a, const Matrix &b, double gamma, std::size_t workers = 0) {
    detail::check_gamma(gamma);
    detail::check_samples(a, a.cols(), "row sample set");
    detail::check_samples(b, a.cols(), "column sample set");
    return detail::build_gram(a.rows(), b.rows(), false, 1.0, workers, [&](std::size_t i, std::size_t j) {
        return std::exp(-gamma * detail::squared_distance(a.row(i), b.row(j)));
    });
}

/// How the kernel width (or, for quantum kernels, the input scale) is chosen.
struct GammaMode {
    enum class Kind { Scale, Auto, Fixed };
    Kind kind = Kind::Scale;
    double value = 0.0;  // Fixed only

    [[nodiscard]] static GammaMode scale() { return {Kind::Scale, 0.0}; }
    [[nodiscard]] static GammaMode automatic() { return {Kind::Auto, 0.0}; }
    [[nodiscard]] static GammaMode fixed(double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ArgumentError("fixed gamma must be a finite positive number");
        }
        return {Kind::Fixed, v};
    }

    friend bool operator==(const GammaMode &, const GammaMode &) = default;
};

[[nodiscard]] inline std::string to_string(const GammaMode &g) {
    switch (g.kind) {
        case GammaMode::Kind::Scale: return "scale";
        case GammaMode::Kind::Auto: return "auto";
        case GammaMode::Kind::Fixed: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", g.value);
            return buf;
        }
    }
    return "?";
}

/// "scale", "auto", or a positive number.
[[nodiscard]] inline GammaMode parse_gamma_mode(std::string_view s) {
    const std::string v = detail::lowercase(s);
    if (v == "scale") return GammaMode::scale();
    if (v == "auto") return GammaMode::automatic();
    try {
        std::size_t used = 0;
        const double g = std::stod(v, &used);
        if (used == v.size()) {
            return GammaMode::fixed(g);
        }
    } catch (const std::logic_error &) {
    }
    throw ArgumentError("invalid gamma '" + std::string(s) + "' (expected scale, auto, or a positive number)");
}

/// Scale: 1 / (d * var(X)) with the variance pooled over every entry of X. Auto: 1 / d.
[[nodiscard]] inline double resolve_gamma(const GammaMode &mode, const Matrix &x) {
    if (x.empty()) {
        throw ArgumentError("cannot resolve gamma on an empty sample matrix");
    }
    const auto d = static_cast<double>(x.cols());
    switch (mode.kind) {
        case GammaMode::Kind::Auto: return 1.0 / d;
        case GammaMode::Kind::Fixed: return mode.value;
        case GammaMode::Kind::Scale: break;
    }
    const auto all = x.data();
    double mean = 0.0;
    for (const double v : all) {
        mean += v;
    }
    mean /= static_cast<double>(all.size());
    double var = 0.0;
    for (const double v : all) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(all.size());
    if (!(var > 0.0)) {
        throw ArgumentError("gamma=scale undefined: pooled variance of the samples is zero");
    }
    return 1.0 / (d * var);
}

/// Debug dump: a `# qkernel v1 rows=<r> cols=<c> spec=<fingerprint>` line, then one
/// comma-separated row per line with 17 significant digits.
inline void write_kernel_csv(std::ostream &os, const KernelMatrix &k, std::string_view spec_fingerprint) {
    os << "# qkernel v1 rows=" << k.n_rows() << " cols=" << k.n_cols() << " spec=" << spec_fingerprint << '\n';
    char buf[40];
    for (std::size_t i = 0; i < k.n_rows(); ++i) {
        for (std::size_t j = 0; j < k.n_cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", k(i, j));
            if (j) {
                os << ',';
            }
            os << buf;
        }
        os << '\n';
    }
}

inline void write_kernel_csv(const std::string &path, const KernelMatrix &k, std::string_view spec_fingerprint) {
    std::ofstream out(path);
    if (!out) {
        throw IoError(path, "cannot open kernel dump for writing");
    }
    write_kernel_csv(out, k, spec_fingerprint);
    if (!out) {
        throw IoError(path, "failed writing kernel dump");
    }
}

}  // namespace qkernel
