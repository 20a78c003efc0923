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
 * Two-stage benchmark: a classical RBF baseline plus a feature-map x
 * entanglement sweep (stage 1), then a reps x C x gamma grid on one feature
 * map (stage 2).
 *
 * For quantum cells the gamma mode sets the feature map's input scale
 * (scale -> 1/(d var X), auto -> 1/d), since a fidelity kernel has no width
 * parameter of its own.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qkernel/data.hpp"
#include "qkernel/error.hpp"
#include "qkernel/feature_map.hpp"
#include "qkernel/hash.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/metrics.hpp"
#include "qkernel/parallel.hpp"
#include "qkernel/report.hpp"
#include "qkernel/svm.hpp"

namespace qkernel::bench {

/// Invalid experiment configuration (maps to CLI exit code 2).
class ConfigError : public ArgumentError {
  public:
    using ArgumentError::ArgumentError;
};

enum class Backend { Exact, Sampled };

struct ExperimentConfig {
    std::string dataset = "builtin:iris";
    std::uint64_t seed = 0;
    double test_fraction = 0.2;
    bool stratify = true;
    Backend backend = Backend::Exact;
    std::uint64_t shots = 1024;
    /// Kernel-builder threads; 0 = available parallelism.
    std::size_t workers = 0;
    /// Run grid cells concurrently. Wall times are then not comparable.
    bool parallel_cells = false;
    double tol = 1e-3;

    ReportFormat format = ReportFormat::Csv;
    std::string out = "-";

    std::vector<std::string> pauli_strings{"Z", "ZZ"};

    // stage 1
    std::vector<Family> stage1_families{Family::Z, Family::ZZ, Family::Pauli};
    std::vector<Entanglement> stage1_entanglements{Entanglement::Linear, Entanglement::Circular, Entanglement::Full};
    std::size_t stage1_reps = 2;
    double stage1_c = 1.0;
    double classical_c = 1.0;
    GammaMode classical_gamma = GammaMode::scale();

    // stage 2
    Family family = Family::Z;
    Entanglement entanglement = Entanglement::Linear;
    std::vector<std::size_t> reps{1, 2, 3};
    std::vector<double> c_values{0.1, 1.0, 10.0};
    std::vector<GammaMode> gammas{GammaMode::scale(), GammaMode::automatic()};

    void validate() const {
        if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
            throw ConfigError("test_fraction must lie strictly between 0 and 1");
        }
        if (backend == Backend::Sampled && shots == 0) {
            throw ConfigError("shots must be >= 1 for the sampled backend");
        }
        if (stage1_families.empty() || stage1_entanglements.empty() || reps.empty() || c_values.empty() ||
            gammas.empty()) {
            throw ConfigError("experiment grids must be non-empty");
        }
        if (!(tol > 0.0)) {
            throw ConfigError("tol must be positive");
        }
        const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
        if (!positive(stage1_c) || !positive(classical_c) || !std::all_of(c_values.begin(), c_values.end(), positive)) {
            throw ConfigError("C values must be finite and positive");
        }
        if (stage1_reps == 0 || std::find(reps.begin(), reps.end(), std::size_t{0}) != reps.end()) {
            throw ConfigError("reps must be >= 1");
        }
        FeatureMapSpec probe;
        probe.family = Family::Pauli;
        probe.n_features = 1;
        probe.pauli_strings = pauli_strings;
        try {
            probe.validate();
        } catch (const ArgumentError &e) {
            throw ConfigError(e.what());
        }
    }
};

// ---------------------------------------------------------------------------
// key = value configuration files

namespace detail {

inline std::string trim(std::string_view s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        std::string item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

inline double parse_double(const std::string &key, const std::string &v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) {
            return d;
        }
    } catch (const std::logic_error &) {
    }
    throw ConfigError(key + ": '" + v + "' is not a number");
}

inline std::uint64_t parse_uint(const std::string &key, const std::string &v) {
    try {
        std::size_t used = 0;
        if (!v.empty() && v[0] != '-') {
            const unsigned long long u = std::stoull(v, &used);
            if (used == v.size()) {
                return u;
            }
        }
    } catch (const std::logic_error &) {
    }
    throw ConfigError(key + ": '" + v + "' is not a non-negative integer");
}

inline bool parse_bool(const std::string &key, const std::string &v) {
    const std::string l = qkernel::detail::lowercase(v);
    if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
    if (l == "false" || l == "0" || l == "no" || l == "off") return false;
    throw ConfigError(key + ": '" + v + "' is not a boolean");
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string &key, const std::string &v, F &&one) {
    std::vector<T> out;
    for (const auto &item : split_list(v)) {
        out.push_back(one(key, item));
    }
    if (out.empty()) {
        throw ConfigError(key + ": empty list");
    }
    return out;
}

template <typename F>
auto rethrow_as_config(const std::string &key, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(key + ": " + e.what());
    }
}

}  // namespace detail

/// Sets one configuration key. Dashes and underscores in keys are interchangeable.
inline void apply_setting(ExperimentConfig &cfg, std::string key, const std::string &value) {
    std::replace(key.begin(), key.end(), '-', '_');
    using namespace detail;
    const auto as_family = [](const std::string &k, const std::string &v) {
        return rethrow_as_config(k, [&] { return parse_family(v); });
    };
    const auto as_ent = [](const std::string &k, const std::string &v) {
        return rethrow_as_config(k, [&] { return parse_entanglement(v); });
    };
    const auto as_gamma = [](const std::string &k, const std::string &v) {
        return rethrow_as_config(k, [&] { return parse_gamma_mode(v); });
    };

    if (key == "dataset") {
        cfg.dataset = value;
    } else if (key == "seed") {
        cfg.seed = parse_uint(key, value);
    } else if (key == "test_fraction") {
        cfg.test_fraction = parse_double(key, value);
    } else if (key == "stratify") {
        cfg.stratify = parse_bool(key, value);
    } else if (key == "backend") {
        if (value == "exact") {
            cfg.backend = Backend::Exact;
        } else if (value == "sampled") {
            cfg.backend = Backend::Sampled;
        } else {
            throw ConfigError("backend: expected exact or sampled, got '" + value + "'");
        }
    } else if (key == "shots") {
        cfg.shots = parse_uint(key, value);
    } else if (key == "workers") {
        cfg.workers = parse_uint(key, value);
    } else if (key == "parallel_cells") {
        cfg.parallel_cells = parse_bool(key, value);
    } else if (key == "tol") {
        cfg.tol = parse_double(key, value);
    } else if (key == "format") {
        cfg.format = rethrow_as_config(key, [&] { return parse_report_format(value); });
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "pauli_strings") {
        cfg.pauli_strings = split_list(value);
    } else if (key == "stage1_families") {
        cfg.stage1_families = parse_list<Family>(key, value, as_family);
    } else if (key == "stage1_entanglements") {
        cfg.stage1_entanglements = parse_list<Entanglement>(key, value, as_ent);
    } else if (key == "stage1_reps") {
        cfg.stage1_reps = parse_uint(key, value);
    } else if (key == "stage1_c") {
        cfg.stage1_c = parse_double(key, value);
    } else if (key == "classical_c") {
        cfg.classical_c = parse_double(key, value);
    } else if (key == "classical_gamma") {
        cfg.classical_gamma = as_gamma(key, value);
    } else if (key == "family") {
        cfg.family = as_family(key, value);
    } else if (key == "entanglement") {
        cfg.entanglement = as_ent(key, value);
    } else if (key == "reps") {
        cfg.reps = parse_list<std::size_t>(key, value, [](const std::string &k, const std::string &v) {
            return static_cast<std::size_t>(parse_uint(k, v));
        });
    } else if (key == "c") {
        cfg.c_values = parse_list<double>(key, value, parse_double);
    } else if (key == "gamma") {
        cfg.gammas = parse_list<GammaMode>(key, value, as_gamma);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

/// Parses UTF-8 `key = value` lines; '#' starts a comment, blank lines are skipped.
[[nodiscard]] inline std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (detail::trim(line).empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = detail::trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        entries.emplace_back(std::move(key), detail::trim(line.substr(eq + 1)));
    }
    return entries;
}

inline void apply_config_text(ExperimentConfig &cfg, std::string_view text) {
    for (const auto &[k, v] : parse_config_text(text)) {
        apply_setting(cfg, k, v);
    }
}

inline void apply_config_file(ExperimentConfig &cfg, const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str());
}

// ---------------------------------------------------------------------------
// running cells

/// Standardized split ready for kernel construction.
struct PreparedData {
    Matrix x_train;
    Matrix x_test;
    std::vector<int> y_train;
    std::vector<int> y_test;
    std::vector<std::string> class_names;
};

[[nodiscard]] inline PreparedData prepare_data(const data::Dataset &ds, double test_fraction, std::uint64_t seed,
                                               bool stratify = true) {
    const auto split = data::train_test_split(ds.features.rows(), test_fraction, seed,
                                              stratify ? std::span<const int>(ds.labels) : std::span<const int>{});
    PreparedData p;
    const Matrix raw_train = ds.features.select_rows(split.train);
    const Matrix raw_test = ds.features.select_rows(split.test);
    const auto scaler = data::fit_scaler(raw_train);
    p.x_train = data::apply_scaler(scaler, raw_train);
    p.x_test = data::apply_scaler(scaler, raw_test);
    for (const auto i : split.train) {
        p.y_train.push_back(ds.labels[i]);
    }
    for (const auto i : split.test) {
        p.y_test.push_back(ds.labels[i]);
    }
    p.class_names = ds.class_names;
    return p;
}

struct ClassicalCell {
    double C = 1.0;
    GammaMode gamma = GammaMode::scale();
};

struct QuantumCell {
    FeatureMapSpec spec;  // n_features is filled in from the data
    double C = 1.0;
    /// Sets spec.input_scale when present; otherwise the spec's own scale is used.
    std::optional<GammaMode> gamma;
};

using Cell = std::variant<ClassicalCell, QuantumCell>;

/// Called once per successfully trained cell, e.g. to audit the dual solutions.
using ModelObserver = std::function<void(const ReportRow &, const svm::SvmModel &)>;

struct RunOptions {
    ModelObserver observer;
};

namespace detail {

struct TrainedCell {
    ReportRow row;
    svm::SvmModel model;
};

inline TrainedCell train_and_score(const Cell &cell, const PreparedData &d, const ExperimentConfig &cfg) {
    using clock = std::chrono::steady_clock;
    TrainedCell out;
    ReportRow &row = out.row;
    svm::SmoOptions smo;
    smo.tol = cfg.tol;

    KernelMatrix k_test;
    double seconds = 0.0;
    if (const auto *c = std::get_if<ClassicalCell>(&cell)) {
        row.method = "Classical";
        row.C = c->C;
        row.gamma_mode = to_string(c->gamma);
        row.gamma_value = resolve_gamma(c->gamma, d.x_train);
        const auto t0 = clock::now();
        const KernelMatrix k_train = rbf_kernel(d.x_train, row.gamma_value, cfg.workers);
        out.model = svm::fit(k_train, d.y_train, c->C, smo);
        seconds = std::chrono::duration<double>(clock::now() - t0).count();
        k_test = rbf_kernel(d.x_test, d.x_train, row.gamma_value, cfg.workers);
    } else {
        const auto &q = std::get<QuantumCell>(cell);
        FeatureMapSpec spec = q.spec;
        spec.n_features = d.x_train.cols();
        if (q.gamma) {
            spec.input_scale = resolve_gamma(*q.gamma, d.x_train);
            row.gamma_mode = to_string(*q.gamma);
        }
        row.method = "Quantum";
        row.family = to_string(spec.family);
        row.entanglement = to_string(spec.entanglement);
        row.reps = spec.reps;
        row.C = q.C;
        row.gamma_value = spec.input_scale;

        const std::uint64_t spec_hash = fnv1a64(describe(spec));
        const auto t0 = clock::now();
        const KernelMatrix k_train =
            cfg.backend == Backend::Exact
                ? fidelity_kernel_exact(spec, d.x_train, cfg.workers)
                : fidelity_kernel_sampled(spec, d.x_train, cfg.shots, stream_seed(cfg.seed, spec_hash, 0), cfg.workers);
        out.model = svm::fit(k_train, d.y_train, q.C, smo);
        seconds = std::chrono::duration<double>(clock::now() - t0).count();
        k_test = cfg.backend == Backend::Exact
                     ? fidelity_kernel_exact(spec, d.x_test, d.x_train, cfg.workers)
                     : fidelity_kernel_sampled(spec, d.x_test, d.x_train, cfg.shots,
                                               stream_seed(cfg.seed, spec_hash, 1), cfg.workers);
    }
    const auto predicted = svm::predict(out.model, k_test);
    const auto rep = classification_report(d.y_test, predicted);
    row.f1_macro = rep.macro_f1;
    row.accuracy = rep.accuracy;
    row.wall_time_s = std::max(seconds, 1e-9);
    return out;
}

inline std::string cell_error_context(const Cell &cell) {
    if (const auto *q = std::get_if<QuantumCell>(&cell)) {
        return to_string(q->spec.family) + "/" + to_string(q->spec.entanglement) + ": ";
    }
    return "classical: ";
}

}  // namespace detail

/// Runs every cell on one prepared split, in order. A cell that throws becomes an error row.
[[nodiscard]] inline std::vector<ReportRow> run_cells(const std::vector<Cell> &cells, const PreparedData &d,
                                                      const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    std::vector<ReportRow> rows(cells.size());
    std::vector<std::optional<svm::SvmModel>> models(cells.size());
    const auto one = [&](std::size_t k) {
        try {
            auto trained = detail::train_and_score(cells[k], d, cfg);
            rows[k] = std::move(trained.row);
            models[k] = std::move(trained.model);
        } catch (const std::exception &e) {
            ReportRow r;
            if (const auto *q = std::get_if<QuantumCell>(&cells[k])) {
                r.method = "Quantum";
                r.family = to_string(q->spec.family);
                r.entanglement = to_string(q->spec.entanglement);
                r.reps = q->spec.reps;
                r.C = q->C;
                r.gamma_mode = q->gamma ? to_string(*q->gamma) : "-";
            } else {
                const auto &c = std::get<ClassicalCell>(cells[k]);
                r.method = "Classical";
                r.C = c.C;
                r.gamma_mode = to_string(c.gamma);
            }
            r.error = detail::cell_error_context(cells[k]) + e.what();
            rows[k] = std::move(r);
        }
    };
    if (cfg.parallel_cells) {
        parallel_for(cells.size(), 0, one);
    } else {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            one(k);
        }
    }
    if (opts.observer) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (models[k]) {
                opts.observer(rows[k], *models[k]);
            }
        }
    }
    return rows;
}

[[nodiscard]] inline std::vector<Cell> stage1_cells(const ExperimentConfig &cfg) {
    std::vector<Cell> cells;
    cells.emplace_back(ClassicalCell{cfg.classical_c, cfg.classical_gamma});
    for (const Family f : cfg.stage1_families) {
        for (const Entanglement e : cfg.stage1_entanglements) {
            QuantumCell q;
            q.spec.family = f;
            q.spec.entanglement = e;
            q.spec.reps = cfg.stage1_reps;
            q.spec.pauli_strings = cfg.pauli_strings;
            q.C = cfg.stage1_c;
            cells.emplace_back(std::move(q));
        }
    }
    return cells;
}

/// reps (outer) x C x gamma (inner), the declaration order of the grid.
[[nodiscard]] inline std::vector<Cell> stage2_cells(const ExperimentConfig &cfg) {
    std::vector<Cell> cells;
    for (const std::size_t r : cfg.reps) {
        for (const double c : cfg.c_values) {
            for (const GammaMode &g : cfg.gammas) {
                QuantumCell q;
                q.spec.family = cfg.family;
                q.spec.entanglement = cfg.entanglement;
                q.spec.reps = r;
                q.spec.pauli_strings = cfg.pauli_strings;
                q.C = c;
                q.gamma = g;
                cells.emplace_back(std::move(q));
            }
        }
    }
    return cells;
}

namespace detail {

inline ReportMetadata metadata_for(const ExperimentConfig &cfg, std::string stage) {
    ReportMetadata m;
    m.stage = std::move(stage);
    m.dataset = cfg.dataset;
    m.seed = cfg.seed;
    m.test_fraction = cfg.test_fraction;
    m.backend = cfg.backend == Backend::Exact ? "exact" : "sampled";
    m.shots = cfg.backend == Backend::Exact ? 0 : cfg.shots;
    m.workers = cfg.workers == 0 ? default_workers() : cfg.workers;
    m.parallel_cells = cfg.parallel_cells;
    m.notes = "quantum gamma_mode sets the feature-map input scale (scale: 1/(d*var(X_train)), auto: 1/d); "
              "wall_time_s covers training-kernel construction plus fitting";
    if (cfg.parallel_cells) {
        m.notes += "; cells ran concurrently, wall times are not comparable";
    }
    return m;
}

}  // namespace detail

[[nodiscard]] inline ExperimentReport run_stage1(const ExperimentConfig &cfg, const data::Dataset &ds,
                                                 const RunOptions &opts = {}) {
    cfg.validate();
    ExperimentReport report;
    report.metadata = detail::metadata_for(cfg, "stage1");
    const PreparedData d = prepare_data(ds, cfg.test_fraction, cfg.seed, cfg.stratify);
    report.rows = run_cells(stage1_cells(cfg), d, cfg, opts);
    return report;
}

[[nodiscard]] inline ExperimentReport run_stage1(const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    return run_stage1(cfg, data::load_dataset(cfg.dataset), opts);
}

[[nodiscard]] inline ExperimentReport run_stage2_grid(const ExperimentConfig &cfg, const data::Dataset &ds,
                                                      const RunOptions &opts = {}) {
    cfg.validate();
    ExperimentReport report;
    report.metadata = detail::metadata_for(cfg, "stage2");
    const PreparedData d = prepare_data(ds, cfg.test_fraction, cfg.seed, cfg.stratify);
    report.rows = run_cells(stage2_cells(cfg), d, cfg, opts);
    return report;
}

[[nodiscard]] inline ExperimentReport run_stage2_grid(const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    return run_stage2_grid(cfg, data::load_dataset(cfg.dataset), opts);
}

/// Index of the row with the highest macro-F1; ties go to the faster row, then the earlier one.
/// Error rows are skipped.
[[nodiscard]] inline std::size_t select_best_index(const ExperimentReport &report) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto &r = report.rows[k];
        if (!r.ok()) {
            continue;
        }
        if (!best) {
            best = k;
            continue;
        }
        const auto &b = report.rows[*best];
        if (r.f1_macro > b.f1_macro || (r.f1_macro == b.f1_macro && r.wall_time_s < b.wall_time_s)) {
            best = k;
        }
    }
    if (!best) {
        throw ArgumentError("select_best: report has no successful rows");
    }
    return *best;
}

[[nodiscard]] inline const ReportRow &select_best(const ExperimentReport &report) {
    return report.rows[select_best_index(report)];
}

}  // namespace qkernel::bench
