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
 * Experiment reports and their CSV / JSON / markdown serializations.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qkernel/error.hpp"

namespace qkernel::bench {

inline constexpr std::string_view kVersion = "0.1.0";

struct ReportRow {
    std::string method;        // "Classical" or "Quantum"
    std::string family = "-";  // Z, ZZ, Pauli, or "-" for classical rows
    std::string entanglement = "-";
    std::size_t reps = 0;  // 0 when not applicable
    double C = 1.0;
    std::string gamma_mode = "-";
    /// Resolved RBF gamma (classical) or feature-map input scale (quantum).
    double gamma_value = 0.0;
    double f1_macro = 0.0;
    double accuracy = 0.0;
    double wall_time_s = 0.0;
    /// Non-empty when the cell failed; metrics are then meaningless.
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return error.empty(); }
    friend bool operator==(const ReportRow &, const ReportRow &) = default;
};

struct ReportMetadata {
    std::string stage;  // "stage1" or "stage2"
    std::string dataset = "builtin:iris";
    std::uint64_t seed = 0;
    double test_fraction = 0.2;
    std::string backend = "exact";
    std::uint64_t shots = 0;
    std::size_t workers = 0;
    bool parallel_cells = false;
    std::string version{kVersion};
    std::string notes;

    friend bool operator==(const ReportMetadata &, const ReportMetadata &) = default;
};

struct ExperimentReport {
    ReportMetadata metadata;
    std::vector<ReportRow> rows;

    [[nodiscard]] bool has_errors() const {
        for (const auto &r : rows) {
            if (!r.ok()) {
                return true;
            }
        }
        return false;
    }
};

enum class ReportFormat { Csv, Json, Markdown };

[[nodiscard]] inline ReportFormat parse_report_format(std::string_view s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    throw ArgumentError("unknown report format '" + std::string(s) + "' (csv, json, markdown)");
}

[[nodiscard]] inline std::string to_string(ReportFormat f) {
    switch (f) {
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Json: return "json";
        case ReportFormat::Markdown: return "markdown";
    }
    return "?";
}

namespace detail {

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string reps_text(std::size_t reps) { return reps == 0 ? "-" : std::to_string(reps); }

}  // namespace detail

inline constexpr std::string_view kCsvHeader = "method,family,entanglement,reps,C,gamma_mode,f1_macro,accuracy,wall_time_s";

/// One header line, then one line per row; metrics with 6 decimals, failed cells as "nan".
inline void write_csv(std::ostream &os, const ExperimentReport &report) {
    os << kCsvHeader << '\n';
    for (const auto &r : report.rows) {
        os << r.method << ',' << r.family << ',' << r.entanglement << ',' << detail::reps_text(r.reps) << ','
           << detail::compact(r.C) << ',' << r.gamma_mode << ',';
        if (r.ok()) {
            os << detail::fixed(r.f1_macro, 6) << ',' << detail::fixed(r.accuracy, 6) << ',';
        } else {
            os << "nan,nan,";
        }
        os << detail::fixed(r.wall_time_s, 6) << '\n';
    }
}

[[nodiscard]] inline nlohmann::json to_json(const ExperimentReport &report) {
    const auto &m = report.metadata;
    nlohmann::json j;
    j["metadata"] = {{"stage", m.stage},
                     {"dataset", m.dataset},
                     {"seed", m.seed},
                     {"test_fraction", m.test_fraction},
                     {"backend", m.backend},
                     {"shots", m.shots},
                     {"workers", m.workers},
                     {"parallel_cells", m.parallel_cells},
                     {"version", m.version},
                     {"notes", m.notes}};
    j["rows"] = nlohmann::json::array();
    for (const auto &r : report.rows) {
        j["rows"].push_back({{"method", r.method},
                             {"family", r.family},
                             {"entanglement", r.entanglement},
                             {"reps", r.reps},
                             {"C", r.C},
                             {"gamma_mode", r.gamma_mode},
                             {"gamma_value", r.gamma_value},
                             {"f1_macro", r.f1_macro},
                             {"accuracy", r.accuracy},
                             {"wall_time_s", r.wall_time_s},
                             {"error", r.error}});
    }
    return j;
}

[[nodiscard]] inline ExperimentReport report_from_json(const nlohmann::json &j) {
    ExperimentReport report;
    const auto &m = j.at("metadata");
    report.metadata.stage = m.at("stage").get<std::string>();
    report.metadata.dataset = m.at("dataset").get<std::string>();
    report.metadata.seed = m.at("seed").get<std::uint64_t>();
    report.metadata.test_fraction = m.at("test_fraction").get<double>();
    report.metadata.backend = m.at("backend").get<std::string>();
    report.metadata.shots = m.at("shots").get<std::uint64_t>();
    report.metadata.workers = m.at("workers").get<std::size_t>();
    report.metadata.parallel_cells = m.at("parallel_cells").get<bool>();
    report.metadata.version = m.at("version").get<std::string>();
    report.metadata.notes = m.at("notes").get<std::string>();
    for (const auto &r : j.at("rows")) {
        ReportRow row;
        row.method = r.at("method").get<std::string>();
        row.family = r.at("family").get<std::string>();
        row.entanglement = r.at("entanglement").get<std::string>();
        row.reps = r.at("reps").get<std::size_t>();
        row.C = r.at("C").get<double>();
        row.gamma_mode = r.at("gamma_mode").get<std::string>();
        row.gamma_value = r.at("gamma_value").get<double>();
        row.f1_macro = r.at("f1_macro").get<double>();
        row.accuracy = r.at("accuracy").get<double>();
        row.wall_time_s = r.at("wall_time_s").get<double>();
        row.error = r.value("error", std::string{});
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline void write_json(std::ostream &os, const ExperimentReport &report) { os << to_json(report).dump(2) << '\n'; }

/// Stage-1 reports render as a method comparison table, stage-2 reports as a numbered model list.
inline void write_markdown(std::ostream &os, const ExperimentReport &report) {
    const auto f1_cell = [](const ReportRow &r) { return r.ok() ? detail::fixed(r.f1_macro, 6) : "error"; };
    if (report.metadata.stage == "stage2") {
        os << "| Model No. | Model | F1-Score (Macro) | Wall Time (s) |\n";
        os << "|---:|---|---:|---:|\n";
        for (std::size_t k = 0; k < report.rows.size(); ++k) {
            const auto &r = report.rows[k];
            os << "| " << k << " | reps=" << detail::reps_text(r.reps) << ", C=" << detail::compact(r.C)
               << ", gamma=" << r.gamma_mode << " | " << f1_cell(r) << " | " << detail::fixed(r.wall_time_s, 3)
               << " |\n";
        }
        return;
    }
    os << "| Method | Feature Map | Entanglement | F1-Score (Macro) | Wall Time (s) |\n";
    os << "|---|---|---|---:|---:|\n";
    for (const auto &r : report.rows) {
        const std::string method = r.method == "Classical" ? "Classical SVC" : "Quantum SVC";
        os << "| " << method << " | " << r.family << " | " << r.entanglement << " | " << f1_cell(r) << " | "
           << detail::fixed(r.wall_time_s, 3) << " |\n";
    }
}

inline void write_report(std::ostream &os, const ExperimentReport &report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: write_csv(os, report); break;
        case ReportFormat::Json: write_json(os, report); break;
        case ReportFormat::Markdown: write_markdown(os, report); break;
    }
}

/// Writes to `destination`, or to stdout when it is empty or "-".
inline void emit_report(const ExperimentReport &report, ReportFormat format, const std::string &destination) {
    if (destination.empty() || destination == "-") {
        write_report(std::cout, report, format);
        std::cout.flush();
        return;
    }
    std::ofstream out(destination);
    if (!out) {
        throw IoError(destination, "cannot open report for writing");
    }
    write_report(out, report, format);
    out.flush();
    if (!out) {
        throw IoError(destination, "failed writing report");
    }
}

}  // namespace qkernel::bench
