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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qkernel/bench.hpp"

using namespace qkernel;
using namespace qkernel::bench;

namespace {

std::size_t count_lines(const std::string &s) {
    std::size_t n = 0;
    for (const char c : s) n += c == '\n';
    return n;
}

ReportRow row(double f1, double t) {
    ReportRow r;
    r.method = "Quantum";
    r.f1_macro = f1;
    r.wall_time_s = t;
    return r;
}

}  // namespace

TEST(Stage1, DefaultShape) {
    ExperimentConfig cfg;
    const auto report = run_stage1(cfg);
    ASSERT_EQ(report.rows.size(), 10u);
    EXPECT_EQ(report.metadata.stage, "stage1");
    EXPECT_EQ(report.rows[0].method, "Classical");
    EXPECT_EQ(report.rows[0].gamma_mode, "scale");
    const char *families[] = {"Z", "ZZ", "Pauli"};
    const char *ents[] = {"linear", "circular", "full"};
    for (std::size_t k = 1; k < 10; ++k) {
        const auto &r = report.rows[k];
        EXPECT_TRUE(r.ok()) << r.error;
        EXPECT_EQ(r.method, "Quantum");
        EXPECT_EQ(r.family, families[(k - 1) / 3]);
        EXPECT_EQ(r.entanglement, ents[(k - 1) % 3]);
        EXPECT_EQ(r.reps, 2u);
        EXPECT_EQ(r.C, 1.0);
    }
    for (const auto &r : report.rows) {
        EXPECT_GT(r.wall_time_s, 0.0);
        EXPECT_GE(r.f1_macro, 0.0);
        EXPECT_LE(r.f1_macro, 1.0);
        EXPECT_GE(r.accuracy, 0.0);
        EXPECT_LE(r.accuracy, 1.0);
    }
    EXPECT_EQ(report.rows[1].f1_macro, report.rows[2].f1_macro);
    EXPECT_EQ(report.rows[1].f1_macro, report.rows[3].f1_macro);
}

TEST(Stage1, ReproducibleAcrossRunsAndWorkers) {
    ExperimentConfig cfg;
    cfg.seed = 3;
    cfg.workers = 1;
    const auto a = run_stage1(cfg);
    cfg.workers = 4;
    const auto b = run_stage1(cfg);
    cfg.parallel_cells = true;
    const auto c = run_stage1(cfg);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        EXPECT_EQ(a.rows[k].f1_macro, b.rows[k].f1_macro);
        EXPECT_EQ(a.rows[k].accuracy, b.rows[k].accuracy);
        EXPECT_EQ(a.rows[k].f1_macro, c.rows[k].f1_macro);
    }
    EXPECT_TRUE(c.metadata.parallel_cells);
    EXPECT_NE(c.metadata.notes.find("not comparable"), std::string::npos);
}

TEST(Stage1, SampledBackendIsSeeded) {
    ExperimentConfig cfg;
    cfg.backend = Backend::Sampled;
    cfg.shots = 256;
    cfg.stage1_families = {Family::Z};
    cfg.stage1_entanglements = {Entanglement::Linear};
    const auto a = run_stage1(cfg);
    cfg.workers = 3;
    const auto b = run_stage1(cfg);
    ASSERT_EQ(a.rows.size(), 2u);
    EXPECT_EQ(a.rows[1].f1_macro, b.rows[1].f1_macro);
    EXPECT_EQ(a.metadata.backend, "sampled");
    EXPECT_EQ(a.metadata.shots, 256u);
}

TEST(Stage1, FailedCellBecomesErrorRow) {
    // 25 features cannot be encoded on the dense simulator.
    data::Dataset ds;
    ds.features = Matrix(20, 25);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 25; ++j) ds.features(i, j) = static_cast<double>((i * 7 + j * 3) % 11) + 0.5 * (i % 2);
    for (std::size_t i = 0; i < 20; ++i) ds.labels.push_back(static_cast<int>(i % 2));
    ds.class_names = {"a", "b"};
    ExperimentConfig cfg;
    cfg.stage1_families = {Family::Z};
    cfg.stage1_entanglements = {Entanglement::Linear};
    const auto report = run_stage1(cfg, ds);
    ASSERT_EQ(report.rows.size(), 2u);
    EXPECT_TRUE(report.rows[0].ok());
    EXPECT_FALSE(report.rows[1].ok());
    EXPECT_TRUE(report.has_errors());
    std::ostringstream os;
    write_csv(os, report);
    EXPECT_NE(os.str().find("nan,nan"), std::string::npos);
    EXPECT_EQ(&select_best(report), &report.rows[0]);
}

TEST(Stage2, GridShapeAndOrder) {
    ExperimentConfig cfg;
    std::vector<std::pair<std::string, std::size_t>> seen;
    RunOptions opts;
    opts.observer = [&](const ReportRow &r, const svm::SvmModel &m) {
        seen.emplace_back(r.gamma_mode, m.binaries.size());
    };
    const auto report = run_stage2_grid(cfg, opts);
    ASSERT_EQ(report.rows.size(), 18u);
    EXPECT_EQ(seen.size(), 18u);
    std::size_t k = 0;
    for (const std::size_t reps : {1u, 2u, 3u}) {
        for (const double c : {0.1, 1.0, 10.0}) {
            for (const char *g : {"scale", "auto"}) {
                const auto &r = report.rows[k++];
                EXPECT_EQ(r.reps, reps);
                EXPECT_EQ(r.C, c);
                EXPECT_EQ(r.gamma_mode, g);
                EXPECT_EQ(r.family, "Z");
                EXPECT_EQ(r.entanglement, "linear");
                EXPECT_NEAR(r.gamma_value, 0.25, 1e-12);
            }
        }
    }
}

TEST(SelectBest, Rules) {
    ExperimentReport r;
    EXPECT_THROW((void)select_best(r), ArgumentError);
    r.rows = {row(0.5, 1.0)};
    EXPECT_EQ(select_best_index(r), 0u);
    r.rows = {row(0.9, 2.0), row(0.9, 1.0), row(0.8, 0.1)};
    EXPECT_EQ(select_best_index(r), 1u);
    r.rows = {row(0.9, 1.0), row(0.9, 1.0)};
    EXPECT_EQ(select_best_index(r), 0u);
    r.rows = {row(0.9, 1.0), row(1.0, 5.0)};
    EXPECT_EQ(select_best_index(r), 1u);
}

TEST(Report, CsvLayout) {
    ExperimentConfig cfg;
    cfg.stage1_families = {Family::Z};
    const auto report = run_stage1(cfg);
    std::ostringstream os;
    write_csv(os, report);
    const std::string s = os.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "method,family,entanglement,reps,C,gamma_mode,f1_macro,accuracy,wall_time_s");
    EXPECT_EQ(count_lines(s), report.rows.size() + 1);
    EXPECT_NE(s.find("\nClassical,-,-,-,1,scale,"), std::string::npos);
    EXPECT_NE(s.find("\nQuantum,Z,linear,2,1,-,"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
    ExperimentConfig cfg;
    cfg.stage1_families = {Family::ZZ};
    const auto report = run_stage1(cfg);
    std::ostringstream os;
    write_json(os, report);
    const auto back = report_from_json(nlohmann::json::parse(os.str()));
    EXPECT_EQ(back.metadata, report.metadata);
    EXPECT_EQ(back.rows, report.rows);

    ExperimentReport bare;
    bare.rows = {row(0.25, 0.5)};
    std::ostringstream os2;
    write_json(os2, bare);
    EXPECT_EQ(report_from_json(nlohmann::json::parse(os2.str())).rows, bare.rows);
}

TEST(Report, MarkdownTables) {
    ExperimentReport r;
    r.metadata.stage = "stage1";
    ReportRow classical = row(1.0, 0.002);
    classical.method = "Classical";
    r.rows = {classical, row(0.96, 1.5)};
    std::ostringstream os;
    write_markdown(os, r);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
              "| Method | Feature Map | Entanglement | F1-Score (Macro) | Wall Time (s) |");
    EXPECT_NE(os.str().find("| Classical SVC | - | - | 1.000000 | 0.002 |"), std::string::npos);

    r.metadata.stage = "stage2";
    r.rows = {row(0.93, 1.0)};
    r.rows[0].reps = 1;
    r.rows[0].C = 0.1;
    r.rows[0].gamma_mode = "scale";
    std::ostringstream os2;
    write_markdown(os2, r);
    EXPECT_NE(os2.str().find("| 0 | reps=1, C=0.1, gamma=scale | 0.930000 |"), std::string::npos);
}

TEST(Report, EmitToUnwritablePath) {
    ExperimentReport r;
    EXPECT_THROW(emit_report(r, ReportFormat::Csv, "/nonexistent-dir/out.csv"), IoError);
}

TEST(Config, ParsesKeyValueText) {
    ExperimentConfig cfg;
    apply_config_text(cfg, "# experiment\nseed = 7\ntest-fraction = 0.3\nbackend = sampled\nshots=2048\n"
                           "reps = 1, 3\nc = 0.5,2\ngamma = scale, 0.1\nfamily = zz\nentanglement = full\n"
                           "stage1_families = z\nformat = markdown  # inline comment\n");
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_DOUBLE_EQ(cfg.test_fraction, 0.3);
    EXPECT_EQ(cfg.backend, Backend::Sampled);
    EXPECT_EQ(cfg.shots, 2048u);
    EXPECT_EQ(cfg.reps, (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(cfg.c_values, (std::vector<double>{0.5, 2.0}));
    EXPECT_EQ(cfg.gammas, (std::vector<GammaMode>{GammaMode::scale(), GammaMode::fixed(0.1)}));
    EXPECT_EQ(cfg.family, Family::ZZ);
    EXPECT_EQ(cfg.entanglement, Entanglement::Full);
    EXPECT_EQ(cfg.stage1_families, std::vector<Family>{Family::Z});
    EXPECT_EQ(cfg.format, ReportFormat::Markdown);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Errors) {
    ExperimentConfig cfg;
    EXPECT_THROW(apply_config_text(cfg, "bogus = 1\n"), ConfigError);
    EXPECT_THROW(apply_config_text(cfg, "seed\n"), ConfigError);
    EXPECT_THROW(apply_config_text(cfg, "seed = -1\n"), ConfigError);
    EXPECT_THROW(apply_config_text(cfg, "family = xx\n"), ConfigError);
    EXPECT_THROW(apply_config_text(cfg, "reps = \n"), ConfigError);
    EXPECT_THROW(apply_config_file(cfg, "/nonexistent.cfg"), ConfigError);

    ExperimentConfig bad;
    bad.test_fraction = 1.5;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = ExperimentConfig{};
    bad.backend = Backend::Sampled;
    bad.shots = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = ExperimentConfig{};
    bad.pauli_strings = {"Q"};
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = ExperimentConfig{};
    bad.reps = {};
    EXPECT_THROW(bad.validate(), ConfigError);
}
