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

// Minimal walk-through: encode Iris with a Z feature map, train a fidelity-kernel
// SVM, and compare against the RBF baseline on the same split.

#include <cstdio>

#include "qkernel/qkernel.hpp"

int main() {
    using namespace qkernel;

    const auto iris = data::load_iris();
    const auto d = bench::prepare_data(iris, 0.2, /*seed=*/0);

    FeatureMapSpec spec;
    spec.family = Family::Z;
    spec.n_features = d.x_train.cols();
    spec.reps = 2;

    const auto k_train = fidelity_kernel_exact(spec, d.x_train);
    const auto k_test = fidelity_kernel_exact(spec, d.x_test, d.x_train);
    const auto model = svm::fit(k_train, d.y_train, 1.0);
    const auto quantum = classification_report(d.y_test, svm::predict(model, k_test));

    const double gamma = resolve_gamma(GammaMode::scale(), d.x_train);
    const auto rbf_model = svm::fit(rbf_kernel(d.x_train, gamma), d.y_train, 1.0);
    const auto classical = classification_report(d.y_test, svm::predict(rbf_model, rbf_kernel(d.x_test, d.x_train, gamma)));

    std::printf("feature map  %s\n", describe(spec).c_str());
    std::printf("quantum SVC  macro-F1 %.4f  accuracy %.4f\n", quantum.macro_f1, quantum.accuracy);
    std::printf("RBF SVC      macro-F1 %.4f  accuracy %.4f  (gamma %.4g)\n", classical.macro_f1, classical.accuracy,
                gamma);
    return 0;
}
