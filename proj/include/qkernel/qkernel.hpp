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

// Umbrella header.

#include "qkernel/bench.hpp"
#include "qkernel/data.hpp"
#include "qkernel/error.hpp"
#include "qkernel/feature_map.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/matrix.hpp"
#include "qkernel/metrics.hpp"
#include "qkernel/report.hpp"
#include "qkernel/statevector.hpp"
#include "qkernel/svm.hpp"
