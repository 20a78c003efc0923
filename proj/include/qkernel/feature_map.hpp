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
 * Data-encoding circuits for the Z, ZZ and Pauli feature-map families.
 *
 * One repetition is a Hadamard layer followed by phase terms. Single-qubit
 * terms use angle 2*x_i, pair terms use angle 2*(pi - x_i)*(pi - x_j), both
 * applied to the input after multiplication by `input_scale`. A pair term on
 * (i, j) is compiled as CX(i, j) Phase(j) CX(i, j).
 */

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkernel/error.hpp"
#include "qkernel/hash.hpp"
#include "qkernel/statevector.hpp"

namespace qkernel {

enum class Family { Z, ZZ, Pauli };
enum class Entanglement { Linear, Circular, Full };

[[nodiscard]] inline std::string to_string(Family f) {
    switch (f) {
        case Family::Z: return "Z";
        case Family::ZZ: return "ZZ";
        case Family::Pauli: return "Pauli";
    }
    return "?";
}

[[nodiscard]] inline std::string to_string(Entanglement e) {
    switch (e) {
        case Entanglement::Linear: return "linear";
        case Entanglement::Circular: return "circular";
        case Entanglement::Full: return "full";
    }
    return "?";
}

namespace detail {
inline std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}
}  // namespace detail

/// Case-insensitive; accepts "z", "zz", "pauli".
[[nodiscard]] inline Family parse_family(std::string_view s) {
    const std::string v = detail::lowercase(s);
    if (v == "z") return Family::Z;
    if (v == "zz") return Family::ZZ;
    if (v == "pauli") return Family::Pauli;
    throw ArgumentError("unknown feature-map family '" + std::string(s) + "'");
}

[[nodiscard]] inline Entanglement parse_entanglement(std::string_view s) {
    const std::string v = detail::lowercase(s);
    if (v == "linear") return Entanglement::Linear;
    if (v == "circular") return Entanglement::Circular;
    if (v == "full") return Entanglement::Full;
    throw ArgumentError("unknown entanglement scheme '" + std::string(s) + "'");
}

using QubitPair = std::pair<std::size_t, std::size_t>;

/// Qubit pairs that receive a two-qubit term, in application order.
/// Circular on two qubits is the same as Linear (the wrap-around pair would repeat (0, 1)).
[[nodiscard]] inline std::vector<QubitPair> entanglement_pairs(std::size_t n_qubits, Entanglement scheme) {
    if (n_qubits < 2) {
        throw ArgumentError("entanglement needs at least 2 qubits, got " + std::to_string(n_qubits));
    }
    std::vector<QubitPair> pairs;
    switch (scheme) {
        case Entanglement::Linear:
        case Entanglement::Circular:
            for (std::size_t i = 0; i + 1 < n_qubits; ++i) {
                pairs.emplace_back(i, i + 1);
            }
            if (scheme == Entanglement::Circular && n_qubits > 2) {
                pairs.emplace_back(n_qubits - 1, 0);
            }
            break;
        case Entanglement::Full:
            for (std::size_t i = 0; i < n_qubits; ++i) {
                for (std::size_t j = i + 1; j < n_qubits; ++j) {
                    pairs.emplace_back(i, j);
                }
            }
            break;
    }
    return pairs;
}

struct FeatureMapSpec {
    Family family = Family::ZZ;
    std::size_t n_features = 0;
    std::size_t reps = 2;
    Entanglement entanglement = Entanglement::Full;
    /// Only read for the Pauli family. Words over {X, Y, Z} of length 1 or 2.
    std::vector<std::string> pauli_strings{"Z", "ZZ"};
    double input_scale = 1.0;

    void validate() const {
        if (n_features < 1 || n_features > sim::kMaxQubits) {
            throw CapacityError("feature count " + std::to_string(n_features) + " outside [1, " +
                                std::to_string(sim::kMaxQubits) + "]");
        }
        if (reps < 1) {
            throw ArgumentError("reps must be >= 1");
        }
        if (!(input_scale > 0.0) || !std::isfinite(input_scale)) {
            throw ArgumentError("input_scale must be a finite positive number");
        }
        if (family == Family::Pauli) {
            if (pauli_strings.empty()) {
                throw ArgumentError("Pauli feature map needs at least one Pauli string");
            }
            for (const auto &p : pauli_strings) {
                if (p.empty() || p.size() > 2 || p.find_first_not_of("XYZ") != std::string::npos) {
                    throw ArgumentError("invalid Pauli string '" + p + "'");
                }
            }
        }
    }
};

/// Canonical one-line description; two specs encode identically iff their descriptions match.
[[nodiscard]] inline std::string describe(const FeatureMapSpec &spec) {
    std::ostringstream os;
    os.precision(17);
    os << "family=" << to_string(spec.family) << ";n=" << spec.n_features << ";reps=" << spec.reps
       << ";ent=" << to_string(spec.entanglement) << ";scale=" << spec.input_scale;
    if (spec.family == Family::Pauli) {
        os << ";paulis=";
        for (std::size_t k = 0; k < spec.pauli_strings.size(); ++k) {
            os << (k ? "+" : "") << spec.pauli_strings[k];
        }
    }
    return os.str();
}

/// 16 hex digits identifying the encoding circuit.
[[nodiscard]] inline std::string fingerprint(const FeatureMapSpec &spec) {
    static constexpr char digits[] = "0123456789abcdef";
    std::uint64_t h = fnv1a64(describe(spec));
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace detail {

// Rotates the Y eigenbasis onto the Z eigenbasis: V^dagger Z V = Y for V = RX(pi/2).
inline sim::Matrix2 y_to_z_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    return {sim::complex_t{r, 0.0}, sim::complex_t{0.0, -r}, sim::complex_t{0.0, -r}, sim::complex_t{r, 0.0}};
}

inline void push_basis_change(sim::Circuit &c, char pauli, std::size_t q) {
    if (pauli == 'X') {
        c.emplace_back(sim::Hadamard{q});
    } else if (pauli == 'Y') {
        c.emplace_back(sim::SingleQubitUnitary{q, y_to_z_basis()});
    }
}

inline void push_basis_restore(sim::Circuit &c, char pauli, std::size_t q) {
    if (pauli == 'X') {
        c.emplace_back(sim::Hadamard{q});
    } else if (pauli == 'Y') {
        c.emplace_back(sim::SingleQubitUnitary{q, sim::adjoint(y_to_z_basis())});
    }
}

inline double pair_angle(double xi, double xj) {
    return 2.0 * (std::numbers::pi - xi) * (std::numbers::pi - xj);
}

inline void push_pair_phase(sim::Circuit &c, std::size_t i, std::size_t j, double angle) {
    c.emplace_back(sim::ControlledNot{i, j});
    c.emplace_back(sim::Phase{j, angle});
    c.emplace_back(sim::ControlledNot{i, j});
}

}  // namespace detail

/// Gate sequence U(x) such that encode(spec, x) = U(x)|0...0>.
[[nodiscard]] inline sim::Circuit build_circuit(const FeatureMapSpec &spec, std::span<const double> x) {
    spec.validate();
    if (x.size() != spec.n_features) {
        throw DimensionError("sample has " + std::to_string(x.size()) + " features, feature map expects " +
                             std::to_string(spec.n_features));
    }
    const std::size_t n = spec.n_features;
    std::vector<double> scaled(x.begin(), x.end());
    for (auto &v : scaled) {
        v *= spec.input_scale;
    }
    const std::vector<QubitPair> pairs =
        n >= 2 ? entanglement_pairs(n, spec.entanglement) : std::vector<QubitPair>{};

    sim::Circuit c;
    for (std::size_t r = 0; r < spec.reps; ++r) {
        for (std::size_t q = 0; q < n; ++q) {
            c.emplace_back(sim::Hadamard{q});
        }
        if (spec.family != Family::Pauli) {
            for (std::size_t q = 0; q < n; ++q) {
                c.emplace_back(sim::Phase{q, 2.0 * scaled[q]});
            }
            if (spec.family == Family::ZZ) {
                for (const auto &[i, j] : pairs) {
                    detail::push_pair_phase(c, i, j, detail::pair_angle(scaled[i], scaled[j]));
                }
            }
            continue;
        }
        // Each Pauli word is rotated onto Z...Z, phased, and rotated back.
        for (const auto &word : spec.pauli_strings) {
            if (word.size() == 1) {
                for (std::size_t q = 0; q < n; ++q) {
                    detail::push_basis_change(c, word[0], q);
                    c.emplace_back(sim::Phase{q, 2.0 * scaled[q]});
                    detail::push_basis_restore(c, word[0], q);
                }
            } else {
                for (const auto &[i, j] : pairs) {
                    detail::push_basis_change(c, word[0], i);
                    detail::push_basis_change(c, word[1], j);
                    detail::push_pair_phase(c, i, j, detail::pair_angle(scaled[i], scaled[j]));
                    detail::push_basis_restore(c, word[1], j);
                    detail::push_basis_restore(c, word[0], i);
                }
            }
        }
    }
    return c;
}

/// Encoded state U(input_scale * x)|0...0>.
[[nodiscard]] inline sim::Statevector encode(const FeatureMapSpec &spec, std::span<const double> x) {
    const sim::Circuit circuit = build_circuit(spec, x);
    sim::Statevector state = sim::Statevector::zero(spec.n_features);
    state.apply(circuit);
    return state;
}

}  // namespace qkernel
