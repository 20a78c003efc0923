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
 * Dense statevector simulator restricted to the gates the feature maps need:
 * Hadamard, phase, a generic single-qubit unitary and CNOT.
 *
 * Qubit ordering is little-endian: qubit q is bit q of the basis-state index.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qkernel/error.hpp"

namespace qkernel::sim {

using complex_t = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<complex_t, 4>;

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr double kUnitarityTolerance = 1e-10;

struct Hadamard {
    std::size_t qubit;
};

/// diag(1, e^{i angle}) on one qubit.
struct Phase {
    std::size_t qubit;
    double angle;
};

struct SingleQubitUnitary {
    std::size_t qubit;
    Matrix2 matrix;
};

struct ControlledNot {
    std::size_t control;
    std::size_t target;
};

using GateOp = std::variant<Hadamard, Phase, SingleQubitUnitary, ControlledNot>;
using Circuit = std::vector<GateOp>;

[[nodiscard]] inline Matrix2 adjoint(const Matrix2 &m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

[[nodiscard]] inline bool is_unitary(const Matrix2 &m, double tol = kUnitarityTolerance) {
    // U U^dagger == I
    const complex_t a = m[0] * std::conj(m[0]) + m[1] * std::conj(m[1]);
    const complex_t b = m[0] * std::conj(m[2]) + m[1] * std::conj(m[3]);
    const complex_t d = m[2] * std::conj(m[2]) + m[3] * std::conj(m[3]);
    return std::abs(a - 1.0) <= tol && std::abs(b) <= tol && std::abs(d - 1.0) <= tol;
}

/// Gate that undoes `op`.
[[nodiscard]] inline GateOp inverse(const GateOp &op) {
    return std::visit(
        [](const auto &g) -> GateOp {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, Phase>) {
                return Phase{g.qubit, -g.angle};
            } else if constexpr (std::is_same_v<G, SingleQubitUnitary>) {
                return SingleQubitUnitary{g.qubit, adjoint(g.matrix)};
            } else {
                return g;  // H and CX are involutions
            }
        },
        op);
}

[[nodiscard]] inline Circuit inverse(const Circuit &circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back(inverse(*it));
    }
    return out;
}

class Statevector {
  public:
    /// |0...0> on `n_qubits` qubits.
    [[nodiscard]] static Statevector zero(std::size_t n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw CapacityError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
        }
        Statevector s;
        s.n_qubits_ = n_qubits;
        s.amplitudes_.assign(std::size_t{1} << n_qubits, complex_t{0.0, 0.0});
        s.amplitudes_[0] = complex_t{1.0, 0.0};
        return s;
    }

    /// Wraps caller-provided amplitudes; the length must be a power of two. No normalization is applied.
    [[nodiscard]] static Statevector from_amplitudes(std::vector<complex_t> amplitudes) {
        const std::size_t dim = amplitudes.size();
        if (dim < 2 || (dim & (dim - 1)) != 0) {
            throw DimensionError("amplitude count " + std::to_string(dim) + " is not a power of two >= 2");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < dim) {
            ++n;
        }
        if (n > kMaxQubits) {
            throw CapacityError("qubit count " + std::to_string(n) + " exceeds " + std::to_string(kMaxQubits));
        }
        Statevector s;
        s.n_qubits_ = n;
        s.amplitudes_ = std::move(amplitudes);
        return s;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const complex_t &operator[](std::size_t k) const { return amplitudes_[k]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

    void apply(const GateOp &op) {
        std::visit([this](const auto &g) { apply_impl(g); }, op);
    }

    void apply(const Circuit &circuit) {
        for (const auto &op : circuit) {
            apply(op);
        }
    }

  private:
    Statevector() = default;

    void check_qubit(std::size_t q) const {
        if (q >= n_qubits_) {
            throw IndexError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_qubits_) +
                             "-qubit state");
        }
    }

    // Visits every amplitude pair (i0, i1) that differs only in bit `q`.
    template <typename F>
    void for_each_pair(std::size_t q, F &&f) {
        const std::size_t stride = std::size_t{1} << q;
        const std::size_t dim = amplitudes_.size();
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t k = base; k < base + stride; ++k) {
                f(amplitudes_[k], amplitudes_[k + stride]);
            }
        }
    }

    void apply_impl(const Hadamard &g) {
        check_qubit(g.qubit);
        const double r = 1.0 / std::sqrt(2.0);
        for_each_pair(g.qubit, [r](complex_t &a0, complex_t &a1) {
            const complex_t t0 = a0;
            a0 = r * (t0 + a1);
            a1 = r * (t0 - a1);
        });
    }

    void apply_impl(const Phase &g) {
        check_qubit(g.qubit);
        const complex_t factor = std::polar(1.0, g.angle);
        for_each_pair(g.qubit, [factor](complex_t &, complex_t &a1) { a1 *= factor; });
    }

    void apply_impl(const SingleQubitUnitary &g) {
        check_qubit(g.qubit);
        if (!is_unitary(g.matrix)) {
            throw ArgumentError("single-qubit gate matrix is not unitary");
        }
        const Matrix2 &m = g.matrix;
        for_each_pair(g.qubit, [&m](complex_t &a0, complex_t &a1) {
            const complex_t t0 = a0;
            a0 = m[0] * t0 + m[1] * a1;
            a1 = m[2] * t0 + m[3] * a1;
        });
    }

    void apply_impl(const ControlledNot &g) {
        check_qubit(g.control);
        check_qubit(g.target);
        if (g.control == g.target) {
            throw IndexError("CNOT control and target must differ (both " + std::to_string(g.control) + ")");
        }
        const std::size_t cmask = std::size_t{1} << g.control;
        const std::size_t tmask = std::size_t{1} << g.target;
        for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
            if ((k & cmask) != 0 && (k & tmask) == 0) {
                std::swap(amplitudes_[k], amplitudes_[k | tmask]);
            }
        }
    }

    std::size_t n_qubits_ = 0;
    std::vector<complex_t> amplitudes_;
};

[[nodiscard]] inline Statevector new_zero_state(std::size_t n_qubits) { return Statevector::zero(n_qubits); }

inline void apply_gate(Statevector &state, const GateOp &op) { state.apply(op); }

/// <a|b> = sum_k conj(a_k) b_k.
[[nodiscard]] inline complex_t inner_product(const Statevector &a, const Statevector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DimensionError("inner product of " + std::to_string(a.n_qubits()) + "- and " +
                             std::to_string(b.n_qubits()) + "-qubit states");
    }
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    complex_t acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += std::conj(x[k]) * y[k];
    }
    return acc;
}

[[nodiscard]] inline double all_zeros_probability(const Statevector &state) {
    return std::clamp(std::norm(state[0]), 0.0, 1.0);
}

/// Fraction of `shots` simulated measurements that return the all-zeros outcome.
/// Only that marginal is sampled, as a binomial draw.
[[nodiscard]] inline double sample_all_zeros_frequency(const Statevector &state, std::uint64_t shots,
                                                       std::uint64_t rng_seed) {
    if (shots == 0) {
        throw ArgumentError("shots must be >= 1");
    }
    const double p = all_zeros_probability(state);
    if (p >= 1.0) {
        return 1.0;
    }
    if (p <= 0.0) {
        return 0.0;
    }
    std::mt19937_64 rng(rng_seed);
    std::binomial_distribution<std::uint64_t> draw(shots, p);
    return static_cast<double>(draw(rng)) / static_cast<double>(shots);
}

}  // namespace qkernel::sim
