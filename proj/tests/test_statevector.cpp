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
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qkernel/statevector.hpp"

using namespace qkernel;
using namespace qkernel::sim;

namespace {

Statevector random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<complex_t> amp(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amp) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amp) a /= std::sqrt(norm);
    return Statevector::from_amplitudes(amp);
}

oracle::CVec to_eigen(const Statevector &s) {
    oracle::CVec v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t k = 0; k < s.dimension(); ++k) v(static_cast<Eigen::Index>(k)) = s[k];
    return v;
}

double max_diff(const Statevector &s, const oracle::CVec &v) {
    double d = 0.0;
    for (std::size_t k = 0; k < s.dimension(); ++k) d = std::max(d, std::abs(s[k] - v(static_cast<Eigen::Index>(k))));
    return d;
}

Matrix2 to_matrix2(const oracle::CMat &u) { return {u(0, 0), u(0, 1), u(1, 0), u(1, 1)}; }

}  // namespace

TEST(Statevector, ZeroStates) {
    const auto s1 = new_zero_state(1);
    ASSERT_EQ(s1.dimension(), 2u);
    EXPECT_EQ(s1[0], complex_t(1.0, 0.0));
    EXPECT_EQ(s1[1], complex_t(0.0, 0.0));

    const auto s2 = new_zero_state(2);
    ASSERT_EQ(s2.dimension(), 4u);
    EXPECT_EQ(s2[0], complex_t(1.0, 0.0));
    for (std::size_t k = 1; k < 4; ++k) EXPECT_EQ(s2[k], complex_t(0.0, 0.0));

    const auto s4 = new_zero_state(4);
    EXPECT_EQ(s4.dimension(), 16u);
    EXPECT_DOUBLE_EQ(s4.norm_squared(), 1.0);
}

TEST(Statevector, CapacityBounds) {
    EXPECT_THROW((void)new_zero_state(0), CapacityError);
    EXPECT_THROW((void)new_zero_state(25), CapacityError);
    EXPECT_NO_THROW((void)new_zero_state(kMaxQubits));
}

TEST(Statevector, HadamardOnZero) {
    auto s = new_zero_state(1);
    apply_gate(s, Hadamard{0});
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s[0] - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - r), 0.0, 1e-15);
}

TEST(Statevector, PhaseZeroIsIdentity) {
    std::mt19937_64 rng(7);
    const auto s = random_state(3, rng);
    auto t = s;
    for (std::size_t q = 0; q < 3; ++q) apply_gate(t, Phase{q, 0.0});
    for (std::size_t k = 0; k < s.dimension(); ++k) EXPECT_EQ(s[k], t[k]);
}

TEST(Statevector, CnotOnOneZero) {
    // Kets in qubit order (q0 q1): |10> is basis index 1, |11> is index 3.
    auto s = Statevector::from_amplitudes({0.0, 1.0, 0.0, 0.0});
    apply_gate(s, ControlledNot{0, 1});
    const oracle::CVec expected = oracle::cnot(0, 1, 2) * to_eigen(Statevector::from_amplitudes({0.0, 1.0, 0.0, 0.0}));
    EXPECT_LT(max_diff(s, expected), 1e-15);
    EXPECT_EQ(s[3], complex_t(1.0, 0.0));
}

TEST(Statevector, InvalidGates) {
    auto s = new_zero_state(2);
    EXPECT_THROW(apply_gate(s, Hadamard{2}), IndexError);
    EXPECT_THROW(apply_gate(s, ControlledNot{0, 0}), IndexError);
    EXPECT_THROW(apply_gate(s, ControlledNot{0, 5}), IndexError);
    EXPECT_THROW(apply_gate(s, SingleQubitUnitary{0, Matrix2{2.0, 0.0, 0.0, 1.0}}), ArgumentError);
}

TEST(Statevector, InnerProducts) {
    std::mt19937_64 rng(11);
    const auto s = random_state(3, rng);
    const auto self = inner_product(s, s);
    EXPECT_NEAR(self.real(), 1.0, 1e-10);
    EXPECT_NEAR(self.imag(), 0.0, 1e-10);

    const auto zero = new_zero_state(1);
    const auto one = Statevector::from_amplitudes({0.0, 1.0});
    EXPECT_EQ(inner_product(zero, one), complex_t(0.0, 0.0));

    auto h = new_zero_state(1);
    apply_gate(h, Hadamard{0});
    EXPECT_NEAR(std::abs(inner_product(h, zero) - complex_t(1.0 / std::sqrt(2.0), 0.0)), 0.0, 1e-15);

    EXPECT_THROW((void)inner_product(new_zero_state(1), new_zero_state(2)), DimensionError);
}

TEST(Statevector, AllZerosProbability) {
    EXPECT_DOUBLE_EQ(all_zeros_probability(new_zero_state(3)), 1.0);
    auto h = new_zero_state(1);
    apply_gate(h, Hadamard{0});
    EXPECT_NEAR(all_zeros_probability(h), 0.5, 1e-15);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto s = random_state(2, rng);
        const double p = all_zeros_probability(s);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_NEAR(p, std::norm(s[0]), 1e-15);
    }
}

TEST(Statevector, SampledFrequency) {
    EXPECT_EQ(sample_all_zeros_frequency(new_zero_state(2), 17, 1), 1.0);
    EXPECT_EQ(sample_all_zeros_frequency(Statevector::from_amplitudes({0.0, 1.0}), 100, 1), 0.0);
    EXPECT_THROW((void)sample_all_zeros_frequency(new_zero_state(1), 0, 1), ArgumentError);

    auto h = new_zero_state(1);
    apply_gate(h, Hadamard{0});
    EXPECT_EQ(sample_all_zeros_frequency(h, 1000, 42), sample_all_zeros_frequency(h, 1000, 42));

    // Binomial tail: with 8192 shots, |f - 0.5| > 3/sqrt(8192) is a >6-sigma event.
    int within = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        within += std::abs(sample_all_zeros_frequency(h, 8192, seed) - 0.5) <= 0.03;
    }
    EXPECT_GE(within, 198);
}

// Property: every gate matches its explicit 2x2 / 4x4 unitary on random states.
TEST(StatevectorProperty, MatchesMatrixOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 2;
        const auto s = random_state(n, rng);
        const std::size_t q = rng() % n;
        const oracle::CVec v = to_eigen(s);

        auto h = s;
        h.apply(Hadamard{q});
        EXPECT_LT(max_diff(h, oracle::embed_1q(oracle::hadamard(), q, n) * v), 1e-12);

        const double th = angle(rng);
        auto p = s;
        p.apply(Phase{q, th});
        EXPECT_LT(max_diff(p, oracle::embed_1q(oracle::phase(th), q, n) * v), 1e-12);

        const oracle::CMat u = oracle::random_unitary(rng);
        auto g = s;
        g.apply(SingleQubitUnitary{q, to_matrix2(u)});
        EXPECT_LT(max_diff(g, oracle::embed_1q(u, q, n) * v), 1e-12);

        if (n == 2) {
            auto c = s;
            c.apply(ControlledNot{q, 1 - q});
            EXPECT_LT(max_diff(c, oracle::cnot(q, 1 - q, 2) * v), 1e-12);
        }
    }
}

TEST(StatevectorProperty, InvolutionsAndInverses) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_state(3, rng);
        const std::size_t q = rng() % 3;
        const std::size_t t = (q + 1 + rng() % 2) % 3;
        const double th = angle(rng);
        const oracle::CMat u = oracle::random_unitary(rng);

        auto a = s;
        a.apply(Hadamard{q});
        a.apply(Hadamard{q});
        auto b = s;
        b.apply(ControlledNot{q, t});
        b.apply(ControlledNot{q, t});
        auto c = s;
        c.apply(Phase{q, th});
        c.apply(Phase{q, -th});
        const Circuit circ{Hadamard{q}, Phase{t, th}, ControlledNot{q, t}, SingleQubitUnitary{t, to_matrix2(u)}};
        auto d = s;
        d.apply(circ);
        d.apply(inverse(circ));
        for (std::size_t k = 0; k < s.dimension(); ++k) {
            EXPECT_LT(std::abs(a[k] - s[k]), 1e-12);
            EXPECT_LT(std::abs(b[k] - s[k]), 1e-12);
            EXPECT_LT(std::abs(c[k] - s[k]), 1e-12);
            EXPECT_LT(std::abs(d[k] - s[k]), 1e-12);
        }
    }
}

TEST(StatevectorProperty, NormPreservedOverLongSequences) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        auto s = new_zero_state(n);
        for (int g = 0; g < 100; ++g) {
            const std::size_t q = rng() % n;
            switch (n >= 2 ? rng() % 4 : rng() % 3) {
                case 0: s.apply(Hadamard{q}); break;
                case 1: s.apply(Phase{q, angle(rng)}); break;
                case 2: s.apply(SingleQubitUnitary{q, to_matrix2(oracle::random_unitary(rng))}); break;
                default: s.apply(ControlledNot{q, (q + 1) % n}); break;
            }
        }
        EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-9);
    }
}
