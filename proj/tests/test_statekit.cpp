// Copyright 2026 The magicrm Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "magicrm/pauli.hpp"
#include "magicrm/sampling.hpp"
#include "magicrm/simulate.hpp"
#include "magicrm/statevector.hpp"

using namespace magicrm;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_amps(const StateVector& s, const std::vector<cplx>& want, double tol = 1e-12) {
    ASSERT_EQ(s.amp.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) EXPECT_LT(std::abs(s.amp[i] - want[i]), tol) << "amplitude " << i;
}

}  // namespace

TEST(ZeroState, Amplitudes) {
    expect_amps(zero_state(1), {1, 0});
    expect_amps(zero_state(2), {1, 0, 0, 0});
    auto s5 = zero_state(5);
    EXPECT_EQ(s5.amp.size(), 32u);
    EXPECT_EQ(s5.amp[0], cplx(1));
    EXPECT_THROW(zero_state(0), size_error);
    EXPECT_THROW(zero_state(13), size_error);
}

TEST(PthetaState, Examples) {
    const double r = 1 / std::sqrt(2.0);
    expect_amps(ptheta_state(0), {r, r});
    expect_amps(ptheta_state(kPi / 2), {r, cplx(0, r)});
    expect_amps(ptheta_state(kPi / 4), {r, r * std::polar(1.0, kPi / 4)});
}

TEST(Bits, StringRoundTripQubitZeroFirst) {
    // qubit 0 is the leftmost character and the most significant bit
    EXPECT_EQ(to_bitstring(0b100, 3), "100");
    EXPECT_EQ(parse_bitstring("100", 3), 0b100u);
    EXPECT_EQ(qubit_mask(3, 0), 0b100u);
    StateVector s = zero_state(3);
    apply(s, gate::H{0});
    apply(s, gate::CX{0, 2});
    auto p = outcome_distribution(s);
    EXPECT_NEAR(p[parse_bitstring("101", 3)], 0.5, 1e-12);
    EXPECT_THROW(parse_bitstring("10", 3), data_error);
    EXPECT_THROW(parse_bitstring("1a0", 3), data_error);
}

TEST(CliffordTable, HasTwentyFourDistinctUnitaries) {
    const auto& t = clifford_table();
    ASSERT_EQ(t.size(), 24u);
    std::set<int> ids;
    for (int i = 0; i < 24; ++i) {
        const Mat2& u = t[static_cast<size_t>(i)];
        EXPECT_LT((u * u.adjoint() - Mat2::Identity()).norm(), 1e-12);
        ids.insert(clifford_id_of(u));
    }
    EXPECT_EQ(ids.size(), 24u);
}

TEST(CliffordTable, IdentityIsIdZero) { EXPECT_LT((clifford_element(0) - Mat2::Identity()).norm(), 1e-12); }

TEST(CliffordTable, ClosedUnderProducts) {
    for (int a = 0; a < 24; ++a)
        for (int b = 0; b < 24; ++b) EXPECT_NO_THROW(clifford_product(a, b));
}

TEST(CliffordTable, MapsPaulisToPaulis) {
    // conjugation sends each Pauli to a signed Pauli
    const Mat2 paulis[3] = {(Mat2() << 0, 1, 1, 0).finished(), (Mat2() << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
                            (Mat2() << 1, 0, 0, -1).finished()};
    for (int id = 0; id < 24; ++id) {
        const Mat2& u = clifford_element(id);
        for (const auto& p : paulis) {
            Mat2 c = u * p * u.adjoint();
            bool found = false;
            for (const auto& q : paulis) found |= (c - q).norm() < 1e-12 || (c + q).norm() < 1e-12;
            EXPECT_TRUE(found) << "id " << id;
        }
    }
}

TEST(CliffordTable, StableEnumeration) {
    // Frozen ids of H and S under the canonical ordering.
    EXPECT_EQ(hadamard_id(), 4);
    EXPECT_EQ(phase_s_id(), 1);
    EXPECT_THROW(clifford_element(24), size_error);
    EXPECT_THROW(clifford_element(-1), size_error);
}

TEST(LocalCliffords, IdentityWordLeavesStateUnchanged) {
    auto s = haar_random_state(3, 11);
    auto r = apply_local_cliffords(s, {0, 0, 0});
    expect_amps(r, s.amp);
}

TEST(LocalCliffords, HadamardTakesZeroToPlus) {
    const double r = 1 / std::sqrt(2.0);
    expect_amps(apply_local_cliffords(zero_state(1), {hadamard_id()}), {r, r});
}

TEST(LocalCliffords, PreservesNormAndMagic) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, 23);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = haar_random_state(3, 100 + static_cast<uint64_t>(trial));
        CliffordWord w{pick(rng), pick(rng), pick(rng)};
        auto r = apply_local_cliffords(s, w);
        EXPECT_NEAR(r.norm2(), 1.0, 1e-10);
        EXPECT_NEAR(stabilizer_renyi(r, 2), stabilizer_renyi(s, 2), 1e-9);
    }
}

TEST(LocalCliffords, LengthMismatchThrows) {
    EXPECT_THROW(apply_local_cliffords(zero_state(2), {0}), size_error);
    EXPECT_THROW(apply_local_cliffords(zero_state(1), {30}), size_error);
}

TEST(OutcomeDistribution, Examples) {
    auto plus = apply_local_cliffords(zero_state(1), {hadamard_id()});
    auto p = outcome_distribution(plus);
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[1], 0.5, 1e-12);
    auto z = outcome_distribution(zero_state(2));
    EXPECT_EQ(z, (std::vector<double>{1, 0, 0, 0}));
    StateVector bell = zero_state(2);
    apply(bell, gate::H{0});
    apply(bell, gate::CX{0, 1});
    auto b = outcome_distribution(bell);
    EXPECT_NEAR(b[0], 0.5, 1e-12);
    EXPECT_NEAR(b[3], 0.5, 1e-12);
    EXPECT_NEAR(b[1] + b[2], 0.0, 1e-12);
}

TEST(Gates, NormPreservedOnRandomCircuits) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> q(0, 3), kind(0, 3), id(0, 23);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    StateVector s = haar_random_state(4, 3);
    for (int k = 0; k < 200; ++k) {
        int a = q(rng), b = (a + 1 + q(rng) % 3) % 4;
        switch (kind(rng)) {
            case 0: apply(s, gate::H{a}); break;
            case 1: apply(s, gate::Phase{a, ang(rng)}); break;
            case 2: apply(s, gate::CX{a, b}); break;
            default: apply(s, gate::Clifford{a, id(rng)}); break;
        }
        ASSERT_NEAR(s.norm2(), 1.0, 1e-10);
    }
}

TEST(Circuit, ValidationRejectsBadIndices) {
    EXPECT_THROW((Circuit{2, {gate::CX{1, 1}}}.validate()), domain_error);
    EXPECT_THROW((Circuit{2, {gate::H{2}}}.validate()), domain_error);
    EXPECT_THROW((Circuit{2, {gate::Clifford{0, 24}}}.validate()), size_error);
}

TEST(GammaCircuit, FillingRule) {
    EXPECT_EQ(gamma_split(6, 4), std::make_pair(3, 1));
    EXPECT_EQ(gamma_split(3, 5), std::make_pair(3, 2));
    EXPECT_EQ(gamma_split(3, 1), std::make_pair(0, 1));
    EXPECT_EQ(gamma_split(4, 5), std::make_pair(4, 1));
    EXPECT_EQ(gamma_split(4, 6), std::make_pair(4, 2));
    EXPECT_THROW(gamma_split(3, 0), domain_error);
    EXPECT_THROW(gamma_split(3, 6), domain_error);
    EXPECT_THROW(gamma_split(1, 1), size_error);
}

TEST(GammaCircuit, GateCountsMatchSplit) {
    for (int n = 2; n <= 6; ++n) {
        for (int t = 1; t <= 2 * n - 1; ++t) {
            auto c = gamma_circuit(n, t);
            int tcount = 0, cx = 0;
            for (const auto& g : c.gates) {
                tcount += std::holds_alternative<gate::Phase>(g);
                cx += std::holds_alternative<gate::CX>(g);
            }
            EXPECT_EQ(tcount, t);
            EXPECT_EQ(cx, 2 * (n - 1));
        }
    }
}

TEST(GammaState, SingleSeedStabilizerPurity) {
    // table value ~9.4e-2
    EXPECT_NEAR(100 * stab_purity_exact(gamma_state(3, 1)), 9.4, 0.05);
}

TEST(GammaState, TableValues) {
    // displayed stabilizer purities (x 1e-2); n=3, t=3 reads 5.2 on one
    // device table and 5.3 on the other
    const std::vector<std::vector<double>> table = {
        {9.4, 7.0, 5.3, 4.3, 3.5},
        {4.7, 3.5, 2.6, 2.0, 1.5, 1.2, 1.1},
        {2.3, 1.8, 1.3, 0.99, 0.74, 0.56, 0.44, 0.40, 0.34},
    };
    for (int n = 3; n <= 5; ++n) {
        for (int t = 1; t <= 2 * n - 1; ++t) {
            const double got = 100 * stab_purity_exact(gamma_state(n, t));
            const double want = table[static_cast<size_t>(n - 3)][static_cast<size_t>(t - 1)];
            EXPECT_NEAR(got, want, 0.05) << "n=" << n << " t=" << t;
        }
    }
}

TEST(GammaState, FrozenStabilizerPurities) {
    // full-precision values of the adopted circuit, x 1e-2
    EXPECT_NEAR(100 * stab_purity_exact(gamma_state(3, 1)), 9.375, 1e-9);
    EXPECT_NEAR(100 * stab_purity_exact(gamma_state(3, 3)), 5.2734375, 1e-9);
    EXPECT_NEAR(100 * stab_purity_exact(gamma_state(3, 5)), 3.515625, 1e-9);
}

TEST(GammaState, SecondChainDirectionDoesNotChangeW) {
    for (int n = 3; n <= 5; ++n) {
        for (int t = 1; t <= 2 * n - 1; ++t) {
            auto c = gamma_circuit(n, t);
            // flip the final CX(0,1) to CX(1,0)
            c.gates.back() = gate::CX{1, 0};
            EXPECT_NEAR(stab_purity_exact(run(c, zero_state(n))), stab_purity_exact(gamma_state(n, t)), 1e-12);
        }
    }
}

TEST(SampleCounts, DegenerateDistribution) {
    auto c = sample_counts({1.0, 0.0}, 50, 1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.at(0), 50u);
}

TEST(SampleCounts, TotalsAndDeterminism) {
    std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto c = sample_counts(p, 37, seed);
        uint64_t total = 0;
        for (auto& [k, v] : c) total += v;
        EXPECT_EQ(total, 37u);
        EXPECT_EQ(c, sample_counts(p, 37, seed));
    }
}

TEST(SampleCounts, BinomialConcentration) {
    auto c = sample_counts({0.5, 0.5}, 100000, 42);
    const double sigma = std::sqrt(1e5 * 0.25);
    EXPECT_LT(std::abs(double(c[0]) - 5e4), 5 * sigma);
    EXPECT_LT(std::abs(double(c[1]) - 5e4), 5 * sigma);
}

TEST(SampleCounts, RejectsInvalidDistributions) {
    EXPECT_THROW(sample_counts({0.5, 0.6}, 10, 1), domain_error);
    EXPECT_THROW(sample_counts({1.2, -0.2}, 10, 1), domain_error);
    EXPECT_THROW(sample_counts({0.5, 0.5}, 0, 1), domain_error);
}

TEST(Simulation, SameSeedSameCountsForAnyThreadCount) {
    auto psi = gamma_state(3, 4);
    set_thread_count(1);
    auto a = simulate_experiment(psi, 77, 40, 50);
    set_thread_count(4);
    auto b = simulate_experiment(psi, 77, 40, 50);
    set_thread_count(0);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].word, b.records[i].word);
        EXPECT_EQ(a.records[i].counts, b.records[i].counts);
    }
}
