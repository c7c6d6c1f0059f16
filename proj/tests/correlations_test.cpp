// Copyright 2026 The proctensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proctensor/correlations.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "proctensor/channel.hpp"
#include "test_util.hpp"

using namespace proctensor;
using namespace proctensor::testing;

TEST(correlation_report, identity_channels) {
  const CorrelationReport r = correlation_report(nm_depolarizing_process(0.0));
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.d, 2u);
  EXPECT_NEAR(r.I, 4 * kLn2, 1e-10);
  EXPECT_NEAR(r.M, 4 * kLn2, 1e-10);
  EXPECT_NEAR(r.N, 0.0, 1e-10);
  ASSERT_EQ(r.M_bar_list.size(), 2u);
  EXPECT_NEAR(r.M_bar_list[0], 0.0, 1e-10);
}

TEST(correlation_report, cnot_swap) {
  const CorrelationReport r = correlation_report(cnot_swap_process());
  EXPECT_NEAR(r.M_list[0], kLn2, 1e-10);
  EXPECT_NEAR(r.M_list[1], 0.0, 1e-10);
  EXPECT_NEAR(r.N, 2 * kLn2, 1e-10);
}

TEST(correlation_report, swap_chain) {
  for (std::size_t n : {2, 3, 4}) {
    for (std::size_t d : {2, 3}) {
      const CorrelationReport r = correlation_report(swap_chain_process(n, d));
      EXPECT_NEAR(r.N, 2.0 * double(n - 1) * std::log(double(d)), 1e-9) << n << " " << d;
      EXPECT_NEAR(r.M, 0.0, 1e-9);
      EXPECT_NEAR(r.I, r.N, 1e-9);
    }
  }
}

TEST(correlation_report, single_step_has_no_memory) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CorrelationReport r = correlation_report(random_process(RandomSpec{1, 2, 3, seed, EnvInit::kSeededRandom}));
    EXPECT_NEAR(r.N, 0.0, 1e-12);
    EXPECT_NEAR(r.I, r.M, 1e-12);
  }
}

TEST(correlation_report, ranges_and_additivity) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const CorrelationReport r =
        correlation_report(random_process(RandomSpec{n, 2, 2 + seed % 3, seed, static_cast<EnvInit>(seed % 3)}));
    const double ln_d = kLn2;
    EXPECT_LE(r.additivity_residual, 1e-10);
    EXPECT_GE(r.N, -1e-8);
    EXPECT_GE(r.I, -1e-8);
    EXPECT_LE(r.I, 2 * double(n) * ln_d + 1e-8);
    for (double m : r.M_list) {
      EXPECT_GE(m, -1e-8);
      EXPECT_LE(m, 2 * ln_d + 1e-8);
    }
  }
}

TEST(correlation_report, raw_state_shape_checks) {
  EXPECT_THROW(correlation_report(DensityMatrix::maximally_entangled(2), 2), ArgumentError);
  const DensityMatrix mixed = kron(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3));
  EXPECT_THROW(correlation_report(mixed, 1), ArgumentError);
}

TEST(non_markovianity_crosscheck, markov_product_is_zero) {
  const DensityMatrix ab = depolarizing_choi(2, 0.3).state();
  const DensityMatrix cd = depolarizing_choi(2, 0.7).state();
  const ProcessTensor pt = ProcessTensor::from_state(kron(ab, cd), 2);
  const RelativeEntropy r = non_markovianity_crosscheck(pt);
  EXPECT_FALSE(r.infinite);
  EXPECT_NEAR(r.nats, 0.0, 1e-10);
}

TEST(non_markovianity_crosscheck, swap_chain) {
  const RelativeEntropy r = non_markovianity_crosscheck(swap_chain_process(2, 2));
  EXPECT_FALSE(r.infinite);
  EXPECT_NEAR(r.nats, 2 * kLn2, 1e-9);
}

TEST(non_markovianity_crosscheck, matches_entropy_form) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const ProcessTensor pt = random_process(RandomSpec{n, 2, 1 + seed % 4, 1000 + seed, static_cast<EnvInit>(seed % 3)});
    const RelativeEntropy r = non_markovianity_crosscheck(pt);
    ASSERT_FALSE(r.infinite);
    EXPECT_NEAR(r.nats, correlation_report(pt).N, 1e-8) << "seed " << seed;
  }
}

TEST(audit_bounds, swap_chain_saturates_total_bound) {
  for (std::size_t n : {2, 3, 4}) {
    for (std::size_t d : {2, 3}) {
      const BoundAudit a = audit_bounds(correlation_report(swap_chain_process(n, d)));
      EXPECT_NEAR(a.thm1_slack, 0.0, 1e-8) << n << " " << d;
      EXPECT_TRUE(a.pass);
      EXPECT_EQ(a.prop1_slack.size(), n);
      EXPECT_EQ(a.prop2_slack.size(), n);
    }
  }
}

TEST(audit_bounds, cnot_swap_two_step_slacks) {
  // M̄_1 = ln 2, M̄_2 = 2 ln 2, N = 2 ln 2: both two-step bounds are tight.
  const BoundAudit a = audit_bounds(correlation_report(cnot_swap_process()));
  ASSERT_TRUE(a.two_step_slacks.has_value());
  EXPECT_NEAR((*a.two_step_slacks)[0], 0.0, 1e-9);
  EXPECT_NEAR((*a.two_step_slacks)[1], 0.0, 1e-9);
  EXPECT_TRUE(a.pass);
}

TEST(audit_bounds, identity_channels) {
  const BoundAudit a = audit_bounds(correlation_report(nm_depolarizing_process(0.0)));
  // N = 0: the bounds that do not involve M̄ reach their largest slack.
  EXPECT_NEAR(a.thm1_slack, 2 * kLn2, 1e-9);
  EXPECT_NEAR(a.thm2_slack, 0.0, 1e-9);
  EXPECT_NEAR(a.thm2p_slack, 0.0, 1e-9);
  for (double s : a.prop1_slack) EXPECT_NEAR(s, 0.0, 1e-9);
  EXPECT_TRUE(a.pass);
}

TEST(audit_bounds, slack_arithmetic) {
  CorrelationReport r;
  r.n = 3;
  r.d = 2;
  r.M_list = {0.1, 0.2, 0.3};
  r.M = 0.6;
  r.N = 0.5;
  r.I = 1.1;
  for (double m : r.M_list) r.M_bar_list.push_back(2 * kLn2 - m);
  const BoundAudit a = audit_bounds(r, 1e-8);
  const auto& mb = r.M_bar_list;
  EXPECT_DOUBLE_EQ(a.prop1_slack[0], 2 * (mb[1] + mb[2]) - 0.5);
  EXPECT_DOUBLE_EQ(a.prop2_slack[0], mb[1] + mb[2] - 0.5);
  EXPECT_DOUBLE_EQ(a.prop2_slack[1], 2 * mb[0] + mb[2] - 0.5);
  EXPECT_DOUBLE_EQ(a.prop2_slack[2], 2 * (mb[0] + mb[1]) - 0.5);
  EXPECT_DOUBLE_EQ(a.thm1_slack, 4 * kLn2 - 0.5);
  EXPECT_DOUBLE_EQ(a.thm2_slack, 6 * kLn2 - 7.0 / 6.0 * 0.5 - 0.6);
  EXPECT_DOUBLE_EQ(a.thm2p_slack, 6 * kLn2 - 0.5 / 6.0 - 1.1);
  EXPECT_FALSE(a.two_step_slacks.has_value());

  // A negative slack beyond the tolerance fails and is reported signed.
  r.N = 10.0;
  const BoundAudit bad = audit_bounds(r, 1e-8);
  EXPECT_FALSE(bad.pass);
  EXPECT_LT(bad.thm1_slack, 0.0);
  EXPECT_LT(bad.min_slack(), -5.0);
}

TEST(audit_bounds, single_step) {
  const BoundAudit a = audit_bounds(correlation_report(random_process(RandomSpec{1, 2, 2, 5, EnvInit::kPureGround})));
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.prop1_slack.size(), 1u);
  EXPECT_NEAR(a.thm1_slack, 0.0, 1e-12);
}

TEST(audit_bounds, malformed_report) {
  CorrelationReport r;
  EXPECT_THROW(audit_bounds(r), ArgumentError);
}

TEST(audit_bounds, random_processes_respect_bounds) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const ProcessTensor pt = random_process(RandomSpec{n, 2, 1 + seed % 4, 5000 + seed, static_cast<EnvInit>(seed % 3)});
    const BoundAudit a = audit_bounds(correlation_report(pt));
    EXPECT_TRUE(a.pass) << "seed " << seed << " min slack " << a.min_slack();
  }
}

TEST(audit_bounds, step_pair_bound_holds_without_causal_order) {
  // Arbitrary 4-slot states, not process tensors: only the step-pair bound is claimed.
  std::mt19937_64 rng(307);
  for (int t = 0; t < 40; ++t) {
    const DensityMatrix rho = random_state({2, 2, 2, 2}, rng, 1 + t % 16);
    const BoundAudit a = audit_bounds(correlation_report(rho, 2));
    EXPECT_TRUE(a.prop1_pass()) << t;
  }
  // The four-party entangled state is not causal but still within that bound.
  ComplexVector v = ComplexVector::Zero(16);
  for (int k = 0; k < 4; ++k) v(k * 4 + k) = 0.5;
  const DensityMatrix entangled = DensityMatrix::pure(v, SubsystemShape::uniform(4, 2));
  const BoundAudit a = audit_bounds(correlation_report(entangled, 2));
  EXPECT_TRUE(a.prop1_pass());
}

TEST(implication_checks, identity_channels_hold) {
  const ImplicationReport r = implication_checks(correlation_report(nm_depolarizing_process(0.0)), 0.01);
  EXPECT_EQ(r.violations(), 0u);
  EXPECT_EQ(r.high_M1, Implication::kHolds);
  EXPECT_EQ(r.high_M2, Implication::kHolds);
  EXPECT_EQ(r.high_I, Implication::kHolds);
  EXPECT_EQ(r.high_N, Implication::kVacuous);
}

TEST(implication_checks, cnot_swap_high_N_fires) {
  const ImplicationReport r = implication_checks(correlation_report(cnot_swap_process()), 0.01);
  EXPECT_EQ(r.high_N, Implication::kHolds);
  EXPECT_EQ(r.violations(), 0u);
}

TEST(implication_checks, detects_violation) {
  CorrelationReport r;
  r.n = 2;
  r.d = 2;
  r.M_list = {2 * kLn2, 0.0};
  r.M_bar_list = {0.0, 2 * kLn2};
  r.M = 2 * kLn2;
  r.N = 1.0;
  r.I = r.M + r.N;
  const ImplicationReport out = implication_checks(r, 0.01);
  EXPECT_EQ(out.high_M1, Implication::kViolated);
  EXPECT_GE(out.violations(), 1u);
}

TEST(implication_checks, random_two_step_processes) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const CorrelationReport r =
        correlation_report(random_process(RandomSpec{2, 2, 1 + seed % 4, 7000 + seed, static_cast<EnvInit>(seed % 3)}));
    for (double eps : {0.01, 0.1, 0.5}) EXPECT_EQ(implication_checks(r, eps).violations(), 0u);
  }
}

TEST(implication_checks, requires_two_steps) {
  EXPECT_THROW(implication_checks(correlation_report(swap_chain_process(3, 2)), 0.1), ArgumentError);
}

TEST(implication, names) {
  EXPECT_EQ(to_string(Implication::kVacuous), "vacuous");
  EXPECT_EQ(to_string(Implication::kHolds), "holds");
  EXPECT_EQ(to_string(Implication::kViolated), "violated");
}
