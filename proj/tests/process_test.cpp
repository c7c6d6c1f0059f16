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

#include "proctensor/process.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "proctensor/channel.hpp"
#include "proctensor/correlations.hpp"
#include "test_util.hpp"

using namespace proctensor;
using namespace proctensor::testing;

namespace {

struct DenseLimitGuard {
  std::size_t saved = max_dense_dim();
  ~DenseLimitGuard() { set_max_dense_dim(saved); }
};

// Maximally entangled across (i0 o1) : (i1 o2), four qubit slots.
DensityMatrix four_party_entangled() {
  ComplexVector v = ComplexVector::Zero(16);
  for (int a = 0; a < 4; ++a) v(a * 4 + a) = 0.5;
  return DensityMatrix::pure(v, SubsystemShape::uniform(4, 2));
}

// Distance from the closest (1-q) Φ + q Ĩ⊗Ĩ, with q fitted from tr(ρ Φ).
double depolarizing_fit_residual(const DensityMatrix& pair, std::size_t d, double* q_out = nullptr) {
  const DensityMatrix phi = DensityMatrix::maximally_entangled(d);
  const double overlap = (pair.matrix() * phi.matrix()).trace().real();
  const double dd = double(d * d);
  const double q = (1.0 - overlap) / (1.0 - 1.0 / dd);
  if (q_out) *q_out = q;
  if (q < -1e-12 || q > 1 + 1e-12) return 1.0;
  return trace_distance(pair, depolarizing_choi(d, std::clamp(q, 0.0, 1.0)).state());
}

}  // namespace

TEST(slots, labels_and_indices) {
  EXPECT_EQ(slot_labels(2), (std::vector<std::string>{"i0", "o1", "i1", "o2"}));
  EXPECT_EQ(input_slot(1), 0u);
  EXPECT_EQ(output_slot(1), 1u);
  EXPECT_EQ(input_slot(3), 4u);
  EXPECT_EQ(output_slot(3), 5u);
}

TEST(build_from_circuit, one_step_matches_dilation) {
  std::mt19937_64 rng(201);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = 2 + t % 2;
    const std::size_t d_env = 1 + t % 3;
    CircuitProcessSpec spec;
    spec.n = 1;
    spec.d = d;
    spec.d_env = d_env;
    spec.env_state = random_density_matrix(d_env, rng);
    spec.unitaries = {haar_unitary(d * d_env, rng)};
    DilationSpec dil;
    dil.d_sys = d;
    dil.env_state = spec.env_state;
    dil.unitary = spec.unitaries[0];
    const ProcessTensor pt = build_from_circuit(spec);
    EXPECT_LT(max_abs(pt.state().matrix() - choi_from_dilation(dil).state().matrix()), 1e-9);
  }
}

TEST(build_from_circuit, identity_steps_give_product_of_pairs) {
  std::mt19937_64 rng(203);
  for (std::size_t d_env : {1, 3}) {
    CircuitProcessSpec spec;
    spec.n = 2;
    spec.d = 2;
    spec.d_env = d_env;
    spec.env_state = random_density_matrix(d_env, rng);
    spec.unitaries.assign(2, ComplexMatrix::Identity(int(2 * d_env), int(2 * d_env)));
    const DensityMatrix expected = kron(DensityMatrix::maximally_entangled(2), DensityMatrix::maximally_entangled(2));
    EXPECT_LT(trace_distance(build_from_circuit(spec).state(), expected), 1e-12);
  }
}

TEST(build_from_circuit, swap_steps_route_input_to_later_output) {
  const ProcessTensor pt = build_from_circuit(swap_chain_spec(2, 2));
  EXPECT_LT(max_abs(partial_trace(pt.state(), {1}).matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
  EXPECT_NEAR(mutual_information(partial_trace(pt.state(), {0, 3}), {{0}, {1}}), 2 * kLn2, 1e-10);
}

TEST(build_from_circuit, invalid_specs) {
  CircuitProcessSpec spec = swap_chain_spec(2, 2);
  spec.unitaries.pop_back();
  EXPECT_THROW(build_from_circuit(spec), ArgumentError);
  spec = swap_chain_spec(2, 2);
  spec.unitaries[1](0, 0) = 2.0;
  EXPECT_THROW(build_from_circuit(spec), ArgumentError);
  spec = swap_chain_spec(2, 2);
  spec.env_state = DensityMatrix::maximally_mixed(3);
  EXPECT_THROW(build_from_circuit(spec), ArgumentError);
}

TEST(build_from_circuit, dimension_limit) {
  DenseLimitGuard guard;
  set_max_dense_dim(100);
  EXPECT_THROW(build_from_circuit(swap_chain_spec(3, 2)), DimensionError);
  EXPECT_THROW(random_process(RandomSpec{4, 2, 2, 1, EnvInit::kMaximallyMixed}), DimensionError);
}

TEST(verify_causality, circuit_outputs_pass) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProcessTensor pt = random_process(RandomSpec{3, 2, 3, seed, EnvInit::kSeededRandom});
    const CausalityReport r = verify_causality(pt, 1e-9);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.residuals.size(), 3u);
    EXPECT_LE(r.worst(), 1e-9);
  }
}

TEST(verify_causality, four_party_entangled_fails) {
  const CausalityReport r = verify_causality(four_party_entangled(), 2, 1e-9);
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.residuals.size(), 2u);
  // The i0 marginal is maximally mixed; the violation sits at level 2.
  EXPECT_LE(r.residuals[0], 1e-12);
  EXPECT_GT(r.residuals[1], 0.1);
  EXPECT_THROW(ProcessTensor::from_state(four_party_entangled(), 2), NotAStateError);
}

TEST(verify_causality, fully_mixed_passes) {
  for (std::size_t n : {1, 2, 3}) {
    DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    for (std::size_t k = 1; k < 2 * n; ++k) mixed = kron(mixed, DensityMatrix::maximally_mixed(2));
    const CausalityReport r = verify_causality(mixed, n, 1e-9);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.worst(), 1e-14);
  }
}

TEST(verify_causality, wrong_slot_count) {
  EXPECT_THROW(verify_causality(DensityMatrix::maximally_entangled(2), 2, 1e-9), ArgumentError);
}

TEST(process_tensor, input_marginal_is_maximally_mixed) {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const ProcessTensor pt = random_process(RandomSpec{2, 3, 2, seed, EnvInit::kPureGround});
    EXPECT_LT(max_abs(partial_trace(pt.state(), {0}).matrix() - ComplexMatrix::Identity(3, 3) / 3.0), 1e-9);
  }
}

TEST(process_tensor, labels_and_shape_checks) {
  const ProcessTensor pt = cnot_swap_process();
  EXPECT_EQ(pt.state().shape().labels(), slot_labels(2));
  EXPECT_EQ(pt.n(), 2u);
  EXPECT_EQ(pt.d(), 2u);
  EXPECT_THROW(ProcessTensor::from_state(DensityMatrix::maximally_entangled(2), 2), ArgumentError);
  EXPECT_THROW(ProcessTensor::from_state(DensityMatrix::maximally_entangled(2), 0), ArgumentError);
  const DensityMatrix mixed23 = kron(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3));
  EXPECT_THROW(ProcessTensor::from_state(mixed23, 1), ArgumentError);
}

TEST(nm_depolarizing_process, endpoints) {
  const CorrelationReport r0 = correlation_report(nm_depolarizing_process(0.0));
  EXPECT_NEAR(r0.M_list[0], 2 * kLn2, 1e-10);
  EXPECT_NEAR(r0.M_list[1], 2 * kLn2, 1e-10);
  EXPECT_NEAR(r0.N, 0.0, 1e-10);
  EXPECT_NEAR(r0.I, 4 * kLn2, 1e-10);
  const CorrelationReport r1 = correlation_report(nm_depolarizing_process(1.0));
  EXPECT_NEAR(r1.M_list[0], 0.0, 1e-10);
  EXPECT_NEAR(r1.M_list[1], 0.0, 1e-10);
  EXPECT_NEAR(r1.N, 2 * kLn2, 1e-10);
  EXPECT_NEAR(r1.I, 2 * kLn2, 1e-10);
}

TEST(nm_depolarizing_process, interior_point) {
  // Dense density-matrix simulation at 40-digit entropy precision.
  const CorrelationReport r = correlation_report(nm_depolarizing_process(0.5));
  EXPECT_NEAR(r.N, 0.8210712923972024, 1e-12);
  EXPECT_NEAR(r.I, 1.4465743218199379, 1e-12);
  EXPECT_NEAR(r.M_list[0], 0.31275151471136742, 1e-12);
}

TEST(nm_depolarizing_process, equal_step_correlations) {
  for (int k = 0; k <= 20; ++k) {
    const CorrelationReport r = correlation_report(nm_depolarizing_process(k / 20.0));
    EXPECT_NEAR(r.M_list[0], r.M_list[1], 1e-8) << "k=" << k;
  }
}

TEST(nm_depolarizing_process, step_marginals_are_depolarizing) {
  for (double p : {0.1, 0.4, 0.8}) {
    const ProcessTensor pt = nm_depolarizing_process(p);
    double q1 = 0.0;
    EXPECT_LT(depolarizing_fit_residual(partial_trace(pt.state(), {0, 1}), 2, &q1), 1e-8);
    EXPECT_NEAR(q1, p, 1e-10);
    EXPECT_LT(depolarizing_fit_residual(partial_trace(pt.state(), {2, 3}), 2), 1e-8);
  }
}

TEST(nm_depolarizing_process, invalid_p) {
  EXPECT_THROW(nm_depolarizing_process(-0.5), ArgumentError);
  EXPECT_THROW(nm_depolarizing_process(2.0), ArgumentError);
}

TEST(swap_chain_process, matches_circuit) {
  for (std::size_t n : {2, 3}) {
    for (std::size_t d : {2, 3}) {
      const ProcessTensor direct = swap_chain_process(n, d);
      const ProcessTensor circuit = build_from_circuit(swap_chain_spec(n, d));
      EXPECT_LT(max_abs(direct.state().matrix() - circuit.state().matrix()), 1e-12) << n << " " << d;
    }
  }
}

TEST(swap_chain_process, equals_full_swap_fredkin) {
  EXPECT_LT(max_abs(swap_chain_process(2, 2).state().matrix() - nm_depolarizing_process(1.0).state().matrix()), 1e-9);
}

TEST(swap_chain_process, invalid_arguments) {
  EXPECT_THROW(swap_chain_process(1, 2), ArgumentError);
  EXPECT_THROW(swap_chain_process(2, 1), ArgumentError);
  DenseLimitGuard guard;
  set_max_dense_dim(1000);
  EXPECT_THROW(swap_chain_process(4, 3), DimensionError);
}

TEST(cnot_swap_process, values_and_structure) {
  const ProcessTensor pt = cnot_swap_process();
  const CorrelationReport r = correlation_report(pt);
  EXPECT_NEAR(r.M_list[0], kLn2, 1e-10);
  EXPECT_NEAR(r.M_list[1], 0.0, 1e-10);
  EXPECT_NEAR(r.N, 2 * kLn2, 1e-10);
  EXPECT_NEAR(r.I, 3 * kLn2, 1e-10);
  EXPECT_TRUE(verify_causality(pt, 1e-9).pass);

  // GHZ on (i0, o1, o2) with i1 maximally mixed.
  ComplexVector ghz = ComplexVector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  const DensityMatrix expected = permute_subsystems(
      kron(DensityMatrix::pure(ghz, SubsystemShape::uniform(3, 2)), DensityMatrix::maximally_mixed(2)), {0, 1, 3, 2});
  EXPECT_LT(trace_distance(pt.state(), expected), 1e-12);
}

TEST(identity_spec, product_of_identity_channels) {
  const CorrelationReport r = correlation_report(build_from_circuit(identity_spec(2, 3)));
  EXPECT_NEAR(r.N, 0.0, 1e-10);
  EXPECT_NEAR(r.I, 4 * std::log(3.0), 1e-10);
}

TEST(random_process, deterministic) {
  const RandomSpec spec{3, 2, 4, 42, EnvInit::kSeededRandom};
  const ProcessTensor a = random_process(spec);
  const ProcessTensor b = random_process(spec);
  EXPECT_TRUE(a.state().matrix() == b.state().matrix());
  const ProcessTensor c = random_process(RandomSpec{3, 2, 4, 43, EnvInit::kSeededRandom});
  EXPECT_FALSE(a.state().matrix() == c.state().matrix());
}

TEST(random_process, unit_trace_and_causal) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const EnvInit init = static_cast<EnvInit>(seed % 3);
    const ProcessTensor pt = random_process(RandomSpec{3, 2, 4, seed, init});
    EXPECT_NEAR(pt.state().matrix().trace().real(), 1.0, 1e-10);
    EXPECT_TRUE(verify_causality(pt, 1e-9).pass) << "seed " << seed;
  }
}

TEST(random_process, invalid_spec) {
  EXPECT_THROW(random_process(RandomSpec{0, 2, 2, 0, EnvInit::kPureGround}), ArgumentError);
  EXPECT_THROW(random_process(RandomSpec{2, 1, 2, 0, EnvInit::kPureGround}), ArgumentError);
  EXPECT_THROW(random_process(RandomSpec{2, 2, 0, 0, EnvInit::kPureGround}), ArgumentError);
}

TEST(env_init, names_round_trip) {
  for (EnvInit e : {EnvInit::kMaximallyMixed, EnvInit::kPureGround, EnvInit::kSeededRandom}) {
    EXPECT_EQ(parse_env_init(to_string(e)), e);
  }
  EXPECT_THROW(parse_env_init("thermal"), ArgumentError);
}

TEST(haar_unitary, unitary) {
  for (std::size_t dim : {2, 3, 8, 16}) EXPECT_LE(unitarity_residual(haar_unitary(dim, std::uint64_t{dim})), 1e-9);
}

TEST(haar_unitary, scalar) {
  const ComplexMatrix u = haar_unitary(1, std::uint64_t{9});
  ASSERT_EQ(u.rows(), 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(haar_unitary, first_moment) {
  // |U_00|^2 ~ Beta(1, 3) at dim 4: mean 1/4, variance 3/80.
  std::mt19937_64 rng(2026);
  const int samples = 10000;
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) sum += std::norm(haar_unitary(4, rng)(0, 0));
  const double se = std::sqrt(3.0 / 80.0 / samples);
  EXPECT_NEAR(sum / samples, 0.25, 3 * se);
}

TEST(haar_unitary, invalid_dim) { EXPECT_THROW(haar_unitary(0, std::uint64_t{1}), ArgumentError); }
