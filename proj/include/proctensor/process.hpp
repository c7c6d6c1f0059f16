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

#ifndef PROCTENSOR_PROCESS_HPP
#define PROCTENSOR_PROCESS_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "proctensor/linalg.hpp"

// n-step process tensors, represented by their normalized Choi state over
// 2n slots ordered (i_0, o_1, i_1, o_2, ..., i_{n-1}, o_n). Slot 2(j-1) is the
// input of step j and slot 2j-1 its output.

namespace proctensor {

/// Index of the input slot i_{j-1} of step j (1-based step).
constexpr std::size_t input_slot(std::size_t step) { return 2 * (step - 1); }
/// Index of the output slot o_j of step j (1-based step).
constexpr std::size_t output_slot(std::size_t step) { return 2 * step - 1; }

/// Slot labels i0, o1, i1, o2, ...
std::vector<std::string> slot_labels(std::size_t n);

struct CausalityReport {
  // residuals[j-1] = trace distance between tr_{o_j}[Υ_{1:j}] and Υ_{1:j-1} ⊗ Ĩ.
  // Level 1 is the base case tr_{all but i_0}[Υ] = Ĩ.
  std::vector<double> residuals;
  double tolerance = 0.0;
  bool pass = false;

  double worst() const;
};

/// Checks the hierarchy of trace conditions on an arbitrary 2n-slot state.
CausalityReport verify_causality(const DensityMatrix& state, std::size_t n, double tol,
                                 const Tolerances& tols = {});

class ProcessTensor {
 public:
  /// Validates the state and the causality hierarchy at tols.causal; throws
  /// NotAStateError when either fails.
  static ProcessTensor from_state(DensityMatrix state, std::size_t n, const Tolerances& tols = {});

  const DensityMatrix& state() const { return state_; }
  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }

 private:
  ProcessTensor(DensityMatrix state, std::size_t n, std::size_t d) : state_(std::move(state)), n_(n), d_(d) {}

  DensityMatrix state_;
  std::size_t n_;
  std::size_t d_;
};

CausalityReport verify_causality(const ProcessTensor& pt, double tol, const Tolerances& tols = {});

/// n global unitaries on sys ⊗ env (system first) acting on one persistent environment.
struct CircuitProcessSpec {
  std::size_t n = 1;
  std::size_t d = 2;
  std::size_t d_env = 1;
  DensityMatrix env_state = DensityMatrix::maximally_mixed(2);
  std::vector<ComplexMatrix> unitaries;

  void validate(const Tolerances& tol = {}) const;
};

enum class EnvInit { kMaximallyMixed, kPureGround, kSeededRandom };

EnvInit parse_env_init(const std::string& name);
std::string to_string(EnvInit init);

struct RandomSpec {
  std::size_t n = 1;
  std::size_t d = 2;
  std::size_t d_env = 1;
  std::uint64_t seed = 0;
  EnvInit env_init = EnvInit::kMaximallyMixed;
};

/// Output state of the Choi-state circuit, before any causality check.
DensityMatrix simulate_circuit(const CircuitProcessSpec& spec, const Tolerances& tol = {});

/// Simulates the Choi-state circuit: one maximally entangled pair per step,
/// U_j on (live half of pair j, env), environment traced out after step n.
ProcessTensor build_from_circuit(const CircuitProcessSpec& spec, const Tolerances& tol = {});

/// Two Fredkin steps sharing one environment (control qubit, target qubit).
ProcessTensor nm_depolarizing_process(double p, const Tolerances& tol = {});
CircuitProcessSpec nm_depolarizing_spec(double p);

/// Ĩ_{o_1} ⊗ Φ_{i_0 o_2} ⊗ ... ⊗ Φ_{i_{n-2} o_n} ⊗ Ĩ_{i_{n-1}}, built directly.
ProcessTensor swap_chain_process(std::size_t n, std::size_t d, const Tolerances& tol = {});
/// SWAP(sys, env) at every step with σ_E = Ĩ_d; builds the same state by circuit.
CircuitProcessSpec swap_chain_spec(std::size_t n, std::size_t d);

/// Step 1: CNOT (system controls env in |0>); step 2: SWAP(sys, env). d = 2.
ProcessTensor cnot_swap_process(const Tolerances& tol = {});
CircuitProcessSpec cnot_swap_spec();

/// Identity on the system at every step, trivial one-dimensional environment.
CircuitProcessSpec identity_spec(std::size_t n, std::size_t d);

/// Circuit spec drawn from `spec.seed`: n Haar unitaries and σ_E per env_init.
CircuitProcessSpec random_circuit_spec(const RandomSpec& spec);
ProcessTensor random_process(const RandomSpec& spec, const Tolerances& tol = {});

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal
/// phases moved into Q.
ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed);
ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

/// Ginibre-distributed mixed state G G† / tr(G G†).
DensityMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng);

}  // namespace proctensor

#endif  // PROCTENSOR_PROCESS_HPP
