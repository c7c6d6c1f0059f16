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

#ifndef PROCTENSOR_CORRELATIONS_HPP
#define PROCTENSOR_CORRELATIONS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "proctensor/linalg.hpp"
#include "proctensor/process.hpp"

// Temporal correlation quantifiers of an n-step process and the bounds
// relating them. With S_x the entropy of the marginal on slots x and
// S_j the entropy of step j's pair (i_{j-1}, o_j):
//
//   I   = Σ_j (S_{i_{j-1}} + S_{o_j}) − S_{1:n}     total correlations
//   M_j = S_{i_{j-1}} + S_{o_j} − S_j                Markovian, step j
//   N   = Σ_j S_j − S_{1:n}                         non-Markovian
//
// so that I = M + N with M = Σ_j M_j. M̄_j = 2 ln d − M_j.

namespace proctensor {

struct CorrelationReport {
  std::size_t n = 0;
  std::size_t d = 0;
  double I = 0.0;
  std::vector<double> M_list;
  double M = 0.0;
  double N = 0.0;
  std::vector<double> M_bar_list;
  double additivity_residual = 0.0;  // |I − (M + N)|
};

/// Signed slacks (bound − quantity); a bound holds when its slack ≥ −tolerance.
struct BoundAudit {
  std::size_t n = 0;
  std::vector<double> prop1_slack;  // k = 1..n: 2 Σ_{j≠k} M̄_j − N
  std::vector<double> prop2_slack;  // k = 1..n: 2 Σ_{j<k} M̄_j + Σ_{j>k} M̄_j − N
  double thm1_slack = 0.0;          // 2(n−1) ln d − N
  double thm2_slack = 0.0;          // 2n ln d − (2^n−1)/(2^n−2) N − M
  double thm2p_slack = 0.0;         // 2n ln d − N/(2^n−2) − I
  std::optional<std::array<double, 2>> two_step_slacks;  // n = 2: (2 M̄_1 − N, M̄_2 − N)
  double tolerance = 0.0;
  bool pass = false;

  /// Smallest slack over every bound that applies to time-ordered processes.
  double min_slack() const;
  /// Whether every prop1_slack holds; these bounds need no causal order.
  bool prop1_pass() const;
};

/// Quantifiers of a causality-verified process tensor.
CorrelationReport correlation_report(const ProcessTensor& pt, const Tolerances& tol = {});

/// Same quantifiers on a raw 2n-slot state with uniform slot dimension, without
/// any causality requirement.
CorrelationReport correlation_report(const DensityMatrix& state, std::size_t n, const Tolerances& tol = {});

/// Relative entropy between Υ and the product of its step marginals ⊗_j Υ_j.
RelativeEntropy non_markovianity_crosscheck(const ProcessTensor& pt, const Tolerances& tol = {});
RelativeEntropy non_markovianity_crosscheck(const DensityMatrix& state, std::size_t n, const Tolerances& tol = {});

/// ⊗_j Υ_j, the closest Markovian Choi state, in slot order.
DensityMatrix markov_product(const DensityMatrix& state, std::size_t n);

BoundAudit audit_bounds(const CorrelationReport& report, double tolerance = Tolerances{}.xcheck);

enum class Implication { kVacuous, kHolds, kViolated };

std::string to_string(Implication outcome);

/// The four two-step implications, each evaluated as premise ⇒ conclusion.
struct ImplicationReport {
  Implication high_M1 = Implication::kVacuous;  // M_1 ≥ 2 ln d − ε ⇒ N ≤ 2ε
  Implication high_M2 = Implication::kVacuous;  // M_2 ≥ 2 ln d − ε ⇒ N ≤ ε
  Implication high_I = Implication::kVacuous;   // I ≥ 4 ln d − ε ⇒ N ≤ 2ε
  Implication high_N = Implication::kVacuous;   // N ≥ 2 ln d − 2ε ⇒ M_1 ≤ ln d + ε, M_2 ≤ 2ε, I ≤ 3 ln d + ε

  std::size_t violations() const;
};

/// Throws ArgumentError unless report.n == 2. Conclusions are checked with
/// `tolerance` slack.
ImplicationReport implication_checks(const CorrelationReport& report, double epsilon,
                                     double tolerance = Tolerances{}.xcheck);

}  // namespace proctensor

#endif  // PROCTENSOR_CORRELATIONS_HPP
