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

#include <algorithm>
#include <cmath>

namespace proctensor {

namespace {

std::size_t uniform_slot_dim(const DensityMatrix& state, std::size_t n, const char* what) {
  const auto& dims = state.shape().dims();
  if (n == 0 || dims.size() != 2 * n) {
    throw ArgumentError(std::string(what) + ": state has " + std::to_string(dims.size()) + " slots, expected " +
                        std::to_string(2 * n));
  }
  const std::size_t d = dims.front();
  if (std::any_of(dims.begin(), dims.end(), [d](std::size_t x) { return x != d; })) {
    throw ArgumentError(std::string(what) + ": slots must share one dimension");
  }
  return d;
}

Implication evaluate(bool premise, bool conclusion) {
  if (!premise) return Implication::kVacuous;
  return conclusion ? Implication::kHolds : Implication::kViolated;
}

}  // namespace

CorrelationReport correlation_report(const DensityMatrix& state, std::size_t n, const Tolerances& tol) {
  const std::size_t d = uniform_slot_dim(state, n, "correlation_report");
  const double ln_d = std::log(static_cast<double>(d));

  CorrelationReport r;
  r.n = n;
  r.d = d;
  double singles = 0.0;
  double pairs = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const DensityMatrix pair = partial_trace(state, {input_slot(j), output_slot(j)});
    const double s_in = von_neumann_entropy(partial_trace(pair, {0}), tol);
    const double s_out = von_neumann_entropy(partial_trace(pair, {1}), tol);
    const double s_pair = von_neumann_entropy(pair, tol);
    const double m_j = s_in + s_out - s_pair;
    r.M_list.push_back(m_j);
    r.M_bar_list.push_back(2.0 * ln_d - m_j);
    r.M += m_j;
    singles += s_in + s_out;
    pairs += s_pair;
  }
  const double s_total = von_neumann_entropy(state, tol);
  r.I = singles - s_total;
  r.N = pairs - s_total;
  r.additivity_residual = std::abs(r.I - (r.M + r.N));
  return r;
}

CorrelationReport correlation_report(const ProcessTensor& pt, const Tolerances& tol) {
  return correlation_report(pt.state(), pt.n(), tol);
}

DensityMatrix markov_product(const DensityMatrix& state, std::size_t n) {
  uniform_slot_dim(state, n, "markov_product");
  DensityMatrix product = partial_trace(state, {input_slot(1), output_slot(1)});
  for (std::size_t j = 2; j <= n; ++j) {
    product = kron(product, partial_trace(state, {input_slot(j), output_slot(j)}));
  }
  return product;
}

RelativeEntropy non_markovianity_crosscheck(const DensityMatrix& state, std::size_t n, const Tolerances& tol) {
  return relative_entropy(state, markov_product(state, n), tol);
}

RelativeEntropy non_markovianity_crosscheck(const ProcessTensor& pt, const Tolerances& tol) {
  return non_markovianity_crosscheck(pt.state(), pt.n(), tol);
}

double BoundAudit::min_slack() const {
  double m = std::min({thm1_slack, thm2_slack, thm2p_slack});
  for (double s : prop1_slack) m = std::min(m, s);
  for (double s : prop2_slack) m = std::min(m, s);
  if (two_step_slacks) m = std::min({m, (*two_step_slacks)[0], (*two_step_slacks)[1]});
  return m;
}

bool BoundAudit::prop1_pass() const {
  return std::all_of(prop1_slack.begin(), prop1_slack.end(), [this](double s) { return s >= -tolerance; });
}

BoundAudit audit_bounds(const CorrelationReport& report, double tolerance) {
  const std::size_t n = report.n;
  if (n == 0 || report.M_bar_list.size() != n) {
    throw ArgumentError("audit_bounds: report has n = " + std::to_string(n) + " and " +
                        std::to_string(report.M_bar_list.size()) + " steps");
  }
  const double ln_d = std::log(static_cast<double>(report.d));
  const auto& mbar = report.M_bar_list;

  BoundAudit a;
  a.n = n;
  a.tolerance = tolerance;
  for (std::size_t k = 0; k < n; ++k) {
    double before = 0.0;
    double after = 0.0;
    for (std::size_t j = 0; j < k; ++j) before += mbar[j];
    for (std::size_t j = k + 1; j < n; ++j) after += mbar[j];
    a.prop1_slack.push_back(2.0 * (before + after) - report.N);
    a.prop2_slack.push_back(2.0 * before + after - report.N);
  }
  const double nd = static_cast<double>(n);
  a.thm1_slack = 2.0 * (nd - 1.0) * ln_d - report.N;
  if (n == 1) {
    // N vanishes identically for one step; the N terms drop out.
    a.thm2_slack = 2.0 * ln_d - report.M;
    a.thm2p_slack = 2.0 * ln_d - report.I;
  } else {
    const double pow2 = std::ldexp(1.0, static_cast<int>(n));
    a.thm2_slack = 2.0 * nd * ln_d - (pow2 - 1.0) / (pow2 - 2.0) * report.N - report.M;
    a.thm2p_slack = 2.0 * nd * ln_d - report.N / (pow2 - 2.0) - report.I;
  }
  if (n == 2) {
    a.two_step_slacks = std::array<double, 2>{2.0 * mbar[0] - report.N, mbar[1] - report.N};
  }
  a.pass = a.min_slack() >= -tolerance;
  return a;
}

std::string to_string(Implication outcome) {
  switch (outcome) {
    case Implication::kVacuous:
      return "vacuous";
    case Implication::kHolds:
      return "holds";
    case Implication::kViolated:
      return "violated";
  }
  return "vacuous";
}

std::size_t ImplicationReport::violations() const {
  std::size_t v = 0;
  for (Implication i : {high_M1, high_M2, high_I, high_N}) v += i == Implication::kViolated ? 1 : 0;
  return v;
}

ImplicationReport implication_checks(const CorrelationReport& report, double epsilon, double tolerance) {
  if (report.n != 2 || report.M_list.size() != 2) {
    throw ArgumentError("implication_checks: defined for two-step processes only (n = " + std::to_string(report.n) +
                        ")");
  }
  const double ln_d = std::log(static_cast<double>(report.d));
  const double m1 = report.M_list[0];
  const double m2 = report.M_list[1];
  const double n_val = report.N;
  const double i_val = report.I;

  ImplicationReport out;
  out.high_M1 = evaluate(m1 >= 2.0 * ln_d - epsilon, n_val <= 2.0 * epsilon + tolerance);
  out.high_M2 = evaluate(m2 >= 2.0 * ln_d - epsilon, n_val <= epsilon + tolerance);
  out.high_I = evaluate(i_val >= 4.0 * ln_d - epsilon, n_val <= 2.0 * epsilon + tolerance);
  out.high_N = evaluate(n_val >= 2.0 * ln_d - 2.0 * epsilon,
                        m1 <= ln_d + epsilon + tolerance && m2 <= 2.0 * epsilon + tolerance &&
                            i_val <= 3.0 * ln_d + epsilon + tolerance);
  return out;
}

}  // namespace proctensor
