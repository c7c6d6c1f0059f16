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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "proctensor/channel.hpp"

namespace proctensor {

namespace {

std::vector<std::size_t> prefix(std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

DensityMatrix maximally_mixed_factored(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return DensityMatrix::unchecked_factor(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(d)),
                                         SubsystemShape({d}));
}

DensityMatrix with_slot_labels(const DensityMatrix& state, std::size_t n) {
  SubsystemShape shape(state.shape().dims(), slot_labels(n));
  if (state.is_factored()) return DensityMatrix::unchecked_factor(*state.factor(), std::move(shape));
  return DensityMatrix::unchecked(state.matrix(), std::move(shape));
}

}  // namespace

std::vector<std::string> slot_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t j = 1; j <= n; ++j) {
    labels.push_back("i" + std::to_string(j - 1));
    labels.push_back("o" + std::to_string(j));
  }
  return labels;
}

double CausalityReport::worst() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

CausalityReport verify_causality(const DensityMatrix& state, std::size_t n, double tol, const Tolerances& tols) {
  if (n == 0 || state.shape().size() != 2 * n) {
    throw ArgumentError("verify_causality: state has " + std::to_string(state.shape().size()) +
                        " factors, expected " + std::to_string(2 * n));
  }
  // marginals[k] = Υ restricted to slots 0..k-1, for k = 1..2n.
  std::vector<DensityMatrix> marginals;
  marginals.reserve(2 * n);
  marginals.push_back(state);
  for (std::size_t k = 2 * n - 1; k >= 1; --k) {
    marginals.push_back(partial_trace(marginals.back(), prefix(k)));
  }
  std::reverse(marginals.begin(), marginals.end());
  auto marginal = [&](std::size_t k) -> const DensityMatrix& { return marginals[k - 1]; };

  CausalityReport report;
  report.tolerance = tol;
  report.residuals.assign(n, 0.0);
  for (std::size_t j = n; j >= 1; --j) {
    const DensityMatrix& lhs = marginal(2 * j - 1);
    const std::size_t d_in = state.shape().dim(input_slot(j));
    DensityMatrix rhs = j == 1 ? maximally_mixed_factored(d_in)
                               : kron(marginal(2 * j - 2), maximally_mixed_factored(d_in));
    report.residuals[j - 1] = trace_distance(lhs, rhs, tols);
  }
  report.pass = std::all_of(report.residuals.begin(), report.residuals.end(),
                            [tol](double r) { return r <= tol; });
  return report;
}

CausalityReport verify_causality(const ProcessTensor& pt, double tol, const Tolerances& tols) {
  return verify_causality(pt.state(), pt.n(), tol, tols);
}

ProcessTensor ProcessTensor::from_state(DensityMatrix state, std::size_t n, const Tolerances& tols) {
  if (n == 0) throw ArgumentError("ProcessTensor: n must be at least 1");
  const auto& dims = state.shape().dims();
  if (dims.size() != 2 * n) {
    throw ArgumentError("ProcessTensor: state has " + std::to_string(dims.size()) + " slots, expected " +
                        std::to_string(2 * n));
  }
  const std::size_t d = dims.front();
  if (d < 2 || std::any_of(dims.begin(), dims.end(), [d](std::size_t x) { return x != d; })) {
    throw ArgumentError("ProcessTensor: slots must share one system dimension d >= 2");
  }
  if (state.is_factored()) {
    state = DensityMatrix::from_factor(*state.factor(), state.shape(), tols);
  } else {
    state = DensityMatrix::from_matrix(state.matrix(), state.shape(), tols);
  }
  const CausalityReport report = verify_causality(state, n, tols.causal, tols);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "ProcessTensor: causality hierarchy violated; residuals by level:";
    for (std::size_t j = 0; j < report.residuals.size(); ++j) msg << " j=" << j + 1 << ":" << report.residuals[j];
    throw NotAStateError(msg.str());
  }
  return ProcessTensor(with_slot_labels(state, n), n, d);
}

void CircuitProcessSpec::validate(const Tolerances& tol) const {
  if (n == 0) throw ArgumentError("CircuitProcessSpec: n must be at least 1");
  if (d < 2) throw ArgumentError("CircuitProcessSpec: d must be at least 2");
  if (d_env == 0) throw ArgumentError("CircuitProcessSpec: d_env must be at least 1");
  if (env_state.dim() != d_env) {
    throw ArgumentError("CircuitProcessSpec: env_state has dimension " + std::to_string(env_state.dim()) +
                        ", expected d_env = " + std::to_string(d_env));
  }
  if (unitaries.size() != n) {
    throw ArgumentError("CircuitProcessSpec: " + std::to_string(unitaries.size()) + " unitaries for n = " +
                        std::to_string(n));
  }
  const auto total = static_cast<Eigen::Index>(d * d_env);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& u = unitaries[j];
    if (u.rows() != total || u.cols() != total) {
      throw ArgumentError("CircuitProcessSpec: unitary " + std::to_string(j) + " is " + std::to_string(u.rows()) +
                          "x" + std::to_string(u.cols()) + ", expected " + std::to_string(total) + "x" +
                          std::to_string(total));
    }
    const double res = unitarity_residual(u);
    if (!(res <= tol.eig)) {
      throw ArgumentError("CircuitProcessSpec: unitary " + std::to_string(j) + " is not unitary (residual " +
                          std::to_string(res) + ")");
    }
  }
}

EnvInit parse_env_init(const std::string& name) {
  if (name == "maximally-mixed") return EnvInit::kMaximallyMixed;
  if (name == "pure-ground") return EnvInit::kPureGround;
  if (name == "seeded-random") return EnvInit::kSeededRandom;
  throw ArgumentError("unknown env_init '" + name + "' (expected maximally-mixed, pure-ground or seeded-random)");
}

std::string to_string(EnvInit init) {
  switch (init) {
    case EnvInit::kMaximallyMixed:
      return "maximally-mixed";
    case EnvInit::kPureGround:
      return "pure-ground";
    case EnvInit::kSeededRandom:
      return "seeded-random";
  }
  return "maximally-mixed";
}

DensityMatrix simulate_circuit(const CircuitProcessSpec& spec, const Tolerances& tol) {
  spec.validate(tol);
  const std::size_t n = spec.n;
  const std::size_t d = spec.d;
  const Purification env = purify(spec.env_state, tol);

  std::size_t slots_dim = 1;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    if (d > max_dense_dim() / slots_dim) check_dense_dim(max_dense_dim() + 1, "build_from_circuit");
    slots_dim *= d;
  }
  const std::size_t env_dim = spec.d_env * env.rank;
  if (env_dim > max_dense_dim() / slots_dim) check_dense_dim(max_dense_dim() + 1, "build_from_circuit");
  check_dense_dim(slots_dim * env_dim, "build_from_circuit");

  // |Φ>^{⊗n} ⊗ |ψ_ER> on (i_0, x_0, ..., i_{n-1}, x_{n-1}, E, R). The live half
  // x_{j-1} becomes o_j once U_j has acted on it.
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) phi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
  ComplexVector psi = phi;
  for (std::size_t j = 1; j < n; ++j) psi = kron(psi, phi);
  psi = kron(psi, env.psi);

  std::vector<std::size_t> dims(2 * n, d);
  dims.push_back(spec.d_env);
  dims.push_back(env.rank);
  const SubsystemShape shape(dims);
  for (std::size_t j = 1; j <= n; ++j) {
    apply_local(psi, shape, {output_slot(j), 2 * n}, spec.unitaries[j - 1]);
  }

  // Tracing out E and R: ρ = A A† with A the (slots × env) reshape of ψ.
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> reshaped(psi.data(), static_cast<Eigen::Index>(slots_dim),
                                            static_cast<Eigen::Index>(env_dim));
  ComplexMatrix a = reshaped;
  const SubsystemShape slots = SubsystemShape::uniform(2 * n, d);
  if (env_dim >= slots_dim) {
    ComplexMatrix rho = a * a.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix::unchecked(std::move(rho), slots);
  }
  return DensityMatrix::unchecked_factor(std::move(a), slots);
}

ProcessTensor build_from_circuit(const CircuitProcessSpec& spec, const Tolerances& tol) {
  return ProcessTensor::from_state(simulate_circuit(spec, tol), spec.n, tol);
}

CircuitProcessSpec nm_depolarizing_spec(double p) {
  const DilationSpec step = fredkin_dilation(2, p);
  CircuitProcessSpec spec;
  spec.n = 2;
  spec.d = 2;
  spec.d_env = step.d_env();
  spec.env_state = step.env_state;
  spec.unitaries = {step.unitary, step.unitary};
  return spec;
}

ProcessTensor nm_depolarizing_process(double p, const Tolerances& tol) {
  return build_from_circuit(nm_depolarizing_spec(p), tol);
}

CircuitProcessSpec swap_chain_spec(std::size_t n, std::size_t d) {
  CircuitProcessSpec spec;
  spec.n = n;
  spec.d = d;
  spec.d_env = d;
  spec.env_state = DensityMatrix::maximally_mixed(d);
  spec.unitaries.assign(n, swap_operator(d));
  return spec;
}

ProcessTensor swap_chain_process(std::size_t n, std::size_t d, const Tolerances& tol) {
  if (n < 2) throw ArgumentError("swap_chain_process: n must be at least 2");
  if (d < 2) throw ArgumentError("swap_chain_process: d must be at least 2");
  // Product order: o_1, (i_0, o_2), (i_1, o_3), ..., (i_{n-2}, o_n), i_{n-1}.
  std::vector<std::size_t> product_slots{output_slot(1)};
  DensityMatrix state = maximally_mixed_factored(d);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    state = kron(state, DensityMatrix::maximally_entangled(d));
    product_slots.push_back(input_slot(k + 1));
    product_slots.push_back(output_slot(k + 2));
  }
  state = kron(state, maximally_mixed_factored(d));
  product_slots.push_back(input_slot(n));

  std::vector<std::size_t> order(2 * n);
  for (std::size_t pos = 0; pos < product_slots.size(); ++pos) order[product_slots[pos]] = pos;
  return ProcessTensor::from_state(permute_subsystems(state, order), n, tol);
}

CircuitProcessSpec cnot_swap_spec() {
  ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
  cnot(0, 0) = 1.0;
  cnot(1, 1) = 1.0;
  cnot(3, 2) = 1.0;
  cnot(2, 3) = 1.0;
  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;

  CircuitProcessSpec spec;
  spec.n = 2;
  spec.d = 2;
  spec.d_env = 2;
  spec.env_state = DensityMatrix::unchecked(ground, SubsystemShape({2}));
  spec.unitaries = {cnot, swap_operator(2)};
  return spec;
}

ProcessTensor cnot_swap_process(const Tolerances& tol) { return build_from_circuit(cnot_swap_spec(), tol); }

CircuitProcessSpec identity_spec(std::size_t n, std::size_t d) {
  CircuitProcessSpec spec;
  spec.n = n;
  spec.d = d;
  spec.d_env = 1;
  spec.env_state = DensityMatrix::maximally_mixed(1);
  const auto dd = static_cast<Eigen::Index>(d);
  spec.unitaries.assign(n, ComplexMatrix::Identity(dd, dd));
  return spec;
}

ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw ArgumentError("haar_unitary: dim must be at least 1");
  check_dense_dim(dim, "haar_unitary");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix z(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    q.col(k) *= mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(dim, rng);
}

DensityMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw ArgumentError("random_density_matrix: dim must be at least 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::unchecked(std::move(rho), SubsystemShape({dim}));
}

CircuitProcessSpec random_circuit_spec(const RandomSpec& spec) {
  if (spec.n == 0) throw ArgumentError("RandomSpec: n must be at least 1");
  if (spec.d < 2) throw ArgumentError("RandomSpec: d must be at least 2");
  if (spec.d_env == 0) throw ArgumentError("RandomSpec: d_env must be at least 1");
  std::mt19937_64 rng(spec.seed);
  CircuitProcessSpec out;
  out.n = spec.n;
  out.d = spec.d;
  out.d_env = spec.d_env;
  const auto de = static_cast<Eigen::Index>(spec.d_env);
  switch (spec.env_init) {
    case EnvInit::kMaximallyMixed:
      out.env_state = DensityMatrix::maximally_mixed(spec.d_env);
      break;
    case EnvInit::kPureGround: {
      ComplexMatrix ground = ComplexMatrix::Zero(de, de);
      ground(0, 0) = 1.0;
      out.env_state = DensityMatrix::unchecked(std::move(ground), SubsystemShape({spec.d_env}));
      break;
    }
    case EnvInit::kSeededRandom:
      out.env_state = random_density_matrix(spec.d_env, rng);
      break;
  }
  for (std::size_t j = 0; j < spec.n; ++j) out.unitaries.push_back(haar_unitary(spec.d * spec.d_env, rng));
  return out;
}

ProcessTensor random_process(const RandomSpec& spec, const Tolerances& tol) {
  return build_from_circuit(random_circuit_spec(spec), tol);
}

}  // namespace proctensor
