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

#include "proctensor/channel.hpp"

#include <cmath>
#include <string>

namespace proctensor {

ChannelChoi ChannelChoi::from_state(DensityMatrix state, const Tolerances& tol) {
  if (state.shape().size() != 2) {
    throw ArgumentError("ChannelChoi: expected a (d_in, d_out) shape, got " + std::to_string(state.shape().size()) +
                        " factors");
  }
  DensityMatrix checked = DensityMatrix::from_matrix(state.matrix(), state.shape(), tol);
  const std::size_t d_in = checked.shape().dim(0);
  const ComplexMatrix marginal = partial_trace(checked.matrix(), checked.shape(), {0});
  const auto n = static_cast<Eigen::Index>(d_in);
  const double residual =
      (marginal - ComplexMatrix::Identity(n, n) / static_cast<double>(d_in)).cwiseAbs().maxCoeff();
  if (residual > tol.eig) {
    throw NotAStateError("ChannelChoi: trace condition violated (residual " + std::to_string(residual) + ")");
  }
  return ChannelChoi(std::move(checked));
}

void DilationSpec::validate(const Tolerances& tol) const {
  if (d_sys < 1) throw ArgumentError("DilationSpec: d_sys must be positive");
  const std::size_t total = d_sys * d_env();
  if (unitary.rows() != unitary.cols() || static_cast<std::size_t>(unitary.rows()) != total) {
    throw ArgumentError("DilationSpec: unitary is " + std::to_string(unitary.rows()) + "x" +
                        std::to_string(unitary.cols()) + ", expected " + std::to_string(total) + "x" +
                        std::to_string(total));
  }
  const double res = unitarity_residual(unitary);
  if (!(res <= tol.eig)) {
    throw ArgumentError("DilationSpec: unitary is not unitary (residual " + std::to_string(res) + ")");
  }
}

ChannelChoi depolarizing_choi(std::size_t d, double p) {
  if (d < 2) throw ArgumentError("depolarizing_choi: d must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("depolarizing_choi: p = " + std::to_string(p) + " outside [0, 1]");
  }
  const auto n = static_cast<Eigen::Index>(d * d);
  const ComplexMatrix mixed = ComplexMatrix::Identity(n, n) / static_cast<double>(d * d);
  const ComplexMatrix m = p * mixed + (1.0 - p) * DensityMatrix::maximally_entangled(d).matrix();
  return ChannelChoi::from_state(DensityMatrix::unchecked(m, SubsystemShape({d, d}, {"in", "out"})));
}

ChannelChoi choi_from_dilation(const DilationSpec& spec, const Tolerances& tol) {
  spec.validate(tol);
  const std::size_t d = spec.d_sys;
  const SubsystemShape joint({d, spec.d_env()});
  const auto nd = static_cast<Eigen::Index>(d);
  ComplexMatrix choi = ComplexMatrix::Zero(nd * nd, nd * nd);
  for (Eigen::Index i = 0; i < nd; ++i) {
    for (Eigen::Index j = 0; j < nd; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(nd, nd);
      unit(i, j) = 1.0;
      const ComplexMatrix evolved = spec.unitary * kron(unit, spec.env_state.matrix()) * spec.unitary.adjoint();
      choi.block(i * nd, j * nd, nd, nd) = partial_trace(evolved, joint, {0}) / static_cast<double>(d);
    }
  }
  return ChannelChoi::from_state(DensityMatrix::unchecked(choi, SubsystemShape({d, d}, {"in", "out"})), tol);
}

DensityMatrix apply_channel(const ChannelChoi& choi, const DensityMatrix& rho) {
  if (rho.dim() != choi.d_in()) {
    throw ArgumentError("apply_channel: state dimension " + std::to_string(rho.dim()) + " does not match d_in = " +
                        std::to_string(choi.d_in()));
  }
  const auto dout = static_cast<Eigen::Index>(choi.d_out());
  const ComplexMatrix lifted = kron(rho.matrix(), ComplexMatrix::Identity(dout, dout));
  const ComplexMatrix product = lifted * partial_transpose(choi.state(), {0});
  ComplexMatrix out = static_cast<double>(choi.d_in()) * partial_trace(product, choi.state().shape(), {1});
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::unchecked(std::move(out), SubsystemShape({choi.d_out()}));
}

double channel_M(const ChannelChoi& choi, const Tolerances& tol) {
  return mutual_information(choi.state(), {{0}, {1}}, tol);
}

Purification purify(const DensityMatrix& sigma, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix());
  if (es.info() != Eigen::Success) {
    throw ContractViolation("purify: eigensolver did not converge");
  }
  const auto& lambda = es.eigenvalues();
  const auto& v = es.eigenvectors();
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) < -tol.psd) {
      throw NotAStateError("purify: negative eigenvalue " + std::to_string(lambda(k)));
    }
    if (lambda(k) > tol.psd) support.push_back(k);
  }
  const auto de = static_cast<Eigen::Index>(sigma.dim());
  const auto r = static_cast<Eigen::Index>(support.size());
  ComplexVector psi = ComplexVector::Zero(de * r);
  for (Eigen::Index q = 0; q < r; ++q) {
    const double amp = std::sqrt(lambda(support[static_cast<std::size_t>(q)]));
    for (Eigen::Index e = 0; e < de; ++e) {
      psi(e * r + q) = amp * v(e, support[static_cast<std::size_t>(q)]);
    }
  }
  psi.normalize();
  return Purification{std::move(psi), static_cast<std::size_t>(r)};
}

EtaDiagnostics eta_diagnostics(const DilationSpec& spec, const Tolerances& tol) {
  spec.validate(tol);
  const std::size_t d = spec.d_sys;
  const Purification env = purify(spec.env_state, tol);

  // η on (in, out, E, R): Φ_{in,sys} ⊗ ψ_ER, then U on (sys, E).
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) phi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
  ComplexVector eta = kron(phi, env.psi);
  const SubsystemShape shape({d, d, spec.d_env(), env.rank}, {"in", "out", "E", "R"});
  apply_local(eta, shape, {1, 2}, spec.unitary);
  const DensityMatrix state = DensityMatrix::pure(eta, shape);

  EtaDiagnostics out;
  out.M = mutual_information(partial_trace(state, {0, 1}), {{0}, {1}}, tol);
  out.M_bar = 2.0 * std::log(static_cast<double>(d)) - out.M;
  out.i_in_ER = mutual_information(partial_trace(state, {0, 2, 3}), {{0}, {1, 2}}, tol);
  out.i_inout_R = mutual_information(partial_trace(state, {0, 1, 3}), {{0, 1}, {2}}, tol);
  return out;
}

DilationSpec fredkin_dilation(std::size_t d, double p) {
  if (d < 2) throw ArgumentError("fredkin_dilation: d must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("fredkin_dilation: p = " + std::to_string(p) + " outside [0, 1]");
  }
  ComplexMatrix control = ComplexMatrix::Zero(2, 2);
  control(0, 0) = 1.0 - p;
  control(1, 1) = p;
  const ComplexMatrix env = kron(control, DensityMatrix::maximally_mixed(d).matrix());

  // Basis |s, c, t> on sys ⊗ control ⊗ target.
  const std::size_t total = d * 2 * d;
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t t = 0; t < d; ++t) {
        const std::size_t from = s * 2 * d + c * d + t;
        const std::size_t to = c == 0 ? from : t * 2 * d + c * d + s;
        u(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
      }
    }
  }
  return DilationSpec{d, DensityMatrix::unchecked(env, SubsystemShape({2, d}, {"control", "target"})), u};
}

}  // namespace proctensor
