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

#ifndef PROCTENSOR_CHANNEL_HPP
#define PROCTENSOR_CHANNEL_HPP

#include <cstddef>

#include "proctensor/linalg.hpp"

// Single-step channels, carried by their normalized Choi state
//   Υ = (id ⊗ ε)(Φ),   Φ = (1/d) Σ_ij |i><j| ⊗ |i><j|,
// with factor 0 = in, factor 1 = out.

namespace proctensor {

/// Normalized Choi state of a trace-preserving channel; tr_out Υ = I/d_in.
class ChannelChoi {
 public:
  /// Validates the state and the trace condition.
  static ChannelChoi from_state(DensityMatrix state, const Tolerances& tol = {});

  const DensityMatrix& state() const { return state_; }
  std::size_t d_in() const { return state_.shape().dim(0); }
  std::size_t d_out() const { return state_.shape().dim(1); }

 private:
  explicit ChannelChoi(DensityMatrix state) : state_(std::move(state)) {}
  DensityMatrix state_;
};

/// Unitary U on sys ⊗ env (system factor first) with the initial environment σ_E.
struct DilationSpec {
  std::size_t d_sys = 2;
  DensityMatrix env_state = DensityMatrix::maximally_mixed(2);
  ComplexMatrix unitary;

  std::size_t d_env() const { return env_state.dim(); }
  /// Throws ArgumentError on a dimension mismatch or non-unitary U.
  void validate(const Tolerances& tol = {}) const;
};

struct EtaDiagnostics {
  double M = 0.0;          // I(in:out)
  double M_bar = 0.0;      // 2 ln d - M
  double i_in_ER = 0.0;    // I(in:ER), equals M_bar
  double i_inout_R = 0.0;  // I(in out:R), at most 2 M_bar
};

/// p·(Ĩ⊗Ĩ) + (1-p)·Φ.
ChannelChoi depolarizing_choi(std::size_t d, double p);

/// Υ = (id ⊗ ε)Φ with ε(ρ) = tr_E[U(ρ⊗σ_E)U†].
ChannelChoi choi_from_dilation(const DilationSpec& spec, const Tolerances& tol = {});

/// ε(ρ) = d_in · tr_in[(ρ ⊗ I_out) Υ^{T_in}].
DensityMatrix apply_channel(const ChannelChoi& choi, const DensityMatrix& rho);

/// Input-output mutual information of the Choi state, in [0, 2 ln d].
double channel_M(const ChannelChoi& choi, const Tolerances& tol = {});

/// Builds the global pure state η from a spectral purification of σ_E and
/// reports the information-exchange quantities.
EtaDiagnostics eta_diagnostics(const DilationSpec& spec, const Tolerances& tol = {});

/// Controlled-SWAP dilation of the depolarizing channel. The environment is a
/// control qubit in (1-p)|0><0| + p|1><1| followed by a target qudit in Ĩ_d;
/// control |1> swaps system and target.
DilationSpec fredkin_dilation(std::size_t d, double p);

struct Purification {
  ComplexVector psi;     // on E ⊗ R, E first
  std::size_t rank = 0;  // dimension of R
};

/// Purification Σ_k √λ_k |v_k>_E |k>_R of σ_E; eigenvalues at or below tol.psd
/// are dropped, so R has dimension rank(σ_E).
Purification purify(const DensityMatrix& sigma, const Tolerances& tol = {});

}  // namespace proctensor

#endif  // PROCTENSOR_CHANNEL_HPP
