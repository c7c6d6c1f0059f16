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

#ifndef PROCTENSOR_COMMANDS_HPP
#define PROCTENSOR_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "proctensor/linalg.hpp"

namespace proctensor {

/// Exit statuses of every command.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct RunConfig {
  std::string command;
  std::string in;
  std::string out;  // empty: standard output
  std::vector<std::size_t> d_list;  // empty: command default
  std::size_t n = 2;
  std::size_t d_env = 2;
  std::size_t grid = 101;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::string which = "fig2";
  std::string env_init = "cycle";  // an EnvInit name, or "cycle" to rotate per sample
  Tolerances tol;
};

/// Rows "d,p,M_nats" with p = k/(grid-1); d-major order.
std::string sweep_depolarizing_csv(const std::vector<std::size_t>& d_list, std::size_t grid,
                                   const Tolerances& tol = {});

/// Rows "p,M1,M2,N,I" for the two-step Fredkin process.
std::string fig6_csv(std::size_t grid, const Tolerances& tol = {});

struct AuditSummary {
  std::size_t samples = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t d_env = 0;
  std::uint64_t seed = 0;
  std::string env_init;
  double tolerance = 0.0;

  double min_prop1_slack = 0.0;
  double min_prop2_slack = 0.0;
  double min_thm1_slack = 0.0;
  double min_thm2_slack = 0.0;
  double min_thm2p_slack = 0.0;
  std::optional<std::array<double, 2>> min_two_step_slacks;

  std::size_t prop1_violations = 0;
  std::size_t prop2_violations = 0;
  std::size_t thm1_violations = 0;
  std::size_t thm2_violations = 0;
  std::size_t thm2p_violations = 0;
  std::size_t two_step_violations = 0;
  std::size_t implication_violations = 0;  // n = 2, ε ∈ {0.01, 0.1, 0.5}

  double worst_causality_residual = 0.0;
  std::size_t causality_failures = 0;
  double max_additivity_residual = 0.0;
  double max_N = 0.0;
  double max_crosscheck_gap = 0.0;  // |N − S(Υ ‖ ⊗_j Υ_j)|

  std::size_t violations() const;
  bool pass() const { return violations() == 0 && causality_failures == 0; }
};

/// Seed of sample `index` in an audit seeded with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

AuditSummary audit_random(const RunConfig& cfg);
nlohmann::json to_json(const AuditSummary& summary);

/// Entry point of the `proctensor` executable. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace proctensor

#endif  // PROCTENSOR_COMMANDS_HPP
