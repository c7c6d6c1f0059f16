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

#include "proctensor/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "proctensor/channel.hpp"
#include "proctensor/correlations.hpp"
#include "proctensor/io.hpp"
#include "proctensor/process.hpp"

namespace proctensor {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxSteps = 16;

// Raised for unwritable outputs; mapped to the usage/input exit status.
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double grid_point(std::size_t k, std::size_t grid) {
  if (k + 1 == grid) return 1.0;
  return static_cast<double>(k) / static_cast<double>(grid - 1);
}

void check_grid(std::size_t grid) {
  if (grid < 2) throw ArgumentError("--grid must be at least 2");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw OutputError(cfg.out + ": cannot open for writing");
  file << text;
  file.close();
  if (!file) throw OutputError(cfg.out + ": write failed");
}

std::size_t single_d(const RunConfig& cfg, std::size_t fallback) {
  if (cfg.d_list.empty()) return fallback;
  if (cfg.d_list.size() != 1) throw ArgumentError("--d: this command takes a single dimension");
  return cfg.d_list.front();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

EnvInit sample_env_init(const std::string& mode, std::size_t index) {
  if (mode == "cycle") {
    static constexpr EnvInit kOrder[] = {EnvInit::kMaximallyMixed, EnvInit::kPureGround, EnvInit::kSeededRandom};
    return kOrder[index % 3];
  }
  return parse_env_init(mode);
}

std::vector<std::size_t> parse_d_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const char* b = item.data();
    const char* e = b + item.size();
    const auto res = std::from_chars(b, e, v);
    if (item.empty() || res.ec != std::errc() || res.ptr != e) {
      throw ArgumentError("--d: '" + item + "' is not a positive integer");
    }
    if (v < 2) throw ArgumentError("--d: dimensions must be at least 2");
    out.push_back(v);
  }
  if (out.empty()) throw ArgumentError("--d: empty list");
  return out;
}

json causality_json(const CausalityReport& report) { return to_json(report); }

// -- commands ---------------------------------------------------------------

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::vector<std::size_t> ds = cfg.d_list.empty() ? std::vector<std::size_t>{2, 3, 4} : cfg.d_list;
  emit(cfg, sweep_depolarizing_csv(ds, cfg.grid, cfg.tol), out);
  return kExitPass;
}

int cmd_emit_figure(const RunConfig& cfg, std::ostream& out) {
  if (cfg.which == "fig2") return cmd_sweep(cfg, out);
  if (cfg.which == "fig6") {
    emit(cfg, fig6_csv(cfg.grid, cfg.tol), out);
    return kExitPass;
  }
  throw ArgumentError("--which: expected fig2 or fig6, got '" + cfg.which + "'");
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw ArgumentError("analyze: --in is required");
  const CircuitProcessSpec spec = load_process_spec(cfg.in, cfg.tol);
  const DensityMatrix state = simulate_circuit(spec, cfg.tol);
  const CausalityReport causality = verify_causality(state, spec.n, cfg.tol.causal, cfg.tol);
  const CorrelationReport report = correlation_report(state, spec.n, cfg.tol);
  const BoundAudit audit = audit_bounds(report, cfg.tol.xcheck);

  json doc;
  doc["spec"] = json{{"n", spec.n}, {"d", spec.d}, {"d_env", spec.d_env}};
  doc["causality"] = causality_json(causality);
  doc["correlations"] = to_json(report);
  doc["crosscheck_N"] = to_json(non_markovianity_crosscheck(state, spec.n, cfg.tol));
  doc["bounds"] = to_json(audit);
  const bool pass = causality.pass && audit.pass;
  doc["pass"] = pass;
  emit(cfg, doc.dump(2) + "\n", out);
  return pass ? kExitPass : kExitCheckFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw ArgumentError("verify: --in is required");
  const std::string text = slurp(cfg.in);
  json doc;
  CausalityReport causality;
  if (looks_like_json(text)) {
    json parsed;
    try {
      parsed = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(cfg.in + ": " + e.what());
    }
    const CircuitProcessSpec spec = parse_process_spec(parsed, cfg.tol);
    causality = verify_causality(simulate_circuit(spec, cfg.tol), spec.n, cfg.tol.causal, cfg.tol);
    doc["source"] = "spec";
    doc["n"] = spec.n;
    doc["d"] = spec.d;
  } else {
    std::istringstream in(text);
    const ChoiFile choi = read_choi(in, cfg.tol);
    causality = verify_causality(choi.state, choi.n, cfg.tol.causal, cfg.tol);
    doc["source"] = "choi";
    doc["n"] = choi.n;
    doc["d"] = choi.d;
  }
  doc["causality"] = causality_json(causality);
  json levels = json::array();
  for (std::size_t j = 0; j < causality.residuals.size(); ++j) {
    if (causality.residuals[j] > causality.tolerance) levels.push_back(j + 1);
  }
  doc["failed_levels"] = std::move(levels);
  doc["pass"] = causality.pass;
  emit(cfg, doc.dump(2) + "\n", out);
  return causality.pass ? kExitPass : kExitCheckFailed;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const AuditSummary summary = audit_random(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(cfg, to_json(summary).dump(2) + "\n", out);
  // Kept out of the summary so that repeated runs stay byte-identical.
  err << "audit-random: " << summary.samples << " samples in " << seconds << " s\n";
  return summary.pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string sweep_depolarizing_csv(const std::vector<std::size_t>& d_list, std::size_t grid, const Tolerances& tol) {
  check_grid(grid);
  if (d_list.empty()) throw ArgumentError("sweep: empty dimension list");
  std::string csv = "d,p,M_nats\n";
  for (std::size_t d : d_list) {
    if (d < 2) throw ArgumentError("sweep: d must be at least 2");
    for (std::size_t k = 0; k < grid; ++k) {
      const double p = grid_point(k, grid);
      const double m = channel_M(depolarizing_choi(d, p), tol);
      csv += std::to_string(d) + ',' + format_double(p) + ',' + format_double(m) + '\n';
    }
  }
  return csv;
}

std::string fig6_csv(std::size_t grid, const Tolerances& tol) {
  check_grid(grid);
  std::string csv = "p,M1,M2,N,I\n";
  for (std::size_t k = 0; k < grid; ++k) {
    const double p = grid_point(k, grid);
    const CorrelationReport r = correlation_report(nm_depolarizing_process(p, tol), tol);
    csv += format_double(p) + ',' + format_double(r.M_list[0]) + ',' + format_double(r.M_list[1]) + ',' +
           format_double(r.N) + ',' + format_double(r.I) + '\n';
  }
  return csv;
}

std::size_t AuditSummary::violations() const {
  return prop1_violations + prop2_violations + thm1_violations + thm2_violations + thm2p_violations +
         two_step_violations + implication_violations;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

AuditSummary audit_random(const RunConfig& cfg) {
  if (cfg.samples < 1) throw ArgumentError("audit-random: --samples must be at least 1");
  if (cfg.n < 1 || cfg.n > kMaxSteps) throw ArgumentError("audit-random: --n must be in [1, 16]");
  if (cfg.d_env < 1) throw ArgumentError("audit-random: --denv must be at least 1");
  if (cfg.env_init != "cycle") parse_env_init(cfg.env_init);

  AuditSummary s;
  s.samples = cfg.samples;
  s.n = cfg.n;
  s.d = single_d(cfg, 2);
  s.d_env = cfg.d_env;
  s.seed = cfg.seed;
  s.env_init = cfg.env_init;
  s.tolerance = cfg.tol.xcheck;
  const double inf = std::numeric_limits<double>::infinity();
  s.min_prop1_slack = s.min_prop2_slack = s.min_thm1_slack = s.min_thm2_slack = s.min_thm2p_slack = inf;
  if (cfg.n == 2) s.min_two_step_slacks = std::array<double, 2>{inf, inf};
  const double tol = cfg.tol.xcheck;
  auto violated = [tol](double slack) { return slack < -tol ? std::size_t{1} : std::size_t{0}; };

  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const RandomSpec rs{cfg.n, s.d, cfg.d_env, sample_seed(cfg.seed, i), sample_env_init(cfg.env_init, i)};
    const DensityMatrix state = simulate_circuit(random_circuit_spec(rs), cfg.tol);

    const CausalityReport causality = verify_causality(state, cfg.n, cfg.tol.causal, cfg.tol);
    s.worst_causality_residual = std::max(s.worst_causality_residual, causality.worst());
    if (!causality.pass) ++s.causality_failures;

    const CorrelationReport r = correlation_report(state, cfg.n, cfg.tol);
    const BoundAudit a = audit_bounds(r, tol);
    s.max_additivity_residual = std::max(s.max_additivity_residual, r.additivity_residual);
    s.max_N = std::max(s.max_N, r.N);
    const RelativeEntropy dual = non_markovianity_crosscheck(state, cfg.n, cfg.tol);
    s.max_crosscheck_gap = std::max(s.max_crosscheck_gap, dual.infinite ? inf : std::abs(dual.nats - r.N));

    std::size_t p1 = 0;
    std::size_t p2 = 0;
    for (double x : a.prop1_slack) {
      s.min_prop1_slack = std::min(s.min_prop1_slack, x);
      p1 += violated(x);
    }
    for (double x : a.prop2_slack) {
      s.min_prop2_slack = std::min(s.min_prop2_slack, x);
      p2 += violated(x);
    }
    s.prop1_violations += p1;
    s.prop2_violations += p2;
    s.min_thm1_slack = std::min(s.min_thm1_slack, a.thm1_slack);
    s.min_thm2_slack = std::min(s.min_thm2_slack, a.thm2_slack);
    s.min_thm2p_slack = std::min(s.min_thm2p_slack, a.thm2p_slack);
    s.thm1_violations += violated(a.thm1_slack);
    s.thm2_violations += violated(a.thm2_slack);
    s.thm2p_violations += violated(a.thm2p_slack);
    if (a.two_step_slacks) {
      auto& m = *s.min_two_step_slacks;
      m[0] = std::min(m[0], (*a.two_step_slacks)[0]);
      m[1] = std::min(m[1], (*a.two_step_slacks)[1]);
      s.two_step_violations += violated((*a.two_step_slacks)[0]) + violated((*a.two_step_slacks)[1]);
      for (double eps : {0.01, 0.1, 0.5}) s.implication_violations += implication_checks(r, eps, tol).violations();
    }
  }
  return s;
}

json to_json(const AuditSummary& s) {
  json min_slack{{"prop1", s.min_prop1_slack},
                 {"prop2", s.min_prop2_slack},
                 {"thm1", s.min_thm1_slack},
                 {"thm2", s.min_thm2_slack},
                 {"thm2p", s.min_thm2p_slack},
                 {"two_step", nullptr}};
  if (s.min_two_step_slacks) min_slack["two_step"] = *s.min_two_step_slacks;
  json violations{{"prop1", s.prop1_violations},
                  {"prop2", s.prop2_violations},
                  {"thm1", s.thm1_violations},
                  {"thm2", s.thm2_violations},
                  {"thm2p", s.thm2p_violations},
                  {"two_step", s.two_step_violations},
                  {"implications", s.implication_violations},
                  {"total", s.violations()}};
  return json{{"samples", s.samples},
              {"n", s.n},
              {"d", s.d},
              {"d_env", s.d_env},
              {"seed", s.seed},
              {"env_init", s.env_init},
              {"tolerance", s.tolerance},
              {"min_slack", std::move(min_slack)},
              {"violations", std::move(violations)},
              {"worst_causality_residual", s.worst_causality_residual},
              {"causality_failures", s.causality_failures},
              {"max_additivity_residual", s.max_additivity_residual},
              {"max_N", s.max_N},
              {"max_crosscheck_gap", s.max_crosscheck_gap},
              {"pass", s.pass()}};
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal correlations of multi-time quantum processes", "proctensor"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string d_text;
  std::optional<double> tol_all;
  app.add_option("--d", d_text, "System dimension, or a comma-separated list for sweeps");
  app.add_option("--n", cfg.n, "Number of steps")->check(CLI::Range(std::size_t{1}, kMaxSteps));
  app.add_option("--denv", cfg.d_env, "Environment dimension")->check(CLI::PositiveNumber);
  app.add_option("--grid", cfg.grid, "Number of p grid points, p = k/(grid-1)");
  app.add_option("--samples", cfg.samples, "Random processes per audit");
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_option("--env-init", cfg.env_init, "maximally-mixed, pure-ground, seeded-random or cycle");
  app.add_option("--in", cfg.in, "Input file (process spec JSON or Choi file)");
  app.add_option("--out", cfg.out, "Output file (default: standard output)");
  app.add_option("--tol", tol_all, "Causality tolerance (same as --tol-causal)");
  app.add_option("--tol-herm", cfg.tol.herm, "Hermiticity tolerance");
  app.add_option("--tol-tr", cfg.tol.tr, "Trace tolerance");
  app.add_option("--tol-psd", cfg.tol.psd, "Positivity tolerance");
  app.add_option("--tol-eig", cfg.tol.eig, "Eigenvalue clipping tolerance");
  app.add_option("--tol-supp", cfg.tol.supp, "Support tolerance for relative entropy");
  app.add_option("--tol-xcheck", cfg.tol.xcheck, "Cross-check and bound-audit tolerance");
  app.add_option("--tol-causal", cfg.tol.causal, "Causality tolerance");

  const auto add = [&app](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };
  add("sweep-depolarizing", "CSV of M against p for depolarizing channels");
  add("analyze", "Correlation report, causality residuals and bound audit for a process spec");
  add("audit-random", "Bound audit over seeded random processes");
  CLI::App* fig = add("emit-figure", "CSV for a figure (fig2 or fig6)");
  fig->add_option("--which", cfg.which, "fig2 or fig6")->required();
  add("verify", "Causality hierarchy residuals for a process spec or Choi file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "proctensor: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!d_text.empty()) cfg.d_list = parse_d_list(d_text);
    if (tol_all) cfg.tol.causal = *tol_all;
    if (cfg.command == "sweep-depolarizing") return cmd_sweep(cfg, out);
    if (cfg.command == "emit-figure") return cmd_emit_figure(cfg, out);
    if (cfg.command == "analyze") return cmd_analyze(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "audit-random") return cmd_audit(cfg, out, err);
  } catch (const ParseError& e) {
    err << "proctensor: parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "proctensor: dimension error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "proctensor: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotAStateError& e) {
    err << "proctensor: invalid state: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutputError& e) {
    err << "proctensor: I/O error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "proctensor: error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "proctensor: unknown command\n";
  return kExitUsage;
}

}  // namespace proctensor
