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

#include "proctensor/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace proctensor {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string(key) + ": missing");
  }
  return doc.at(key);
}

std::size_t read_count(const json& doc, const char* key, std::size_t minimum) {
  const json& v = require(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
    throw ParseError(std::string(key) + ": expected an integer >= " + std::to_string(minimum));
  }
  return v.get<std::size_t>();
}

std::vector<double> read_row(const json& row, const std::string& field) {
  if (!row.is_array()) throw ParseError(field + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : row) {
    if (!x.is_number()) throw ParseError(field + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string slot_list(std::size_t n) {
  std::string s;
  for (const auto& label : slot_labels(n)) {
    if (!s.empty()) s += ',';
    s += label;
  }
  return s;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& value, const std::string& field) {
  if (!value.is_object() || !value.contains("re")) {
    throw ParseError(field + ": expected an object with \"re\" (and optional \"im\") arrays");
  }
  const json& re = value.at("re");
  if (!re.is_array() || re.empty()) throw ParseError(field + ".re: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto first = read_row(re.at(0), field + ".re[0]");
  const auto cols = static_cast<Eigen::Index>(first.size());
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = read_row(re.at(static_cast<std::size_t>(r)), field + ".re[" + std::to_string(r) + "]");
    if (static_cast<Eigen::Index>(row.size()) != cols) throw ParseError(field + ".re: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c).real(row[static_cast<std::size_t>(c)]);
  }
  if (value.contains("im")) {
    const json& im = value.at("im");
    if (!im.is_array() || static_cast<Eigen::Index>(im.size()) != rows) {
      throw ParseError(field + ".im: expected " + std::to_string(rows) + " rows");
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto row = read_row(im.at(static_cast<std::size_t>(r)), field + ".im[" + std::to_string(r) + "]");
      if (static_cast<Eigen::Index>(row.size()) != cols) throw ParseError(field + ".im: ragged rows");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c).imag(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

CircuitProcessSpec parse_process_spec(const json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw ParseError("process spec: expected a JSON object");
  const std::size_t n = read_count(doc, "n", 1);
  const std::size_t d = read_count(doc, "d", 2);
  const std::size_t d_env = read_count(doc, "d_env", 1);

  std::uint64_t seed = 0;
  const bool has_seed = doc.contains("seed");
  if (has_seed) {
    const json& v = doc.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ParseError("seed: expected a non-negative integer");
    }
    seed = doc.at("seed").get<std::uint64_t>();
  }
  EnvInit init = EnvInit::kMaximallyMixed;
  if (doc.contains("env_init")) {
    if (!doc.at("env_init").is_string()) throw ParseError("env_init: expected a string");
    try {
      init = parse_env_init(doc.at("env_init").get<std::string>());
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("env_init: ") + e.what());
    }
  }

  CircuitProcessSpec spec;
  if (!doc.contains("unitaries")) {
    if (!has_seed) throw ParseError("unitaries: missing (give explicit unitaries or a seed)");
    RandomSpec rs{n, d, d_env, seed, doc.contains("env_init") ? init : EnvInit::kSeededRandom};
    spec = random_circuit_spec(rs);
  } else {
    spec.n = n;
    spec.d = d;
    spec.d_env = d_env;
    const json& us = doc.at("unitaries");
    if (!us.is_array() || us.size() != n) {
      throw ParseError("unitaries: expected an array of " + std::to_string(n) + " matrices");
    }
    const auto total = static_cast<Eigen::Index>(d * d_env);
    for (std::size_t j = 0; j < n; ++j) {
      const std::string field = "unitaries[" + std::to_string(j) + "]";
      ComplexMatrix u = matrix_from_json(us.at(j), field);
      if (u.rows() != total || u.cols() != total) {
        throw ParseError(field + ": expected " + std::to_string(total) + "x" + std::to_string(total) + ", got " +
                         std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
      }
      const double res = unitarity_residual(u);
      if (!(res <= tol.eig)) {
        throw ParseError(field + ": not unitary (max |UU†-I| = " + format_double(res) + ")");
      }
      spec.unitaries.push_back(std::move(u));
    }
    std::mt19937_64 rng(seed);
    const auto de = static_cast<Eigen::Index>(d_env);
    switch (init) {
      case EnvInit::kMaximallyMixed:
        spec.env_state = DensityMatrix::maximally_mixed(d_env);
        break;
      case EnvInit::kPureGround: {
        ComplexMatrix g = ComplexMatrix::Zero(de, de);
        g(0, 0) = 1.0;
        spec.env_state = DensityMatrix::unchecked(std::move(g), SubsystemShape({d_env}));
        break;
      }
      case EnvInit::kSeededRandom:
        spec.env_state = random_density_matrix(d_env, rng);
        break;
    }
  }
  if (doc.contains("env_state")) {
    ComplexMatrix env = matrix_from_json(doc.at("env_state"), "env_state");
    if (static_cast<std::size_t>(env.rows()) != d_env || env.rows() != env.cols()) {
      throw ParseError("env_state: expected " + std::to_string(d_env) + "x" + std::to_string(d_env));
    }
    try {
      spec.env_state = DensityMatrix::from_matrix(std::move(env), SubsystemShape({d_env}), tol);
    } catch (const NotAStateError& e) {
      throw ParseError(std::string("env_state: ") + e.what());
    }
  }
  try {
    spec.validate(tol);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  return spec;
}

CircuitProcessSpec load_process_spec(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_process_spec(doc, tol);
}

json process_spec_to_json(const CircuitProcessSpec& spec) {
  json us = json::array();
  for (const auto& u : spec.unitaries) us.push_back(matrix_to_json(u));
  return json{{"n", spec.n},
              {"d", spec.d},
              {"d_env", spec.d_env},
              {"env_state", matrix_to_json(spec.env_state.matrix())},
              {"unitaries", std::move(us)}};
}

void save_process_spec(const std::string& path, const CircuitProcessSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << process_spec_to_json(spec).dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

// ---------------------------------------------------------------------------

void write_choi(std::ostream& out, const DensityMatrix& state, std::size_t n) {
  const auto& dims = state.shape().dims();
  if (dims.size() != 2 * n) throw ArgumentError("write_choi: state does not have 2n slots");
  out << "proctensor-choi n=" << n << " d=" << dims.front() << " slots=" << slot_list(n) << '\n';
  const ComplexMatrix& m = state.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(m(r, c).real()) << ' ' << format_double(m(r, c).imag());
    }
    out << '\n';
  }
}

void save_choi(const std::string& path, const DensityMatrix& state, std::size_t n) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_choi(out, state, n);
  if (!out) throw std::runtime_error(path + ": write failed");
}

ChoiFile read_choi(std::istream& in, const Tolerances& tol) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("choi file: empty");
  std::istringstream hs(header);
  std::string magic;
  hs >> magic;
  if (magic != "proctensor-choi") throw ParseError("choi file: header must start with 'proctensor-choi'");
  std::size_t n = 0;
  std::size_t d = 0;
  std::string slots;
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("choi header: malformed token '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string val = token.substr(eq + 1);
    if (key == "n" || key == "d") {
      std::size_t v = 0;
      const auto res = std::from_chars(val.data(), val.data() + val.size(), v);
      if (res.ec != std::errc() || res.ptr != val.data() + val.size()) {
        throw ParseError("choi header: " + key + ": expected a positive integer");
      }
      (key == "n" ? n : d) = v;
    } else if (key == "slots") {
      slots = val;
    } else {
      throw ParseError("choi header: unknown field '" + key + "'");
    }
  }
  if (n == 0) throw ParseError("choi header: n: missing or zero");
  if (d < 2) throw ParseError("choi header: d: missing or < 2");
  if (!slots.empty() && slots != slot_list(n)) {
    throw ParseError("choi header: slots: expected " + slot_list(n));
  }
  const SubsystemShape shape(std::vector<std::size_t>(2 * n, d), slot_labels(n));
  const auto dim = static_cast<Eigen::Index>(shape.total_dim());
  ComplexMatrix m(dim, dim);
  std::string line;
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError("choi file: row " + std::to_string(r) + ": missing (expected " + std::to_string(dim) +
                       " rows)");
    }
    std::istringstream ls(line);
    for (Eigen::Index c = 0; c < dim; ++c) {
      double re = 0.0;
      double im = 0.0;
      if (!(ls >> re >> im)) {
        throw ParseError("choi file: row " + std::to_string(r) + ": expected " + std::to_string(dim) +
                         " (re, im) pairs");
      }
      m(r, c) = Complex(re, im);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("choi file: row " + std::to_string(r) + ": trailing data");
  }
  try {
    return ChoiFile{n, d, DensityMatrix::from_matrix(std::move(m), shape, tol)};
  } catch (const NotAStateError& e) {
    throw ParseError(std::string("choi file: ") + e.what());
  }
}

ChoiFile load_choi(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return read_choi(in, tol);
}

// ---------------------------------------------------------------------------

json to_json(const CorrelationReport& r) {
  return json{{"n", r.n},
              {"d", r.d},
              {"I", r.I},
              {"M_list", r.M_list},
              {"M", r.M},
              {"N", r.N},
              {"M_bar_list", r.M_bar_list},
              {"additivity_residual", r.additivity_residual}};
}

json to_json(const BoundAudit& a) {
  json out{{"n", a.n},
           {"prop1_slack", a.prop1_slack},
           {"prop2_slack", a.prop2_slack},
           {"thm1_slack", a.thm1_slack},
           {"thm2_slack", a.thm2_slack},
           {"thm2p_slack", a.thm2p_slack},
           {"two_step_slacks", nullptr},
           {"tolerance", a.tolerance},
           {"pass", a.pass}};
  if (a.two_step_slacks) out["two_step_slacks"] = *a.two_step_slacks;
  return out;
}

json to_json(const CausalityReport& r) {
  return json{{"residuals", r.residuals}, {"worst", r.worst()}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

json to_json(const ImplicationReport& r) {
  return json{{"high_M1", to_string(r.high_M1)},
              {"high_M2", to_string(r.high_M2)},
              {"high_I", to_string(r.high_I)},
              {"high_N", to_string(r.high_N)},
              {"violations", r.violations()}};
}

json to_json(const RelativeEntropy& v) {
  if (v.infinite) return json{{"infinite", true}, {"nats", nullptr}};
  return json{{"infinite", false}, {"nats", v.nats}};
}

}  // namespace proctensor
