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

#ifndef PROCTENSOR_IO_HPP
#define PROCTENSOR_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "proctensor/correlations.hpp"
#include "proctensor/process.hpp"

// File formats. See docs/formats.md for the schemas.

namespace proctensor {

/// Shortest decimal that round-trips to the same double ('.' separator).
std::string format_double(double x);

// -- process-spec files (JSON) ----------------------------------------------

/// Parses a process spec. Explicit "unitaries" build a circuit directly;
/// without them the unitaries (and a seeded-random environment) are drawn
/// from "seed". Throws ParseError naming the offending field.
CircuitProcessSpec parse_process_spec(const nlohmann::json& doc, const Tolerances& tol = {});
CircuitProcessSpec load_process_spec(const std::string& path, const Tolerances& tol = {});

nlohmann::json process_spec_to_json(const CircuitProcessSpec& spec);
void save_process_spec(const std::string& path, const CircuitProcessSpec& spec);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Accepts {"re": [[...]], "im": [[...]]} ("im" optional). `field` names the
/// value in error messages.
ComplexMatrix matrix_from_json(const nlohmann::json& value, const std::string& field);

// -- serialized Choi states -------------------------------------------------

struct ChoiFile {
  std::size_t n = 0;
  std::size_t d = 0;
  DensityMatrix state = DensityMatrix::maximally_mixed(2);
};

/// Header "proctensor-choi n=<n> d=<d> slots=i0,o1,...", then one line per
/// row holding "re im" pairs for every column, big-endian slot indexing.
void write_choi(std::ostream& out, const DensityMatrix& state, std::size_t n);
void save_choi(const std::string& path, const DensityMatrix& state, std::size_t n);

/// Reads and validates a Choi file (density-matrix checks only, no causality).
ChoiFile read_choi(std::istream& in, const Tolerances& tol = {});
ChoiFile load_choi(const std::string& path, const Tolerances& tol = {});

// -- reports ----------------------------------------------------------------

nlohmann::json to_json(const CorrelationReport& report);
nlohmann::json to_json(const BoundAudit& audit);
nlohmann::json to_json(const CausalityReport& report);
nlohmann::json to_json(const ImplicationReport& report);
nlohmann::json to_json(const RelativeEntropy& value);

}  // namespace proctensor

#endif  // PROCTENSOR_IO_HPP
