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

#ifndef PROCTENSOR_ERRORS_HPP
#define PROCTENSOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace proctensor {

/// Bad argument: invalid subsystem index, malformed partition, p outside [0,1], ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dense dimension would exceed the configured limit.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An operation's precondition on its input matrix does not hold (e.g. non-Hermitian).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Matrix is not a density matrix within tolerance.
class NotAStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input file; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace proctensor

#endif  // PROCTENSOR_ERRORS_HPP
