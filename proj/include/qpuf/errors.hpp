// Copyright 2026 The qpuf-lab Authors
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

#ifndef QPUF_ERRORS_HPP_
#define QPUF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qpuf {

// Operand dimensions disagree, or a dimension does not factor as requested.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value failed one of its construction invariants (norm, hermiticity,
// unitarity, positivity, idempotence).
class InvariantError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested simulation exceeds the configured dimension cap.
class ResourceCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A checker was called on inputs outside its precondition, e.g. a
// robustness check on a pair that is not delta_r-indistinguishable.
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stage-2 post-selection has (numerically) zero success probability.
class PostSelectionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An adversary broke the rules of the security game. Not a loss: the run
// is rejected.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BudgetExceeded : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
};

class MuViolation : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
};

// An adversary declined to run because its resource requirements are not
// met (the tomography adversary needs 2^n queries).
class ResourceRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpuf

#endif  // QPUF_ERRORS_HPP_
