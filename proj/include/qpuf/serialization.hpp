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

// JSON text for instances, audit reports and game transcripts.

#ifndef QPUF_SERIALIZATION_HPP_
#define QPUF_SERIALIZATION_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "qpuf/games.hpp"
#include "qpuf/qpuf.hpp"
#include "qpuf/verify.hpp"

namespace qpuf {

// {"id": ..., "n": ..., "unitary": [[[re, im], ...], ...]}, rows first.
std::string instance_to_json(const QPufInstance& puf);

// Inverse of instance_to_json. Throws InvariantError if the matrix is not
// unitary and DimensionError if it does not match n.
QPufInstance instance_from_json(std::string_view text);

std::string report_to_json(const CheckReport& report);
std::string reports_to_json(const std::vector<CheckReport>& reports);

// One line: {"mode", "n", "k", "d_spanned", "b", "fidelity_of_guess"}.
std::string transcript_to_json_line(const Transcript& transcript);

}  // namespace qpuf

#endif  // QPUF_SERIALIZATION_HPP_
