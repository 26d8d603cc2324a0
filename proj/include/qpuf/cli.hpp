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

// Experiment runner behind the qpuf_lab executable.
//
//   forge-sweep      emulator forgery fidelity against the closed-form bound
//   selective-bound  informed subspace adversary against (d + 1) / D
//   verify-all       every numerical audit, as a JSON report array
//   game             raw game transcripts for one adversary
//   qe-demo          one emulator run on random samples
//   qgen             one generated instance as JSON
//   replay           re-runs a manifest and compares the output bytes
//
// With --out, the result goes to that file and <out>.manifest.json records
// how to regenerate it.

#ifndef QPUF_CLI_HPP_
#define QPUF_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace qpuf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Arguments exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace qpuf::cli

#endif  // QPUF_CLI_HPP_
