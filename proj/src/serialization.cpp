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

#include "qpuf/serialization.hpp"

#include "json.hpp"

namespace qpuf {

using nlohmann::json;

namespace {

json report_json(const CheckReport& r) {
  json j{{"name", r.name},
         {"trials", r.trials},
         {"violations", r.violations},
         {"worst_margin", r.worst_margin},
         {"passed", r.passed},
         {"informational", r.informational}};
  if (r.empirical) j["empirical"] = *r.empirical;
  if (r.predicted) j["predicted"] = *r.predicted;
  if (r.sigma) j["sigma"] = *r.sigma;
  return j;
}

}  // namespace

std::string instance_to_json(const QPufInstance& puf) {
  json rows = json::array();
  const MatrixXc& u = puf.unitary().matrix();
  for (Index i = 0; i < u.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < u.cols(); ++j) row.push_back({u(i, j).real(), u(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"id", puf.id()}, {"n", puf.qubits()}, {"unitary", std::move(rows)}}.dump();
}

QPufInstance instance_from_json(std::string_view text) {
  const json j = json::parse(text);
  const int n = j.at("n").get<int>();
  if (n < 1 || n > 30) throw DimensionError("instance n out of range");
  const Index dim = Index{1} << n;
  const json& rows = j.at("unitary");
  if (static_cast<Index>(rows.size()) != dim) throw DimensionError("unitary row count does not match n");
  MatrixXc u(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Index>(row.size()) != dim) throw DimensionError("unitary row has the wrong length");
    for (Index k = 0; k < dim; ++k) {
      const json& z = row.at(static_cast<std::size_t>(k));
      u(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return QPufInstance(j.at("id").get<std::string>(), UnitaryMatrix(std::move(u)));
}

std::string report_to_json(const CheckReport& report) { return report_json(report).dump(); }

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(report_json(r));
  return out.dump(2);
}

std::string transcript_to_json_line(const Transcript& t) {
  return json{{"mode", to_string(t.mode)},
              {"n", t.qubits},
              {"k", t.budget},
              {"d_spanned", t.d_spanned},
              {"b", t.outcome ? 1 : 0},
              {"fidelity_of_guess", t.fidelity_of_guess}}
      .dump();
}

}  // namespace qpuf
