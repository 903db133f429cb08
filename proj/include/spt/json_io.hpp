// Copyright 2026 The spt Authors
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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spt/fermion.hpp"
#include "spt/group.hpp"
#include "spt/noisesim.hpp"
#include "spt/pauli.hpp"
#include "spt/reduce.hpp"
#include "spt/symproj.hpp"

namespace spt {

using json = nlohmann::json;

/// Parse failures and schema violations raise FormatError.
json parse_json_text(const std::string& text);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

json pauli_string_to_json(const PauliString& p);
PauliString pauli_string_from_json(const json& j);

json to_json(const PauliSum& s);
PauliSum pauli_sum_from_json(const json& j);

json to_json(const FermionOperator& op);
FermionOperator fermion_operator_from_json(const json& j);
/// One operator, an array of operators, or {"targets": [...]}.
std::vector<FermionOperator> fermion_targets_from_json(const json& j);

json to_json(const ProjectedOperator& op);
ProjectedOperator projected_operator_from_json(const json& j);

json to_json(const ReducedBasis& b);
ReducedBasis reduced_basis_from_json(const json& j);

json to_json(const std::vector<CountTableRow>& rows);
std::vector<CountTableRow> count_rows_from_json(const json& j);

struct GroupingRecord {
  std::vector<PauliString> strings;
  Grouping grouping;

  friend bool operator==(const GroupingRecord&, const GroupingRecord&) = default;
};

json to_json(const GroupingRecord& g);
GroupingRecord grouping_from_json(const json& j);

json to_json(const DeviceParameters& d);
DeviceParameters device_from_json(const json& j);

json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const json& j);

}  // namespace spt
