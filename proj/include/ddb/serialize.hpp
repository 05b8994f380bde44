// Copyright 2026 The DDB Tomography Authors
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

#include "ddb/bases.hpp"
#include "ddb/circuits.hpp"
#include "ddb/partitions.hpp"
#include "ddb/reconstruct.hpp"
#include "ddb/simulator.hpp"
#include "json.hpp"

namespace ddb {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal form; negative zero prints as "0".
std::string format_double(double v);

json to_json(const PartitionSet &ps);
PartitionSet partitions_from_json(const json &j);
/// One partition per line, e.g. "(0,1) (2,3) [4]"; singletons in brackets.
std::string partitions_text(const PartitionSet &ps);

/// {"dim":d,"label":"B3","vectors":[[[idx,re,im],...],...]}
json to_json(const DdbBasis &b);
json to_json(const DdbFamily &fam);

json to_json(const ComplexMatrix &m);  // nested [re, im] pairs
ComplexMatrix matrix_from_json(const json &j);

struct CountsRecord {
  BasisLabel label;
  CountVector counts;
};

/// Interchange format between simulation and reconstruction.
struct CountsFile {
  int dim = 0;
  std::uint64_t shots = 0;
  std::vector<CountsRecord> records;
};

json to_json(const CountsFile &c);
/// Validates dimensions, labels, and per-record totals. Throws
/// std::invalid_argument with the offending field.
CountsFile counts_from_json(const json &j);
ProbTable to_prob_table(const CountsFile &c);

json to_json(const ReconstructionReport &r);
json to_json(const MeasurementSpec &spec);
json to_json(const GateCount &gc);

}  // namespace ddb
