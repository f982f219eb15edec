// Copyright 2026 The hardyweak Authors
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

// JSON views of the library's results and a deterministic serializer:
// object keys sorted, floats printed with 17 significant digits via
// std::to_chars (lowercase 'e', no locale), no trailing whitespace.

#ifndef HARDYWEAK_REPORT_HPP
#define HARDYWEAK_REPORT_HPP

#include <map>
#include <string>

#include "json.hpp"

#include "hardyweak/hardy.hpp"
#include "hardyweak/pointer.hpp"
#include "hardyweak/qcore.hpp"
#include "hardyweak/stateprep.hpp"

namespace hardyweak {

inline constexpr const char* kReportSchemaVersion = "1";

struct Report {
  std::string command;
  /// Flag name -> value as given (or defaulted) on the command line.
  std::map<std::string, std::string> parameters;
  nlohmann::json payload;

  nlohmann::json to_json() const;
};

/// 17 significant digits, shortest exponent form; -0 prints as 0.
std::string format_double(double x);

/// Compact deterministic JSON text; `indent` < 0 prints on one line.
std::string dump_deterministic(const nlohmann::json& j, int indent = 2);

// Complex numbers serialize as [re, im].
nlohmann::json to_json(cplx z);
nlohmann::json to_json(const Ket& k);
/// Rows of [re, im] pairs.
nlohmann::json to_json(const Operator& op);
nlohmann::json to_json(const DensityMatrix& rho);

nlohmann::json to_json(const WeakValueTable& t);
nlohmann::json to_json(const A12Report& r);
nlohmann::json to_json(const StrongComparison& c);
nlohmann::json to_json(const PreparationOutcome& o);
nlohmann::json to_json(const SchmidtForm& f);
nlohmann::json to_json(const PrepComparison& c);
nlohmann::json to_json(const SingleEstimate& s);
nlohmann::json to_json(const JointEstimate& j);
nlohmann::json to_json(const StrongReadout& r);

}  // namespace hardyweak

#endif  // HARDYWEAK_REPORT_HPP
