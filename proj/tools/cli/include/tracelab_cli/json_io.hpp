// Copyright 2026 The TraceLab Authors
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

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "tracelab/certify.hpp"

namespace tracelab::cli {

using nlohmann::json;

/// Malformed configuration or matrix file (exit code 2).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "%.17g", with "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double x);

/// Accepts a decimal string or a JSON number.
double parse_real(const json& v, const std::string& where);

/// Finite values as JSON numbers, non-finite ones as strings.
json real_json(double x);

/// {"dim": n, "entries": [["re", "im"], ...]} in row-major order; a
/// rectangular matrix carries "rows" and "cols" instead of "dim".
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& where);

json parameters_json(const Parameters& params);
json witness_json(const SearchWitness& w);
json report_json(const CertReport& r);

/// trial,gap,scale rows, one per trial.
std::string gaps_csv(const CertReport& r);

}  // namespace tracelab::cli
