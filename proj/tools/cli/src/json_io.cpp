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

#include "tracelab_cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace tracelab::cli {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) throw SchemaError(where + ": expected a number or decimal string");
    const std::string& text = v.get_ref<const std::string&>();
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw SchemaError(where + ": '" + text + "' is not a decimal number");
    }
    return x;
}

json real_json(double x) {
    if (std::isfinite(x)) return x;
    return format_real(x);
}

json matrix_to_json(const Matrix& m) {
    json out = json::object();
    if (m.rows() == m.cols()) {
        out["dim"] = m.rows();
    } else {
        out["rows"] = m.rows();
        out["cols"] = m.cols();
    }
    json entries = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            entries.push_back(json::array({format_real(m(i, j).real()), format_real(m(i, j).imag())}));
        }
    }
    out["entries"] = std::move(entries);
    return out;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": matrix must be an object");
    auto dimension = [&](const char* key) -> Index {
        const json& v = j.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw SchemaError(where + ": '" + key + "' must be a positive integer");
        }
        return static_cast<Index>(v.get<long long>());
    };
    Index rows = 0, cols = 0;
    if (j.contains("dim")) {
        if (j.contains("rows") || j.contains("cols")) throw SchemaError(where + ": give either dim or rows/cols");
        rows = cols = dimension("dim");
    } else if (j.contains("rows") && j.contains("cols")) {
        rows = dimension("rows");
        cols = dimension("cols");
    } else {
        throw SchemaError(where + ": missing 'dim'");
    }
    if (!j.contains("entries") || !j.at("entries").is_array()) throw SchemaError(where + ": missing 'entries'");
    const json& entries = j.at("entries");
    if (entries.size() != static_cast<size_t>(rows * cols)) {
        throw SchemaError(where + ": expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(entries.size()));
    }
    Matrix m(rows, cols);
    for (Index k = 0; k < rows * cols; ++k) {
        const json& e = entries[static_cast<size_t>(k)];
        const std::string at = where + ".entries[" + std::to_string(k) + "]";
        if (!e.is_array() || e.size() != 2) throw SchemaError(at + ": expected [re, im]");
        m(k / cols, k % cols) = Complex(parse_real(e[0], at), parse_real(e[1], at));
    }
    return m;
}

json parameters_json(const Parameters& params) {
    json out = json::object();
    for (const auto& [key, value] : params) out[key] = real_json(value);
    return out;
}

namespace {

json labeled_json(const std::vector<LabeledMatrix>& ms) {
    json out = json::object();
    for (const LabeledMatrix& m : ms) out[m.label] = matrix_to_json(m.value);
    return out;
}

}  // namespace

json witness_json(const SearchWitness& w) {
    return {{"claim", w.claim},
            {"params", parameters_json(w.params)},
            {"found", w.found},
            {"dim", w.dim},
            {"seed", w.seed},
            {"margin", real_json(w.margin)},
            {"verified_margin", real_json(w.verified_margin)},
            {"evaluations", w.evaluations},
            {"restarts", w.restarts},
            {"strategy", w.strategy},
            {"matrices", labeled_json(w.matrices)}};
}

json report_json(const CertReport& r) {
    double worst_abs = 0.0, worst_rel = 0.0;
    for (size_t i = 0; i < r.gaps.size(); ++i) {
        worst_abs = std::max(worst_abs, std::abs(r.gaps[i]));
        worst_rel = std::max(worst_rel, std::abs(r.gaps[i]) / r.scales[i]);
    }
    json out = {{"claim", r.claim},
                {"params", parameters_json(r.params)},
                {"trials", r.trials},
                {"seed", r.seed},
                {"tol", real_json(r.tol)},
                {"asserted", r.asserted},
                {"min_gap", real_json(r.min_gap)},
                {"max_abs_gap", real_json(worst_abs)},
                {"max_rel_gap", real_json(worst_rel)},
                {"verdict", std::string(verdict_name(r.verdict))},
                {"witness", labeled_json(r.witness)}};
    if (r.escalation) out["escalation"] = witness_json(*r.escalation);
    return out;
}

std::string gaps_csv(const CertReport& r) {
    std::ostringstream out;
    out << "trial,gap,scale\n";
    for (size_t i = 0; i < r.gaps.size(); ++i) {
        out << i << ',' << format_real(r.gaps[i]) << ',' << format_real(r.scales[i]) << '\n';
    }
    return out.str();
}

}  // namespace tracelab::cli
