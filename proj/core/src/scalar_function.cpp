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

#include "tracelab/scalar_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "tracelab/error.hpp"

namespace tracelab {

namespace {

// h(x) = (x − 1)/log x = (e^u − 1)/u with u = log x. Series near u = 0.
double h_value(double x) {
    const double u = std::log(x);
    if (std::abs(u) < 1e-5) return 1.0 + u / 2.0 + u * u / 6.0 + u * u * u / 24.0;
    return (x - 1.0) / u;
}

// dh/dx = (u e^u − e^u + 1)/(u² x).
double h_d1(double x) {
    const double u = std::log(x);
    if (std::abs(u) < 1e-3) return (0.5 + u / 3.0 + u * u / 8.0 + u * u * u / 30.0) / x;
    return (u * x - x + 1.0) / (u * u * x);
}

ScalarFunction power_function(double a) {
    ScalarFunction f;
    f.id = "power:" + std::to_string(a);
    f.value = [a](double x) { return std::pow(x, a); };
    f.d1 = [a](double x) { return a * std::pow(x, a - 1.0); };
    f.d2 = [a](double x) { return a * (a - 1.0) * std::pow(x, a - 2.0); };
    f.d3 = [a](double x) { return a * (a - 1.0) * (a - 2.0) * std::pow(x, a - 3.0); };
    return f;
}

}  // namespace

ScalarFunction scalar_function(std::string_view id) {
    if (id.rfind("power:", 0) == 0) {
        const std::string text(id.substr(6));
        char* end = nullptr;
        const double a = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size()) {
            throw Error(ErrorCode::BadArgument, "bad power exponent in '" + std::string(id) + "'");
        }
        ScalarFunction f = power_function(a);
        f.id = std::string(id);
        return f;
    }
    if (id == "square") {
        ScalarFunction f = power_function(2.0);
        f.id = "square";
        return f;
    }
    if (id == "identity") {
        ScalarFunction f = power_function(1.0);
        f.id = "identity";
        return f;
    }
    if (id == "one") {
        return {"one", [](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                [](double) { return 0.0; }};
    }
    if (id == "log") {
        return {"log", [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
                [](double x) { return -1.0 / (x * x); }, [](double x) { return 2.0 / (x * x * x); }};
    }
    if (id == "exp") {
        auto e = [](double x) { return std::exp(x); };
        return {"exp", e, e, e, e};
    }
    if (id == "xlogx") {
        return {"xlogx", [](double x) { return x * std::log(x); }, [](double x) { return std::log(x) + 1.0; },
                [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); }};
    }
    if (id == "h") {
        return {"h", h_value, h_d1, {}, {}};
    }
    throw Error(ErrorCode::BadArgument, "unknown scalar function '" + std::string(id) + "'");
}

ScalarFunction derivative(const ScalarFunction& f) {
    if (!f.d1) throw Error(ErrorCode::BadArgument, "function '" + f.id + "' has no derivative");
    return {f.id + "'", f.d1, f.d2, f.d3, {}};
}

Kernel diff_quotient(const ScalarFunction& g) {
    if (!g.d1) throw Error(ErrorCode::BadArgument, "difference quotient of '" + g.id + "' needs g'");
    return {g.id + "^[1]", [g](double s, double t) {
                const double gap = std::abs(s - t);
                if (gap > kDiffQuotientSwitch * std::max({std::abs(s), std::abs(t), 1.0})) {
                    return (g.value(s) - g.value(t)) / (s - t);
                }
                return g.d1(0.5 * (s + t));
            }};
}

Kernel ratio_kernel(const ScalarFunction& f) {
    return {"ratio(" + f.id + ")", [f](double x, double y) { return f.value(x / y) * y; }};
}

Kernel constant_kernel(double c) {
    return {"const", [c](double, double) { return c; }};
}

Kernel reciprocal(const Kernel& f) {
    return {"1/" + f.id, [f](double x, double y) { return 1.0 / f.eval(x, y); }};
}

}  // namespace tracelab
