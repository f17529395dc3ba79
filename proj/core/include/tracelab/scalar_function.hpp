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

#include <functional>
#include <string>
#include <string_view>

namespace tracelab {

/// Real function on (0, ∞) with its first three derivatives. Derivatives a
/// caller never asks for may be left empty.
struct ScalarFunction {
    std::string id;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;

    double operator()(double x) const { return value(x); }
};

/// Real function of two variables, used as a superoperator kernel.
struct Kernel {
    std::string id;
    std::function<double(double, double)> eval;

    double operator()(double x, double y) const { return eval(x, y); }
};

/// Catalog lookup by id: "power:<a>", "log", "exp", "xlogx", "square", "one",
/// "identity", "h" (the function (x−1)/log x, 1 at x = 1). Throws BadArgument.
ScalarFunction scalar_function(std::string_view id);

/// (value, d1, d2) ← (d1, d2, d3).
ScalarFunction derivative(const ScalarFunction& f);

inline constexpr double kDiffQuotientSwitch = 1e-6;

/// g^{[1]}(s, t) = (g(s) − g(t))/(s − t), falling back to g'((s + t)/2) when
/// |s − t| ≤ 1e-6 · max(|s|, |t|, 1).
Kernel diff_quotient(const ScalarFunction& g);

/// F(x, y) = f(x/y) · y.
Kernel ratio_kernel(const ScalarFunction& f);

Kernel constant_kernel(double c);

/// 1/F.
Kernel reciprocal(const Kernel& f);

}  // namespace tracelab
