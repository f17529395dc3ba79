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
#include <limits>
#include <span>
#include <vector>

namespace tracelab {

struct NelderMeadOptions {
    double initial_step = 0.5;
    long max_evaluations = 10000;
    long max_iterations = 0;  ///< 0 means 200 · dimension
    /// Stop as soon as a value at or below this is reached.
    double target = -std::numeric_limits<double>::infinity();
    double tolerance = 1e-12;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    long evaluations;
};

/// Derivative-free minimization with the standard reflection (1),
/// expansion (2), contraction (1/2) and shrink (1/2) coefficients.
/// Non-finite objective values are treated as +∞.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options);

}  // namespace tracelab
