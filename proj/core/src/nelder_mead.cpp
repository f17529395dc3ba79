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

#include "tracelab/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tracelab {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const size_t dim = start.size();
    const long max_iter = options.max_iterations > 0 ? options.max_iterations : 200L * static_cast<long>(dim);
    long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = objective(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
    std::vector<double> values(dim + 1);
    for (size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

    std::vector<size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto combine = [&](double t, const std::vector<double>& from, std::vector<double>& out) {
        for (size_t k = 0; k < dim; ++k) out[k] = centroid[k] + t * (from[k] - centroid[k]);
    };

    for (long iter = 0; iter < max_iter && evals < options.max_evaluations; ++iter) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second = order[dim - 1];
        if (values[best] <= options.target) break;
        if (std::abs(values[worst] - values[best]) <= options.tolerance * (1.0 + std::abs(values[best]))) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        combine(-1.0, simplex[worst], trial);
        const double fr = eval(trial);
        if (fr < values[best]) {
            combine(-2.0, simplex[worst], trial2);
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        combine(outside ? -0.5 : 0.5, simplex[worst], trial2);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (size_t k = 0; k < dim; ++k) {
                simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], evals};
}

}  // namespace tracelab
