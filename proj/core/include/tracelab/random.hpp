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

#include <cstdint>
#include <random>
#include <vector>

#include "tracelab/linalg.hpp"

namespace tracelab {

using Rng = std::mt19937_64;

/// Independent generator for sub-stream `stream` of a run seeded with
/// `seed`. Trials and restarts each draw from their own stream, so results do
/// not depend on scheduling.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Entries i.i.d. standard complex Gaussian, E|z|² = 1.
Matrix ginibre(Index rows, Index cols, Rng& rng);

/// Ginibre sample rejected until its condition number is at most `cond_cap`.
Matrix random_invertible(Index n, Rng& rng, double cond_cap = 1e3);

/// Haar-like unitary: Gram–Schmidt on a Ginibre sample with phase fixing.
Matrix haar_unitary(Index n, Rng& rng);

/// U diag(λ) U* with λ log-uniform in [1/√cap, √cap], so κ ≤ cap.
PsdMatrix random_psd(Index n, Rng& rng, double cond_cap = 1e3);

/// Random unit-trace positive definite matrix.
PsdMatrix random_density(Index n, Rng& rng, double cond_cap = 1e3);

Matrix random_hermitian(Index n, Rng& rng);

std::vector<double> dirichlet(std::size_t k, Rng& rng);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace tracelab
