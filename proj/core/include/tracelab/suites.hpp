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

#include "tracelab/certify.hpp"
#include "tracelab/metrics.hpp"
#include "tracelab/variational.hpp"

namespace tracelab {

/// Seeded sweeps over the variational and superoperator checks, reported in
/// the CertReport shape. Per-trial gaps follow the certify convention:
/// negative means the check failed at that trial.

/// Both closed-form optimizers (max and min form) on random invertible
/// inputs. The trial gap is −max(|max-form gap|, |min-form gap|), and a
/// probe that beats the optimum by more than 1e-9 fails the trial outright.
CertReport saturation_sweep(const ExponentQuad& quad, Index n, long trials, std::uint64_t seed,
                            double tol = 1e-8);

/// λ_min of (J_h^{A,B})^{-1} − φ*(J_h^{φA,φB})^{-1}φ over sampled channels.
CertReport petz_monotonicity_sweep(const ScalarFunction& h, ChannelFamily family, Index n, long trials,
                                   std::uint64_t seed, double tol = 1e-9);

/// ⟨X, Q^{A,B}X⟩ − ⟨φX, Q^{φA,φB}φX⟩ for the kernel of mu over sampled
/// channels.
CertReport double_operator_sweep(const AtomicMeasure& mu, ChannelFamily family, Index n, long trials,
                                 std::uint64_t seed, double tol = 1e-9);

/// −‖Q_{f(x/y)y} − J_f‖_F / max(1, ‖J_f‖_F) on random positive pairs.
CertReport spectral_route_sweep(const ScalarFunction& f, Index n, long trials, std::uint64_t seed,
                                double tol = 1e-10);

/// −|hessian_trace − finite differences| / |hessian_trace| on random
/// positive D and Hermitian A.
CertReport hessian_sweep(const ScalarFunction& f, Index n, long trials, std::uint64_t seed, double tol = 1e-5);

}  // namespace tracelab
