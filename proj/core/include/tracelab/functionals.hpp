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

#include "tracelab/linalg.hpp"

namespace tracelab {

/// Exponents and kernel matrices of Tr|B^{-p} K1 A K2 C^{-q}|^s.
struct TripleParams {
    double p = 0.25;
    double q = 0.25;
    double s = 2.0;
    Matrix k1;  ///< empty means identity
    Matrix k2;  ///< empty means identity

    /// 0 < p, q ≤ 1/2, p + q < 1 and s ≥ 1/(1 - p - q): the joint convexity
    /// region. Evaluation outside it is allowed.
    bool convexity_admissible() const;

    /// 0 < p, q ≤ 1/2, p + q ≤ 1/2 and 2 ≤ s ≤ 1/(p + q): the region where
    /// the functional contracts under unital channels.
    bool monotonicity_admissible() const;
};

/// Exponents of Λ(P, X) = Tr|P^{α/p} X P^{β/p}|^p.
struct LambdaParams {
    double alpha = -0.5;
    double beta = -0.5;
    double p = 2.0;

    /// α + β = -1, α ∈ [-1, 0], p ≥ 2.
    bool convexity_admissible() const;
};

/// Tr|B^{-p} K1 A K2 C^{-q}|^s.
double psi_pqs(const Matrix& a, const PsdMatrix& b, const PsdMatrix& c, const TripleParams& params);

/// Λ_{α,β,p}(P, X).
double lambda_abp(const PsdMatrix& p, const Matrix& x, const LambdaParams& params);

/// Tr|K1 A^p K2|^s.
double psi_ps(const PsdMatrix& a, const Matrix& k1, const Matrix& k2, double p, double s);

/// Tr(A^p B^{q2} A^p C^{r2}), the trace form of Tr|B^{q2/2} A^p C^{r2/2}|².
double phi_cfl(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c, double p, double q2, double r2);

/// Tr|B^{q2/2} A^p C^{r2/2}|² evaluated through singular values.
double phi_cfl_schatten(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c, double p, double q2,
                        double r2);

/// Tr(B^{q/2} A^p B^{q/2})^s.
double two_var(const PsdMatrix& a, const PsdMatrix& b, double p, double q, double s);

}  // namespace tracelab
