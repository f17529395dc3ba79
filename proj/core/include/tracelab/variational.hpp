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

#include <array>
#include <cstdint>

#include "tracelab/linalg.hpp"

namespace tracelab {

/// Exponents (r0, r1, r2, r3) with 1/r0 = 1/r1 + 1/r2 + 1/r3.
class ExponentQuad {
public:
    /// Throws BadExponent unless every r_j > 0 and the reciprocal relation
    /// holds within 1e-12.
    ExponentQuad(double r0, double r1, double r2, double r3);

    /// r0 computed from the three outer exponents.
    static ExponentQuad from_outer(double r1, double r2, double r3);

    /// (r, 1/p, s, 1/q) with 1/r = p + q + 1/s.
    static ExponentQuad from_triple(double p, double q, double s);

    double r0() const { return r_[0]; }
    double r1() const { return r_[1]; }
    double r2() const { return r_[2]; }
    double r3() const { return r_[3]; }

private:
    std::array<double, 4> r_;
};

struct BoundSides {
    double lhs;
    double rhs;
};

/// Both sides of
///   Tr|X^{-1} B Y^{-1}|^{r2} ≥ (r2/r0) Tr|ABC|^{r0} − (r2/r1) Tr|AX|^{r1} − (r2/r3) Tr|YC|^{r3}.
BoundSides holder_young_lower_bound(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x,
                                    const Matrix& y, const ExponentQuad& quad);

struct SaturatingPair {
    Matrix a;
    Matrix c;
};

/// With W = X^{-1} B Y^{-1} = U|W|: A = |W|^{r2/r1} U* X^{-1}, C = Y^{-1} |W|^{r2/r3}.
/// Throws SingularPower when X, Y or W is numerically singular.
SaturatingPair saturating_pair(const Matrix& x, const Matrix& b_mid, const Matrix& y, const ExponentQuad& quad);

/// Closed-form minimizer (X, Y) of the min-form objective for given A, B, C:
/// with ABC = V|ABC|, X = A^{-1} V |ABC|^{r0/r1} and Y = |ABC|^{r0/r3} C^{-1}.
struct MinimizingPair {
    Matrix x;
    Matrix y;
};
MinimizingPair minimizing_pair(const Matrix& a, const Matrix& b_mid, const Matrix& c, const ExponentQuad& quad);

/// (r0/r1) Tr|AX|^{r1} + (r0/r2) Tr|X^{-1}BY^{-1}|^{r2} + (r0/r3) Tr|YC|^{r3}.
double min_form_objective(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x, const Matrix& y,
                          const ExponentQuad& quad);

struct ProbeOptions {
    int count = 100;
    double delta = 1e-2;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

struct SaturationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    /// (lhs − rhs) / max(1, |lhs|)
    double gap = 0.0;
    /// Saturating (A, C) for the max form, minimizing (X, Y) for the min form.
    std::array<Matrix, 2> witness;
    int probes = 0;
    /// Largest amount by which a probe beat the closed-form optimum, relative
    /// to max(1, |lhs|); ≤ 0 means no probe did.
    double worst_probe_excess = 0.0;

    bool probes_dominated(double tol) const { return worst_probe_excess <= tol; }
};

/// Max form: lhs = Tr|X^{-1}BY^{-1}|^{r2}, rhs = lower bound at the saturating
/// pair, plus multiplicative probes A(1 + δG), C(1 + δG').
SaturationReport variational_max_check(const Matrix& b, const Matrix& x, const Matrix& y, const ExponentQuad& quad,
                                       const ProbeOptions& probes = {});

/// Min form: lhs = Tr|ABC|^{r0}, rhs = objective at the closed-form (X, Y),
/// plus probes X(1 + δG), Y(1 + δG').
SaturationReport variational_min_check(const Matrix& a, const Matrix& b_mid, const Matrix& c,
                                       const ExponentQuad& quad, const ProbeOptions& probes = {});

}  // namespace tracelab
