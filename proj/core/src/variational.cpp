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

#include "tracelab/variational.hpp"

#include <algorithm>
#include <cmath>

#include "tracelab/random.hpp"

namespace tracelab {

namespace {

Matrix checked_inverse(const Matrix& m, const char* what) {
    const SvdResult s = svd(m);
    const Index n = s.sigma.size();
    if (!(s.sigma(n - 1) > kInverseTol * s.sigma(0))) throw Error(ErrorCode::SingularPower, what);
    return s.v * s.sigma.cwiseInverse().cast<Complex>().asDiagonal() * s.u.adjoint();
}

Matrix perturbed(const Matrix& m, double delta, Rng& rng) {
    return m * (identity(m.rows()) + delta * ginibre(m.rows(), m.cols(), rng));
}

}  // namespace

ExponentQuad::ExponentQuad(double r0, double r1, double r2, double r3) : r_{r0, r1, r2, r3} {
    for (double r : r_) {
        if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::BadExponent, "exponents must be positive");
    }
    const double residual = 1.0 / r0 - (1.0 / r1 + 1.0 / r2 + 1.0 / r3);
    if (std::abs(residual) > 1e-12 * std::max(1.0, 1.0 / r0)) {
        throw Error(ErrorCode::BadExponent, "1/r0 must equal 1/r1 + 1/r2 + 1/r3");
    }
}

ExponentQuad ExponentQuad::from_outer(double r1, double r2, double r3) {
    return ExponentQuad(1.0 / (1.0 / r1 + 1.0 / r2 + 1.0 / r3), r1, r2, r3);
}

ExponentQuad ExponentQuad::from_triple(double p, double q, double s) {
    return ExponentQuad(1.0 / (p + q + 1.0 / s), 1.0 / p, s, 1.0 / q);
}

BoundSides holder_young_lower_bound(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x,
                                    const Matrix& y, const ExponentQuad& quad) {
    const Matrix xinv = checked_inverse(x, "X must be invertible");
    const Matrix yinv = checked_inverse(y, "Y must be invertible");
    const double lhs = abs_power_trace(xinv * b * yinv, quad.r2());
    const double rhs = quad.r2() / quad.r0() * abs_power_trace(a * b * c, quad.r0()) -
                       quad.r2() / quad.r1() * abs_power_trace(a * x, quad.r1()) -
                       quad.r2() / quad.r3() * abs_power_trace(y * c, quad.r3());
    return {lhs, rhs};
}

SaturatingPair saturating_pair(const Matrix& x, const Matrix& b_mid, const Matrix& y, const ExponentQuad& quad) {
    const Matrix xinv = checked_inverse(x, "X must be invertible");
    const Matrix yinv = checked_inverse(y, "Y must be invertible");
    const PolarDecomposition w = polar(Matrix(xinv * b_mid * yinv));
    if (!w.modulus.strictly_positive()) {
        throw Error(ErrorCode::SingularPower, "X^{-1} B Y^{-1} is rank deficient");
    }
    Matrix a = matrix_power(w.modulus, quad.r2() / quad.r1()).matrix() * w.unitary.adjoint() * xinv;
    Matrix c = yinv * matrix_power(w.modulus, quad.r2() / quad.r3()).matrix();
    return {std::move(a), std::move(c)};
}

MinimizingPair minimizing_pair(const Matrix& a, const Matrix& b_mid, const Matrix& c, const ExponentQuad& quad) {
    const Matrix ainv = checked_inverse(a, "A must be invertible");
    const Matrix cinv = checked_inverse(c, "C must be invertible");
    const PolarDecomposition m = polar(Matrix(a * b_mid * c));
    if (!m.modulus.strictly_positive()) throw Error(ErrorCode::SingularPower, "ABC is rank deficient");
    Matrix x = ainv * m.unitary * matrix_power(m.modulus, quad.r0() / quad.r1()).matrix();
    Matrix y = matrix_power(m.modulus, quad.r0() / quad.r3()).matrix() * cinv;
    return {std::move(x), std::move(y)};
}

double min_form_objective(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x, const Matrix& y,
                          const ExponentQuad& quad) {
    const Matrix xinv = checked_inverse(x, "X must be invertible");
    const Matrix yinv = checked_inverse(y, "Y must be invertible");
    return quad.r0() / quad.r1() * abs_power_trace(a * x, quad.r1()) +
           quad.r0() / quad.r2() * abs_power_trace(xinv * b * yinv, quad.r2()) +
           quad.r0() / quad.r3() * abs_power_trace(y * c, quad.r3());
}

SaturationReport variational_max_check(const Matrix& b, const Matrix& x, const Matrix& y, const ExponentQuad& quad,
                                       const ProbeOptions& probes) {
    const SaturatingPair pair = saturating_pair(x, b, y, quad);
    const BoundSides sides = holder_young_lower_bound(pair.a, b, pair.c, x, y, quad);
    SaturationReport report;
    report.lhs = sides.lhs;
    report.rhs = sides.rhs;
    const double scale = std::max(1.0, std::abs(sides.lhs));
    report.gap = (sides.lhs - sides.rhs) / scale;
    report.witness = {pair.a, pair.c};
    report.worst_probe_excess = -kInfinity;
    for (int k = 0; k < probes.count; ++k) {
        Rng rng = make_rng(probes.seed, static_cast<std::uint64_t>(k));
        const Matrix a = perturbed(pair.a, probes.delta, rng);
        const Matrix c = perturbed(pair.c, probes.delta, rng);
        const BoundSides probe = holder_young_lower_bound(a, b, c, x, y, quad);
        report.worst_probe_excess = std::max(report.worst_probe_excess, (probe.rhs - sides.lhs) / scale);
        ++report.probes;
    }
    if (report.probes == 0) report.worst_probe_excess = 0.0;
    return report;
}

SaturationReport variational_min_check(const Matrix& a, const Matrix& b_mid, const Matrix& c,
                                       const ExponentQuad& quad, const ProbeOptions& probes) {
    const MinimizingPair pair = minimizing_pair(a, b_mid, c, quad);
    SaturationReport report;
    report.lhs = abs_power_trace(a * b_mid * c, quad.r0());
    report.rhs = min_form_objective(a, b_mid, c, pair.x, pair.y, quad);
    const double scale = std::max(1.0, std::abs(report.lhs));
    report.gap = (report.lhs - report.rhs) / scale;
    report.witness = {pair.x, pair.y};
    report.worst_probe_excess = -kInfinity;
    for (int k = 0; k < probes.count; ++k) {
        Rng rng = make_rng(probes.seed, static_cast<std::uint64_t>(k));
        const Matrix x = perturbed(pair.x, probes.delta, rng);
        const Matrix y = perturbed(pair.y, probes.delta, rng);
        const double value = min_form_objective(a, b_mid, c, x, y, quad);
        report.worst_probe_excess = std::max(report.worst_probe_excess, (report.lhs - value) / scale);
        ++report.probes;
    }
    if (report.probes == 0) report.worst_probe_excess = 0.0;
    return report;
}

}  // namespace tracelab
