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

#include "tracelab/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace tracelab {

namespace {

void require_same_dim(Index n, const Matrix& m, const char* what) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimMismatch, what);
}

Matrix kernel_or_identity(const Matrix& k, Index n) {
    if (k.size() == 0) return identity(n);
    require_same_dim(n, k, "kernel matrix dimension mismatch");
    return k;
}

}  // namespace

namespace {

// Boundary comparisons allow for rounding in sums like 0.3 + 0.2.
constexpr double kBoundarySlack = 1e-12;

bool at_most(double x, double bound) { return x <= bound + kBoundarySlack * std::max(1.0, std::abs(bound)); }

}  // namespace

bool TripleParams::convexity_admissible() const {
    return p > 0.0 && at_most(p, 0.5) && q > 0.0 && at_most(q, 0.5) && p + q < 1.0 &&
           at_most(1.0 / (1.0 - p - q), s);
}

bool TripleParams::monotonicity_admissible() const {
    return p > 0.0 && at_most(p, 0.5) && q > 0.0 && at_most(q, 0.5) && at_most(p + q, 0.5) && at_most(2.0, s) &&
           at_most(s, 1.0 / (p + q));
}

bool LambdaParams::convexity_admissible() const {
    return std::abs(alpha + beta + 1.0) <= 1e-12 && at_most(-1.0, alpha) && at_most(alpha, 0.0) && at_most(2.0, p);
}

double psi_pqs(const Matrix& a, const PsdMatrix& b, const PsdMatrix& c, const TripleParams& params) {
    const Index n = a.rows();
    require_same_dim(n, a, "A must be square");
    require_same_dim(n, b.matrix(), "B dimension mismatch");
    require_same_dim(n, c.matrix(), "C dimension mismatch");
    const Matrix k1 = kernel_or_identity(params.k1, n);
    const Matrix k2 = kernel_or_identity(params.k2, n);
    const Matrix product =
        matrix_power(b, -params.p).matrix() * k1 * a * k2 * matrix_power(c, -params.q).matrix();
    return abs_power_trace(product, params.s);
}

double lambda_abp(const PsdMatrix& p, const Matrix& x, const LambdaParams& params) {
    if (!(params.p >= 1.0)) throw Error(ErrorCode::BadExponent, "Lambda needs p >= 1");
    require_same_dim(p.dim(), x, "X dimension mismatch");
    if (!p.strictly_positive()) throw Error(ErrorCode::SingularPower, "Lambda needs P strictly positive");
    const Matrix product = matrix_power(p, params.alpha / params.p).matrix() * x *
                           matrix_power(p, params.beta / params.p).matrix();
    return abs_power_trace(product, params.p);
}

double psi_ps(const PsdMatrix& a, const Matrix& k1, const Matrix& k2, double p, double s) {
    if (p == 0.0) throw Error(ErrorCode::BadExponent, "psi_ps needs p != 0");
    const Index n = a.dim();
    require_same_dim(n, k1, "K1 dimension mismatch");
    require_same_dim(n, k2, "K2 dimension mismatch");
    return abs_power_trace(k1 * matrix_power(a, p).matrix() * k2, s);
}

double phi_cfl(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c, double p, double q2, double r2) {
    const Matrix ap = matrix_power(a, p).matrix();
    const Matrix product = ap * matrix_power(b, q2).matrix() * ap * matrix_power(c, r2).matrix();
    return product.trace().real();
}

double phi_cfl_schatten(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c, double p, double q2,
                        double r2) {
    const Matrix product =
        matrix_power(b, 0.5 * q2).matrix() * matrix_power(a, p).matrix() * matrix_power(c, 0.5 * r2).matrix();
    return abs_power_trace(product, 2.0);
}

double two_var(const PsdMatrix& a, const PsdMatrix& b, double p, double q, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::BadExponent, "two_var needs s > 0");
    const Matrix bh = matrix_power(b, 0.5 * q).matrix();
    const PsdMatrix inner(hermitian_part(bh * matrix_power(a, p).matrix() * bh));
    double acc = 0.0;
    for (Index i = 0; i < inner.dim(); ++i) {
        const double lam = std::max(inner.eig().values(i), 0.0);
        if (lam > 0.0) acc += std::pow(lam, s);
    }
    return acc;
}

}  // namespace tracelab
