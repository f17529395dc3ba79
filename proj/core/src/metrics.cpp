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

#include "tracelab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace tracelab {

namespace {

void require_square(const Matrix& x, Index n, const char* what) {
    if (x.rows() != n || x.cols() != n) {
        throw Error(ErrorCode::DimMismatch, std::string(what) + " must be " + std::to_string(n) + "×" +
                                                std::to_string(n));
    }
}

void require_strict(const PsdMatrix& p, const char* what) {
    if (!p.strictly_positive()) {
        throw Error(ErrorCode::SingularPower, std::string(what) + " must be strictly positive");
    }
}

void require_unital(const KrausChannel& ch) {
    if (!ch.is_unital()) throw Error(ErrorCode::NonUnitalChannel, "monotonicity needs a unital channel");
}

// Positive-definite PsdMatrix from an arbitrary matrix, symmetrizing the
// rounding residue a channel output carries.
PsdMatrix as_psd(const Matrix& m) { return PsdMatrix(hermitian_part(m)); }

bool is_diagonal(const Matrix& m) {
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            if (i != j && m(i, j) != Complex(0.0)) return false;
        }
    }
    return true;
}

void require_unit_trace(const PsdMatrix& d) {
    if (std::abs(d.matrix().trace().real() - 1.0) > 1e-10) {
        throw Error(ErrorCode::DomainViolation, "D must have unit trace");
    }
}

}  // namespace

Matrix vec(const Matrix& x) {
    return Eigen::Map<const Matrix>(x.data(), x.rows() * x.cols(), 1);
}

Matrix unvec(const Matrix& v, Index n) {
    if (v.size() != n * n) throw Error(ErrorCode::DimMismatch, "vector length is not n²");
    const Matrix col = v;  // force contiguous storage
    return Eigen::Map<const Matrix>(col.data(), n, n);
}

SuperOperator::SuperOperator(Index n, Matrix m) : n_(n), m_(std::move(m)) {
    if (n < 1 || m_.rows() != n * n || m_.cols() != n * n) {
        throw Error(ErrorCode::DimMismatch, "superoperator matrix must be n²×n²");
    }
}

SuperOperator SuperOperator::identity(Index n) { return {n, tracelab::identity(n * n)}; }

SuperOperator SuperOperator::from_channel(const KrausChannel& ch) {
    if (ch.in_dim() != ch.out_dim()) throw Error(ErrorCode::DimMismatch, "channel must preserve dimension");
    return {ch.in_dim(), ch.superoperator_matrix()};
}

Matrix SuperOperator::apply(const Matrix& x) const {
    require_square(x, n_, "superoperator input");
    return unvec(m_ * vec(x), n_);
}

double SuperOperator::hermitian_residual() const { return (m_ - m_.adjoint()).norm() / scale_of(m_); }

SuperOperator SuperOperator::operator*(const SuperOperator& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::DimMismatch, "superoperator dimensions differ");
    return {n_, m_ * o.m_};
}

SuperOperator SuperOperator::operator+(const SuperOperator& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::DimMismatch, "superoperator dimensions differ");
    return {n_, m_ + o.m_};
}

SuperOperator SuperOperator::operator-(const SuperOperator& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::DimMismatch, "superoperator dimensions differ");
    return {n_, m_ - o.m_};
}

SuperOperator left_multiplication(const Matrix& a) {
    require_square(a, a.rows(), "left factor");
    return {a.rows(), kron(tracelab::identity(a.rows()), a)};
}

SuperOperator right_multiplication(const Matrix& b) {
    require_square(b, b.rows(), "right factor");
    return {b.rows(), kron(b.transpose(), tracelab::identity(b.rows()))};
}

SuperOperator q_f(const PsdMatrix& a, const PsdMatrix& b, const Kernel& f) {
    const Index n = a.dim();
    if (b.dim() != n) throw Error(ErrorCode::DimMismatch, "A and B must have the same dimension");
    const Matrix& u = a.eig().vectors;
    const Matrix& v = b.eig().vectors;
    // vec(U Y V*) = (conj(V) ⊗ U) vec(Y); entry j + n·k of vec(U* X V) is
    // scaled by F(λ_j, μ_k).
    Eigen::VectorXcd weights(n * n);
    for (Index k = 0; k < n; ++k) {
        for (Index j = 0; j < n; ++j) {
            const double w = f(a.eig().values(j), b.eig().values(k));
            if (!std::isfinite(w)) {
                throw Error(ErrorCode::SingularPower, "kernel '" + f.id + "' is undefined at an eigenvalue pair");
            }
            weights(j + n * k) = w;
        }
    }
    const Matrix outer = kron(v.conjugate(), u);
    return {n, outer * weights.asDiagonal() * outer.adjoint()};
}

SuperOperator j_f(const PsdMatrix& a, const PsdMatrix& b, const ScalarFunction& f) {
    const Index n = a.dim();
    if (b.dim() != n) throw Error(ErrorCode::DimMismatch, "A and B must have the same dimension");
    require_strict(a, "A");
    require_strict(b, "B");
    const Matrix b_inv = matrix_power(b, -1.0).matrix();
    // L_A R_B^{-1} acts on vec(X) as (B^{-1})ᵀ ⊗ A, a positive definite matrix.
    const EigenDecomposition ratio = hermitian_eig(hermitian_part(kron(b_inv.transpose(), a.matrix())));
    const Matrix f_ratio = spectral_apply(ratio, [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) throw Error(ErrorCode::SingularPower, "function '" + f.id + "' is undefined");
        return y;
    });
    return {n, f_ratio * right_multiplication(b.matrix()).matrix()};
}

double psd_gap(const SuperOperator& s) {
    const double residual = s.hermitian_residual();
    if (residual >= kSymmetrizationTol) {
        throw Error(ErrorCode::NotHermitian,
                    "superoperator difference is not self-adjoint (residual " + std::to_string(residual) + ")");
    }
    return hermitian_eig(hermitian_part(s.matrix())).values(0);
}

double hessian_trace(const ScalarFunction& f, const PsdMatrix& d, const HermitianMatrix& a) {
    require_strict(d, "D");
    if (a.dim() != d.dim()) throw Error(ErrorCode::DimMismatch, "D and A must have the same dimension");
    const SuperOperator q = q_f(d, d, diff_quotient(derivative(f)));
    return hs_inner(a.matrix(), q.apply(a.matrix())).real();
}

double second_derivative(const std::function<double(double)>& g, double h) {
    const double g0 = g(0.0);
    auto central = [&](double step) { return (g(step) - 2.0 * g0 + g(-step)) / (step * step); };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double hessian_trace_numeric(const ScalarFunction& f, const PsdMatrix& d, const HermitianMatrix& a) {
    require_strict(d, "D");
    if (a.dim() != d.dim()) throw Error(ErrorCode::DimMismatch, "D and A must have the same dimension");
    const double a_norm = operator_norm(a.matrix());
    if (a_norm == 0.0) return 0.0;
    // Steps stay well inside the positive cone.
    const double h = 1e-2 * d.min_eigenvalue() / a_norm;
    auto g = [&](double s) {
        const EigenDecomposition e = hermitian_eig(HermitianMatrix(d.matrix() + s * a.matrix()));
        CompensatedSum sum;
        for (Index i = 0; i < e.values.size(); ++i) sum.add(f(e.values(i)));
        return sum.value();
    };
    return second_derivative(g, h);
}

Complex petz_metric(const ScalarFunction& f, const PsdMatrix& d, const Matrix& a, const Matrix& b) {
    require_strict(d, "D");
    require_unit_trace(d);
    require_square(a, d.dim(), "A");
    require_square(b, d.dim(), "B");
    // (f(L_D R_D^{-1}) R_D)^{-1} is Q with kernel 1/(f(x/y) y).
    const SuperOperator inv = q_f(d, d, reciprocal(ratio_kernel(f)));
    return hs_inner(a, inv.apply(b));
}

double kprime_commutative(const PsdMatrix& d, const Matrix& a, const Matrix& b, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponent, "p must be at least 1");
    require_strict(d, "D");
    require_unit_trace(d);
    require_square(a, d.dim(), "A");
    require_square(b, d.dim(), "B");
    if (!is_diagonal(d.matrix()) || !is_diagonal(a) || !is_diagonal(b)) {
        throw Error(ErrorCode::DomainViolation, "commutative form needs diagonal D, A, B");
    }
    const Index n = d.dim();
    CompensatedSum norm_p, tr_a, tr_b, tr_ab;
    for (Index i = 0; i < n; ++i) {
        const double di = d.matrix()(i, i).real();
        const double ai = a(i, i).real();
        const double bi = b(i, i).real();
        norm_p.add(std::pow(di, p));
        tr_a.add(std::pow(di, p - 1.0) * ai);
        tr_b.add(std::pow(di, p - 1.0) * bi);
        tr_ab.add(std::pow(di, p - 2.0) * ai * bi);
    }
    const double norm = std::pow(norm_p.value(), 1.0 / p);
    return 2.0 * (2.0 - p) * std::pow(norm, 2.0 - 2.0 * p) * tr_a.value() * tr_b.value() +
           2.0 * (p - 1.0) * std::pow(norm, 2.0 - p) * tr_ab.value();
}

double kprime_numeric(const PsdMatrix& d, const HermitianMatrix& a, const HermitianMatrix& b, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponent, "p must be at least 1");
    require_strict(d, "D");
    if (a.dim() != d.dim() || b.dim() != d.dim()) {
        throw Error(ErrorCode::DimMismatch, "D, A, B must have the same dimension");
    }
    const double spread = std::max(operator_norm(a.matrix()), operator_norm(b.matrix()));
    if (spread == 0.0) return 0.0;
    const double h = 1e-3 * d.min_eigenvalue() / spread;
    auto g = [&](double s, double t) {
        const double norm = schatten_norm(d.matrix() + s * a.matrix() + t * b.matrix(), p);
        return norm * norm;
    };
    auto mixed = [&](double step) {
        return (g(step, step) - g(step, -step) - g(-step, step) + g(-step, -step)) / (4.0 * step * step);
    };
    return (4.0 * mixed(h) - mixed(2.0 * h)) / 3.0;
}

PetzFormObstruction petz_form_obstruction(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponent, "p must be at least 1");
    PetzFormObstruction out;
    out.p = p;
    out.d1 = RealVector(2);
    out.d1 << 0.5, 0.5;
    out.d2 = RealVector(2);
    out.d2 << 0.75, 0.25;
    const PsdMatrix d1(Matrix(out.d1.cast<Complex>().asDiagonal()));
    const PsdMatrix d2(Matrix(out.d2.cast<Complex>().asDiagonal()));
    out.k1 = kprime_commutative(d1, d1.matrix(), d1.matrix(), p);
    out.k2 = kprime_commutative(d2, d2.matrix(), d2.matrix(), p);
    out.difference = out.k2 - out.k1;
    out.non_constant = std::abs(out.difference) > 1e-3;

    out.traceless = RealVector(2);
    out.traceless << 1.0, -1.0;
    const Matrix a = out.traceless.cast<Complex>().asDiagonal();
    out.traceless_value = kprime_commutative(d1, a, a, p);
    out.traceless_value_numeric = kprime_numeric(d1, HermitianMatrix(a), HermitianMatrix(a), p);
    out.degenerate = std::abs(out.traceless_value) <= 1e-12;
    return out;
}

double petz_monotonicity_check(const ScalarFunction& h, const KrausChannel& ch, const PsdMatrix& a,
                               const PsdMatrix& b) {
    require_unital(ch);
    require_strict(a, "A");
    require_strict(b, "B");
    const SuperOperator phi = SuperOperator::from_channel(ch);
    if (phi.dim() != a.dim() || b.dim() != a.dim()) {
        throw Error(ErrorCode::DimMismatch, "channel and inputs must share one dimension");
    }
    const Kernel inverse = reciprocal(ratio_kernel(h));
    const SuperOperator rhs = q_f(a, b, inverse);
    const SuperOperator inner = q_f(as_psd(ch.apply(a.matrix())), as_psd(ch.apply(b.matrix())), inverse);
    return psd_gap(rhs - phi.adjoint() * inner * phi);
}

double AtomicMeasure::second_derivative(double x) const {
    double out = c;
    for (const auto& [t, w] : atoms) out += w * (t + 1.0) / (t + x);
    return out;
}

void AtomicMeasure::validate() const {
    if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::DomainViolation, "c must be nonnegative");
    for (const auto& [t, w] : atoms) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainViolation, "atom location must be ≥ 0");
        if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::DomainViolation, "atom weight must be > 0");
    }
    double previous = kInfinity;
    for (int i = 0; i <= 60; ++i) {
        const double x = std::pow(10.0, -3.0 + 0.1 * i);
        const double g = second_derivative(x);
        if (!(g > 0.0)) throw Error(ErrorCode::DomainViolation, "f'' must be positive");
        if (g > previous) throw Error(ErrorCode::DomainViolation, "f'' must be decreasing");
        previous = g;
    }
}

Kernel AtomicMeasure::derivative_quotient() const {
    return {"measure", [c = c, atoms = atoms](double x, double y) {
                double out = c;
                for (const auto& [t, w] : atoms) {
                    // (log(x + t) − log(y + t))/(x − y) = log1p(u)/(u (y + t)).
                    const double base = y + t;
                    const double u = (x - y) / base;
                    double q;
                    if (std::abs(u) < 1e-4) {
                        q = (1.0 - u / 2.0 + u * u / 3.0 - u * u * u / 4.0) / base;
                    } else {
                        q = std::log1p(u) / (x - y);
                    }
                    out += w * (t + 1.0) * q;
                }
                return out;
            }};
}

DoubleOperatorGap double_operator_gap(const AtomicMeasure& mu, const KrausChannel& ch, const PsdMatrix& a,
                                      const PsdMatrix& b, const Matrix& x) {
    require_unital(ch);
    mu.validate();
    require_square(x, a.dim(), "X");
    const Kernel k = mu.derivative_quotient();
    const Matrix phi_x = ch.apply(x);
    DoubleOperatorGap out;
    out.rhs = hs_inner(x, q_f(a, b, k).apply(x)).real();
    out.lhs =
        hs_inner(phi_x, q_f(as_psd(ch.apply(a.matrix())), as_psd(ch.apply(b.matrix())), k).apply(phi_x)).real();
    out.gap = out.rhs - out.lhs;
    out.scale = std::max(1.0, std::abs(out.rhs));
    return out;
}

double double_operator_superop_gap(const AtomicMeasure& mu, const KrausChannel& ch, const PsdMatrix& a,
                                   const PsdMatrix& b) {
    require_unital(ch);
    mu.validate();
    const SuperOperator phi = SuperOperator::from_channel(ch);
    const Kernel k = mu.derivative_quotient();
    const SuperOperator inner = q_f(as_psd(ch.apply(a.matrix())), as_psd(ch.apply(b.matrix())), k);
    return psd_gap(q_f(a, b, k) - phi.adjoint() * inner * phi);
}

ShiftedQuotientProbe shifted_quotient_probe(const AtomicMeasure& mu, double t, const PsdMatrix& a,
                                            const KrausChannel& pinching) {
    if (!(t > 0.0)) throw Error(ErrorCode::DomainViolation, "shift t must be positive");
    require_unital(pinching);
    mu.validate();
    const Kernel k = mu.derivative_quotient();
    auto quotient = [&](double x) { return k(x, t); };
    const Matrix pinched = pinching.apply(a.matrix());
    const Matrix lhs = spectral_apply(hermitian_eig(hermitian_part(pinched)), quotient);
    const Matrix rhs = pinching.apply(spectral_apply(a.eig(), quotient));
    ShiftedQuotientProbe out;
    out.jensen_gap = hermitian_eig(hermitian_part(rhs - lhs)).values(0);
    const PsdMatrix b(Matrix(t * tracelab::identity(a.dim())));
    out.superop_gap = double_operator_superop_gap(mu, pinching, a, b);
    return out;
}

double h_quadrature(double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::DomainViolation, "h needs x > 0");
    return boost::math::quadrature::gauss<double, 32>::integrate([x](double t) { return std::pow(x, t); }, 0.0, 1.0);
}

double h_quadrature_max_error(const std::vector<double>& xs) {
    const ScalarFunction h = scalar_function("h");
    double worst = 0.0;
    for (double x : xs) {
        const double exact = h(x);
        worst = std::max(worst, std::abs(h_quadrature(x) - exact) / std::max(1.0, std::abs(exact)));
    }
    return worst;
}

double q_inverse_deviation(const PsdMatrix& a, const PsdMatrix& b, const Kernel& f) {
    const SuperOperator forward = q_f(a, b, f);
    const SuperOperator back = q_f(a, b, reciprocal(f));
    return ((back * forward).matrix() - tracelab::identity(a.dim() * a.dim())).norm();
}

}  // namespace tracelab
