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

#include <utility>
#include <vector>

#include "tracelab/channels.hpp"
#include "tracelab/linalg.hpp"
#include "tracelab/scalar_function.hpp"

namespace tracelab {

/// Column-stacking vectorization: entry (i, j) goes to i + n·j.
Matrix vec(const Matrix& x);
Matrix unvec(const Matrix& v, Index n);

/// Linear map on n×n matrices, stored as its n²×n² matrix on vec(X).
class SuperOperator {
public:
    SuperOperator(Index n, Matrix m);

    static SuperOperator identity(Index n);
    /// Throws DimMismatch unless the channel maps n×n to n×n.
    static SuperOperator from_channel(const KrausChannel& ch);

    Index dim() const { return n_; }
    const Matrix& matrix() const { return m_; }
    Matrix apply(const Matrix& x) const;
    /// Adjoint for the pairing Tr(X Y*).
    SuperOperator adjoint() const { return {n_, m_.adjoint()}; }
    /// ‖S − S*‖_F / max(1, ‖S‖_F).
    double hermitian_residual() const;

    SuperOperator operator*(const SuperOperator& o) const;
    SuperOperator operator+(const SuperOperator& o) const;
    SuperOperator operator-(const SuperOperator& o) const;

private:
    Index n_;
    Matrix m_;
};

/// X ↦ AX and X ↦ XB.
SuperOperator left_multiplication(const Matrix& a);
SuperOperator right_multiplication(const Matrix& b);

/// X ↦ Σ F(λ_j, μ_k) E_j X F_k over the spectral projectors of A and B.
/// Throws SingularPower when F is not finite at some eigenvalue pair.
SuperOperator q_f(const PsdMatrix& a, const PsdMatrix& b, const Kernel& f);

/// f(L_A R_B^{-1}) R_B, built by functional calculus on the n²×n² matrix
/// of L_A R_B^{-1}. Needs A and B strictly positive.
SuperOperator j_f(const PsdMatrix& a, const PsdMatrix& b, const ScalarFunction& f);

/// λ_min of the Hermitian part of S. Throws NotHermitian when the
/// anti-Hermitian residual reaches 1e-10.
double psd_gap(const SuperOperator& s);

inline constexpr double kSymmetrizationTol = 1e-10;

/// d²/ds² Tr f(D + sA) at 0, as ⟨A, Q^{D,D}_{f'^{[1]}}(A)⟩. Needs f.d1, f.d2.
double hessian_trace(const ScalarFunction& f, const PsdMatrix& d, const HermitianMatrix& a);

/// Central second difference at steps h and h/2, Richardson-combined.
double second_derivative(const std::function<double(double)>& g, double h);

/// The same quantity as hessian_trace by differentiating Tr f(D + sA).
double hessian_trace_numeric(const ScalarFunction& f, const PsdMatrix& d, const HermitianMatrix& a);

/// ⟨A, (f(L_D R_D^{-1}) R_D)^{-1} B⟩ with ⟨X, Y⟩ = Tr(X Y*). D must be
/// strictly positive with unit trace.
Complex petz_metric(const ScalarFunction& f, const PsdMatrix& d, const Matrix& a, const Matrix& b);

/// ∂_s∂_t ‖D + sA + tB‖_p² at 0 in closed form for diagonal D, A, B
/// (D unit trace). p ≥ 1.
double kprime_commutative(const PsdMatrix& d, const Matrix& a, const Matrix& b, double p);

/// The same mixed partial by central differences (corners at h and 2h,
/// Richardson-combined).
double kprime_numeric(const PsdMatrix& d, const HermitianMatrix& a, const HermitianMatrix& b, double p);

/// Shows that K'_D(D, D) = 2‖D‖_p² varies with D for p ≠ 1, and that at
/// p = 1 the form vanishes on the traceless A = diag(1, −1).
struct PetzFormObstruction {
    double p = 0.0;
    RealVector d1, d2;
    double k1 = 0.0, k2 = 0.0;
    double difference = 0.0;
    bool non_constant = false;
    RealVector traceless;
    double traceless_value = 0.0;
    double traceless_value_numeric = 0.0;
    bool degenerate = false;
};

PetzFormObstruction petz_form_obstruction(double p);

/// λ_min[(J_h^{A,B})^{-1} − φ* (J_h^{φA,φB})^{-1} φ]. Throws NonUnitalChannel.
double petz_monotonicity_check(const ScalarFunction& h, const KrausChannel& ch, const PsdMatrix& a,
                               const PsdMatrix& b);

/// f'' = c + Σ w (t + 1)/(t + x) over atoms (t, w).
struct AtomicMeasure {
    double c = 0.0;
    std::vector<std::pair<double, double>> atoms;

    double second_derivative(double x) const;
    /// c ≥ 0, t ≥ 0, w > 0, and f'' positive and decreasing on a log grid
    /// over [1e-3, 1e3]. Throws DomainViolation.
    void validate() const;
    /// (f'(x) − f'(y))/(x − y) assembled atom by atom.
    Kernel derivative_quotient() const;
};

/// ⟨X, Q^{A,B}(X)⟩ − ⟨φX, Q^{φA,φB}(φX)⟩ for the kernel of mu.
struct DoubleOperatorGap {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double scale = 1.0;
};

DoubleOperatorGap double_operator_gap(const AtomicMeasure& mu, const KrausChannel& ch, const PsdMatrix& a,
                                      const PsdMatrix& b, const Matrix& x);

/// λ_min[Q^{A,B} − φ* Q^{φA,φB} φ] for the kernel of mu.
double double_operator_superop_gap(const AtomicMeasure& mu, const KrausChannel& ch, const PsdMatrix& a,
                                   const PsdMatrix& b);

/// B = t·1 specialization under a pinching: Jensen gap
/// λ_min[φ(k(A)) − k(φ(A))] for k(x) = (f'(x) − f'(t))/(x − t), together
/// with the superoperator gap above.
struct ShiftedQuotientProbe {
    double jensen_gap = 0.0;
    double superop_gap = 0.0;
};

ShiftedQuotientProbe shifted_quotient_probe(const AtomicMeasure& mu, double t, const PsdMatrix& a,
                                            const KrausChannel& pinching);

/// ∫₀¹ x^t dt by 32-node Gauss–Legendre.
double h_quadrature(double x);

/// max |h_quadrature(x) − h(x)| / max(1, |h(x)|) over the grid.
double h_quadrature_max_error(const std::vector<double>& xs);

/// ‖Q_{1/F} Q_F − Id‖_F.
double q_inverse_deviation(const PsdMatrix& a, const PsdMatrix& b, const Kernel& f);

}  // namespace tracelab
