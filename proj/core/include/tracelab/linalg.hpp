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

#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "tracelab/error.hpp"

namespace tracelab {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix. Square for every functional argument; Kraus
/// operators of dimension-changing channels are the only rectangular use.
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Eigen-pairs of a Hermitian matrix, eigenvalues ascending, eigenvectors in
/// the columns of a unitary matrix.
struct EigenDecomposition {
    RealVector values;
    Matrix vectors;

    Matrix reconstruct() const;
};

/// X = U diag(sigma) V*, sigma descending and nonnegative.
struct SvdResult {
    Matrix u;
    RealVector sigma;
    Matrix v;

    Matrix reconstruct() const;
};

/// A matrix that has been checked (and symmetrized) to be Hermitian.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const Matrix& m);

    const Matrix& matrix() const { return m_; }
    Index dim() const { return m_.rows(); }

private:
    Matrix m_;
};

/// Positive semidefinite matrix with its spectral decomposition computed once
/// at construction. Immutable, so it can be shared across threads.
class PsdMatrix {
public:
    explicit PsdMatrix(const Matrix& m);
    explicit PsdMatrix(const HermitianMatrix& m);

    /// Builds from known spectral data without re-diagonalizing. Values need
    /// not be sorted; they are reordered ascending.
    static PsdMatrix from_spectral(const RealVector& values, const Matrix& vectors);

    const Matrix& matrix() const { return m_; }
    const EigenDecomposition& eig() const { return eig_; }
    Index dim() const { return m_.rows(); }
    double min_eigenvalue() const { return eig_.values(0); }
    double max_eigenvalue() const { return eig_.values(eig_.values.size() - 1); }

    /// λ_min > 1e-12 · λ_max, the threshold used for negative and
    /// fractional powers.
    bool strictly_positive() const;

private:
    PsdMatrix() = default;

    Matrix m_;
    EigenDecomposition eig_;
};

struct PolarDecomposition {
    Matrix unitary;
    PsdMatrix modulus;
};

// Tolerances.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kInverseTol = 1e-12;
inline constexpr double kJacobiTol = 1e-14;
inline constexpr double kRankTol = 1e-13;

Matrix identity(Index n);
double frobenius_norm(const Matrix& m);
/// max(1, ‖m‖_F); every relative tolerance in the library is taken against it.
double scale_of(const Matrix& m);
bool is_unitary(const Matrix& u, double tol = 1e-10);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
Matrix hermitian_part(const Matrix& m);
/// Standard Kronecker product; block (i, j) is a(i, j)·b.
Matrix kron(const Matrix& a, const Matrix& b);
/// Hilbert–Schmidt pairing Tr(X Y*).
Complex hs_inner(const Matrix& x, const Matrix& y);

/// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
EigenDecomposition hermitian_eig(const HermitianMatrix& m);
EigenDecomposition hermitian_eig(const Matrix& m);

SvdResult svd(const Matrix& x);

/// X = U|X| with U completed to a unitary when X is rank deficient.
PolarDecomposition polar(const Matrix& x);

/// P^t through the spectral decomposition. 0^0 is taken as 1.
PsdMatrix matrix_power(const PsdMatrix& p, double t);

/// U f(diag) U* for a real function of the eigenvalues.
Matrix spectral_apply(const EigenDecomposition& e, const std::function<double(double)>& f);

/// Tr|X|^s = Σ σ_i^s.
double abs_power_trace(const Matrix& x, double s);

/// Same sum accumulated with Neumaier compensation; used when re-verifying
/// search witnesses.
double abs_power_trace_compensated(const Matrix& x, double s);

/// (Tr|X|^p)^{1/p}; p = kInfinity gives the operator norm. Throws
/// BadExponent for p < 1.
double schatten_norm(const Matrix& x, double p);

double operator_norm(const Matrix& x);

/// X + eps·1. A negative eps selects the default 1e-8·‖X‖.
Matrix regularize(const Matrix& x, double eps = -1.0);

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace tracelab
