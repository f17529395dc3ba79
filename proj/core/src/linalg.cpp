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

#include "tracelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tracelab {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPsd: return "NotPsd";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularPower: return "SingularPower";
        case ErrorCode::BadExponent: return "BadExponent";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::BadWeights: return "BadWeights";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::NonUnitalChannel: return "NonUnitalChannel";
        case ErrorCode::BadArgument: return "BadArgument";
    }
    return "Unknown";
}

namespace {

// Unitary G = [[c, s], [-s·e, c·e]] acting on coordinates (p, q); chosen so
// that G* [[a, b], [conj(b), d]] G is diagonal.
struct Rotation {
    double c;
    double s;
    Complex e;
};

Rotation jacobi_rotation(double a, double d, Complex b) {
    const double mag = std::abs(b);
    const Complex e = std::conj(b) / mag;
    const double theta = (d - a) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    return {c, t * c, e};
}

void rotate_columns(Matrix& m, Index p, Index q, const Rotation& r) {
    for (Index k = 0; k < m.rows(); ++k) {
        const Complex mp = m(k, p);
        const Complex mq = m(k, q);
        m(k, p) = r.c * mp - r.s * r.e * mq;
        m(k, q) = r.s * mp + r.c * r.e * mq;
    }
}

void rotate_rows(Matrix& m, Index p, Index q, const Rotation& r) {
    const Complex ce = std::conj(r.e);
    for (Index k = 0; k < m.cols(); ++k) {
        const Complex mp = m(p, k);
        const Complex mq = m(q, k);
        m(p, k) = r.c * mp - r.s * ce * mq;
        m(q, k) = r.s * mp + r.c * ce * mq;
    }
}

double offdiag_norm(const Matrix& a) {
    double acc = 0.0;
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            if (i != j) acc += std::norm(a(i, j));
        }
    }
    return std::sqrt(acc);
}

EigenDecomposition sorted(RealVector values, const Matrix& vectors) {
    const Index n = values.size();
    std::vector<Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values(a) < values(b); });
    EigenDecomposition out{RealVector(n), Matrix(vectors.rows(), n)};
    for (Index k = 0; k < n; ++k) {
        out.values(k) = values(order[static_cast<size_t>(k)]);
        out.vectors.col(k) = vectors.col(order[static_cast<size_t>(k)]);
    }
    return out;
}

EigenDecomposition jacobi_eig(Matrix a) {
    const Index n = a.rows();
    Matrix v = identity(n);
    const double norm = a.norm();
    const double target = kJacobiTol * norm;
    const long budget = 30L * n * n;
    const double negligible = 1e-3 * std::numeric_limits<double>::epsilon() * norm / static_cast<double>(n);
    long rotations = 0;

    while (offdiag_norm(a) > target) {
        bool rotated = false;
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                if (std::abs(b) <= negligible) continue;
                if (++rotations > budget) {
                    throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded its rotation budget");
                }
                const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), b);
                rotate_columns(a, p, q, r);
                rotate_rows(a, p, q, r);
                rotate_columns(v, p, q, r);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                rotated = true;
            }
        }
        if (!rotated) break;
    }
    RealVector values(n);
    for (Index i = 0; i < n; ++i) values(i) = a(i, i).real();
    return sorted(std::move(values), v);
}

// Completes the columns flagged in `bad` to an orthonormal basis.
void complete_columns(Matrix& u, const std::vector<bool>& bad) {
    const Index n = u.rows();
    std::vector<Index> good;
    for (Index j = 0; j < u.cols(); ++j) {
        if (!bad[static_cast<size_t>(j)]) good.push_back(j);
    }
    Index candidate = 0;
    for (Index j = 0; j < u.cols(); ++j) {
        if (!bad[static_cast<size_t>(j)]) continue;
        while (candidate < n) {
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
            w(candidate++) = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (Index g : good) w -= u.col(g) * (u.col(g).adjoint() * w)(0);
            }
            const double nrm = w.norm();
            if (nrm > 0.5) {
                u.col(j) = w / nrm;
                good.push_back(j);
                break;
            }
        }
    }
}

}  // namespace

Matrix EigenDecomposition::reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

Matrix SvdResult::reconstruct() const {
    return u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

double frobenius_norm(const Matrix& m) { return m.norm(); }

double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - identity(u.rows())).norm() <= tol * std::sqrt(static_cast<double>(u.rows()));
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol * m.norm();
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Complex hs_inner(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw Error(ErrorCode::DimMismatch, "shapes differ");
    return (x.array() * y.conjugate().array()).sum();
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw Error(ErrorCode::DimMismatch, "Hermitian matrix must be square and non-empty");
    }
    if (!m.allFinite()) throw Error(ErrorCode::DomainViolation, "matrix has non-finite entries");
    if (!is_hermitian(m)) throw Error(ErrorCode::NotHermitian, "matrix differs from its adjoint");
    m_ = hermitian_part(m);
}

PsdMatrix::PsdMatrix(const Matrix& m) : PsdMatrix(HermitianMatrix(m)) {}

PsdMatrix::PsdMatrix(const HermitianMatrix& h) : m_(h.matrix()), eig_(hermitian_eig(h)) {
    const double scale = std::max(1.0, eig_.values.cwiseAbs().maxCoeff());
    if (eig_.values(0) < -kPsdTol * scale) {
        throw Error(ErrorCode::NotPsd, "matrix has a negative eigenvalue");
    }
}

PsdMatrix PsdMatrix::from_spectral(const RealVector& values, const Matrix& vectors) {
    PsdMatrix out;
    out.eig_ = sorted(values, vectors);
    out.m_ = hermitian_part(out.eig_.reconstruct());
    return out;
}

bool PsdMatrix::strictly_positive() const {
    return max_eigenvalue() > 0.0 && min_eigenvalue() > kInverseTol * max_eigenvalue();
}

EigenDecomposition hermitian_eig(const HermitianMatrix& m) {
    if (m.dim() == 1) {
        return {RealVector::Constant(1, m.matrix()(0, 0).real()), identity(1)};
    }
    return jacobi_eig(m.matrix());
}

EigenDecomposition hermitian_eig(const Matrix& m) { return hermitian_eig(HermitianMatrix(m)); }

SvdResult svd(const Matrix& x) {
    if (x.rows() != x.cols() || x.rows() < 1) {
        throw Error(ErrorCode::DimMismatch, "svd expects a square non-empty matrix");
    }
    if (!x.allFinite()) throw Error(ErrorCode::DomainViolation, "matrix has non-finite entries");
    const Index n = x.rows();
    if (x.norm() == 0.0) return {identity(n), RealVector::Zero(n), identity(n)};

    const EigenDecomposition gram = hermitian_eig(hermitian_part(x.adjoint() * x));
    Matrix v = gram.vectors.rowwise().reverse();
    Matrix w = x * v;

    // One-sided Jacobi polish: the columns of X·V are orthogonal up to the
    // accuracy of the Gram eigensolver; a couple of sweeps restore full
    // orthogonality so that U is unitary to working precision.
    for (int sweep = 0; sweep < 30; ++sweep) {
        bool rotated = false;
        const double wmax = w.colwise().norm().maxCoeff();
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double a = w.col(p).squaredNorm();
                const double d = w.col(q).squaredNorm();
                if (std::sqrt(std::min(a, d)) <= kRankTol * wmax) continue;
                const Complex b = (w.col(p).adjoint() * w.col(q))(0);
                if (std::abs(b) <= 1e-15 * std::sqrt(a * d)) continue;
                const Rotation r = jacobi_rotation(a, d, b);
                rotate_columns(w, p, q, r);
                rotate_columns(v, p, q, r);
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    RealVector norms = w.colwise().norm().transpose();
    std::vector<Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return norms(a) > norms(b); });

    SvdResult out{Matrix(n, n), RealVector(n), Matrix(n, n)};
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<size_t>(k)];
        out.sigma(k) = norms(src);
        out.v.col(k) = v.col(src);
        out.u.col(k) = w.col(src);
    }
    const double smax = out.sigma(0);
    std::vector<bool> bad(static_cast<size_t>(n), false);
    bool any_bad = false;
    for (Index k = 0; k < n; ++k) {
        if (out.sigma(k) > kRankTol * smax) {
            out.u.col(k) /= out.sigma(k);
        } else {
            bad[static_cast<size_t>(k)] = true;
            any_bad = true;
        }
    }
    if (any_bad) complete_columns(out.u, bad);
    return out;
}

PolarDecomposition polar(const Matrix& x) {
    const SvdResult s = svd(x);
    return {s.u * s.v.adjoint(), PsdMatrix::from_spectral(s.sigma, s.v)};
}

PsdMatrix matrix_power(const PsdMatrix& p, double t) {
    const EigenDecomposition& e = p.eig();
    const Index n = p.dim();
    if (t == 0.0) return PsdMatrix::from_spectral(RealVector::Ones(n), e.vectors);
    const bool integral = std::floor(t) == t;
    if ((t < 0.0 || !integral) && !p.strictly_positive()) {
        throw Error(ErrorCode::SingularPower, "negative or fractional power of a numerically singular matrix");
    }
    RealVector values(n);
    for (Index i = 0; i < n; ++i) values(i) = std::pow(std::max(e.values(i), 0.0), t);
    return PsdMatrix::from_spectral(values, e.vectors);
}

Matrix spectral_apply(const EigenDecomposition& e, const std::function<double(double)>& f) {
    RealVector fv(e.values.size());
    for (Index i = 0; i < fv.size(); ++i) fv(i) = f(e.values(i));
    return e.vectors * fv.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

double abs_power_trace(const Matrix& x, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::BadExponent, "Tr|X|^s needs s > 0");
    const RealVector sigma = svd(x).sigma;
    double acc = 0.0;
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > 0.0) acc += std::pow(sigma(i), s);
    }
    return acc;
}

double abs_power_trace_compensated(const Matrix& x, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::BadExponent, "Tr|X|^s needs s > 0");
    const RealVector sigma = svd(x).sigma;
    CompensatedSum acc;
    for (Index i = sigma.size() - 1; i >= 0; --i) {
        if (sigma(i) > 0.0) acc.add(std::pow(sigma(i), s));
    }
    return acc.value();
}

double schatten_norm(const Matrix& x, double p) {
    if (p == kInfinity) return operator_norm(x);
    if (!(p >= 1.0)) throw Error(ErrorCode::BadExponent, "Schatten norm needs p >= 1");
    return std::pow(abs_power_trace(x, p), 1.0 / p);
}

double operator_norm(const Matrix& x) { return svd(x).sigma(0); }

Matrix regularize(const Matrix& x, double eps) {
    if (eps < 0.0) eps = 1e-8 * operator_norm(x);
    return x + eps * identity(x.rows());
}

void CompensatedSum::add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
        comp_ += (sum_ - t) + v;
    } else {
        comp_ += (v - t) + sum_;
    }
    sum_ = t;
}

}  // namespace tracelab
