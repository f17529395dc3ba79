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

#include <cmath>

#include "support.hpp"
#include "tracelab/error.hpp"

namespace tracelab {
namespace {

using testing::diag;
using testing::matrices_near;

TEST(HermitianEig, IdentityHasUnitEigenvalues) {
    const EigenDecomposition e = hermitian_eig(identity(3));
    for (Index i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(e.values(i), 1.0);
    EXPECT_TRUE(is_unitary(e.vectors));
}

TEST(HermitianEig, DiagonalSortsAscending) {
    const EigenDecomposition e = hermitian_eig(diag({3, 1, 2}));
    EXPECT_DOUBLE_EQ(e.values(0), 1.0);
    EXPECT_DOUBLE_EQ(e.values(1), 2.0);
    EXPECT_DOUBLE_EQ(e.values(2), 3.0);
    // Permutation eigenvectors up to phase.
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(e.vectors(2, 1)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(e.vectors(0, 2)), 1.0, 1e-14);
}

TEST(HermitianEig, TwoByTwoClosedForm) {
    // [[2, i], [−i, 2]] has eigenvalues 1 and 3.
    const Matrix m = testing::from_rows(2, 2, {2.0, Complex(0, 1), Complex(0, -1), 2.0});
    const EigenDecomposition e = hermitian_eig(m);
    EXPECT_NEAR(e.values(0), 1.0, 1e-14);
    EXPECT_NEAR(e.values(1), 3.0, 1e-14);
}

TEST(HermitianEig, RandomReconstruction) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng = make_rng(seed);
        const Matrix g = ginibre(4, 4, rng);
        const Matrix h = g + g.adjoint();
        const EigenDecomposition e = hermitian_eig(h);
        EXPECT_TRUE(matrices_near(e.reconstruct(), h, 1e-10)) << "seed " << seed;
        EXPECT_TRUE(is_unitary(e.vectors)) << "seed " << seed;
        for (Index i = 1; i < 4; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
    }
}

TEST(HermitianEig, TraceAndDeterminantMatchEigen) {
    // Independent oracle: Eigen's own Hermitian solver.
    Rng rng = make_rng(11);
    const Matrix h = random_hermitian(5, rng);
    const EigenDecomposition e = hermitian_eig(h);
    Eigen::SelfAdjointEigenSolver<Matrix> reference(h);
    for (Index i = 0; i < 5; ++i) EXPECT_NEAR(e.values(i), reference.eigenvalues()(i), 1e-11);
}

TEST(HermitianEig, RejectsNonHermitian) {
    const Matrix m = testing::from_rows(2, 2, {1.0, 2.0, 0.0, 1.0});
    try {
        hermitian_eig(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(Svd, IdentityAndDiagonal) {
    const SvdResult id = svd(identity(3));
    for (Index i = 0; i < 3; ++i) EXPECT_NEAR(id.sigma(i), 1.0, 1e-15);
    const SvdResult d = svd(diag({-2, 3}));
    EXPECT_NEAR(d.sigma(0), 3.0, 1e-14);
    EXPECT_NEAR(d.sigma(1), 2.0, 1e-14);
    EXPECT_TRUE(matrices_near(d.reconstruct(), diag({-2, 3}), 1e-12));
}

TEST(Svd, SquaredSingularValuesAreEigenvaluesOfGram) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = make_rng(seed, 1);
        const Matrix x = ginibre(3, 3, rng);
        const SvdResult r = svd(x);
        Eigen::SelfAdjointEigenSolver<Matrix> gram(x.adjoint() * x);
        for (Index i = 0; i < 3; ++i) {
            EXPECT_NEAR(r.sigma(i) * r.sigma(i), gram.eigenvalues()(2 - i), 1e-10 * scale_of(x) * scale_of(x));
        }
        EXPECT_TRUE(matrices_near(r.reconstruct(), x, 1e-10));
        EXPECT_TRUE(is_unitary(r.u));
        EXPECT_TRUE(is_unitary(r.v));
    }
}

TEST(Svd, RankDeficientStillReconstructs) {
    Rng rng = make_rng(3);
    const Matrix u = ginibre(3, 1, rng);
    const Matrix v = ginibre(1, 3, rng);
    const Matrix x = u * v;
    const SvdResult r = svd(x);
    EXPECT_TRUE(matrices_near(r.reconstruct(), x, 1e-10));
    EXPECT_TRUE(is_unitary(r.u));
    EXPECT_NEAR(r.sigma(1), 0.0, 1e-10 * r.sigma(0));
}

TEST(Polar, Examples) {
    const PolarDecomposition id = polar(identity(2));
    EXPECT_TRUE(matrices_near(id.unitary, identity(2), 1e-14));
    EXPECT_TRUE(matrices_near(id.modulus.matrix(), identity(2), 1e-14));

    const PolarDecomposition d = polar(diag({-1, 2}));
    EXPECT_TRUE(matrices_near(d.unitary, diag({-1, 1}), 1e-13));
    EXPECT_TRUE(matrices_near(d.modulus.matrix(), diag({1, 2}), 1e-13));
}

TEST(Polar, RandomInvertibleReconstructs) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = make_rng(seed, 2);
        const Matrix x = random_invertible(3, rng);
        const PolarDecomposition p = polar(x);
        EXPECT_TRUE(is_unitary(p.unitary));
        EXPECT_TRUE(matrices_near(p.unitary * p.modulus.matrix(), x, 1e-10));
        // |X| agrees with V diag(σ) V* from the SVD.
        const SvdResult s = svd(x);
        const Matrix abs_x = s.v * s.sigma.cast<Complex>().asDiagonal() * s.v.adjoint();
        EXPECT_TRUE(matrices_near(p.modulus.matrix(), abs_x, 1e-9));
    }
}

TEST(Polar, RankDeficientCompletesToUnitary) {
    const Matrix x = testing::from_rows(2, 2, {1.0, 1.0, 1.0, 1.0});
    const PolarDecomposition p = polar(x);
    EXPECT_TRUE(is_unitary(p.unitary));
    EXPECT_TRUE(matrices_near(p.unitary * p.modulus.matrix(), x, 1e-10));
}

TEST(MatrixPower, Examples) {
    const PsdMatrix p(diag({4, 9}));
    EXPECT_TRUE(matrices_near(matrix_power(p, 0.0).matrix(), identity(2), 1e-15));
    EXPECT_TRUE(matrices_near(matrix_power(p, 1.0).matrix(), p.matrix(), 1e-15));
    EXPECT_TRUE(matrices_near(matrix_power(p, 0.5).matrix(), diag({2, 3}), 1e-15));
    EXPECT_TRUE(matrices_near(matrix_power(p, -0.25).matrix(), diag({std::pow(4.0, -0.25), std::pow(9.0, -0.25)}),
                              1e-15));
}

TEST(MatrixPower, SingularRejectsNegativePowers) {
    const PsdMatrix p(diag({1, 0}));
    EXPECT_NO_THROW(matrix_power(p, 2.0));
    try {
        matrix_power(p, -0.5);
        FAIL() << "expected SingularPower";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularPower);
    }
}

TEST(MatrixPower, CompositionProperty) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng = make_rng(seed, 3);
        const PsdMatrix p = random_psd(3, rng);
        const double a = uniform(rng, -1.5, 1.5);
        const double b = uniform(rng, -1.5, 1.5);
        const Matrix lhs = matrix_power(matrix_power(p, a), b).matrix();
        const Matrix rhs = matrix_power(p, a * b).matrix();
        EXPECT_LE((lhs - rhs).norm(), 1e-8 * std::max(1.0, rhs.norm())) << "seed " << seed;
    }
}

TEST(MatrixPower, InverseRoundTrip) {
    Rng rng = make_rng(5);
    const PsdMatrix p = random_psd(4, rng);
    const Matrix back = matrix_power(matrix_power(p, 0.3), 1.0 / 0.3).matrix();
    EXPECT_TRUE(matrices_near(back, p.matrix(), 1e-8));
}

TEST(AbsPowerTrace, Examples) {
    EXPECT_NEAR(abs_power_trace(identity(4), 2.7), 4.0, 1e-13);
    EXPECT_NEAR(abs_power_trace(diag({2, 3}), 3.0), 35.0, 1e-12);
    Rng rng = make_rng(6);
    const Matrix x = ginibre(3, 3, rng);
    EXPECT_NEAR(abs_power_trace(x, 2.0), x.squaredNorm(), 1e-10 * x.squaredNorm());
    EXPECT_NEAR(abs_power_trace_compensated(x, 2.0), x.squaredNorm(), 1e-10 * x.squaredNorm());
}

TEST(AbsPowerTrace, UnitaryInvariance) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = make_rng(seed, 4);
        const Matrix x = ginibre(3, 3, rng);
        const Matrix v = haar_unitary(3, rng);
        const Matrix w = haar_unitary(3, rng);
        const double s = uniform(rng, 0.3, 4.0);
        const double base = abs_power_trace(x, s);
        EXPECT_LE(std::abs(abs_power_trace(v * x * w, s) - base), 1e-9 * base) << "seed " << seed;
    }
}

TEST(SchattenNorm, Examples) {
    EXPECT_NEAR(schatten_norm(diag({3, 4}), 1.0), 7.0, 1e-13);
    EXPECT_NEAR(schatten_norm(diag({3, 4}), kInfinity), 4.0, 1e-13);
    EXPECT_NEAR(schatten_norm(diag({3, 4}), 2.0), 5.0, 1e-13);
    try {
        schatten_norm(diag({3, 4}), 0.5);
        FAIL() << "expected BadExponent";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadExponent);
    }
}

TEST(SchattenNorm, HolderChain) {
    // ‖ABC‖_{r0} ≤ ‖AX‖_{r1} ‖X^{-1}BY^{-1}‖_{r2} ‖YC‖_{r3} for 1/r0 = Σ 1/r_j.
    const double r1 = 4.0, r2 = 8.0, r3 = 8.0, r0 = 2.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng = make_rng(seed, 5);
        const Matrix a = random_invertible(3, rng), b = random_invertible(3, rng), c = random_invertible(3, rng);
        const Matrix x = random_invertible(3, rng), y = random_invertible(3, rng);
        const double lhs = schatten_norm(a * b * c, r0);
        const double rhs = schatten_norm(a * x, r1) * schatten_norm(x.inverse() * b * y.inverse(), r2) *
                           schatten_norm(y * c, r3);
        EXPECT_LE(lhs, rhs + 1e-9 * std::max(1.0, rhs)) << "seed " << seed;
    }
}

TEST(Kron, MatchesEigenKroneckerLayout) {
    const Matrix a = testing::from_rows(2, 2, {1.0, 2.0, 3.0, 4.0});
    const Matrix b = testing::from_rows(2, 2, {0.0, 1.0, 1.0, 0.0});
    const Matrix k = kron(a, b);
    EXPECT_EQ(k(0, 1), Complex(1.0));
    EXPECT_EQ(k(2, 3), Complex(4.0));
    EXPECT_EQ(k(3, 2), Complex(4.0));
    EXPECT_EQ(k(1, 2), Complex(2.0));
}

TEST(HsInner, TraceOfProductWithAdjoint) {
    Rng rng = make_rng(8);
    const Matrix x = ginibre(3, 3, rng), y = ginibre(3, 3, rng);
    const Complex expected = (x * y.adjoint()).trace();
    EXPECT_NEAR(std::abs(hs_inner(x, y) - expected), 0.0, 1e-12);
    EXPECT_THROW(hs_inner(x, identity(2)), Error);
}

TEST(Regularize, DefaultEpsilonScalesWithNorm) {
    const Matrix x = diag({0, 2});
    const Matrix r = regularize(x);
    EXPECT_NEAR(r(0, 0).real(), 2e-8, 1e-20);
    EXPECT_NEAR(regularize(x, 0.5)(1, 1).real(), 2.5, 1e-15);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    EXPECT_EQ(s.value(), 1.0);
}

TEST(PsdMatrix, ChecksHermitianAndSign) {
    EXPECT_THROW(PsdMatrix(diag({1, -1})), Error);
    try {
        PsdMatrix(diag({1, -1}));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPsd);
    }
    EXPECT_TRUE(PsdMatrix(diag({1, 2})).strictly_positive());
    EXPECT_FALSE(PsdMatrix(diag({0, 2})).strictly_positive());
}

}  // namespace
}  // namespace tracelab
