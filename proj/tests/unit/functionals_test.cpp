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
#include "tracelab/functionals.hpp"

namespace tracelab {
namespace {

using testing::diag;

TEST(PsiPqs, IdentityGivesDimension) {
    TripleParams params;
    const PsdMatrix id(identity(3));
    EXPECT_NEAR(psi_pqs(identity(3), id, id, params), 3.0, 1e-13);
}

TEST(PsiPqs, DiagonalExample) {
    TripleParams params;
    params.p = 0.25;
    params.q = 0.25;
    params.s = 2.0;
    const double v = psi_pqs(diag({1, 2}), PsdMatrix(diag({1, 4})), PsdMatrix(diag({1, 9})), params);
    EXPECT_NEAR(v, 5.0 / 3.0, 1e-13);
}

TEST(PsiPqs, KernelsEnterBetweenThePowers) {
    // K1 = swap moves A's entries; on diagonals the scalar product changes.
    TripleParams params;
    params.p = 0.5;
    params.q = 0.5;
    params.s = 1.0;
    params.k1 = testing::from_rows(2, 2, {0.0, 1.0, 1.0, 0.0});
    params.k2 = params.k1;
    // B^{-1/2} K A K C^{-1/2} = diag(a2, a1) scaled by diag(b)^{-1/2}, diag(c)^{-1/2}.
    const double v = psi_pqs(diag({1, 8}), PsdMatrix(diag({4, 1})), PsdMatrix(diag({1, 16})), params);
    EXPECT_NEAR(v, 8.0 / 2.0 / 1.0 + 1.0 / 1.0 / 4.0, 1e-13);
}

TEST(PsiPqs, HomogeneousOfDegreeSInA) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = make_rng(seed, 10);
        TripleParams params;
        params.s = uniform(rng, 1.0, 4.0);
        const Matrix a = ginibre(3, 3, rng);
        const PsdMatrix b = random_psd(3, rng), c = random_psd(3, rng);
        const double t = uniform(rng, 0.2, 5.0);
        const double base = psi_pqs(a, b, c, params);
        EXPECT_LE(std::abs(psi_pqs(t * a, b, c, params) - std::pow(t, params.s) * base),
                  1e-9 * std::pow(t, params.s) * base)
            << "seed " << seed;
    }
}

TEST(PsiPqs, ReducesToLambda) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = make_rng(seed, 11);
        const LambdaParams lp{-0.3, -0.7, 2.5};
        const PsdMatrix p = random_psd(3, rng);
        const Matrix x = ginibre(3, 3, rng);
        TripleParams tp;
        tp.p = -lp.alpha / lp.p;
        tp.q = -lp.beta / lp.p;
        tp.s = lp.p;
        const double lam = lambda_abp(p, x, lp);
        EXPECT_LE(std::abs(psi_pqs(x, p, p, tp) - lam), 1e-9 * std::max(1.0, lam)) << "seed " << seed;
    }
}

TEST(PsiPqs, SingularBIsRejected) {
    TripleParams params;
    try {
        psi_pqs(identity(2), PsdMatrix(diag({1, 0})), PsdMatrix(identity(2)), params);
        FAIL() << "expected SingularPower";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularPower);
    }
}

TEST(LambdaAbp, Examples) {
    const LambdaParams half{-0.5, -0.5, 2.0};
    // P = I: Tr|X|^p.
    Rng rng = make_rng(12);
    const Matrix x = ginibre(3, 3, rng);
    EXPECT_NEAR(lambda_abp(PsdMatrix(identity(3)), x, half), abs_power_trace(x, 2.0), 1e-12);
    // Scalars: x^p / y.
    Matrix p1(1, 1), x1(1, 1);
    p1(0, 0) = 4.0;
    x1(0, 0) = 3.0;
    EXPECT_NEAR(lambda_abp(PsdMatrix(p1), x1, half), 9.0 / 4.0, 1e-14);
    // Hand-computed 2×2: Tr(P^{-1} X X*) with X all ones.
    const Matrix ones = Matrix::Constant(2, 2, 1.0);
    EXPECT_NEAR(lambda_abp(PsdMatrix(diag({1, 4})), ones, LambdaParams{-1.0, 0.0, 2.0}), 2.5, 1e-13);
}

TEST(LambdaAbp, ScalingWithUnitExponentSum) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = make_rng(seed, 13);
        const LambdaParams lp{-0.25, -0.75, uniform(rng, 1.0, 3.0)};
        const PsdMatrix p = random_psd(3, rng);
        const Matrix x = ginibre(3, 3, rng);
        const double t = uniform(rng, 0.5, 3.0);
        const double base = lambda_abp(p, x, lp);
        const double scaled = lambda_abp(PsdMatrix(Matrix(t * p.matrix())), t * x, lp);
        EXPECT_LE(std::abs(scaled - std::pow(t, lp.p - 1.0) * base), 1e-9 * std::max(1.0, scaled)) << "seed " << seed;
    }
}

TEST(LambdaParams, AdmissibilityFlag) {
    EXPECT_TRUE((LambdaParams{-0.5, -0.5, 2.0}.convexity_admissible()));
    EXPECT_FALSE((LambdaParams{-0.5, -0.5, 1.5}.convexity_admissible()));
    EXPECT_FALSE((LambdaParams{-0.5, -0.4, 2.0}.convexity_admissible()));
}

TEST(TripleParams, AdmissibilityFlags) {
    TripleParams t;
    EXPECT_TRUE(t.convexity_admissible());
    EXPECT_TRUE(t.monotonicity_admissible());
    t.s = 1.8;
    EXPECT_FALSE(t.convexity_admissible());
    t.p = 0.5;
    t.q = 0.25;
    t.s = 4.0;
    EXPECT_TRUE(t.convexity_admissible());
    EXPECT_FALSE(t.monotonicity_admissible());
    // 1 − 0.3 − 0.2 rounds below 0.5, so s = 2 sits on the boundary.
    t.p = 0.3;
    t.q = 0.2;
    t.s = 2.0;
    EXPECT_TRUE(t.convexity_admissible());
    t.s = 1.999;
    EXPECT_FALSE(t.convexity_admissible());
}

TEST(PsiPs, DiagonalAndCongruence) {
    const PsdMatrix a(diag({2, 3}));
    EXPECT_NEAR(psi_ps(a, identity(2), identity(2), 0.5, 3.0), std::pow(2.0, 1.5) + std::pow(3.0, 1.5), 1e-12);

    Rng rng = make_rng(14);
    const Matrix k = ginibre(2, 2, rng);
    EXPECT_NEAR(psi_ps(a, k, k.adjoint(), 1.0, 1.0), (k * a.matrix() * k.adjoint()).trace().real(), 1e-12);
}

TEST(PsiPs, CongruenceMatchesEigenvalueRoute) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = make_rng(seed, 15);
        const PsdMatrix a = random_psd(3, rng);
        const Matrix k = ginibre(3, 3, rng);
        const double p = uniform(rng, 0.2, 1.5), s = uniform(rng, 0.5, 3.0);
        const Matrix inner = k * matrix_power(a, p).matrix() * k.adjoint();
        const EigenDecomposition e = hermitian_eig(hermitian_part(inner));
        double expected = 0.0;
        for (Index i = 0; i < 3; ++i) expected += std::pow(std::max(e.values(i), 0.0), s);
        EXPECT_LE(std::abs(psi_ps(a, k, k.adjoint(), p, s) - expected), 1e-9 * std::max(1.0, expected));
    }
}

TEST(PsiPs, RankOneEmbeddingGivesScalarFormula) {
    // K1 = Σ|1⟩⟨j|, K2 = Σ r_j|j⟩⟨1| turns A = diag(u) into |Σ u_j^p r_j|^s.
    const double u[3] = {0.5, 1.3, 2.0};
    const double r[3] = {1.0, -1.0, 1.0};
    Matrix k1 = Matrix::Zero(3, 3), k2 = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) {
        k1(0, j) = 1.0;
        k2(j, 0) = r[j];
    }
    const double p = 0.7, s = 2.5;
    double inner = 0.0;
    for (int j = 0; j < 3; ++j) inner += std::pow(u[j], p) * r[j];
    EXPECT_NEAR(psi_ps(PsdMatrix(diag({u[0], u[1], u[2]})), k1, k2, p, s), std::pow(std::abs(inner), s), 1e-12);
}

TEST(PhiCfl, DiagonalExample) {
    const double v = phi_cfl(PsdMatrix(diag({1, 2})), PsdMatrix(diag({1, 3})), PsdMatrix(diag({1, 5})), 1, 1, 1);
    EXPECT_NEAR(v, 61.0, 1e-12);
}

TEST(PhiCfl, TraceAndSchattenFormsAgree) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = make_rng(seed, 16);
        const PsdMatrix a = random_psd(3, rng), b = random_psd(3, rng), c = random_psd(3, rng);
        const double p = uniform(rng, -1, 1), q2 = uniform(rng, -1, 1), r2 = uniform(rng, -1, 1);
        const double trace_form = phi_cfl(a, b, c, p, q2, r2);
        const double schatten_form = phi_cfl_schatten(a, b, c, p, q2, r2);
        EXPECT_LE(std::abs(trace_form - schatten_form), 1e-9 * std::max(1.0, schatten_form)) << "seed " << seed;
    }
}

TEST(TwoVar, ScalarAndIdentity) {
    EXPECT_NEAR(two_var(PsdMatrix(identity(3)), PsdMatrix(identity(3)), 0.7, -0.4, 1.3), 3.0, 1e-13);
    Matrix a(1, 1), b(1, 1);
    a(0, 0) = 2.0;
    b(0, 0) = 5.0;
    EXPECT_NEAR(two_var(PsdMatrix(a), PsdMatrix(b), 0.5, -1.0, 3.0), std::pow(2.0, 1.5) * std::pow(5.0, -3.0),
                1e-14);
}

TEST(TwoVar, MatchesPsiPsWithSquareRootKernels) {
    // Tr(B^{q/2} A^p B^{q/2})^s = Tr|B^{q/2} A^p B^{q/2}|^s for positive inner matrices.
    Rng rng = make_rng(17);
    const PsdMatrix a = random_psd(3, rng), b = random_psd(3, rng);
    const Matrix bh = matrix_power(b, -0.3).matrix();
    EXPECT_NEAR(two_var(a, b, 0.8, -0.6, 1.7), psi_ps(a, bh, bh, 0.8, 1.7),
                1e-9 * std::max(1.0, two_var(a, b, 0.8, -0.6, 1.7)));
}

}  // namespace
}  // namespace tracelab
