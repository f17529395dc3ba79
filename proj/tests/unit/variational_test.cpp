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
#include "tracelab/random.hpp"
#include "tracelab/variational.hpp"

namespace tracelab {
namespace {

using testing::diag;

TEST(ExponentQuad, Construction) {
    const ExponentQuad q = ExponentQuad::from_outer(4.0, 2.0, 4.0);
    EXPECT_NEAR(q.r0(), 1.0, 1e-15);
    const ExponentQuad t = ExponentQuad::from_triple(0.25, 0.25, 2.0);
    EXPECT_NEAR(t.r0(), 1.0, 1e-15);
    EXPECT_NEAR(t.r1(), 4.0, 1e-15);
    EXPECT_NEAR(t.r2(), 2.0, 1e-15);
    EXPECT_NEAR(t.r3(), 4.0, 1e-15);
    EXPECT_THROW(ExponentQuad(1.0, 2.0, 2.0, 2.0), Error);
    EXPECT_THROW(ExponentQuad(-1.0, 2.0, 2.0, 2.0), Error);
}

TEST(HolderYoung, ScalarExample) {
    // r = (1, 4, 2, 4), scalars a = b = c = x = y = 1: lhs 1, rhs 2·1 − ½ − ½ = 1.
    Matrix one = identity(1);
    const BoundSides s = holder_young_lower_bound(one, one, one, one, one, ExponentQuad(1, 4, 2, 4));
    EXPECT_NEAR(s.lhs, 1.0, 1e-15);
    EXPECT_NEAR(s.rhs, 1.0, 1e-15);
}

TEST(HolderYoung, LowerBoundHoldsForRandomInputs) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng = make_rng(seed, 20);
        const ExponentQuad quad =
            ExponentQuad::from_outer(uniform(rng, 1.5, 6.0), uniform(rng, 1.5, 6.0), uniform(rng, 1.5, 6.0));
        const Index n = 1 + static_cast<Index>(seed % 3);
        const Matrix a = ginibre(n, n, rng), b = ginibre(n, n, rng), c = ginibre(n, n, rng);
        const Matrix x = random_invertible(n, rng, 50.0), y = random_invertible(n, rng, 50.0);
        const BoundSides s = holder_young_lower_bound(a, b, c, x, y, quad);
        EXPECT_GE(s.lhs - s.rhs, -1e-9 * std::max(1.0, std::abs(s.lhs))) << "seed " << seed;
    }
}

TEST(HolderYoung, SingularXIsRejected) {
    const Matrix one = identity(2);
    try {
        holder_young_lower_bound(one, one, one, diag({1, 0}), one, ExponentQuad(1, 4, 2, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularPower);
    }
}

TEST(MaxForm, SaturatesAndDominatesProbes) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng = make_rng(seed, 21);
        const ExponentQuad quad = ExponentQuad::from_triple(uniform(rng, 0.1, 0.5), uniform(rng, 0.1, 0.5),
                                                            uniform(rng, 1.0, 4.0));
        const Matrix b = random_invertible(3, rng, 100.0);
        const Matrix x = random_invertible(3, rng, 100.0), y = random_invertible(3, rng, 100.0);
        ProbeOptions probes;
        probes.count = 20;
        probes.seed = seed;
        const SaturationReport r = variational_max_check(b, x, y, quad, probes);
        EXPECT_LE(std::abs(r.gap), 1e-9) << "seed " << seed;
        EXPECT_TRUE(r.probes_dominated(1e-9)) << "seed " << seed << " excess " << r.worst_probe_excess;
        EXPECT_EQ(r.probes, 20);
    }
}

TEST(MinForm, ClosedFormMinimizerAttainsTheTrace) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng = make_rng(seed, 22);
        const ExponentQuad quad =
            ExponentQuad::from_outer(uniform(rng, 1.5, 6.0), uniform(rng, 1.5, 6.0), uniform(rng, 1.5, 6.0));
        const Matrix a = random_invertible(3, rng, 100.0), b = random_invertible(3, rng, 100.0),
                     c = random_invertible(3, rng, 100.0);
        ProbeOptions probes;
        probes.count = 20;
        probes.seed = seed;
        const SaturationReport r = variational_min_check(a, b, c, quad, probes);
        EXPECT_LE(std::abs(r.gap), 1e-9) << "seed " << seed;
        EXPECT_TRUE(r.probes_dominated(1e-9)) << "seed " << seed;

        // Independent check: Tr|ABC|^{r0} from singular values of the product.
        const SvdResult s = svd(Matrix(a * b * c));
        double expected = 0.0;
        for (Index i = 0; i < s.sigma.size(); ++i) expected += std::pow(s.sigma(i), quad.r0());
        EXPECT_LE(std::abs(r.lhs - expected), 1e-10 * std::max(1.0, expected));

        const MinimizingPair m = minimizing_pair(a, b, c, quad);
        EXPECT_LE(std::abs(min_form_objective(a, b, c, m.x, m.y, quad) - expected), 1e-9 * std::max(1.0, expected));
    }
}

TEST(MinForm, ObjectiveNeverBeatsTheTrace) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng = make_rng(seed, 23);
        const ExponentQuad quad = ExponentQuad::from_outer(4.0, 2.0, 4.0);
        const Matrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng), c = ginibre(2, 2, rng);
        const Matrix x = random_invertible(2, rng, 20.0), y = random_invertible(2, rng, 20.0);
        const double objective = min_form_objective(a, b, c, x, y, quad);
        const double trace = abs_power_trace(a * b * c, quad.r0());
        EXPECT_GE(objective - trace, -1e-10 * std::max(1.0, trace)) << "seed " << seed;
    }
}

TEST(SaturatingPair, MatchesClosedForm) {
    // Diagonal positive data: W = X^{-1}BY^{-1} diagonal, U = 1.
    const ExponentQuad quad(1, 4, 2, 4);
    const SaturatingPair p = saturating_pair(diag({1, 2}), diag({4, 8}), diag({2, 1}), quad);
    // W = diag(2, 4); A = W^{1/2} X^{-1}, C = Y^{-1} W^{1/2}.
    EXPECT_TRUE(testing::matrices_near(p.a, diag({std::sqrt(2.0), 1.0}), 1e-13));
    EXPECT_TRUE(testing::matrices_near(p.c, diag({std::sqrt(2.0) / 2.0, 2.0}), 1e-13));
}

}  // namespace
}  // namespace tracelab
