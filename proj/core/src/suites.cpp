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

#include "tracelab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tracelab/parallel.hpp"

namespace tracelab {

namespace {

constexpr double kCondCap = 1e3;
constexpr double kProbeTol = 1e-9;
// Finite differences of Tr f(D + sA) lose about cond(D)² digits to
// cancellation, so the Hessian sweep draws well-conditioned D.
constexpr double kHessianCondCap = 10.0;

struct Trial {
    double gap = 0.0;
    double scale = 1.0;
    std::vector<LabeledMatrix> inputs;
};

CertReport start(std::string claim, Parameters params, Index n, long trials, std::uint64_t seed, double tol) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    if (trials < 1) throw Error(ErrorCode::BadArgument, "trials must be at least 1");
    CertReport report;
    report.claim = std::move(claim);
    report.params = std::move(params);
    report.params.push_back({"n", static_cast<double>(n)});
    report.trials = trials;
    report.seed = seed;
    report.tol = tol;
    return report;
}

template <class Body>
CertReport run(CertReport report, Body&& body) {
    std::vector<Trial> out(static_cast<size_t>(report.trials));
    const std::uint64_t seed = report.seed;
    parallel_for(static_cast<int>(report.trials), [&](int t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        out[static_cast<size_t>(t)] = body(rng);
    });
    size_t worst = 0;
    for (size_t i = 0; i < out.size(); ++i) {
        report.gaps.push_back(out[i].gap);
        report.scales.push_back(out[i].scale);
        if (out[i].gap / out[i].scale < out[worst].gap / out[worst].scale) worst = i;
    }
    report.min_gap = out[worst].gap / out[worst].scale;
    report.witness = std::move(out[worst].inputs);
    report.verdict = verdict_for(report.min_gap, report.tol, report.asserted);
    return report;
}

void require_unital(const KrausChannel& ch) {
    if (!ch.is_unital() || ch.in_dim() != ch.out_dim()) {
        throw Error(ErrorCode::NonUnitalChannel, "sampled channel is not unital");
    }
}

void append_kraus(std::vector<LabeledMatrix>& out, const KrausChannel& ch) {
    for (size_t k = 0; k < ch.kraus().size(); ++k) out.push_back({"kraus" + std::to_string(k), ch.kraus()[k]});
}

}  // namespace

CertReport saturation_sweep(const ExponentQuad& quad, Index n, long trials, std::uint64_t seed, double tol) {
    CertReport report = start("variational_saturation",
                              {{"r0", quad.r0()}, {"r1", quad.r1()}, {"r2", quad.r2()}, {"r3", quad.r3()}}, n,
                              trials, seed, tol);
    return run(std::move(report), [&](Rng& rng) {
        const Matrix b = random_invertible(n, rng, kCondCap);
        const Matrix x = random_invertible(n, rng, kCondCap);
        const Matrix y = random_invertible(n, rng, kCondCap);
        ProbeOptions probes;
        probes.seed = rng();
        const SaturationReport upper = variational_max_check(b, x, y, quad, probes);
        const SaturationReport lower = variational_min_check(b, x, y, quad, probes);
        Trial t;
        t.gap = -std::max(std::abs(upper.gap), std::abs(lower.gap));
        if (!upper.probes_dominated(kProbeTol) || !lower.probes_dominated(kProbeTol)) {
            t.gap = std::min(t.gap, -std::max(upper.worst_probe_excess, lower.worst_probe_excess) - tol);
        }
        t.inputs = {{"B", b}, {"X", x}, {"Y", y}};
        return t;
    });
}

CertReport petz_monotonicity_sweep(const ScalarFunction& h, ChannelFamily family, Index n, long trials,
                                   std::uint64_t seed, double tol) {
    CertReport report = start("petz_monotonicity:" + h.id, {{"channel", static_cast<double>(family)}}, n, trials,
                              seed, tol);
    return run(std::move(report), [&](Rng& rng) {
        const KrausChannel ch = sample_channel(family, n, rng);
        require_unital(ch);
        const PsdMatrix a = random_psd(n, rng, kCondCap);
        const PsdMatrix b = random_psd(n, rng, kCondCap);
        Trial t;
        t.gap = petz_monotonicity_check(h, ch, a, b);
        t.inputs = {{"A", a.matrix()}, {"B", b.matrix()}};
        append_kraus(t.inputs, ch);
        return t;
    });
}

CertReport double_operator_sweep(const AtomicMeasure& mu, ChannelFamily family, Index n, long trials,
                                 std::uint64_t seed, double tol) {
    mu.validate();
    CertReport report =
        start("double_operator_monotonicity", {{"c", mu.c}, {"channel", static_cast<double>(family)}}, n, trials,
              seed, tol);
    return run(std::move(report), [&](Rng& rng) {
        const KrausChannel ch = sample_channel(family, n, rng);
        require_unital(ch);
        const PsdMatrix a = random_psd(n, rng, kCondCap);
        const PsdMatrix b = random_psd(n, rng, kCondCap);
        const Matrix x = ginibre(n, n, rng);
        const DoubleOperatorGap g = double_operator_gap(mu, ch, a, b, x);
        Trial t;
        t.gap = g.gap;
        t.scale = g.scale;
        t.inputs = {{"A", a.matrix()}, {"B", b.matrix()}, {"X", x}};
        append_kraus(t.inputs, ch);
        return t;
    });
}

CertReport spectral_route_sweep(const ScalarFunction& f, Index n, long trials, std::uint64_t seed, double tol) {
    CertReport report = start("spectral_route_agreement:" + f.id, {}, n, trials, seed, tol);
    return run(std::move(report), [&](Rng& rng) {
        const PsdMatrix a = random_psd(n, rng, kCondCap);
        const PsdMatrix b = random_psd(n, rng, kCondCap);
        const SuperOperator q = q_f(a, b, ratio_kernel(f));
        const SuperOperator j = j_f(a, b, f);
        Trial t;
        t.gap = -(q - j).matrix().norm();
        t.scale = std::max(1.0, j.matrix().norm());
        t.inputs = {{"A", a.matrix()}, {"B", b.matrix()}};
        return t;
    });
}

CertReport hessian_sweep(const ScalarFunction& f, Index n, long trials, std::uint64_t seed, double tol) {
    CertReport report = start("hessian_trace:" + f.id, {}, n, trials, seed, tol);
    return run(std::move(report), [&](Rng& rng) {
        const PsdMatrix d = random_psd(n, rng, kHessianCondCap);
        const HermitianMatrix a(random_hermitian(n, rng));
        const double exact = hessian_trace(f, d, a);
        const double numeric = hessian_trace_numeric(f, d, a);
        Trial t;
        t.gap = -std::abs(exact - numeric);
        t.scale = std::max(std::abs(exact), 1e-300);
        t.inputs = {{"D", d.matrix()}, {"A", a.matrix()}};
        return t;
    });
}

}  // namespace tracelab
