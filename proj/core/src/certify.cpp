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

#include "tracelab/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tracelab/nelder_mead.hpp"
#include "tracelab/parallel.hpp"

namespace tracelab {

namespace {

constexpr double kPsdFloor = 1e-6;
constexpr int kRestartBatch = 8;
constexpr double kCondCap = 1e3;

PsdMatrix psd(const Matrix& m) { return PsdMatrix(hermitian_part(m)); }

Inputs mix(const Functional& f, const Inputs& x1, const Inputs& x2, double lambda) {
    Inputs out(x1.size());
    for (size_t i = 0; i < x1.size(); ++i) {
        out[i] = f.slots[i] == SlotKind::Fixed ? x1[i] : Matrix(lambda * x1[i] + (1.0 - lambda) * x2[i]);
    }
    return out;
}

double eval_at(const Functional& f, const Inputs& x) {
    if (x.size() != f.slots.size()) throw Error(ErrorCode::DimMismatch, "wrong number of inputs for " + f.id);
    return f.eval(x);
}

// Evaluates a convex combination, reporting a combination that left the
// positive cone as a domain violation.
double eval_combination(const Functional& f, const Inputs& x) {
    for (size_t i = 0; i < x.size(); ++i) {
        if (f.slots[i] != SlotKind::Psd) continue;
        try {
            if (!psd(x[i]).strictly_positive()) {
                throw Error(ErrorCode::DomainViolation, f.names[i] + " is not strictly positive at the combination");
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::DomainViolation) throw;
            throw Error(ErrorCode::DomainViolation, f.names[i] + " left the positive cone: " + e.what());
        }
    }
    return eval_at(f, x);
}

std::vector<LabeledMatrix> label_pair(const Functional& f, const Inputs& x1, const Inputs& x2) {
    std::vector<LabeledMatrix> out;
    for (size_t i = 0; i < x1.size(); ++i) {
        if (f.slots[i] == SlotKind::Fixed) {
            out.push_back({f.names[i], x1[i]});
        } else {
            out.push_back({f.names[i] + "1", x1[i]});
            out.push_back({f.names[i] + "2", x2[i]});
        }
    }
    return out;
}

struct TrialOutcome {
    double rel = kInfinity;
    double gap = 0.0;
    double scale = 1.0;
    std::vector<LabeledMatrix> inputs;
    double extra = 0.0;
};

// Folds per-trial outcomes in index order into a report.
void fold_trials(CertReport& report, std::vector<TrialOutcome>& outcomes) {
    report.gaps.reserve(outcomes.size());
    report.scales.reserve(outcomes.size());
    size_t worst = 0;
    for (size_t i = 0; i < outcomes.size(); ++i) {
        report.gaps.push_back(outcomes[i].gap);
        report.scales.push_back(outcomes[i].scale);
        if (outcomes[i].rel < outcomes[worst].rel) worst = i;
    }
    if (!outcomes.empty()) {
        report.min_gap = outcomes[worst].rel;
        report.witness = std::move(outcomes[worst].inputs);
    }
    report.verdict = verdict_for(report.min_gap, report.tol, report.asserted);
}

std::vector<double> standard_normal(size_t count, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(count);
    for (double& v : out) v = normal(rng);
    return out;
}

double mean_normalized_trace(const Matrix& a, const Matrix& b) {
    return 0.5 * (a.trace().real() + b.trace().real()) / static_cast<double>(a.rows());
}

// Rescales a pair of positive matrices together so their mean normalized
// trace is 1.
void normalize_pair(Matrix& a, Matrix& b) {
    const double t = mean_normalized_trace(a, b);
    if (t > 0.0 && std::isfinite(t)) {
        a /= t;
        b /= t;
    }
}

void normalize_frobenius(Matrix& k) {
    const double norm = k.norm();
    if (norm > 0.0 && std::isfinite(norm)) k /= norm;
}

// Relative midpoint violation. `sign` = +1 looks for mid > average
// (non-convexity), −1 for mid < average (non-concavity).
double relative_violation(double f1, double f2, double fm, double sign) {
    const double scale = std::max({1.0, std::abs(f1), std::abs(f2), std::abs(fm)});
    return sign * (fm - 0.5 * f1 - 0.5 * f2) / scale;
}

double compensated_violation(double f1, double f2, double fm, double sign) {
    const double scale = std::max({1.0, std::abs(f1), std::abs(f2), std::abs(fm)});
    CompensatedSum acc;
    acc.add(fm);
    acc.add(-0.5 * f1);
    acc.add(-0.5 * f2);
    return sign * acc.value() / scale;
}

double lambda_compensated(const PsdMatrix& p, const Matrix& x, const LambdaParams& params) {
    const Matrix product = matrix_power(p, params.alpha / params.p).matrix() * x *
                           matrix_power(p, params.beta / params.p).matrix();
    return abs_power_trace_compensated(product, params.p);
}

// ---------------------------------------------------------------------------
// Search engine

struct SlotSpec {
    std::string label;
    SlotKind kind;
};

struct SearchProblem {
    std::string claim;
    Parameters params;
    std::vector<SlotSpec> slots;
    std::function<void(Inputs&)> normalize;
    std::function<double(const Inputs&)> margin;
    std::function<double(const Inputs&)> verify;
    /// Inputs (already positive) to polish when random restarts fail.
    std::function<std::vector<Inputs>(Index)> warm_starts;
};

size_t parameter_count(const SearchProblem& problem, Index n) {
    return problem.slots.size() * static_cast<size_t>(2 * n * n);
}

Inputs decode(const SearchProblem& problem, std::span<const double> v, Index n) {
    Inputs out;
    out.reserve(problem.slots.size());
    size_t k = 0;
    for (const SlotSpec& slot : problem.slots) {
        Matrix g(n, n);
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) {
                g(i, j) = Complex(v[k], v[k + 1]);
                k += 2;
            }
        }
        if (slot.kind == SlotKind::Psd) {
            out.push_back(hermitian_part(g.adjoint() * g + kPsdFloor * identity(n)));
        } else {
            out.push_back(std::move(g));
        }
    }
    if (problem.normalize) problem.normalize(out);
    return out;
}

// Parameter vector whose decoding reproduces `inputs` (before normalization)
// up to the 1e-6 floor on positive slots.
std::vector<double> encode(const SearchProblem& problem, const Inputs& inputs) {
    std::vector<double> v;
    for (size_t s = 0; s < problem.slots.size(); ++s) {
        Matrix g = inputs[s];
        if (problem.slots[s].kind == SlotKind::Psd) {
            const PsdMatrix p = psd(inputs[s]);
            RealVector shifted = p.eig().values;
            for (Index i = 0; i < shifted.size(); ++i) shifted(i) = std::sqrt(std::max(0.0, shifted(i) - kPsdFloor));
            g = shifted.cast<Complex>().asDiagonal() * p.eig().vectors.adjoint();
        }
        for (Index j = 0; j < g.cols(); ++j) {
            for (Index i = 0; i < g.rows(); ++i) {
                v.push_back(g(i, j).real());
                v.push_back(g(i, j).imag());
            }
        }
    }
    return v;
}

double safe_margin(const SearchProblem& problem, const Inputs& x) {
    try {
        const double m = problem.margin(x);
        return std::isfinite(m) ? m : -kInfinity;
    } catch (const Error&) {
        return -kInfinity;
    }
}

struct RestartResult {
    std::vector<double> x;
    double margin = -kInfinity;
    long evaluations = 0;
};

RestartResult run_restart(const SearchProblem& problem, Index n, std::vector<double> start, long max_evals,
                          double stop_margin) {
    NelderMeadOptions nm;
    nm.max_evaluations = max_evals;
    nm.target = -stop_margin;
    nm.initial_step = 0.5;
    const NelderMeadResult r = nelder_mead(
        [&](std::span<const double> v) { return -safe_margin(problem, decode(problem, v, n)); }, std::move(start),
        nm);
    return {r.x, -r.value, r.evaluations};
}

std::uint64_t restart_stream(Index n, int restart) {
    return (static_cast<std::uint64_t>(n) << 32) + static_cast<std::uint64_t>(restart);
}

SearchWitness run_search(const SearchProblem& problem, const SearchOptions& options) {
    SearchWitness out;
    out.claim = problem.claim;
    out.params = problem.params;
    out.seed = options.seed;
    Inputs best_inputs;
    const double enough = 10.0 * options.tol;

    auto consider = [&](const RestartResult& r, Index n, const char* strategy) {
        out.evaluations += r.evaluations;
        ++out.restarts;
        if (r.margin > out.margin) {
            out.margin = r.margin;
            out.dim = n;
            out.strategy = strategy;
            best_inputs = decode(problem, r.x, n);
        }
    };

    long remaining = options.budget;
    for (size_t d = 0; d < options.dims.size() && remaining > 0; ++d) {
        const Index n = options.dims[d];
        const long share = remaining / static_cast<long>(options.dims.size() - d);
        const size_t dim_params = parameter_count(problem, n);
        const std::vector<Inputs> warm =
            options.warm_start && problem.warm_starts ? problem.warm_starts(n) : std::vector<Inputs>{};
        const long warm_budget = warm.empty() ? 0 : share / 10;
        const long random_budget = share - warm_budget;
        long used = 0;
        int restart = 0;
        while (out.margin < options.stop_margin) {
            const long per = (random_budget - used) / kRestartBatch;
            if (per < static_cast<long>(2 * (dim_params + 1))) break;
            std::vector<RestartResult> batch(kRestartBatch);
            parallel_for(kRestartBatch, [&](int i) {
                Rng rng = make_rng(options.seed, restart_stream(n, restart + i));
                batch[static_cast<size_t>(i)] =
                    run_restart(problem, n, standard_normal(dim_params, rng), per, options.stop_margin);
            });
            for (const RestartResult& r : batch) {
                used += r.evaluations;
                consider(r, n, "random");
            }
            restart += kRestartBatch;
        }
        if (out.margin < options.stop_margin && !warm.empty()) {
            const long per = warm_budget / static_cast<long>(warm.size());
            std::vector<RestartResult> polished(warm.size());
            parallel_for(static_cast<int>(warm.size()), [&](int i) {
                polished[static_cast<size_t>(i)] = run_restart(problem, n, encode(problem, warm[static_cast<size_t>(i)]),
                                                               std::max(per, 1L), options.stop_margin);
            });
            for (const RestartResult& r : polished) {
                used += r.evaluations;
                consider(r, n, "warm_start");
            }
        }
        remaining -= used;
        if (out.margin >= enough) break;
    }

    if (!best_inputs.empty()) {
        for (size_t i = 0; i < best_inputs.size(); ++i) out.matrices.push_back({problem.slots[i].label, best_inputs[i]});
        try {
            out.verified_margin = problem.verify(best_inputs);
        } catch (const Error&) {
            out.verified_margin = -kInfinity;
        }
    }
    out.found = out.margin > options.tol && out.verified_margin >= 0.5 * out.margin;
    return out;
}

// Pads a 2×2 block into the top-left corner of an n×n matrix; positive
// slots get `fill` on the remaining diagonal.
Matrix embed(const Matrix& block, Index n, double fill) {
    Matrix out = Matrix::Zero(n, n);
    for (Index i = block.rows(); i < n; ++i) out(i, i) = fill;
    out.topLeftCorner(block.rows(), block.cols()) = block;
    return out;
}

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// Psi_{p,s} search shared by the concavity and convexity variants.
SearchProblem psi_problem(double p, double s, bool adjoint_pair, double sign, const char* claim) {
    SearchProblem problem;
    problem.claim = claim;
    problem.params = {{"p", p}, {"s", s}, {"adjoint_pair", adjoint_pair ? 1.0 : 0.0}};
    problem.slots.push_back({"K1", SlotKind::General});
    if (!adjoint_pair) problem.slots.push_back({"K2", SlotKind::General});
    problem.slots.push_back({"A1", SlotKind::Psd});
    problem.slots.push_back({"A2", SlotKind::Psd});
    const size_t a1 = adjoint_pair ? 1 : 2;
    problem.normalize = [adjoint_pair, a1](Inputs& x) {
        normalize_frobenius(x[0]);
        if (!adjoint_pair) normalize_frobenius(x[1]);
        normalize_pair(x[a1], x[a1 + 1]);
    };
    auto kernels = [adjoint_pair](const Inputs& x) {
        return std::pair<Matrix, Matrix>{x[0], adjoint_pair ? Matrix(x[0].adjoint()) : x[1]};
    };
    problem.margin = [=](const Inputs& x) {
        const auto [k1, k2] = kernels(x);
        const Matrix mid = 0.5 * (x[a1] + x[a1 + 1]);
        return relative_violation(psi_ps(psd(x[a1]), k1, k2, p, s), psi_ps(psd(x[a1 + 1]), k1, k2, p, s),
                                  psi_ps(psd(mid), k1, k2, p, s), sign);
    };
    problem.verify = [=](const Inputs& x) {
        const auto [k1, k2] = kernels(x);
        auto f = [&](const Matrix& a) {
            return abs_power_trace_compensated(k1 * matrix_power(psd(a), p).matrix() * k2, s);
        };
        return compensated_violation(f(x[a1]), f(x[a1 + 1]), f(0.5 * (x[a1] + x[a1 + 1])), sign);
    };
    return problem;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::HoldsWithinTol: return "holds_within_tol";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict verdict_for(double min_gap, double tol, bool asserted) {
    if (min_gap < -tol) return Verdict::Violated;
    return asserted ? Verdict::HoldsWithinTol : Verdict::Inconclusive;
}

double combination_gap(const Functional& f, const Inputs& x1, const Inputs& x2, double lambda) {
    if (x1.size() != x2.size()) throw Error(ErrorCode::DimMismatch, "input tuples differ in length");
    const double fm = eval_combination(f, mix(f, x1, x2, lambda));
    const double f1 = eval_at(f, x1);
    const double f2 = eval_at(f, x2);
    return lambda * f1 + (1.0 - lambda) * f2 - fm;
}

double midpoint_gap(const Functional& f, const Inputs& x1, const Inputs& x2) {
    if (x1.size() != x2.size()) throw Error(ErrorCode::DimMismatch, "input tuples differ in length");
    const double fm = eval_combination(f, mix(f, x1, x2, 0.5));
    const double f1 = eval_at(f, x1);
    const double f2 = eval_at(f, x2);
    return (f1 + f2) / 2.0 - fm;
}

Functional triple_functional(const TripleParams& params) {
    TripleParams exps = params;
    return {"triple",
            {"A", "B", "C", "K1", "K2"},
            {SlotKind::General, SlotKind::Psd, SlotKind::Psd, SlotKind::Fixed, SlotKind::Fixed},
            [exps](std::span<const Matrix> m) mutable {
                TripleParams local = exps;
                local.k1 = m[3];
                local.k2 = m[4];
                return psi_pqs(m[0], psd(m[1]), psd(m[2]), local);
            }};
}

Functional lambda_functional(const LambdaParams& params) {
    return {"lambda", {"P", "X"}, {SlotKind::Psd, SlotKind::General},
            [params](std::span<const Matrix> m) { return lambda_abp(psd(m[0]), m[1], params); }};
}

Functional psi_ps_functional(const Matrix& k1, const Matrix& k2, double p, double s) {
    return {"psi_ps", {"A"}, {SlotKind::Psd},
            [k1, k2, p, s](std::span<const Matrix> m) { return psi_ps(psd(m[0]), k1, k2, p, s); }};
}

Functional cfl_functional(double p, double q2, double r2) {
    return {"cfl", {"A", "B", "C"}, {SlotKind::Psd, SlotKind::Psd, SlotKind::Psd},
            [p, q2, r2](std::span<const Matrix> m) { return phi_cfl(psd(m[0]), psd(m[1]), psd(m[2]), p, q2, r2); }};
}

Functional diagonal_triple_functional(double p, double q, double s) {
    TripleParams params;
    params.p = p;
    params.q = q;
    params.s = s;
    return {"triple_diagonal", {"A", "C"}, {SlotKind::Psd, SlotKind::Psd},
            [params](std::span<const Matrix> m) {
                const PsdMatrix a = psd(m[0]);
                return psi_pqs(a.matrix(), a, psd(m[1]), params);
            }};
}

CertReport certify_convexity(const Functional& f, const Sampler& sample, long trials, std::uint64_t seed,
                             bool asserted, double tol) {
    if (trials < 1) throw Error(ErrorCode::BadArgument, "trials must be at least 1");
    CertReport report;
    report.claim = f.id + "_convexity";
    report.trials = trials;
    report.seed = seed;
    report.tol = tol;
    report.asserted = asserted;
    std::vector<TrialOutcome> outcomes(static_cast<size_t>(trials));
    parallel_for(static_cast<int>(trials), [&](int t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        const auto [x1, x2] = sample(rng);
        std::vector<double> lambdas = {0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75};
        for (int i = 0; i < 11; ++i) lambdas.push_back(uniform(rng));
        const double f1 = eval_at(f, x1);
        const double f2 = eval_at(f, x2);
        TrialOutcome& out = outcomes[static_cast<size_t>(t)];
        for (double lambda : lambdas) {
            const double fm = eval_combination(f, mix(f, x1, x2, lambda));
            const double gap = lambda * f1 + (1.0 - lambda) * f2 - fm;
            const double scale = std::max(1.0, lambda * std::abs(f1) + (1.0 - lambda) * std::abs(f2));
            if (gap / scale < out.rel) {
                out.rel = gap / scale;
                out.gap = gap;
                out.scale = scale;
                out.extra = lambda;
            }
        }
        out.inputs = label_pair(f, x1, x2);
    });
    double worst_lambda = outcomes.front().extra;
    double worst_rel = outcomes.front().rel;
    for (const TrialOutcome& o : outcomes) {
        if (o.rel < worst_rel) {
            worst_rel = o.rel;
            worst_lambda = o.extra;
        }
    }
    fold_trials(report, outcomes);
    report.params.push_back({"worst_lambda", worst_lambda});
    return report;
}

CertReport certify_joint_convexity(const TripleParams& params, Index n, long trials, std::uint64_t seed,
                                   const ConvexityOptions& options) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    if (params.k1.size() != 0 && (params.k1.rows() != n || params.k1.cols() != n)) {
        throw Error(ErrorCode::DimMismatch, "K1 does not match the dimension");
    }
    if (params.k2.size() != 0 && (params.k2.rows() != n || params.k2.cols() != n)) {
        throw Error(ErrorCode::DimMismatch, "K2 does not match the dimension");
    }
    const Functional f = triple_functional(params);
    const Sampler sample = [&params, n](Rng& rng) {
        const Matrix k1 = params.k1.size() != 0 ? params.k1 : ginibre(n, n, rng);
        const Matrix k2 = params.k2.size() != 0 ? params.k2 : ginibre(n, n, rng);
        Inputs x1{ginibre(n, n, rng), random_psd(n, rng, kCondCap).matrix(), random_psd(n, rng, kCondCap).matrix(),
                  k1, k2};
        Inputs x2{ginibre(n, n, rng), random_psd(n, rng, kCondCap).matrix(), random_psd(n, rng, kCondCap).matrix(),
                  k1, k2};
        return std::pair<Inputs, Inputs>{std::move(x1), std::move(x2)};
    };
    CertReport report = certify_convexity(f, sample, trials, seed, params.convexity_admissible(), options.tol);
    report.claim = "joint_convexity";
    report.params.insert(report.params.begin(),
                         {{"p", params.p}, {"q", params.q}, {"s", params.s}, {"n", static_cast<double>(n)}});
    if (!report.asserted && report.verdict != Verdict::Violated && options.escalation_budget > 0) {
        SearchOptions search;
        search.budget = options.escalation_budget;
        search.seed = seed;
        search.dims = options.escalation_dims;
        search.tol = options.tol;
        report.escalation = search_diagonal_triple_nonconvexity(params.p, params.q, params.s, search);
        if (report.escalation->found) {
            report.min_gap = std::min(report.min_gap, -report.escalation->margin);
            report.verdict = verdict_for(report.min_gap, report.tol, report.asserted);
        }
    }
    return report;
}

CertReport certify_lambda_convexity(const LambdaParams& params, Index n, long trials, std::uint64_t seed,
                                    double tol) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    const Functional f = lambda_functional(params);
    const Sampler sample = [n](Rng& rng) {
        Inputs x1{random_psd(n, rng, kCondCap).matrix(), ginibre(n, n, rng)};
        Inputs x2{random_psd(n, rng, kCondCap).matrix(), ginibre(n, n, rng)};
        return std::pair<Inputs, Inputs>{std::move(x1), std::move(x2)};
    };
    CertReport report = certify_convexity(f, sample, trials, seed, params.convexity_admissible(), tol);
    report.claim = "lambda_convexity";
    report.params.insert(report.params.begin(), {{"alpha", params.alpha},
                                                 {"beta", params.beta},
                                                 {"p", params.p},
                                                 {"n", static_cast<double>(n)}});
    if (!report.asserted && report.verdict != Verdict::Violated) {
        // Midpoint convexity of Λ is equivalent to block-swap monotonicity.
        report.escalation = refute_lambda_monotonicity(params, 1, seed);
        if (report.escalation->found) {
            report.min_gap = std::min(report.min_gap, -report.escalation->margin);
            report.verdict = verdict_for(report.min_gap, report.tol, report.asserted);
        }
    }
    return report;
}

CertReport certify_cfl_convexity(double p, double q2, double r2, Index n, long trials, std::uint64_t seed,
                                 double tol) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    const Functional f = cfl_functional(p, q2, r2);
    const Sampler sample = [n](Rng& rng) {
        Inputs x1{random_psd(n, rng, kCondCap).matrix(), random_psd(n, rng, kCondCap).matrix(),
                  random_psd(n, rng, kCondCap).matrix()};
        Inputs x2{random_psd(n, rng, kCondCap).matrix(), random_psd(n, rng, kCondCap).matrix(),
                  random_psd(n, rng, kCondCap).matrix()};
        return std::pair<Inputs, Inputs>{std::move(x1), std::move(x2)};
    };
    // Tr(A B^{q2} A C^{r2}) is jointly convex for q2, r2 < 0 with q2 + r2 ≥ −1.
    const bool asserted = p == 1.0 && q2 < 0.0 && r2 < 0.0 && q2 + r2 >= -1.0;
    CertReport report = certify_convexity(f, sample, trials, seed, asserted, tol);
    report.claim = "cfl_convexity";
    report.params.insert(report.params.begin(),
                         {{"p", p}, {"q2", q2}, {"r2", r2}, {"n", static_cast<double>(n)}});
    return report;
}

ScalarBoundary scalar_convexity_boundary(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponent, "p must be positive");
    ScalarBoundary out;
    out.p = p;
    out.analytic = p * (p - 2.0) >= 0.0;
    out.worst_eigenvalue = kInfinity;
    auto g = [p](double x, double y) { return std::pow(x, p) / y; };
    const std::array<double, 3> grid = {0.5, 1.0, 2.0};
    for (double x : grid) {
        for (double y : grid) {
            // Central differences at h and h/2, Richardson-combined.
            auto hessian = [&](double h) {
                const double g0 = g(x, y);
                const double xx = (g(x + h, y) - 2.0 * g0 + g(x - h, y)) / (h * h);
                const double yy = (g(x, y + h) - 2.0 * g0 + g(x, y - h)) / (h * h);
                const double xy = (g(x + h, y + h) - g(x + h, y - h) - g(x - h, y + h) + g(x - h, y - h)) / (4.0 * h * h);
                return std::array<double, 3>{xx, yy, xy};
            };
            const double h = 1e-3 * std::min(x, y);
            const auto coarse = hessian(h);
            const auto fine = hessian(0.5 * h);
            std::array<double, 3> hs{};
            for (int i = 0; i < 3; ++i) hs[static_cast<size_t>(i)] = (4.0 * fine[i] - coarse[i]) / 3.0;
            const double a = hs[0], c = hs[1], b = hs[2];
            const double mean = 0.5 * (a + c);
            const double radius = std::hypot(0.5 * (a - c), b);
            const double lam = mean - radius;
            const double norm = std::max(std::abs(mean) + radius, 1e-300);
            if (lam / norm < out.worst_eigenvalue) {
                out.worst_eigenvalue = lam / norm;
                out.witness_x = x;
                out.witness_y = y;
                // Eigenvector of [[a, b], [b, c]] for λ_min.
                double vx = b, vy = lam - a;
                if (std::hypot(vx, vy) < 1e-300) {
                    vx = lam - c;
                    vy = b;
                }
                if (std::hypot(vx, vy) < 1e-300) {
                    vx = 1.0;
                    vy = 0.0;
                }
                const double len = std::hypot(vx, vy);
                out.direction_x = vx / len;
                out.direction_y = vy / len;
            }
        }
    }
    out.numeric = out.worst_eigenvalue >= -1e-7;
    out.agree = out.numeric == out.analytic;
    return out;
}

CertReport monotonicity_test(const TripleParams& params, ChannelFamily family, Index n, long trials,
                             std::uint64_t seed, double tol) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    if (trials < 1) throw Error(ErrorCode::BadArgument, "trials must be at least 1");
    CertReport report;
    report.claim = "monotonicity";
    report.params = {{"p", params.p},
                     {"q", params.q},
                     {"s", params.s},
                     {"n", static_cast<double>(n)},
                     {"channel", static_cast<double>(family)}};
    report.trials = trials;
    report.seed = seed;
    report.tol = tol;
    report.asserted = params.monotonicity_admissible();
    std::vector<TrialOutcome> outcomes(static_cast<size_t>(trials));
    parallel_for(static_cast<int>(trials), [&](int t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        const KrausChannel ch = sample_channel(family, n, rng);
        if (!ch.is_unital() || ch.in_dim() != ch.out_dim()) {
            throw Error(ErrorCode::NonUnitalChannel, "sampled channel is not unital");
        }
        const Matrix a = ginibre(n, n, rng);
        const PsdMatrix b = random_psd(n, rng, kCondCap);
        const PsdMatrix c = random_psd(n, rng, kCondCap);
        // Both sides go through the same eigensolver path so the identity
        // channel gives an exactly zero gap.
        const double before = psi_pqs(a, psd(b.matrix()), psd(c.matrix()), params);
        const double after = psi_pqs(ch.apply(a), psd(ch.apply(b.matrix())), psd(ch.apply(c.matrix())), params);
        TrialOutcome& out = outcomes[static_cast<size_t>(t)];
        out.gap = before - after;
        out.scale = std::max(1.0, std::abs(before));
        out.rel = out.gap / out.scale;
        out.inputs = {{"A", a}, {"B", b.matrix()}, {"C", c.matrix()}};
        for (size_t k = 0; k < ch.kraus().size(); ++k) out.inputs.push_back({"kraus" + std::to_string(k), ch.kraus()[k]});
    });
    fold_trials(report, outcomes);
    return report;
}

CertReport lambda_monotonicity_test(const LambdaParams& params, ChannelFamily family, Index n, long trials,
                                    std::uint64_t seed, double tol) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    if (trials < 1) throw Error(ErrorCode::BadArgument, "trials must be at least 1");
    CertReport report;
    report.claim = "lambda_monotonicity";
    report.params = {{"alpha", params.alpha},
                     {"beta", params.beta},
                     {"p", params.p},
                     {"n", static_cast<double>(n)},
                     {"channel", static_cast<double>(family)}};
    report.trials = trials;
    report.seed = seed;
    report.tol = tol;
    report.asserted = params.convexity_admissible();
    std::vector<TrialOutcome> outcomes(static_cast<size_t>(trials));
    parallel_for(static_cast<int>(trials), [&](int t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        const KrausChannel ch = sample_channel(family, n, rng);
        if (!ch.is_unital() || ch.in_dim() != ch.out_dim()) {
            throw Error(ErrorCode::NonUnitalChannel, "sampled channel is not unital");
        }
        const PsdMatrix p = random_psd(n, rng, kCondCap);
        const Matrix x = ginibre(n, n, rng);
        const double before = lambda_abp(psd(p.matrix()), x, params);
        const double after = lambda_abp(psd(ch.apply(p.matrix())), ch.apply(x), params);
        TrialOutcome& out = outcomes[static_cast<size_t>(t)];
        out.gap = before - after;
        out.scale = std::max(1.0, std::abs(before));
        out.rel = out.gap / out.scale;
        out.inputs = {{"P", p.matrix()}, {"X", x}};
        for (size_t k = 0; k < ch.kraus().size(); ++k) out.inputs.push_back({"kraus" + std::to_string(k), ch.kraus()[k]});
    });
    fold_trials(report, outcomes);
    return report;
}

QuadraticContraction quadratic_contraction_gap(double alpha, double beta, const KrausChannel& ch,
                                               const PsdMatrix& a, const PsdMatrix& b, const Matrix& x) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0 && alpha + beta <= 1.0 + 1e-12)) {
        throw Error(ErrorCode::BadExponent, "need 0 < α, β < 1 and α + β ≤ 1");
    }
    if (!ch.is_unital() || ch.in_dim() != ch.out_dim()) {
        throw Error(ErrorCode::NonUnitalChannel, "contraction needs a unital channel");
    }
    if (!a.strictly_positive() || !b.strictly_positive()) {
        throw Error(ErrorCode::SingularPower, "A and B must be strictly positive");
    }
    auto term = [](const PsdMatrix& pa, const PsdMatrix& pb, const Matrix& y, double ea, double eb) {
        return (y.adjoint() * matrix_power(pa, -ea).matrix() * y * matrix_power(pb, -eb).matrix()).trace().real();
    };
    const PsdMatrix pa = psd(ch.apply(a.matrix()));
    const PsdMatrix pb = psd(ch.apply(b.matrix()));
    const Matrix px = ch.apply(x);
    QuadraticContraction out;
    out.rhs = term(a, b, x, alpha, beta);
    out.lhs = term(pa, pb, px, alpha, beta);
    out.gap = out.rhs - out.lhs;
    out.scale = std::max(1.0, std::abs(out.rhs));
    if (alpha + beta < 1.0 - 1e-12) {
        out.chained = true;
        const PsdMatrix b_shift = matrix_power(b, beta / (1.0 - alpha));
        out.mid = term(pa, psd(ch.apply(b_shift.matrix())), px, alpha, 1.0 - alpha);
        out.chain_first = out.mid - out.lhs;
        out.chain_second = term(a, b_shift, x, alpha, 1.0 - alpha) - out.mid;
    }
    return out;
}

CertReport certify_quadratic_contraction(double alpha, double beta, ChannelFamily family, Index n, long trials,
                                         std::uint64_t seed, double tol) {
    if (n < 1 || n > 8) throw Error(ErrorCode::BadArgument, "dimension must be in [1, 8]");
    if (trials < 1) throw Error(ErrorCode::BadArgument, "trials must be at least 1");
    CertReport report;
    report.claim = "quadratic_contraction";
    report.params = {{"alpha", alpha},
                     {"beta", beta},
                     {"n", static_cast<double>(n)},
                     {"channel", static_cast<double>(family)}};
    report.trials = trials;
    report.seed = seed;
    report.tol = tol;
    std::vector<TrialOutcome> outcomes(static_cast<size_t>(trials));
    parallel_for(static_cast<int>(trials), [&](int t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        const KrausChannel ch = sample_channel(family, n, rng);
        const PsdMatrix a = random_psd(n, rng, kCondCap);
        const PsdMatrix b = random_psd(n, rng, kCondCap);
        const Matrix x = ginibre(n, n, rng);
        const QuadraticContraction q = quadratic_contraction_gap(alpha, beta, ch, a, b, x);
        TrialOutcome& out = outcomes[static_cast<size_t>(t)];
        double worst = q.gap;
        if (q.chained) worst = std::min({worst, q.chain_first, q.chain_second});
        out.gap = worst;
        out.scale = q.scale;
        out.rel = worst / q.scale;
        out.inputs = {{"A", a.matrix()}, {"B", b.matrix()}, {"X", x}};
        for (size_t k = 0; k < ch.kraus().size(); ++k) out.inputs.push_back({"kraus" + std::to_string(k), ch.kraus()[k]});
    });
    fold_trials(report, outcomes);
    return report;
}

SearchWitness search_nonconcavity(double p, double s, bool adjoint_pair, const SearchOptions& options) {
    if (p == 0.0 || !(s > 0.0)) throw Error(ErrorCode::BadExponent, "need p ≠ 0 and s > 0");
    SearchProblem problem = psi_problem(p, s, adjoint_pair, -1.0, "nonconcavity");
    problem.warm_starts = [adjoint_pair](Index n) {
        std::vector<Inputs> out;
        if (n < 2) return out;
        const Matrix a1 = embed(diag2(1.8, 0.2), n, 1.0);
        const Matrix a2 = embed(diag2(0.2, 1.8), n, 1.0);
        Matrix k1 = Matrix::Zero(2, 2);
        if (adjoint_pair) {
            // Scaled identities: Ψ(tA) grows like t^{ps}.
            k1(0, 0) = 1.0;
            k1(0, 1) = 1.0;
            out.push_back({embed(k1, n, 0.0), embed(diag2(0.5, 0.5), n, 0.5), embed(diag2(1.5, 1.5), n, 1.5)});
        } else {
            // K1 A^p K2 = (a1^p − a2^p) e1 e1* for diagonal A.
            k1(0, 0) = 1.0;
            k1(0, 1) = -1.0;
            Matrix k2 = Matrix::Zero(2, 2);
            k2(0, 0) = 1.0;
            k2(1, 0) = 1.0;
            out.push_back({embed(k1, n, 0.0), embed(k2, n, 0.0), a1, a2});
        }
        return out;
    };
    return run_search(problem, options);
}

SearchWitness search_nonconvexity(double p, double s, bool adjoint_pair, const SearchOptions& options) {
    if (p == 0.0 || !(s > 0.0)) throw Error(ErrorCode::BadExponent, "need p ≠ 0 and s > 0");
    SearchProblem problem = psi_problem(p, s, adjoint_pair, 1.0, "nonconvexity");
    problem.warm_starts = [adjoint_pair](Index n) {
        std::vector<Inputs> out;
        if (n < 2) return out;
        // K1 A^p K1* = (a1^p + a2^p) e1 e1*, whose s-th power is not convex
        // along a1 + a2 = const when ps < 1.
        Matrix k1 = Matrix::Zero(2, 2);
        k1(0, 0) = 1.0;
        k1(0, 1) = 1.0;
        const Matrix a1 = embed(diag2(1.5, 0.5), n, 1.0);
        const Matrix a2 = embed(diag2(0.5, 1.5), n, 1.0);
        if (adjoint_pair) {
            out.push_back({embed(k1, n, 0.0), a1, a2});
        } else {
            out.push_back({embed(k1, n, 0.0), embed(Matrix(k1.adjoint()), n, 0.0), a1, a2});
        }
        return out;
    };
    return run_search(problem, options);
}

SearchWitness cfl_nonconcavity_check(double p, double q2, double r2, const SearchOptions& options) {
    if (p == 0.0 || q2 == 0.0 || r2 == 0.0) throw Error(ErrorCode::BadExponent, "exponents must be nonzero");
    SearchProblem problem;
    problem.claim = "cfl_nonconcavity";
    problem.params = {{"p", p}, {"q2", q2}, {"r2", r2}};
    problem.slots = {{"A1", SlotKind::Psd}, {"B1", SlotKind::Psd}, {"C1", SlotKind::Psd},
                     {"A2", SlotKind::Psd}, {"B2", SlotKind::Psd}, {"C2", SlotKind::Psd}};
    problem.normalize = [](Inputs& x) {
        for (size_t i = 0; i < 3; ++i) normalize_pair(x[i], x[i + 3]);
    };
    auto values = [](const Inputs& x, auto&& f) {
        return std::array<double, 3>{
            f(psd(x[0]), psd(x[1]), psd(x[2])), f(psd(x[3]), psd(x[4]), psd(x[5])),
            f(psd(0.5 * (x[0] + x[3])), psd(0.5 * (x[1] + x[4])), psd(0.5 * (x[2] + x[5])))};
    };
    problem.margin = [=](const Inputs& x) {
        const auto v = values(x, [&](const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c) {
            return phi_cfl(a, b, c, p, q2, r2);
        });
        return relative_violation(v[0], v[1], v[2], -1.0);
    };
    problem.verify = [=](const Inputs& x) {
        // Independent route: Tr|B^{q2/2} A^p C^{r2/2}|² through singular values.
        const auto v = values(x, [&](const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c) {
            const Matrix product = matrix_power(b, 0.5 * q2).matrix() * matrix_power(a, p).matrix() *
                                   matrix_power(c, 0.5 * r2).matrix();
            return abs_power_trace_compensated(product, 2.0);
        });
        return compensated_violation(v[0], v[1], v[2], -1.0);
    };

    // Diagonal restriction first: a scalar search, lifted by a ⊗ 1.
    SearchOptions scalar = options;
    scalar.dims = {1};
    scalar.budget = options.budget / 4;
    scalar.warm_start = false;
    SearchWitness seed_witness = run_search(problem, scalar);
    const Index lift = options.dims.empty() ? 2 : options.dims.front();
    if (seed_witness.found && lift >= 1) {
        Inputs lifted;
        for (const LabeledMatrix& m : seed_witness.matrices) lifted.push_back(m.value(0, 0) * identity(lift));
        SearchWitness out = seed_witness;
        out.dim = lift;
        out.strategy = "scalar_seed";
        out.matrices.clear();
        for (size_t i = 0; i < lifted.size(); ++i) out.matrices.push_back({problem.slots[i].label, lifted[i]});
        out.margin = safe_margin(problem, lifted);
        out.verified_margin = problem.verify(lifted);
        out.found = out.margin > options.tol && out.verified_margin >= 0.5 * out.margin;
        if (out.found) return out;
    }
    SearchOptions rest = options;
    rest.budget = options.budget - seed_witness.evaluations;
    SearchWitness out = run_search(problem, rest);
    out.evaluations += seed_witness.evaluations;
    out.restarts += seed_witness.restarts;
    return out;
}

SearchWitness search_diagonal_triple_nonconvexity(double p, double q, double s, const SearchOptions& options) {
    if (!(s > 0.0)) throw Error(ErrorCode::BadExponent, "need s > 0");
    const Functional f = diagonal_triple_functional(p, q, s);
    SearchProblem problem;
    problem.claim = "triple_nonconvexity";
    problem.params = {{"p", p}, {"q", q}, {"s", s}};
    problem.slots = {{"A1", SlotKind::Psd}, {"C1", SlotKind::Psd}, {"A2", SlotKind::Psd}, {"C2", SlotKind::Psd}};
    problem.normalize = [](Inputs& x) {
        normalize_pair(x[0], x[2]);
        normalize_pair(x[1], x[3]);
    };
    problem.margin = [f](const Inputs& x) {
        const Inputs x1{x[0], x[1]};
        const Inputs x2{x[2], x[3]};
        const double f1 = f.eval(x1);
        const double f2 = f.eval(x2);
        const double fm = f.eval(Inputs{0.5 * (x[0] + x[2]), 0.5 * (x[1] + x[3])});
        return relative_violation(f1, f2, fm, 1.0);
    };
    problem.verify = [p, q, s](const Inputs& x) {
        // Tr|A^{1−p} C^{-q}|^s directly, with compensated summation.
        auto g = [&](const Matrix& a, const Matrix& c) {
            return abs_power_trace_compensated(
                matrix_power(psd(a), 1.0 - p).matrix() * matrix_power(psd(c), -q).matrix(), s);
        };
        return compensated_violation(g(x[0], x[1]), g(x[2], x[3]), g(0.5 * (x[0] + x[2]), 0.5 * (x[1] + x[3])),
                                     1.0);
    };
    problem.warm_starts = [p, q, s](Index n) {
        // Negative-curvature direction of a^u c^v at (1, 1), u = (1 − p)s, v = −qs.
        const double u = (1.0 - p) * s;
        const double v = -q * s;
        const double a = u * (u - 1.0), c = v * (v - 1.0), b = u * v;
        const double lam = 0.5 * (a + c) - std::hypot(0.5 * (a - c), b);
        double dx = b, dy = lam - a;
        if (std::hypot(dx, dy) < 1e-12) {
            dx = lam - c;
            dy = b;
        }
        const double len = std::max(std::hypot(dx, dy), 1e-300);
        dx /= len;
        dy /= len;
        std::vector<Inputs> out;
        for (double delta : {0.5, 0.25}) {
            out.push_back({(1.0 + delta * dx) * identity(n), (1.0 + delta * dy) * identity(n),
                           (1.0 - delta * dx) * identity(n), (1.0 - delta * dy) * identity(n)});
        }
        return out;
    };
    return run_search(problem, options);
}

SearchWitness refute_lambda_monotonicity(const LambdaParams& params, Index n, std::uint64_t seed, long budget) {
    if (!(params.p >= 1.0)) throw Error(ErrorCode::BadExponent, "Λ needs p ≥ 1");
    if (n < 1) throw Error(ErrorCode::BadArgument, "dimension must be positive");
    const KrausChannel swap = block_swap_channel(n);
    SearchWitness out;
    out.claim = "lambda_monotonicity_refutation";
    out.params = {{"alpha", params.alpha}, {"beta", params.beta}, {"p", params.p}, {"n", static_cast<double>(n)}};
    out.seed = seed;
    out.dim = 2 * n;

    // (log y1, log y2, x1, x2) → block-diagonal P, X.
    auto build = [n](double y1, double y2, double x1, double x2) {
        const Matrix p = block_diag(y1 * identity(n), y2 * identity(n));
        const Matrix x = block_diag(x1 * identity(n), x2 * identity(n));
        return std::pair<Matrix, Matrix>{p, x};
    };
    auto violation = [&](const Matrix& p, const Matrix& x, bool compensated) {
        auto lam = [&](const Matrix& pp, const Matrix& xx) {
            return compensated ? lambda_compensated(psd(pp), xx, params) : lambda_abp(psd(pp), xx, params);
        };
        const double before = lam(p, x);
        const double after = lam(swap.apply(p), swap.apply(x));
        const double scale = std::max({1.0, std::abs(before), std::abs(after)});
        if (!compensated) return (after - before) / scale;
        CompensatedSum acc;
        acc.add(after);
        acc.add(-before);
        return acc.value() / scale;
    };
    auto record = [&](double y1, double y2, double x1, double x2, const char* strategy) {
        const auto [p, x] = build(y1, y2, x1, x2);
        const double m = violation(p, x, false);
        if (m > out.margin) {
            out.margin = m;
            out.strategy = strategy;
            out.matrices = {{"P", p}, {"X", x}};
        }
    };

    // Scalar seed along the negative-curvature direction of x^p y^{α+β} at (1, 1).
    const double e = params.alpha + params.beta;
    const double a = params.p * (params.p - 1.0), c = e * (e - 1.0), b = params.p * e;
    const double lam = 0.5 * (a + c) - std::hypot(0.5 * (a - c), b);
    if (lam < 0.0) {
        double dx = b, dy = lam - a;
        if (std::hypot(dx, dy) < 1e-12) {
            dx = lam - c;
            dy = b;
        }
        const double len = std::hypot(dx, dy);
        dx /= len;
        dy /= len;
        for (double delta : {0.5, 0.3, 0.1}) {
            if (1.0 - delta * std::abs(dy) <= 0.0) continue;
            record(1.0 + delta * dy, 1.0 - delta * dy, 1.0 + delta * dx, 1.0 - delta * dx, "scalar_seed");
            ++out.restarts;
        }
    }

    if (out.margin <= 10.0 * kCertTol && budget > 0) {
        // Diagonal search over (log y1, log y2, x1, x2).
        auto objective = [&](std::span<const double> v) {
            try {
                const auto [p, x] = build(std::exp(v[0]), std::exp(v[1]), v[2], v[3]);
                const double m = violation(p, x, false);
                return std::isfinite(m) ? -m : kInfinity;
            } catch (const Error&) {
                return kInfinity;
            }
        };
        long used = 0;
        int restart = 0;
        while (used < budget && out.margin < 1e-3) {
            Rng rng = make_rng(seed, static_cast<std::uint64_t>(restart++));
            NelderMeadOptions nm;
            nm.max_evaluations = budget - used;
            nm.target = -1e-3;
            const NelderMeadResult r = nelder_mead(objective, standard_normal(4, rng), nm);
            used += r.evaluations;
            ++out.restarts;
            record(std::exp(r.x[0]), std::exp(r.x[1]), r.x[2], r.x[3], "random");
        }
        out.evaluations += used;
    }

    if (!out.matrices.empty()) out.verified_margin = violation(out.matrices[0].value, out.matrices[1].value, true);
    out.found = out.margin > kCertTol && out.verified_margin >= 0.5 * out.margin;
    return out;
}

PartialTraceScaling partial_trace_scaling(const LambdaParams& params, Index n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    const PsdMatrix p = random_psd(n, rng, kCondCap);
    const Matrix x = ginibre(n, n, rng);
    const KrausChannel trace_out = partial_trace_channel(n);
    const Matrix p2 = fuse(p.matrix(), identity(2));
    const Matrix x2 = fuse(x, identity(2));
    PartialTraceScaling out;
    out.measured = lambda_abp(psd(trace_out.apply(p2)), trace_out.apply(x2), params) / lambda_abp(p, x, params);
    out.predicted = std::pow(2.0, params.alpha + params.beta + params.p);
    out.error = std::abs(out.measured - out.predicted);
    return out;
}

double block_swap_midpoint_identity(const LambdaParams& params, Index n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    const PsdMatrix p1 = random_psd(n, rng, kCondCap);
    const PsdMatrix p2 = random_psd(n, rng, kCondCap);
    const Matrix x1 = ginibre(n, n, rng);
    const Matrix x2 = ginibre(n, n, rng);
    const KrausChannel swap = block_swap_channel(n);
    const double lhs = lambda_abp(psd(swap.apply(block_diag(p1.matrix(), p2.matrix()))),
                                  swap.apply(block_diag(x1, x2)), params);
    const double rhs = 2.0 * lambda_abp(psd(0.5 * (p1.matrix() + p2.matrix())), 0.5 * (x1 + x2), params);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace tracelab
