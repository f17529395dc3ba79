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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracelab/channels.hpp"
#include "tracelab/functionals.hpp"
#include "tracelab/linalg.hpp"
#include "tracelab/random.hpp"

namespace tracelab {

/// Violation threshold, relative to max(1, |value|).
inline constexpr double kCertTol = 1e-7;

enum class Verdict { HoldsWithinTol, Violated, Inconclusive };
std::string_view verdict_name(Verdict v);

struct LabeledMatrix {
    std::string label;
    Matrix value;
};

using Parameters = std::vector<std::pair<std::string, double>>;

/// Outcome of a derivative-free counterexample search.
struct SearchWitness {
    std::string claim;
    Parameters params;
    bool found = false;
    Index dim = 0;
    std::uint64_t seed = 0;
    std::vector<LabeledMatrix> matrices;
    /// Relative violation at the witness; positive means violated.
    double margin = -kInfinity;
    /// Same quantity recomputed with compensated summation.
    double verified_margin = -kInfinity;
    long evaluations = 0;
    int restarts = 0;
    /// "random", "warm_start" or "scalar_seed".
    std::string strategy;
};

/// Randomized certification of an inequality claim.
struct CertReport {
    std::string claim;
    Parameters params;
    long trials = 0;
    std::uint64_t seed = 0;
    double tol = kCertTol;
    /// min over trials of gap / scale; negative means the claim failed there.
    double min_gap = kInfinity;
    Verdict verdict = Verdict::HoldsWithinTol;
    /// Whether the parameters lie where the claim is asserted to hold.
    bool asserted = true;
    /// Inputs of the worst trial.
    std::vector<LabeledMatrix> witness;
    /// Per-trial worst gap (absolute) and its scale.
    std::vector<double> gaps;
    std::vector<double> scales;
    std::optional<SearchWitness> escalation;
};

/// Violated iff min_gap < −tol; otherwise holds, or inconclusive when the
/// claim is not asserted for these parameters.
Verdict verdict_for(double min_gap, double tol, bool asserted);

/// Fixed slots are parameters shared by both points of a combination.
enum class SlotKind { General, Psd, Fixed };

/// A real-valued function of a tuple of matrices.
struct Functional {
    std::string id;
    std::vector<std::string> names;
    std::vector<SlotKind> slots;
    std::function<double(std::span<const Matrix>)> eval;
};

using Inputs = std::vector<Matrix>;

/// λ f(x1) + (1 − λ) f(x2) − f(λ x1 + (1 − λ) x2); positive is the convex
/// side. Throws DomainViolation when a Psd slot of the combination is not
/// strictly positive.
double combination_gap(const Functional& f, const Inputs& x1, const Inputs& x2, double lambda);

/// combination_gap at λ = 1/2.
double midpoint_gap(const Functional& f, const Inputs& x1, const Inputs& x2);

/// (A general, B, C, K1, K2) ↦ Tr|B^{-p} K1 A K2 C^{-q}|^s with the kernels
/// fixed; the kernels in `params` are ignored.
Functional triple_functional(const TripleParams& params);
/// (P, X) ↦ Λ(P, X).
Functional lambda_functional(const LambdaParams& params);
/// A ↦ Tr|K1 A^p K2|^s.
Functional psi_ps_functional(const Matrix& k1, const Matrix& k2, double p, double s);
/// (A, B, C) ↦ Tr(A^p B^{q2} A^p C^{r2}).
Functional cfl_functional(double p, double q2, double r2);
/// (A, C) ↦ Tr|B^{-p} A C^{-q}|^s at B = A.
Functional diagonal_triple_functional(double p, double q, double s);

/// Draws both points of one trial; Fixed slots must agree.
using Sampler = std::function<std::pair<Inputs, Inputs>(Rng&)>;

struct ConvexityOptions {
    double tol = kCertTol;
    /// Escalation search budget when the claim is not asserted and random
    /// trials find nothing; 0 disables it.
    long escalation_budget = 100000;
    std::vector<Index> escalation_dims = {1, 2, 3};
};

/// Samples pairs of inputs, evaluates the combination gap at
/// λ ∈ {1/4, 1/3, 1/2, 2/3, 3/4} and 11 uniform draws per trial.
CertReport certify_convexity(const Functional& f, const Sampler& sample, long trials, std::uint64_t seed,
                             bool asserted, double tol = kCertTol);

/// Joint convexity of Tr|B^{-p} K1 A K2 C^{-q}|^s in (A, B, C) at dimension n.
/// Empty K1/K2 draw a fresh Ginibre kernel per trial. Outside the convexity
/// region an escalation search over the B = A specialization runs if the
/// random trials stay clean.
CertReport certify_joint_convexity(const TripleParams& params, Index n, long trials, std::uint64_t seed,
                                   const ConvexityOptions& options = {});

/// Joint convexity of Λ_{α,β,p} in (P, X).
CertReport certify_lambda_convexity(const LambdaParams& params, Index n, long trials, std::uint64_t seed,
                                    double tol = kCertTol);

/// Joint convexity of Tr(A^p B^{q2} A^p C^{r2}) in (A, B, C).
CertReport certify_cfl_convexity(double p, double q2, double r2, Index n, long trials, std::uint64_t seed,
                                 double tol = kCertTol);

/// Convexity of (x, y) ↦ x^p / y on (0, ∞)², analytically (p(p − 2) ≥ 0)
/// and by finite-difference Hessians on the grid {0.5, 1, 2}².
struct ScalarBoundary {
    double p = 0.0;
    bool analytic = false;
    bool numeric = false;
    bool agree = false;
    /// Most negative Hessian eigenvalue over the grid (relative to ‖H‖) and
    /// where it occurred.
    double worst_eigenvalue = 0.0;
    double witness_x = 0.0;
    double witness_y = 0.0;
    /// Unit eigenvector of the worst eigenvalue.
    double direction_x = 0.0;
    double direction_y = 0.0;
};

ScalarBoundary scalar_convexity_boundary(double p);

/// Contraction of a functional under sampled unital channels:
/// gap = f(inputs) − f(φ(inputs)).
CertReport monotonicity_test(const TripleParams& params, ChannelFamily family, Index n, long trials,
                             std::uint64_t seed, double tol = kCertTol);

/// Λ(φ(P), φ(X)) ≤ Λ(P, X), the B = C instantiation of the triple functional.
CertReport lambda_monotonicity_test(const LambdaParams& params, ChannelFamily family, Index n, long trials,
                                    std::uint64_t seed, double tol = kCertTol);

/// Tr(φ(X)* φ(A)^{-α} φ(X) φ(B)^{-β}) ≤ Tr(X* A^{-α} X B^{-β}).
struct QuadraticContraction {
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs − lhs.
    double gap = 0.0;
    double scale = 1.0;
    /// For α + β < 1: lhs ≤ mid ≤ rhs with B replaced by B^{β/(1−α)} and
    /// β by 1 − α in the middle term. Both steps are reported.
    bool chained = false;
    double mid = 0.0;
    double chain_first = 0.0;
    double chain_second = 0.0;
};

QuadraticContraction quadratic_contraction_gap(double alpha, double beta, const KrausChannel& ch,
                                               const PsdMatrix& a, const PsdMatrix& b, const Matrix& x);

CertReport certify_quadratic_contraction(double alpha, double beta, ChannelFamily family, Index n, long trials,
                                         std::uint64_t seed, double tol = kCertTol);

/// Search configuration. The budget counts objective evaluations across all
/// dimensions and restarts.
struct SearchOptions {
    long budget = 100000;
    std::uint64_t seed = 0;
    std::vector<Index> dims = {2, 3, 4};
    /// Stop early once a margin this large is found.
    double stop_margin = 1e-3;
    double tol = kCertTol;
    bool warm_start = true;
};

/// Midpoint concavity of Tr|K1 A^p K2|^s fails. Searches K1, K2, A1, A2;
/// with `adjoint_pair` the kernel is tied as K2 = K1*.
SearchWitness search_nonconcavity(double p, double s, bool adjoint_pair, const SearchOptions& options = {});

/// Midpoint convexity of Tr|K1 A^p K2|^s fails.
SearchWitness search_nonconvexity(double p, double s, bool adjoint_pair, const SearchOptions& options = {});

/// Midpoint concavity of Tr(A^p B^{q2} A^p C^{r2}) fails. A diagonal
/// search runs first and is lifted when it succeeds.
SearchWitness cfl_nonconcavity_check(double p, double q2, double r2, const SearchOptions& options = {});

/// Midpoint convexity of (A, C) ↦ Tr|A^{1−p} C^{-q}|^s fails.
SearchWitness search_diagonal_triple_nonconvexity(double p, double q, double s, const SearchOptions& options = {});

/// Λ(φ(P), φ(X)) > Λ(P, X) for the block-swap channel on block-diagonal
/// P = y1·1 ⊕ y2·1, X = x1·1 ⊕ x2·1 of total dimension 2n. The scalar seed
/// comes from the negative Hessian direction of x^p/y; a diagonal search
/// follows if the seed does not violate.
SearchWitness refute_lambda_monotonicity(const LambdaParams& params, Index n, std::uint64_t seed,
                                         long budget = 20000);

/// Λ(φ(P ⊕ P), φ(X ⊕ X)) / Λ(P, X) for the partial trace φ over the two
/// blocks; the prediction is 2^{α+β+p}.
struct PartialTraceScaling {
    double measured = 0.0;
    double predicted = 0.0;
    double error = 0.0;
};

PartialTraceScaling partial_trace_scaling(const LambdaParams& params, Index n, std::uint64_t seed);

/// Λ(φ(P), φ(X)) = 2Λ((P1 + P2)/2, (X1 + X2)/2) for the block swap on
/// P1 ⊕ P2, X1 ⊕ X2. Returns the relative deviation of the two sides.
double block_swap_midpoint_identity(const LambdaParams& params, Index n, std::uint64_t seed);

}  // namespace tracelab
