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
#include <string_view>
#include <vector>

#include "tracelab/linalg.hpp"
#include "tracelab/random.hpp"

namespace tracelab {

/// Completely positive map X ↦ Σ K_i X K_i*, given by its Kraus operators
/// (each out_dim × in_dim). Trace preservation is required at construction;
/// unitality is recorded.
class KrausChannel {
public:
    /// Throws DimMismatch for inconsistent shapes and DomainViolation when
    /// Σ K_i* K_i differs from the identity by more than 1e-10.
    explicit KrausChannel(std::vector<Matrix> kraus);

    Index in_dim() const { return in_dim_; }
    Index out_dim() const { return out_dim_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    bool is_unital() const { return unital_; }

    Matrix apply(const Matrix& x) const;

    /// Hilbert–Schmidt adjoint Y ↦ Σ K_i* Y K_i.
    Matrix apply_adjoint(const Matrix& y) const;

    /// Σ conj(K_i) ⊗ K_i, acting on column-stacked vectorizations.
    Matrix superoperator_matrix() const;

private:
    std::vector<Matrix> kraus_;
    Index in_dim_ = 0;
    Index out_dim_ = 0;
    bool unital_ = false;
};

/// (after ∘ before)(X) = after(before(X)).
KrausChannel compose(const KrausChannel& after, const KrausChannel& before);

/// System ⊗ ancilla channel with system-first, column-major index fusion:
/// composite index = i_sys + dim_sys · i_anc.
KrausChannel tensor(const KrausChannel& system, const KrausChannel& ancilla);

/// Matrix tensor product under the same fusion convention, so that
/// fuse(X, diag(1, 0)) is the block matrix [[X, 0], [0, 0]].
Matrix fuse(const Matrix& system, const Matrix& ancilla);

Matrix block_diag(const Matrix& top, const Matrix& bottom);

KrausChannel identity_channel(Index n);
KrausChannel unitary_channel(const Matrix& u);

/// Σ w_i U_i X U_i*. Throws BadWeights / NotUnitary.
KrausChannel mixed_unitary(const std::vector<double>& weights, const std::vector<Matrix>& unitaries);

/// X ↦ (X + S X S)/2 on dimension 2n, S swapping the two n-blocks.
KrausChannel block_swap_channel(Index n);

/// Trace over the two-dimensional ancilla: dimension 2n → n. Not unital.
KrausChannel partial_trace_channel(Index n);

/// Projectors onto the blocks of a partition of {0, …, n−1}. Throws
/// BadPartition.
KrausChannel pinching_channel(Index n, const std::vector<std::vector<Index>>& blocks);

Matrix random_unitary(Index n, std::uint64_t seed);

/// Mixed-unitary channel with between min_terms and max_terms Haar unitaries
/// and Dirichlet weights.
KrausChannel random_mixed_unitary(Index n, Rng& rng, int min_terms = 2, int max_terms = 6);

enum class ChannelFamily {
    Identity,
    UnitaryConjugation,
    MixedUnitary,
    Pinching,
    BlockSwap,
    PartialTrace,
};

std::string_view channel_family_name(ChannelFamily family);
ChannelFamily parse_channel_family(std::string_view name);

/// Channel on B(C^n) drawn from the family. BlockSwap needs even n;
/// PartialTrace maps dimension 2n to n.
KrausChannel sample_channel(ChannelFamily family, Index n, Rng& rng);

}  // namespace tracelab
