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

#include "tracelab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tracelab {

namespace {

constexpr double kChannelTol = 1e-10;

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw Error(ErrorCode::DimMismatch, "channel needs at least one Kraus operator");
    out_dim_ = kraus_.front().rows();
    in_dim_ = kraus_.front().cols();
    if (in_dim_ < 1 || out_dim_ < 1) throw Error(ErrorCode::DimMismatch, "empty Kraus operator");
    Matrix tp = Matrix::Zero(in_dim_, in_dim_);
    Matrix un = Matrix::Zero(out_dim_, out_dim_);
    for (const Matrix& k : kraus_) {
        if (k.rows() != out_dim_ || k.cols() != in_dim_) {
            throw Error(ErrorCode::DimMismatch, "Kraus operators must share one shape");
        }
        if (!k.allFinite()) throw Error(ErrorCode::DomainViolation, "Kraus operator has non-finite entries");
        tp += k.adjoint() * k;
        un += k * k.adjoint();
    }
    if ((tp - identity(in_dim_)).norm() > kChannelTol * std::sqrt(static_cast<double>(in_dim_))) {
        throw Error(ErrorCode::DomainViolation, "Kraus operators are not trace preserving");
    }
    unital_ = (un - identity(out_dim_)).norm() <= kChannelTol * std::sqrt(static_cast<double>(out_dim_));
}

Matrix KrausChannel::apply(const Matrix& x) const {
    if (x.rows() != in_dim_ || x.cols() != in_dim_) {
        throw Error(ErrorCode::DimMismatch, "input does not match the channel dimension");
    }
    Matrix out = Matrix::Zero(out_dim_, out_dim_);
    for (const Matrix& k : kraus_) out += k * x * k.adjoint();
    return out;
}

Matrix KrausChannel::apply_adjoint(const Matrix& y) const {
    if (y.rows() != out_dim_ || y.cols() != out_dim_) {
        throw Error(ErrorCode::DimMismatch, "input does not match the channel output dimension");
    }
    Matrix out = Matrix::Zero(in_dim_, in_dim_);
    for (const Matrix& k : kraus_) out += k.adjoint() * y * k;
    return out;
}

Matrix KrausChannel::superoperator_matrix() const {
    Matrix out = Matrix::Zero(out_dim_ * out_dim_, in_dim_ * in_dim_);
    for (const Matrix& k : kraus_) out += kron(k.conjugate(), k);
    return out;
}

KrausChannel compose(const KrausChannel& after, const KrausChannel& before) {
    if (after.in_dim() != before.out_dim()) throw Error(ErrorCode::DimMismatch, "cannot compose channels");
    std::vector<Matrix> ops;
    ops.reserve(after.kraus().size() * before.kraus().size());
    for (const Matrix& a : after.kraus()) {
        for (const Matrix& b : before.kraus()) ops.push_back(a * b);
    }
    return KrausChannel(std::move(ops));
}

Matrix fuse(const Matrix& system, const Matrix& ancilla) { return kron(ancilla, system); }

KrausChannel tensor(const KrausChannel& system, const KrausChannel& ancilla) {
    std::vector<Matrix> ops;
    for (const Matrix& s : system.kraus()) {
        for (const Matrix& a : ancilla.kraus()) ops.push_back(fuse(s, a));
    }
    return KrausChannel(std::move(ops));
}

Matrix block_diag(const Matrix& top, const Matrix& bottom) {
    Matrix out = Matrix::Zero(top.rows() + bottom.rows(), top.cols() + bottom.cols());
    out.topLeftCorner(top.rows(), top.cols()) = top;
    out.bottomRightCorner(bottom.rows(), bottom.cols()) = bottom;
    return out;
}

KrausChannel identity_channel(Index n) { return KrausChannel({identity(n)}); }

KrausChannel unitary_channel(const Matrix& u) {
    if (!is_unitary(u)) throw Error(ErrorCode::NotUnitary, "conjugation needs a unitary");
    return KrausChannel({u});
}

KrausChannel mixed_unitary(const std::vector<double>& weights, const std::vector<Matrix>& unitaries) {
    if (weights.empty() || weights.size() != unitaries.size()) {
        throw Error(ErrorCode::BadWeights, "need one weight per unitary");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw Error(ErrorCode::BadWeights, "weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::BadWeights, "weights must sum to one");
    const Index n = unitaries.front().rows();
    std::vector<Matrix> ops;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (unitaries[i].rows() != n || !is_unitary(unitaries[i])) {
            throw Error(ErrorCode::NotUnitary, "mixed-unitary channel needs square unitaries of one size");
        }
        if (weights[i] > 0.0) ops.push_back(std::sqrt(weights[i]) * unitaries[i]);
    }
    return KrausChannel(std::move(ops));
}

KrausChannel block_swap_channel(Index n) {
    if (n < 1) throw Error(ErrorCode::DimMismatch, "block size must be positive");
    Matrix swap2(2, 2);
    swap2 << 0.0, 1.0, 1.0, 0.0;
    const Matrix s = fuse(identity(n), swap2);
    return mixed_unitary({0.5, 0.5}, {identity(2 * n), s});
}

KrausChannel partial_trace_channel(Index n) {
    if (n < 1) throw Error(ErrorCode::DimMismatch, "system dimension must be positive");
    std::vector<Matrix> ops;
    for (Index a = 0; a < 2; ++a) {
        Matrix bra = Matrix::Zero(1, 2);
        bra(0, a) = 1.0;
        ops.push_back(fuse(identity(n), bra));
    }
    return KrausChannel(std::move(ops));
}

KrausChannel pinching_channel(Index n, const std::vector<std::vector<Index>>& blocks) {
    std::vector<int> seen(static_cast<size_t>(n), 0);
    std::vector<Matrix> ops;
    for (const auto& block : blocks) {
        if (block.empty()) throw Error(ErrorCode::BadPartition, "empty block");
        Matrix proj = Matrix::Zero(n, n);
        for (Index i : block) {
            if (i < 0 || i >= n) throw Error(ErrorCode::BadPartition, "index out of range");
            if (seen[static_cast<size_t>(i)]++) throw Error(ErrorCode::BadPartition, "blocks overlap");
            proj(i, i) = 1.0;
        }
        ops.push_back(std::move(proj));
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c == 0; })) {
        throw Error(ErrorCode::BadPartition, "blocks do not cover every index");
    }
    return KrausChannel(std::move(ops));
}

Matrix random_unitary(Index n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return haar_unitary(n, rng);
}

KrausChannel random_mixed_unitary(Index n, Rng& rng, int min_terms, int max_terms) {
    const int terms = std::uniform_int_distribution<int>(min_terms, max_terms)(rng);
    const std::vector<double> weights = dirichlet(static_cast<size_t>(terms), rng);
    std::vector<Matrix> unitaries;
    for (int i = 0; i < terms; ++i) unitaries.push_back(haar_unitary(n, rng));
    return mixed_unitary(weights, unitaries);
}

std::string_view channel_family_name(ChannelFamily family) {
    switch (family) {
        case ChannelFamily::Identity: return "identity";
        case ChannelFamily::UnitaryConjugation: return "unitary";
        case ChannelFamily::MixedUnitary: return "mixed_unitary";
        case ChannelFamily::Pinching: return "pinching";
        case ChannelFamily::BlockSwap: return "block_swap";
        case ChannelFamily::PartialTrace: return "partial_trace";
    }
    return "unknown";
}

ChannelFamily parse_channel_family(std::string_view name) {
    for (ChannelFamily f : {ChannelFamily::Identity, ChannelFamily::UnitaryConjugation, ChannelFamily::MixedUnitary,
                            ChannelFamily::Pinching, ChannelFamily::BlockSwap, ChannelFamily::PartialTrace}) {
        if (channel_family_name(f) == name) return f;
    }
    throw Error(ErrorCode::BadArgument, "unknown channel family '" + std::string(name) + "'");
}

KrausChannel sample_channel(ChannelFamily family, Index n, Rng& rng) {
    switch (family) {
        case ChannelFamily::Identity: return identity_channel(n);
        case ChannelFamily::UnitaryConjugation: return unitary_channel(haar_unitary(n, rng));
        case ChannelFamily::MixedUnitary: return random_mixed_unitary(n, rng);
        case ChannelFamily::Pinching: {
            // Random partition, pinched in a random orthonormal basis.
            const int k = std::uniform_int_distribution<int>(1, static_cast<int>(n))(rng);
            std::vector<std::vector<Index>> blocks(static_cast<size_t>(k));
            for (Index i = 0; i < n; ++i) {
                const int b = i < k ? static_cast<int>(i) : std::uniform_int_distribution<int>(0, k - 1)(rng);
                blocks[static_cast<size_t>(b)].push_back(i);
            }
            const Matrix u = haar_unitary(n, rng);
            std::vector<Matrix> ops;
            const KrausChannel pinch = pinching_channel(n, blocks);
            for (const Matrix& p : pinch.kraus()) ops.push_back(u * p * u.adjoint());
            return KrausChannel(std::move(ops));
        }
        case ChannelFamily::BlockSwap:
            if (n % 2 != 0) throw Error(ErrorCode::DimMismatch, "block swap needs an even dimension");
            return block_swap_channel(n / 2);
        case ChannelFamily::PartialTrace: return partial_trace_channel(n);
    }
    throw Error(ErrorCode::BadArgument, "unknown channel family");
}

}  // namespace tracelab
