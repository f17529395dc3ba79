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

#include "tracelab/random.hpp"

#include <cmath>
#include <numbers>

namespace tracelab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

Matrix random_invertible(Index n, Rng& rng, double cond_cap) {
    for (;;) {
        Matrix g = ginibre(n, n, rng);
        const RealVector s = svd(g).sigma;
        if (s(n - 1) > 0.0 && s(0) / s(n - 1) <= cond_cap) return g;
    }
}

Matrix haar_unitary(Index n, Rng& rng) {
    Matrix q = ginibre(n, n, rng);
    for (Index j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Index k = 0; k < j; ++k) {
                q.col(j) -= q.col(k) * (q.col(k).adjoint() * q.col(j))(0);
            }
        }
        q.col(j) /= q.col(j).norm();
    }
    // Phase fixing: multiply each column by a random phase so the
    // distribution does not depend on the Gram–Schmidt sign convention.
    for (Index j = 0; j < n; ++j) {
        const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        q.col(j) *= std::polar(1.0, angle);
    }
    return q;
}

PsdMatrix random_psd(Index n, Rng& rng, double cond_cap) {
    const Matrix u = haar_unitary(n, rng);
    const double half = 0.5 * std::log(cond_cap);
    RealVector values(n);
    for (Index i = 0; i < n; ++i) values(i) = std::exp(uniform(rng, -half, half));
    return PsdMatrix::from_spectral(values, u);
}

PsdMatrix random_density(Index n, Rng& rng, double cond_cap) {
    const PsdMatrix p = random_psd(n, rng, cond_cap);
    const double tr = p.eig().values.sum();
    return PsdMatrix::from_spectral(p.eig().values / tr, p.eig().vectors);
}

Matrix random_hermitian(Index n, Rng& rng) {
    const Matrix g = ginibre(n, n, rng);
    return g + g.adjoint();
}

std::vector<double> dirichlet(std::size_t k, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) {
        x = expo(rng);
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

}  // namespace tracelab
