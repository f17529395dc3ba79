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

#include <initializer_list>

#include <gtest/gtest.h>

#include "tracelab/linalg.hpp"
#include "tracelab/random.hpp"

namespace tracelab::testing {

inline Matrix diag(std::initializer_list<double> values) {
    Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
    Index i = 0;
    for (double v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

inline Matrix from_rows(Index rows, Index cols, std::initializer_list<Complex> entries) {
    Matrix m(rows, cols);
    Index k = 0;
    for (Complex v : entries) {
        m(k / cols, k % cols) = v;
        ++k;
    }
    return m;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline ::testing::AssertionResult matrices_near(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
                                             << b.cols();
    }
    const double err = (a - b).norm();
    if (err <= tol * scale_of(b)) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "‖a − b‖_F = " << err << " exceeds " << tol << "·" << scale_of(b);
}

}  // namespace tracelab::testing
