// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "cvcluster/errors.hpp"
#include "cvcluster/exact_matrix.hpp"

namespace cvcluster {
namespace {

TEST(ExactMatrix, BeamSplitterHasTheBalancedBlock) {
    ExactMatrix r = beam_splitter_matrix(4, 2, 3);
    ExactScalar s = ExactScalar::inv_sqrt2();
    EXPECT_EQ(r(1, 1), s);
    EXPECT_EQ(r(1, 2), -s);
    EXPECT_EQ(r(2, 1), s);
    EXPECT_EQ(r(2, 2), s);
    EXPECT_EQ(r(0, 0), ExactScalar(1));
    EXPECT_EQ(r(3, 3), ExactScalar(1));
    EXPECT_TRUE(r.is_orthogonal());
}

TEST(ExactMatrix, ReversedSplitterIsTheTranspose) {
    for (int j = 1; j <= 4; ++j) {
        for (int k = 1; k <= 4; ++k) {
            if (j != k) {
                EXPECT_EQ(beam_splitter_matrix(4, k, j), beam_splitter_matrix(4, j, k).transpose());
                EXPECT_TRUE((beam_splitter_matrix(4, j, k) * beam_splitter_matrix(4, k, j)).is_identity());
            }
        }
    }
}

TEST(ExactMatrix, TwoSplittersInARowSwapWithASign) {
    // R12·R12 = [[0,-1],[1,0]]
    ExactMatrix r = beam_splitter_matrix(2, 1, 2);
    EXPECT_EQ(r * r, ExactMatrix::from_integers({{0, -1}, {1, 0}}));
}

TEST(ExactMatrix, PermutationSelectsRows) {
    ExactMatrix m = ExactMatrix::from_integers({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    ExactMatrix p = permutation_matrix(3, {3, 1, 2});
    EXPECT_EQ(p * m, ExactMatrix::from_integers({{7, 8, 9}, {1, 2, 3}, {4, 5, 6}}));
    EXPECT_EQ(transposition_matrix(3, 1, 3) * m, ExactMatrix::from_integers({{7, 8, 9}, {4, 5, 6}, {1, 2, 3}}));
    EXPECT_EQ(negation_matrix(3, 2) * m, ExactMatrix::from_integers({{1, 2, 3}, {-4, -5, -6}, {7, 8, 9}}));
}

TEST(ExactMatrix, ScaledIntegersAndZeroCount) {
    ExactMatrix h = ExactMatrix::from_integers({{1, 1}, {1, -1}}, ExactScalar::inv_sqrt2());
    EXPECT_TRUE(h.is_orthogonal());
    EXPECT_EQ(h.zero_entry_count(), 0u);
    EXPECT_EQ(ExactMatrix::identity(3).zero_entry_count(), 6u);
    auto d = h.to_double_rows();
    EXPECT_NEAR(d[1][1], -1 / std::sqrt(2.0), 1e-15);
}

TEST(ExactMatrix, KeyDistinguishesMatrices) {
    EXPECT_EQ(beam_splitter_matrix(4, 1, 2).key(), beam_splitter_matrix(4, 1, 2).key());
    EXPECT_NE(beam_splitter_matrix(4, 1, 2).key(), beam_splitter_matrix(4, 2, 1).key());
}

TEST(ExactMatrix, RejectsBadInput) {
    EXPECT_THROW(beam_splitter_matrix(4, 2, 2), std::invalid_argument);
    EXPECT_THROW(beam_splitter_matrix(4, 0, 2), std::out_of_range);
    EXPECT_THROW(beam_splitter_matrix(4, 1, 5), std::out_of_range);
    EXPECT_THROW(ExactMatrix::identity(3) * ExactMatrix::identity(4), DimensionError);
}

}  // namespace
}  // namespace cvcluster
