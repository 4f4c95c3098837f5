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

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "cvcluster/errors.hpp"
#include "cvcluster/hadamard.hpp"

namespace cvcluster {
namespace {

// Sign matrices with pairwise orthogonal rows, checked with plain integers.
std::set<uint16_t> integer_oracle() {
    std::set<uint16_t> out;
    for (uint32_t mask = 0; mask < (1u << 16); ++mask) {
        int e[4][4];
        for (int b = 0; b < 16; ++b) {
            e[b / 4][b % 4] = (mask >> b) & 1u ? -1 : 1;
        }
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            for (int j = i + 1; j < 4 && ok; ++j) {
                ok = e[i][0] * e[j][0] + e[i][1] * e[j][1] + e[i][2] * e[j][2] + e[i][3] * e[j][3] == 0;
            }
        }
        if (ok) {
            out.insert(static_cast<uint16_t>(mask));
        }
    }
    return out;
}

std::set<uint16_t> masks(const std::vector<Hadamard4> &hs) {
    std::set<uint16_t> out;
    for (const auto &h : hs) {
        out.insert(h.mask());
    }
    return out;
}

TEST(Hadamard4, BruteForceCountMatchesOracle) {
    auto all = enumerate_hadamard4();
    EXPECT_EQ(all.size(), 768u);
    EXPECT_EQ(masks(all), integer_oracle());
    EXPECT_EQ(count_hadamard2(), 8u);
}

TEST(Hadamard4, SeedRoundTripsThroughFourSplitter) {
    Hadamard4 h = Hadamard4::seed();
    EXPECT_TRUE(h.is_hadamard());
    EXPECT_EQ(h.to_foursplitter(), ExactMatrix::from_integers({{h(0, 0), h(0, 1), h(0, 2), h(0, 3)},
                                                               {h(1, 0), h(1, 1), h(1, 2), h(1, 3)},
                                                               {h(2, 0), h(2, 1), h(2, 2), h(2, 3)},
                                                               {h(3, 0), h(3, 1), h(3, 2), h(3, 3)}},
                                                              ExactScalar::half()));
    EXPECT_EQ(Hadamard4::from_foursplitter(h.to_foursplitter()), h);
}

TEST(Hadamard4, GeneratedClassEqualsBruteForce) {
    auto all = enumerate_hadamard4();
    EXPECT_EQ(generate_class(Hadamard4::seed()), all);
    EXPECT_EQ(row_orbit(Hadamard4::seed()).size(), 384u);
}

TEST(Hadamard4, ClassIsIndependentOfSeedAndColumn) {
    auto all = enumerate_hadamard4();
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
        for (int column = 1; column <= 4; ++column) {
            EXPECT_EQ(generate_class(all[pick(rng)], column), all);
        }
    }
}

TEST(Hadamard4, ParitySplitsTheClassInHalf) {
    size_t even = 0;
    size_t odd = 0;
    for (const auto &h : enumerate_hadamard4()) {
        auto p = row_parity(h);
        // orthogonality forces every row to share the same parity
        EXPECT_TRUE(std::all_of(p.begin(), p.end(), [&](Parity x) { return x == p[0]; }));
        (p[0] == Parity::even ? even : odd) += 1;
    }
    EXPECT_EQ(even, 384u);
    EXPECT_EQ(odd, 384u);
}

TEST(Hadamard4, RowOperationsPreserveParityAndColumnNegationFlipsIt) {
    Hadamard4 h = Hadamard4::seed();
    Parity base = row_parity(h)[0];
    for (const auto &g : row_orbit(h)) {
        EXPECT_EQ(row_parity(g)[0], base);
    }
    EXPECT_NE(row_parity(h.negate_column(3))[0], base);
}

TEST(Hadamard4, InvalidSeedIsRejected) {
    EXPECT_THROW(generate_class(Hadamard4(0)), PreconditionError);
    EXPECT_THROW(generate_class(Hadamard4::seed(), 5), std::out_of_range);
}

TEST(RealizationCensus, EveryFourSplitterRealizedUniformly) {
    auto start = std::chrono::steady_clock::now();
    RealizationCensus rc = realization_census();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_EQ(rc.total_networks, 96u * 24u * 16u * 2u);
    EXPECT_EQ(rc.total_networks, 73728u);
    EXPECT_EQ(rc.realizations.size(), 768u);
    EXPECT_TRUE(rc.uniform());
    EXPECT_EQ(rc.realizations.begin()->second, 96u);
    EXPECT_LT(seconds, 60.0);
}

}  // namespace
}  // namespace cvcluster
