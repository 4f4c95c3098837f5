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

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cvcluster/bs_network.hpp"
#include "cvcluster/errors.hpp"

namespace cvcluster {
namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Floating-point network product, independent of the exact path.
Mat4 float_matrix(const BsNetwork &net) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
        m[i][i] = 1;
    }
    const double s = 1 / std::sqrt(2.0);
    for (const auto &sp : net.sequence()) {
        int j = sp.from - 1;
        int k = sp.to - 1;
        for (int c = 0; c < 4; ++c) {
            double a = m[j][c];
            double b = m[k][c];
            m[j][c] = s * (a - b);
            m[k][c] = s * (a + b);
        }
    }
    return m;
}

bool float_balanced(const BsNetwork &net) {
    for (const auto &row : float_matrix(net)) {
        for (double x : row) {
            if (std::abs(std::abs(x) - 0.5) > 1e-9) {
                return false;
            }
        }
    }
    return true;
}

std::string float_key(const BsNetwork &net) {
    std::string k;
    for (const auto &row : float_matrix(net)) {
        for (double x : row) {
            k += std::to_string(std::lround(x * 1e6)) + ",";
        }
    }
    return k;
}

TEST(DirectedSplitter, IndexRoundTrips) {
    std::set<int> seen;
    for (int i = 0; i < 12; ++i) {
        DirectedSplitter s = DirectedSplitter::from_index(i, 4);
        EXPECT_NE(s.from, s.to);
        EXPECT_EQ(s.index(4), i);
        seen.insert(s.from * 10 + s.to);
    }
    EXPECT_EQ(seen.size(), 12u);
}

TEST(BsNetwork, MatrixAppliesSplittersInOrder) {
    BsNetwork net(4, {{1, 2}, {3, 4}});
    EXPECT_EQ(net.matrix(), beam_splitter_matrix(4, 3, 4) * beam_splitter_matrix(4, 1, 2));
    BsNetwork chain(3, {{1, 2}, {2, 3}});
    EXPECT_EQ(chain.matrix(), beam_splitter_matrix(3, 2, 3) * beam_splitter_matrix(3, 1, 2));
    EXPECT_EQ(chain.reversed().matrix(), chain.matrix().transpose());
    EXPECT_EQ(chain.str(), "[(1,2),(2,3)]");
}

TEST(BsNetwork, RejectsInvalidSplitters) {
    EXPECT_THROW(BsNetwork(4, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(BsNetwork(4, {{1, 5}}), std::out_of_range);
}

TEST(BalancedFourSplitter, PreconditionsAreChecked) {
    EXPECT_THROW(is_balanced_foursplitter(ExactMatrix::identity(3)), PreconditionError);
    EXPECT_THROW(is_balanced_foursplitter(ExactMatrix::from_integers({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                                                                       {0, 0, 0, 1}})),
                 PreconditionError);
    EXPECT_FALSE(is_balanced_foursplitter(ExactMatrix::identity(4)));
    EXPECT_TRUE(is_balanced_foursplitter(BsNetwork(4, {{1, 2}, {3, 4}, {1, 3}, {2, 4}}).matrix()));
}

TEST(StructuralConditions, KnownExamples) {
    StructuralConditions good = structural_conditions(BsNetwork(4, {{1, 2}, {3, 4}, {1, 3}, {2, 4}}));
    EXPECT_TRUE(good.all());
    StructuralConditions repeated = structural_conditions(BsNetwork(4, {{1, 2}, {3, 4}, {2, 1}, {3, 4}}));
    EXPECT_FALSE(repeated.no_repeated_pair);
    StructuralConditions lopsided = structural_conditions(BsNetwork(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}}));
    EXPECT_FALSE(lopsided.each_mode_twice);
    EXPECT_THROW(structural_conditions(BsNetwork(4, {{1, 2}})), PreconditionError);
}

TEST(BalanceEquivalence, ExhaustiveEquivalenceAgainstFloatingPointOracle) {
    auto all = all_four_splitter_sequences();
    ASSERT_EQ(all.size(), 20736u);
    size_t float_count = 0;
    for (const auto &net : all) {
        float_count += float_balanced(net) ? 1 : 0;
    }
    BalanceEquivalenceReport r = verify_balance_equivalence();
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.candidate_count, 20736u);
    EXPECT_EQ(r.balanced_count, float_count);
    EXPECT_EQ(r.condition_pass_count, float_count);
    EXPECT_TRUE(r.counterexamples.empty());
}

// Classes of sequences related by swapping adjacent disjoint splitters,
// found with a union-find over all balanced sequences.
TEST(Census, PhysicalClassesMatchUnionFindOracle) {
    std::vector<BsNetwork> balanced;
    for (const auto &net : all_four_splitter_sequences()) {
        if (float_balanced(net)) {
            balanced.push_back(net);
        }
    }
    std::map<BsNetwork, size_t> index;
    for (size_t i = 0; i < balanced.size(); ++i) {
        index[balanced[i]] = i;
    }
    std::vector<size_t> parent(balanced.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (size_t i = 0; i < balanced.size(); ++i) {
        auto seq = balanced[i].sequence();
        for (size_t k = 0; k + 1 < seq.size(); ++k) {
            if (seq[k].from != seq[k + 1].from && seq[k].from != seq[k + 1].to && seq[k].to != seq[k + 1].from &&
                seq[k].to != seq[k + 1].to) {
                auto swapped = seq;
                std::swap(swapped[k], swapped[k + 1]);
                parent[find(i)] = find(index.at(BsNetwork(4, swapped)));
            }
        }
    }
    std::map<size_t, std::string> class_key;
    for (size_t i = 0; i < balanced.size(); ++i) {
        class_key[find(i)] = float_key(balanced[i]);
    }
    std::map<std::string, size_t> per_matrix;
    for (const auto &[root, key] : class_key) {
        ++per_matrix[key];
    }
    std::map<size_t, size_t> hist;
    for (const auto &[key, n] : per_matrix) {
        ++hist[n];
    }

    CensusReport c = physical_census();
    EXPECT_EQ(c.physical_class_count, class_key.size());
    EXPECT_EQ(c.distinct_matrix_count, per_matrix.size());
    EXPECT_EQ(c.multiplicity_histogram, hist);
    EXPECT_EQ(c.physical_class_count, 96u);
    EXPECT_EQ(c.distinct_matrix_count, 40u);
    EXPECT_EQ(c.multiplicity_histogram, (std::map<size_t, size_t>{{2, 24}, {3, 16}}));
    EXPECT_TRUE(c.consistent());
}

TEST(Census, CanonicalFormIsInvariantUnderDisjointCommutation) {
    BsNetwork a(4, {{1, 2}, {3, 4}, {1, 3}, {2, 4}});
    BsNetwork b(4, {{3, 4}, {1, 2}, {2, 4}, {1, 3}});
    EXPECT_EQ(canonical_form(a), canonical_form(b));
    EXPECT_EQ(canonical_form(canonical_form(a)), canonical_form(a));
    EXPECT_THROW(canonical_form(BsNetwork(4, {{1, 2}, {1, 2}, {1, 2}, {1, 2}})), PreconditionError);
}

TEST(Census, PhysicalNetworksAreCanonicalAndBalanced) {
    auto nets = physical_networks();
    ASSERT_EQ(nets.size(), 96u);
    for (const auto &n : nets) {
        EXPECT_EQ(canonical_form(n), n);
        EXPECT_TRUE(is_balanced_foursplitter(n.matrix()));
    }
}

}  // namespace
}  // namespace cvcluster
