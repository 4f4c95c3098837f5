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

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cvcluster/errors.hpp"
#include "cvcluster/exact_matrix.hpp"

namespace cvcluster {

/// Balanced splitter B_{from,to}; 1-based modes.
struct DirectedSplitter {
    int from = 1;
    int to = 2;

    bool disjoint_from(const DirectedSplitter &o) const {
        return from != o.from && from != o.to && to != o.from && to != o.to;
    }
    bool same_pair(const DirectedSplitter &o) const {
        return (from == o.from && to == o.to) || (from == o.to && to == o.from);
    }
    DirectedSplitter reversed() const { return {to, from}; }

    /// Position in the enumeration order over n modes: (from-1)(n-1) + rank of `to`.
    int index(int n_modes) const { return (from - 1) * (n_modes - 1) + (to < from ? to - 1 : to - 2); }
    static DirectedSplitter from_index(int index, int n_modes) {
        int from = index / (n_modes - 1) + 1;
        int rank = index % (n_modes - 1);
        int to = rank + 1 < from ? rank + 1 : rank + 2;
        return {from, to};
    }

    std::string str() const { return "(" + std::to_string(from) + "," + std::to_string(to) + ")"; }

    friend auto operator<=>(const DirectedSplitter &, const DirectedSplitter &) = default;
};

/// Splitters over n modes in application order (front acts first).
class BsNetwork {
   public:
    BsNetwork() = default;
    BsNetwork(int n_modes, std::vector<DirectedSplitter> sequence) : n_modes_(n_modes), sequence_(std::move(sequence)) {
        if (n_modes < 2) {
            throw std::invalid_argument("BsNetwork: need at least two modes");
        }
        for (const auto &s : sequence_) {
            detail::check_mode(n_modes_, s.from);
            detail::check_mode(n_modes_, s.to);
            if (s.from == s.to) {
                throw std::invalid_argument("BsNetwork: splitter " + s.str() + " couples a mode to itself");
            }
        }
    }

    int n_modes() const { return n_modes_; }
    const std::vector<DirectedSplitter> &sequence() const { return sequence_; }
    size_t size() const { return sequence_.size(); }

    /// Product of splitter matrices, last applied leftmost.
    ExactMatrix matrix() const {
        ExactMatrix r = ExactMatrix::identity(n_modes_);
        for (const auto &s : sequence_) {
            r = beam_splitter_matrix(n_modes_, s.from, s.to) * r;
        }
        return r;
    }

    BsNetwork then(DirectedSplitter s) const {
        auto seq = sequence_;
        seq.push_back(s);
        return {n_modes_, std::move(seq)};
    }

    /// Every direction flipped and the order reversed; its matrix is the transpose.
    BsNetwork reversed() const {
        std::vector<DirectedSplitter> seq;
        for (auto it = sequence_.rbegin(); it != sequence_.rend(); ++it) {
            seq.push_back(it->reversed());
        }
        return {n_modes_, std::move(seq)};
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < sequence_.size(); ++i) {
            s += (i ? "," : "") + sequence_[i].str();
        }
        return s + "]";
    }

    friend bool operator==(const BsNetwork &, const BsNetwork &) = default;
    friend bool operator<(const BsNetwork &x, const BsNetwork &y) {
        return std::tie(x.n_modes_, x.sequence_) < std::tie(y.n_modes_, y.sequence_);
    }

   private:
    int n_modes_ = 4;
    std::vector<DirectedSplitter> sequence_;
};

inline ExactMatrix network_matrix(const BsNetwork &net) { return net.matrix(); }

/// Every entry of a 4x4 orthogonal matrix has magnitude exactly 1/2.
inline bool is_balanced_foursplitter(const ExactMatrix &m) {
    if (m.size() != 4) {
        throw PreconditionError("is_balanced_foursplitter: expected a 4x4 matrix");
    }
    if (!m.is_orthogonal()) {
        throw PreconditionError("is_balanced_foursplitter: matrix is not orthogonal");
    }
    const ExactScalar half = ExactScalar::half();
    return std::all_of(m.entries().begin(), m.entries().end(), [&](const ExactScalar &e) { return e.abs() == half; });
}

struct StructuralConditions {
    bool each_mode_twice = false;       // every mode is touched by exactly two splitters
    bool first_layer_covers_all = false;  // the first two splitters are disjoint
    bool no_repeated_pair = false;
    bool all() const { return each_mode_twice && first_layer_covers_all && no_repeated_pair; }
};

inline StructuralConditions structural_conditions(const BsNetwork &net) {
    if (net.n_modes() != 4 || net.size() != 4) {
        throw PreconditionError("structural_conditions: expected exactly 4 splitters over 4 modes, got " +
                                std::to_string(net.size()) + " over " + std::to_string(net.n_modes()));
    }
    const auto &seq = net.sequence();
    StructuralConditions c;
    std::array<int, 4> degree{};
    for (const auto &s : seq) {
        ++degree[s.from - 1];
        ++degree[s.to - 1];
    }
    c.each_mode_twice = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
    c.first_layer_covers_all = seq[0].disjoint_from(seq[1]);
    c.no_repeated_pair = true;
    for (size_t i = 0; i < seq.size(); ++i) {
        for (size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i].same_pair(seq[j])) {
                c.no_repeated_pair = false;
            }
        }
    }
    return c;
}

/// All 12^4 directed four-splitter sequences on four modes, odometer order
/// (last position varies fastest).
inline std::vector<BsNetwork> all_four_splitter_sequences() {
    std::vector<BsNetwork> out;
    out.reserve(20736);
    for (int i0 = 0; i0 < 12; ++i0) {
        for (int i1 = 0; i1 < 12; ++i1) {
            for (int i2 = 0; i2 < 12; ++i2) {
                for (int i3 = 0; i3 < 12; ++i3) {
                    out.emplace_back(4, std::vector<DirectedSplitter>{
                                            DirectedSplitter::from_index(i0, 4), DirectedSplitter::from_index(i1, 4),
                                            DirectedSplitter::from_index(i2, 4), DirectedSplitter::from_index(i3, 4)});
                }
            }
        }
    }
    return out;
}

struct BalanceEquivalenceReport {
    size_t candidate_count = 0;
    size_t balanced_count = 0;
    size_t condition_pass_count = 0;
    size_t agreement_count = 0;
    std::vector<BsNetwork> counterexamples;
    bool holds() const { return counterexamples.empty() && agreement_count == candidate_count; }
};

/// Checks balanced <=> (all three structural conditions) on every sequence.
inline BalanceEquivalenceReport verify_balance_equivalence() {
    BalanceEquivalenceReport r;
    for (const auto &net : all_four_splitter_sequences()) {
        ++r.candidate_count;
        bool balanced = is_balanced_foursplitter(net.matrix());
        bool conditions = structural_conditions(net).all();
        r.balanced_count += balanced ? 1 : 0;
        r.condition_pass_count += conditions ? 1 : 0;
        if (balanced == conditions) {
            ++r.agreement_count;
        } else {
            r.counterexamples.push_back(net);
        }
    }
    return r;
}

/// Lexicographically least sequence reachable by exchanging adjacent
/// splitters on disjoint mode pairs. Explores the full commutation closure.
inline BsNetwork commutation_minimum(const BsNetwork &net) {
    using Seq = std::vector<DirectedSplitter>;
    std::set<Seq> seen{net.sequence()};
    std::deque<Seq> queue{net.sequence()};
    while (!queue.empty()) {
        Seq cur = std::move(queue.front());
        queue.pop_front();
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            if (cur[i].disjoint_from(cur[i + 1])) {
                Seq next = cur;
                std::swap(next[i], next[i + 1]);
                if (seen.insert(next).second) {
                    queue.push_back(std::move(next));
                }
            }
        }
    }
    return {net.n_modes(), *seen.begin()};
}

/// Physical-network representative of a structurally valid four-splitter sequence.
inline BsNetwork canonical_form(const BsNetwork &net) {
    if (!structural_conditions(net).all()) {
        throw PreconditionError("canonical_form: network " + net.str() + " violates the four-splitter structural conditions");
    }
    return commutation_minimum(net);
}

/// The distinct physical four-splitter networks, sorted.
inline std::vector<BsNetwork> physical_networks() {
    std::set<BsNetwork> classes;
    for (const auto &net : all_four_splitter_sequences()) {
        if (structural_conditions(net).all()) {
            classes.insert(canonical_form(net));
        }
    }
    return {classes.begin(), classes.end()};
}

struct MatrixClass {
    ExactMatrix matrix;
    std::vector<BsNetwork> networks;  // physical networks producing it
};

struct CensusReport {
    size_t candidate_count = 0;
    size_t condition_pass_count = 0;
    size_t balanced_count = 0;
    size_t physical_class_count = 0;
    size_t distinct_matrix_count = 0;
    std::map<size_t, size_t> multiplicity_histogram;  // networks per matrix -> number of matrices
    std::vector<MatrixClass> matrices;                // ordered by matrix key

    bool consistent() const {
        size_t total = 0;
        size_t n = 0;
        for (auto [mult, count] : multiplicity_histogram) {
            total += mult * count;
            n += count;
        }
        return total == physical_class_count && n == distinct_matrix_count;
    }
};

inline CensusReport physical_census() {
    CensusReport r;
    std::set<BsNetwork> classes;
    for (const auto &net : all_four_splitter_sequences()) {
        ++r.candidate_count;
        bool ok = structural_conditions(net).all();
        r.condition_pass_count += ok ? 1 : 0;
        r.balanced_count += is_balanced_foursplitter(net.matrix()) ? 1 : 0;
        if (ok) {
            classes.insert(canonical_form(net));
        }
    }
    r.physical_class_count = classes.size();
    std::map<std::string, MatrixClass> by_matrix;
    for (const auto &net : classes) {
        ExactMatrix m = net.matrix();
        auto [it, fresh] = by_matrix.try_emplace(m.key(), MatrixClass{m, {}});
        it->second.networks.push_back(net);
    }
    r.distinct_matrix_count = by_matrix.size();
    for (auto &[key, cls] : by_matrix) {
        ++r.multiplicity_histogram[cls.networks.size()];
        r.matrices.push_back(std::move(cls));
    }
    return r;
}

}  // namespace cvcluster
