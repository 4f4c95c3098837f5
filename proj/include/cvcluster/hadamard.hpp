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
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cvcluster/bs_network.hpp"
#include "cvcluster/errors.hpp"
#include "cvcluster/exact_matrix.hpp"

namespace cvcluster {

/// 4x4 matrix of ±1 entries stored as a sign mask: bit 4r+c set means entry (r, c) = -1.
class Hadamard4 {
   public:
    constexpr Hadamard4() = default;
    constexpr explicit Hadamard4(uint16_t mask) : mask_(mask) {}

    static Hadamard4 from_rows(const std::array<std::array<int, 4>, 4> &rows) {
        uint16_t mask = 0;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                int v = rows[r][c];
                if (v != 1 && v != -1) {
                    throw std::invalid_argument("Hadamard4: entries must be +1 or -1");
                }
                if (v < 0) {
                    mask |= static_cast<uint16_t>(1u << (4 * r + c));
                }
            }
        }
        return Hadamard4(mask);
    }

    /// Sign pattern of 2·M for a balanced four-splitter M.
    static Hadamard4 from_foursplitter(const ExactMatrix &m) {
        if (!is_balanced_foursplitter(m)) {
            throw PreconditionError("Hadamard4: matrix is not a balanced four-splitter");
        }
        uint16_t mask = 0;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (m(r, c).sign() < 0) {
                    mask |= static_cast<uint16_t>(1u << (4 * r + c));
                }
            }
        }
        return Hadamard4(mask);
    }

    /// The canonical seed [[1,1,1,1],[1,-1,1,-1],[1,1,-1,-1],[1,-1,-1,1]].
    static Hadamard4 seed() { return from_rows({{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}}}); }

    uint16_t mask() const { return mask_; }
    int operator()(int r, int c) const { return (mask_ >> (4 * r + c)) & 1u ? -1 : 1; }

    /// H·Hᵀ = 4·I.
    bool is_hadamard() const {
        for (int r = 0; r < 4; ++r) {
            for (int s = r + 1; s < 4; ++s) {
                int dot = 0;
                for (int c = 0; c < 4; ++c) {
                    dot += (*this)(r, c) * (*this)(s, c);
                }
                if (dot != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    /// H/2.
    ExactMatrix to_foursplitter() const {
        ExactMatrix m(4);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                m(r, c) = ExactScalar::half() * ExactScalar((*this)(r, c));
            }
        }
        return m;
    }

    /// Row i of the result is row perm[i] (0-based) of this matrix.
    Hadamard4 permute_rows(const std::array<int, 4> &perm) const {
        uint16_t out = 0;
        for (int r = 0; r < 4; ++r) {
            out |= static_cast<uint16_t>(((mask_ >> (4 * perm[r])) & 0xFu) << (4 * r));
        }
        return Hadamard4(out);
    }
    Hadamard4 negate_rows(unsigned row_set) const {
        uint16_t out = mask_;
        for (int r = 0; r < 4; ++r) {
            if (row_set & (1u << r)) {
                out ^= static_cast<uint16_t>(0xFu << (4 * r));
            }
        }
        return Hadamard4(out);
    }
    Hadamard4 negate_column(int c) const {
        return Hadamard4(static_cast<uint16_t>(mask_ ^ (0x1111u << c)));
    }

    /// Rows as "+-+-", joined by '/'.
    std::string sign_string() const {
        std::string s;
        for (int r = 0; r < 4; ++r) {
            if (r) {
                s += '/';
            }
            for (int c = 0; c < 4; ++c) {
                s += (*this)(r, c) < 0 ? '-' : '+';
            }
        }
        return s;
    }

    friend auto operator<=>(const Hadamard4 &, const Hadamard4 &) = default;

   private:
    uint16_t mask_ = 0;
};

enum class Parity { even, odd };

/// Parity of the number of -1 entries in each row.
inline std::array<Parity, 4> row_parity(const Hadamard4 &h) {
    std::array<Parity, 4> p{};
    for (int r = 0; r < 4; ++r) {
        int minus = 0;
        for (int c = 0; c < 4; ++c) {
            minus += h(r, c) < 0 ? 1 : 0;
        }
        p[r] = minus % 2 ? Parity::odd : Parity::even;
    }
    return p;
}

/// Brute force over all 2^16 sign matrices.
inline std::vector<Hadamard4> enumerate_hadamard4() {
    std::vector<Hadamard4> out;
    for (uint32_t mask = 0; mask < (1u << 16); ++mask) {
        Hadamard4 h(static_cast<uint16_t>(mask));
        if (h.is_hadamard()) {
            out.push_back(h);
        }
    }
    return out;
}

/// Order-2 analogue: 2x2 sign matrices with orthogonal rows.
inline size_t count_hadamard2() {
    size_t n = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        auto e = [&](int bit) { return (mask >> bit) & 1u ? -1 : 1; };
        n += e(0) * e(2) + e(1) * e(3) == 0 ? 1 : 0;
    }
    return n;
}

inline std::vector<std::array<int, 4>> all_row_permutations() {
    std::vector<std::array<int, 4>> perms;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

/// {P·D·h}: all row permutations and row negations.
inline std::vector<Hadamard4> row_orbit(const Hadamard4 &h) {
    std::set<Hadamard4> out;
    for (const auto &perm : all_row_permutations()) {
        for (unsigned neg = 0; neg < 16; ++neg) {
            out.insert(h.permute_rows(perm).negate_rows(neg));
        }
    }
    return {out.begin(), out.end()};
}

/// Closure of {P·D·h, P·D·h·M} with M negating the fixed column (1-based).
inline std::vector<Hadamard4> generate_class(const Hadamard4 &h, int negated_column = 4) {
    if (!h.is_hadamard()) {
        throw PreconditionError("generate_class: seed is not a Hadamard matrix");
    }
    if (negated_column < 1 || negated_column > 4) {
        throw std::out_of_range("generate_class: column must be in 1..4");
    }
    std::set<Hadamard4> out;
    for (const auto &g : row_orbit(h)) {
        out.insert(g);
    }
    for (const auto &g : row_orbit(h.negate_column(negated_column - 1))) {
        out.insert(g);
    }
    return {out.begin(), out.end()};
}

struct RealizationCensus {
    size_t total_networks = 0;
    std::map<Hadamard4, size_t> realizations;

    bool uniform() const {
        if (realizations.empty()) {
            return false;
        }
        size_t first = realizations.begin()->second;
        return std::all_of(realizations.begin(), realizations.end(), [&](const auto &kv) { return kv.second == first; });
    }
};

/// Every (row permutation)·(row negations)·R·(optional negation of column 4)
/// over the given physical networks, built as exact matrix products.
inline RealizationCensus realization_census(const std::vector<BsNetwork> &physical) {
    std::vector<ExactMatrix> left;
    for (const auto &perm : all_row_permutations()) {
        std::array<int, 4> one_based{};
        std::transform(perm.begin(), perm.end(), one_based.begin(), [](int x) { return x + 1; });
        ExactMatrix p = permutation_matrix(4, one_based);
        for (unsigned neg = 0; neg < 16; ++neg) {
            ExactMatrix d = ExactMatrix::identity(4);
            for (int r = 0; r < 4; ++r) {
                if (neg & (1u << r)) {
                    d = negation_matrix(4, r + 1) * d;
                }
            }
            left.push_back(p * d);
        }
    }
    const std::array<ExactMatrix, 2> right{ExactMatrix::identity(4), negation_matrix(4, 4)};
    RealizationCensus census;
    for (const auto &net : physical) {
        ExactMatrix m = net.matrix();
        for (const auto &c : right) {
            ExactMatrix mc = m * c;
            for (const auto &l : left) {
                ++census.realizations[Hadamard4::from_foursplitter(l * mc)];
                ++census.total_networks;
            }
        }
    }
    return census;
}

inline RealizationCensus realization_census() { return realization_census(physical_networks()); }

}  // namespace cvcluster
