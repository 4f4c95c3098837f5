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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cvcluster/errors.hpp"
#include "cvcluster/exact_scalar.hpp"

namespace cvcluster {

/// Dense square matrix over Z[1/√2], row-major.
class ExactMatrix {
   public:
    ExactMatrix() = default;
    explicit ExactMatrix(size_t n) : n_(n), entries_(n * n) {}

    static ExactMatrix identity(size_t n) {
        ExactMatrix r(n);
        for (size_t i = 0; i < n; ++i) {
            r(i, i) = 1;
        }
        return r;
    }

    /// scale * rows, with integer rows.
    static ExactMatrix from_integers(std::initializer_list<std::initializer_list<int64_t>> rows, ExactScalar scale = 1) {
        ExactMatrix r(rows.size());
        size_t i = 0;
        for (const auto &row : rows) {
            if (row.size() != r.n_) {
                throw DimensionError("ExactMatrix: ragged rows");
            }
            size_t j = 0;
            for (int64_t v : row) {
                r(i, j++) = scale * ExactScalar(v);
            }
            ++i;
        }
        return r;
    }

    static ExactMatrix from_rows(const std::vector<std::vector<ExactScalar>> &rows) {
        ExactMatrix r(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != r.n_) {
                throw DimensionError("ExactMatrix: ragged rows");
            }
            for (size_t j = 0; j < r.n_; ++j) {
                r(i, j) = rows[i][j];
            }
        }
        return r;
    }

    size_t size() const { return n_; }

    /// Zero-based element access.
    ExactScalar &operator()(size_t i, size_t j) { return entries_[i * n_ + j]; }
    const ExactScalar &operator()(size_t i, size_t j) const { return entries_[i * n_ + j]; }

    std::span<const ExactScalar> entries() const { return entries_; }

    friend ExactMatrix operator*(const ExactMatrix &x, const ExactMatrix &y) {
        if (x.n_ != y.n_) {
            throw DimensionError("ExactMatrix: dimension mismatch in product (" + std::to_string(x.n_) + " vs " +
                                 std::to_string(y.n_) + ")");
        }
        ExactMatrix r(x.n_);
        for (size_t i = 0; i < x.n_; ++i) {
            for (size_t k = 0; k < x.n_; ++k) {
                const ExactScalar &xik = x(i, k);
                if (xik.is_zero()) {
                    continue;
                }
                for (size_t j = 0; j < x.n_; ++j) {
                    if (!y(k, j).is_zero()) {
                        r(i, j) += xik * y(k, j);
                    }
                }
            }
        }
        return r;
    }

    ExactMatrix operator-() const {
        ExactMatrix r = *this;
        for (auto &e : r.entries_) {
            e = -e;
        }
        return r;
    }

    ExactMatrix transpose() const {
        ExactMatrix r(n_);
        for (size_t i = 0; i < n_; ++i) {
            for (size_t j = 0; j < n_; ++j) {
                r(j, i) = (*this)(i, j);
            }
        }
        return r;
    }

    friend bool operator==(const ExactMatrix &, const ExactMatrix &) = default;

    bool is_identity() const { return *this == identity(n_); }

    /// M·Mᵀ = I, decided exactly.
    bool is_orthogonal() const { return (*this * transpose()).is_identity(); }

    size_t zero_entry_count() const {
        size_t c = 0;
        for (const auto &e : entries_) {
            c += e.is_zero() ? 1 : 0;
        }
        return c;
    }

    std::vector<std::vector<double>> to_double_rows() const {
        std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
        for (size_t i = 0; i < n_; ++i) {
            for (size_t j = 0; j < n_; ++j) {
                rows[i][j] = (*this)(i, j).to_double();
            }
        }
        return rows;
    }

    std::vector<std::vector<std::string>> to_string_rows() const {
        std::vector<std::vector<std::string>> rows(n_, std::vector<std::string>(n_));
        for (size_t i = 0; i < n_; ++i) {
            for (size_t j = 0; j < n_; ++j) {
                rows[i][j] = (*this)(i, j).str();
            }
        }
        return rows;
    }

    /// Canonical text of all entries; equal matrices have equal keys.
    std::string key() const {
        std::string k;
        for (const auto &e : entries_) {
            k += e.str();
            k += ';';
        }
        return k;
    }

   private:
    size_t n_ = 0;
    std::vector<ExactScalar> entries_;
};

namespace detail {

inline void check_mode(size_t n, int mode) {
    if (mode < 1 || static_cast<size_t>(mode) > n) {
        throw std::out_of_range("mode " + std::to_string(mode) + " outside 1.." + std::to_string(n));
    }
}

}  // namespace detail

/// Balanced splitter from mode j to mode k (1-based): identity except the
/// block (1/√2)[[1,-1],[1,1]] on rows/columns (j, k). Swapping j and k
/// transposes the matrix.
inline ExactMatrix beam_splitter_matrix(size_t n, int j, int k) {
    detail::check_mode(n, j);
    detail::check_mode(n, k);
    if (j == k) {
        throw std::invalid_argument("beam_splitter_matrix: j and k must differ");
    }
    ExactMatrix r = ExactMatrix::identity(n);
    ExactScalar s = ExactScalar::inv_sqrt2();
    size_t a = j - 1;
    size_t b = k - 1;
    r(a, a) = s;
    r(a, b) = -s;
    r(b, a) = s;
    r(b, b) = s;
    return r;
}

/// Row i of (P·M) is row perm[i] of M; perm is a 1-based permutation.
/// Right multiplication (M·P) permutes columns by the inverse.
inline ExactMatrix permutation_matrix(size_t n, std::span<const int> perm) {
    if (perm.size() != n) {
        throw std::invalid_argument("permutation_matrix: permutation length differs from dimension");
    }
    std::vector<bool> seen(n, false);
    ExactMatrix r(n);
    for (size_t i = 0; i < n; ++i) {
        int p = perm[i];
        if (p < 1 || static_cast<size_t>(p) > n || seen[p - 1]) {
            throw std::invalid_argument("permutation_matrix: not a permutation of 1.." + std::to_string(n));
        }
        seen[p - 1] = true;
        r(i, p - 1) = 1;
    }
    return r;
}

inline ExactMatrix permutation_matrix(size_t n, std::initializer_list<int> perm) {
    return permutation_matrix(n, std::span<const int>(perm.begin(), perm.size()));
}

/// Exchanges modes j and k (a SWAP).
inline ExactMatrix transposition_matrix(size_t n, int j, int k) {
    detail::check_mode(n, j);
    detail::check_mode(n, k);
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) {
        perm[i] = static_cast<int>(i) + 1;
    }
    std::swap(perm[j - 1], perm[k - 1]);
    return permutation_matrix(n, perm);
}

/// Negates row j on the left, column j on the right.
inline ExactMatrix negation_matrix(size_t n, int j) {
    detail::check_mode(n, j);
    ExactMatrix r = ExactMatrix::identity(n);
    r(j - 1, j - 1) = -1;
    return r;
}

}  // namespace cvcluster
