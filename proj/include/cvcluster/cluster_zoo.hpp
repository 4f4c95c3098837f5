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
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cvcluster/bs_network.hpp"
#include "cvcluster/errors.hpp"
#include "cvcluster/exact_matrix.hpp"

namespace cvcluster {

enum class ArchitectureName { QRL, BSL, cBSL, DBSL, cDBSL, MSG, cMSG, MBSL, cMBSL };

inline constexpr std::array<ArchitectureName, 9> kAllArchitectures{
    ArchitectureName::QRL,  ArchitectureName::BSL, ArchitectureName::cBSL,
    ArchitectureName::DBSL, ArchitectureName::cDBSL, ArchitectureName::MSG,
    ArchitectureName::cMSG, ArchitectureName::MBSL, ArchitectureName::cMBSL};

inline std::string_view to_string(ArchitectureName name) {
    switch (name) {
        case ArchitectureName::QRL: return "QRL";
        case ArchitectureName::BSL: return "BSL";
        case ArchitectureName::cBSL: return "cBSL";
        case ArchitectureName::DBSL: return "DBSL";
        case ArchitectureName::cDBSL: return "cDBSL";
        case ArchitectureName::MSG: return "MSG";
        case ArchitectureName::cMSG: return "cMSG";
        case ArchitectureName::MBSL: return "MBSL";
        case ArchitectureName::cMBSL: return "cMBSL";
    }
    return "?";
}

inline std::optional<ArchitectureName> parse_architecture(std::string_view text) {
    for (auto name : kAllArchitectures) {
        if (to_string(name) == text) {
            return name;
        }
    }
    return std::nullopt;
}

enum class CompletionSide { measurement, state };

struct Completion {
    DirectedSplitter splitter;
    CompletionSide side = CompletionSide::measurement;
    ArchitectureName completed = ArchitectureName::QRL;
};

/// Homodyne angles on two modes (1-based) must coincide.
struct AngleRestriction {
    int mode_a = 1;
    int mode_b = 4;
    std::string str() const { return "θ" + std::to_string(mode_a) + " = θ" + std::to_string(mode_b); }
};

struct Architecture {
    ArchitectureName name = ArchitectureName::QRL;
    BsNetwork network;
    std::optional<Completion> completion;        // only for the three-splitter networks
    std::optional<AngleRestriction> restriction;  // present iff completion is measurement side
    std::string notes;

    bool complete() const { return network.size() == 4; }
};

namespace detail {

inline std::vector<Architecture> build_registry() {
    using A = ArchitectureName;
    auto net = [](std::vector<DirectedSplitter> seq) { return BsNetwork(4, std::move(seq)); };
    std::vector<Architecture> r;
    r.push_back({A::QRL, net({{1, 2}, {3, 4}, {1, 3}, {2, 4}}), {}, {}, "reference four-splitter"});
    r.push_back({A::BSL, net({{1, 2}, {3, 4}, {2, 3}}), Completion{{1, 4}, CompletionSide::measurement, A::cBSL},
                 AngleRestriction{1, 4}, ""});
    r.push_back({A::cBSL, net({{1, 2}, {3, 4}, {2, 3}, {1, 4}}), {}, {}, "BSL with (1,4) appended"});
    r.push_back({A::DBSL, net({{1, 2}, {3, 4}, {3, 2}}), Completion{{1, 4}, CompletionSide::measurement, A::cDBSL},
                 AngleRestriction{1, 4}, ""});
    r.push_back({A::cDBSL, net({{1, 2}, {3, 4}, {3, 2}, {1, 4}}), {}, {}, "DBSL with (1,4) appended"});
    r.push_back({A::MSG, net({{1, 2}, {3, 4}, {1, 4}}), Completion{{2, 3}, CompletionSide::measurement, A::cMSG},
                 AngleRestriction{2, 3}, ""});
    r.push_back({A::cMSG, net({{1, 2}, {3, 4}, {1, 4}, {2, 3}}), {}, {}, "MSG with (2,3) appended; same matrix as cBSL"});
    r.push_back({A::MBSL, net({{4, 3}, {3, 2}, {1, 4}}), Completion{{1, 2}, CompletionSide::state, A::cMBSL}, {},
                 "missing splitter acts before the others"});
    r.push_back({A::cMBSL, net({{1, 2}, {4, 3}, {3, 2}, {1, 4}}), {}, {},
                 "(1,2) prepended on the state side"});
    return r;
}

}  // namespace detail

inline const std::vector<Architecture> &architecture_registry() {
    static const std::vector<Architecture> registry = detail::build_registry();
    return registry;
}

inline const Architecture &architecture(ArchitectureName name) {
    return architecture_registry()[static_cast<size_t>(name)];
}

inline const BsNetwork &architecture_network(ArchitectureName name) { return architecture(name).network; }

// ---------------------------------------------------------------------------
// Relation to the reference four-splitter

/// R_arch = L · R_QRL · C with L a signed row permutation and C a column
/// sign flip. Row i of R_arch is row_sign[i] times row row_source[i] of R_QRL·C.
struct QrlDecomposition {
    std::array<int, 4> row_source{1, 2, 3, 4};
    std::array<int, 4> row_sign{1, 1, 1, 1};
    std::array<int, 4> column_sign{1, 1, 1, 1};
    bool standard = false;  // coincides with the conventional swap/parity factorization
    std::string expression;

    ExactMatrix left() const {
        ExactMatrix p = permutation_matrix(4, row_source);
        ExactMatrix d = ExactMatrix::identity(4);
        for (int i = 0; i < 4; ++i) {
            d(i, i) = row_sign[i];
        }
        return d * p;
    }
    ExactMatrix right() const {
        ExactMatrix c = ExactMatrix::identity(4);
        for (int i = 0; i < 4; ++i) {
            c(i, i) = column_sign[i];
        }
        return c;
    }
    ExactMatrix apply(const ExactMatrix &qrl) const { return left() * qrl * right(); }

    friend bool operator==(const QrlDecomposition &x, const QrlDecomposition &y) {
        return x.row_source == y.row_source && x.row_sign == y.row_sign && x.column_sign == y.column_sign;
    }
};

namespace detail {

inline std::string generic_expression(const QrlDecomposition &d) {
    std::string s = "L[rows=(";
    for (int i = 0; i < 4; ++i) {
        s += (i ? "," : "") + std::string(d.row_sign[i] < 0 ? "-" : "") + std::to_string(d.row_source[i]);
    }
    s += ")]·R_QRL";
    for (int i = 0; i < 4; ++i) {
        if (d.column_sign[i] < 0) {
            s += "·M" + std::to_string(i + 1);
        }
    }
    return s;
}

/// Reads a signed permutation matrix back into (row_source, row_sign).
inline void read_signed_permutation(const ExactMatrix &l, QrlDecomposition &d) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!l(i, j).is_zero()) {
                d.row_source[i] = j + 1;
                d.row_sign[i] = l(i, j).sign();
            }
        }
    }
}

/// The conventional swap/parity factorizations, written as products.
inline std::optional<QrlDecomposition> standard_decomposition(ArchitectureName name) {
    using A = ArchitectureName;
    auto p = [](int j, int k) { return transposition_matrix(4, j, k); };
    auto m = [](int j) { return negation_matrix(4, j); };
    ExactMatrix l = ExactMatrix::identity(4);
    ExactMatrix c = ExactMatrix::identity(4);
    std::string expr;
    switch (name) {
        case A::QRL:
            expr = "R_QRL";
            break;
        case A::cBSL:
        case A::cMSG:
            l = p(3, 4);
            c = m(4);
            expr = "P34·R_QRL·M4";
            break;
        case A::cDBSL:
            l = m(3) * p(2, 3) * p(3, 4);
            c = m(4);
            expr = "M3·P23·P34·R_QRL·M4";
            break;
        case A::cMBSL:
            l = m(3) * p(1, 4) * p(2, 3) * p(3, 4);
            expr = "M3·P14·P23·P34·R_QRL";
            break;
        default:
            return std::nullopt;
    }
    QrlDecomposition d;
    read_signed_permutation(l, d);
    for (int i = 0; i < 4; ++i) {
        d.column_sign[i] = c(i, i).sign();
    }
    d.standard = true;
    d.expression = expr;
    return d;
}

}  // namespace detail

/// Every (L, C) reproducing the architecture's matrix exactly, standard one first.
inline std::vector<QrlDecomposition> qrl_decompositions(ArchitectureName name) {
    const Architecture &arch = architecture(name);
    if (!arch.complete()) {
        throw PreconditionError("qrl_decomposition: " + std::string(to_string(name)) + " is not a completed architecture");
    }
    const ExactMatrix target = arch.network.matrix();
    const ExactMatrix qrl = architecture_network(ArchitectureName::QRL).matrix();
    auto standard = detail::standard_decomposition(name);
    std::vector<QrlDecomposition> found;
    std::array<int, 4> perm{1, 2, 3, 4};
    do {
        for (unsigned rows = 0; rows < 16; ++rows) {
            for (unsigned cols = 0; cols < 16; ++cols) {
                QrlDecomposition d;
                d.row_source = perm;
                for (int i = 0; i < 4; ++i) {
                    d.row_sign[i] = rows & (1u << i) ? -1 : 1;
                    d.column_sign[i] = cols & (1u << i) ? -1 : 1;
                }
                if (d.apply(qrl) == target) {
                    if (standard && d == *standard) {
                        d = *standard;
                    } else {
                        d.expression = detail::generic_expression(d);
                    }
                    found.push_back(d);
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (found.empty()) {
        throw std::runtime_error("qrl_decomposition: no decomposition found for " + std::string(to_string(name)));
    }
    std::stable_partition(found.begin(), found.end(), [](const QrlDecomposition &d) { return d.standard; });
    return found;
}

/// The preferred decomposition (the standard one when it reproduces the matrix).
inline QrlDecomposition qrl_decomposition(ArchitectureName name) { return qrl_decompositions(name).front(); }

// ---------------------------------------------------------------------------
// Incompleteness

enum class Incompleteness { type_a, type_b, complete };

inline std::string_view to_string(Incompleteness t) {
    switch (t) {
        case Incompleteness::type_a: return "a";
        case Incompleteness::type_b: return "b";
        case Incompleteness::complete: return "complete";
    }
    return "?";
}

/// Type (a): two rows hold two zeros and two ±1/√2 entries, the rest are
/// ±1/2. Type (b): the same pattern in columns.
inline Incompleteness classify_incompleteness(const ExactMatrix &m) {
    if (is_balanced_foursplitter(m)) {
        return Incompleteness::complete;
    }
    const ExactScalar half = ExactScalar::half();
    const ExactScalar root = ExactScalar::inv_sqrt2();
    auto pattern_in_lines = [&](bool by_rows) {
        int split_lines = 0;
        for (int i = 0; i < 4; ++i) {
            int zeros = 0;
            int roots = 0;
            int halves = 0;
            for (int j = 0; j < 4; ++j) {
                ExactScalar e = (by_rows ? m(i, j) : m(j, i)).abs();
                zeros += e.is_zero() ? 1 : 0;
                roots += e == root ? 1 : 0;
                halves += e == half ? 1 : 0;
            }
            if (zeros == 2 && roots == 2) {
                ++split_lines;
            } else if (halves != 4) {
                return false;
            }
        }
        return split_lines == 2;
    };
    if (pattern_in_lines(true)) {
        return Incompleteness::type_a;
    }
    if (pattern_in_lines(false)) {
        return Incompleteness::type_b;
    }
    throw PreconditionError("classify_incompleteness: matrix matches neither incompleteness pattern");
}

struct ResidualAnalysis {
    ExactMatrix residual;  // R_incomplete · R_completedᵀ
    size_t zero_entry_count = 0;
    Incompleteness type = Incompleteness::complete;
};

inline ResidualAnalysis residual_analysis(ArchitectureName incomplete, ArchitectureName completed) {
    const Architecture &inc = architecture(incomplete);
    if (!inc.completion || inc.completion->completed != completed) {
        throw PreconditionError("residual_analysis: " + std::string(to_string(completed)) + " is not the completion of " +
                                std::string(to_string(incomplete)));
    }
    ResidualAnalysis r;
    ExactMatrix m = inc.network.matrix();
    r.residual = m * architecture_network(completed).matrix().transpose();
    r.zero_entry_count = r.residual.zero_entry_count();
    r.type = classify_incompleteness(m);
    return r;
}

/// Q with Q·a·Qᵀ = b, where Q = D·P is a signed permutation.
struct SignedPermutation {
    std::array<int, 4> perm{1, 2, 3, 4};  // row i of P·a is row perm[i] of a
    std::array<int, 4> sign{1, 1, 1, 1};

    ExactMatrix matrix() const {
        ExactMatrix d = ExactMatrix::identity(4);
        for (int i = 0; i < 4; ++i) {
            d(i, i) = sign[i];
        }
        return d * permutation_matrix(4, perm);
    }
    bool unsigned_only() const {
        return std::all_of(sign.begin(), sign.end(), [](int s) { return s > 0; }) ||
               std::all_of(sign.begin(), sign.end(), [](int s) { return s < 0; });
    }
};

inline std::vector<SignedPermutation> conjugating_permutations(const ExactMatrix &a, const ExactMatrix &b) {
    std::vector<SignedPermutation> found;
    std::array<int, 4> perm{1, 2, 3, 4};
    do {
        for (unsigned signs = 0; signs < 16; ++signs) {
            SignedPermutation q;
            q.perm = perm;
            for (int i = 0; i < 4; ++i) {
                q.sign[i] = signs & (1u << i) ? -1 : 1;
            }
            ExactMatrix qm = q.matrix();
            if (qm * a * qm.transpose() == b) {
                found.push_back(q);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return found;
}

// ---------------------------------------------------------------------------
// Angle-restriction completion scan

struct CompletionScanReport {
    size_t grid_points = 0;
    size_t grid_vectors_checked = 0;
    size_t random_vectors_checked = 0;
    double tolerance = 0;
    double min_offdiagonal = INFINITY;  // over non-trivial angle vectors
    std::array<double, 4> argmin{};
    double trivial_family_max = 0;  // over θ = c·(1,1,1,1)
    std::vector<std::array<double, 4>> falsifying;

    bool holds() const { return falsifying.empty() && trivial_family_max <= tolerance; }
};

/// Largest |(Rᵀ·diag(e^{2iθ})·R)_{jk}|, j != k.
inline double phase_conjugate_offdiagonal(const std::vector<std::vector<double>> &r, const std::array<double, 4> &theta) {
    std::array<std::complex<double>, 4> phase;
    for (int k = 0; k < 4; ++k) {
        phase[k] = std::polar(1.0, 2 * theta[k]);
    }
    double worst = 0;
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            if (j == k) {
                continue;
            }
            std::complex<double> s = 0;
            for (int l = 0; l < 4; ++l) {
                s += r[l][j] * phase[l] * r[l][k];
            }
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

/// Grid over (-π/2, π/2]^4 plus uniform random samples; no non-trivial angle
/// vector may make Rᵀ·diag(e^{2iθ})·R diagonal.
inline CompletionScanReport no_virtual_completion_scan(const ExactMatrix &residual, size_t grid_points, double tol,
                                                       size_t random_samples = 0, uint64_t seed = 0) {
    if (residual.size() != 4 || !residual.is_orthogonal()) {
        throw PreconditionError("no_virtual_completion_scan: residual must be a 4x4 orthogonal matrix");
    }
    if (grid_points == 0) {
        throw PreconditionError("no_virtual_completion_scan: grid needs at least one point");
    }
    const auto r = residual.to_double_rows();
    CompletionScanReport rep;
    rep.grid_points = grid_points;
    rep.tolerance = tol;
    auto visit = [&](const std::array<double, 4> &theta) {
        double off = phase_conjugate_offdiagonal(r, theta);
        if (off < rep.min_offdiagonal) {
            rep.min_offdiagonal = off;
            rep.argmin = theta;
        }
        if (off <= tol) {
            rep.falsifying.push_back(theta);
        }
    };
    std::vector<double> grid(grid_points);
    for (size_t k = 0; k < grid_points; ++k) {
        grid[k] = -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(k + 1) / static_cast<double>(grid_points);
    }
    for (double a : grid) {
        rep.trivial_family_max = std::max(rep.trivial_family_max, phase_conjugate_offdiagonal(r, {a, a, a, a}));
        for (double b : grid) {
            for (double c : grid) {
                for (double d : grid) {
                    if (a == b && b == c && c == d) {
                        continue;
                    }
                    visit({a, b, c, d});
                    ++rep.grid_vectors_checked;
                }
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
    for (size_t s = 0; s < random_samples; ++s) {
        visit({angle(rng), angle(rng), angle(rng), angle(rng)});
        ++rep.random_vectors_checked;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Virtual completion

struct VirtualCompletion {
    ArchitectureName incomplete = ArchitectureName::BSL;
    ArchitectureName completed = ArchitectureName::cBSL;
    AngleRestriction restriction;

    /// (m_a, m_b) -> ((m_a - m_b)/√2, (m_a + m_b)/√2) on the restricted pair;
    /// the outcomes the completed network would have produced.
    std::array<double, 4> transform_outcomes(const std::array<double, 4> &raw) const {
        std::array<double, 4> out = raw;
        double ma = raw[restriction.mode_a - 1];
        double mb = raw[restriction.mode_b - 1];
        out[restriction.mode_a - 1] = (ma - mb) / std::numbers::sqrt2;
        out[restriction.mode_b - 1] = (ma + mb) / std::numbers::sqrt2;
        return out;
    }

    void check_angles(const std::array<double, 4> &theta, double tol = 1e-9) const {
        if (std::abs(theta[restriction.mode_a - 1] - theta[restriction.mode_b - 1]) > tol) {
            throw RestrictionError("virtually completed " + std::string(to_string(incomplete)) + " requires " +
                                   restriction.str());
        }
    }
};

inline VirtualCompletion virtual_completion(ArchitectureName name) {
    const Architecture &arch = architecture(name);
    if (!arch.completion) {
        throw PreconditionError("virtual_completion: " + std::string(to_string(name)) + " has no missing splitter");
    }
    if (arch.completion->side == CompletionSide::state) {
        throw TypeBCompletionError();
    }
    return {name, arch.completion->completed, *arch.restriction};
}

// ---------------------------------------------------------------------------
// Bell-pair insertion into a wire

/// Modes ordered (1, a, b, 2). The full network applies the wire splitter
/// 1->2, the cancelling 2->1, then a->b and the couplings 1->a, b->2;
/// the simplified one keeps only the last three.
inline std::pair<BsNetwork, BsNetwork> insertion_networks(bool with_cancelling_splitter = true) {
    std::vector<DirectedSplitter> full{{1, 4}};
    if (with_cancelling_splitter) {
        full.push_back({4, 1});
    }
    for (DirectedSplitter s : {DirectedSplitter{2, 3}, DirectedSplitter{1, 2}, DirectedSplitter{3, 4}}) {
        full.push_back(s);
    }
    return {BsNetwork(4, full), BsNetwork(4, {{2, 3}, {1, 2}, {3, 4}})};
}

inline bool bell_pair_insertion_identity(bool with_cancelling_splitter = true) {
    auto [full, simplified] = insertion_networks(with_cancelling_splitter);
    return full.matrix() == simplified.matrix();
}

}  // namespace cvcluster
