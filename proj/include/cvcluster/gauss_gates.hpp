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

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvcluster/bs_network.hpp"
#include "cvcluster/cluster_zoo.hpp"
#include "cvcluster/errors.hpp"
#include "cvcluster/symplectic.hpp"

namespace cvcluster {

using Angles = std::array<double, 4>;
using Outcomes = std::array<double, 4>;

/// arctan 2, the shear angle of the two-mode dictionary.
inline const double kChi = std::atan(2.0);

/// Quadrature and sign conventions, as reported alongside gate output.
inline std::vector<std::pair<std::string, std::string>> gate_conventions() {
    return {
        {"ordering", "(q1..qn, p1..pn), Omega = [[0, I], [-I, 0]]"},
        {"composition", "operator product U2 U1 maps to S2 S1"},
        {"rotation R(t)", "q -> q cos t - p sin t, p -> q sin t + p cos t"},
        {"shear P(s)", "p -> p + s q"},
        {"shear P_p(s)", "q -> q + s p"},
        {"squeeze S(z)", "q -> z q, p -> p / z"},
        {"homodyne angle t", "measures p_t = q sin t + p cos t"},
        {"vacuum covariance", "I / 2"},
    };
}

struct LduCheck {
    double lower_first = 0;  // |R(θ) - P_p†(tanθ) S(secθ) P(tanθ)|
    double upper_first = 0;  // |R(θ) - P(tanθ) S(cosθ) P_p†(tanθ)|
    bool holds(double tol = 1e-12) const { return lower_first <= tol && upper_first <= tol; }
};

inline LduCheck verify_ldu(double theta) {
    double c = std::cos(theta);
    if (std::abs(c) < 1e-9) {
        throw SingularAngleError("verify_ldu: sec θ diverges at θ = " + std::to_string(theta));
    }
    double t = std::tan(theta);
    Eigen::Matrix2d r = rotation_block(theta);
    Eigen::Matrix2d a = shear_p_block(-t) * squeeze_block(1 / c) * shear_q_block(t);
    Eigen::Matrix2d b = shear_q_block(t) * squeeze_block(c) * shear_p_block(-t);
    return {(r - a).cwiseAbs().maxCoeff(), (r - b).cwiseAbs().maxCoeff()};
}

// ---------------------------------------------------------------------------
// Single-mode teleported gate

struct VGateForms {
    Eigen::Matrix2d rotation_squeeze;  // R(θ₊ - π/2) S(tan θ₋) R(θ₊), θ± = (θ1 ± θ2)/2
    Eigen::Matrix2d position_shear;    // R(θ1 - π/2) P(2cot(θ1 - θ2)) R(θ1 - π/2)
    Eigen::Matrix2d momentum_shear;    // R(θ1 - π) P_p(-2cot(θ1 - θ2)) R(θ1)

    double spread() const {
        return std::max({(rotation_squeeze - position_shear).cwiseAbs().maxCoeff(),
                         (rotation_squeeze - momentum_shear).cwiseAbs().maxCoeff(),
                         (position_shear - momentum_shear).cwiseAbs().maxCoeff()});
    }
};

inline void check_nonsingular_pair(double theta1, double theta2) {
    if (std::abs(std::sin(theta1 - theta2)) < 1e-9) {
        throw SingularAngleError("V(" + std::to_string(theta1) + ", " + std::to_string(theta2) +
                                 ") is singular: both homodynes select the same quadrature");
    }
}

inline VGateForms v_gate_forms(double theta1, double theta2) {
    check_nonsingular_pair(theta1, theta2);
    constexpr double pi = std::numbers::pi;
    double plus = (theta1 + theta2) / 2;
    double minus = (theta1 - theta2) / 2;
    double shear = 2 / std::tan(theta1 - theta2);
    VGateForms f;
    f.rotation_squeeze = rotation_block(plus - pi / 2) * squeeze_block(std::tan(minus)) * rotation_block(plus);
    f.position_shear = rotation_block(theta1 - pi / 2) * shear_q_block(shear) * rotation_block(theta1 - pi / 2);
    f.momentum_shear = rotation_block(theta1 - pi) * shear_p_block(-shear) * rotation_block(theta1);
    return f;
}

/// Gate teleported by homodyning p_θ1 and p_θ2 on a two-mode resource.
inline Eigen::Matrix2d v_gate_block(double theta1, double theta2) {
    VGateForms f = v_gate_forms(theta1, theta2);
    double scale = std::max(1.0, f.position_shear.cwiseAbs().maxCoeff());
    if (f.spread() > 1e-10 * scale * scale) {
        throw std::logic_error("v_gate: the three factorizations disagree");
    }
    return f.position_shear;
}

inline SymplecticOp v_gate(double theta1, double theta2) { return single_mode(v_gate_block(theta1, theta2)); }

// ---------------------------------------------------------------------------
// Two-mode teleported gate

/// B21 [V(θ1,θ2) ⊗ V(θ3,θ4)] B12.
inline SymplecticOp qrl_gate(const Angles &theta) {
    return beam_splitter(2, 2, 1) * local_pair(v_gate_block(theta[0], theta[1]), v_gate_block(theta[2], theta[3])) *
           beam_splitter(2, 1, 2);
}

/// Position of a completed architecture relative to the reference lattice:
/// measured mode i plays reference mode slot[i] with outcome sign outcome_sign[i];
/// column flips become parities on the gate's inputs or outputs.
struct QrlFrame {
    std::array<int, 4> slot{0, 1, 2, 3};
    std::array<int, 4> outcome_sign{1, 1, 1, 1};
    std::array<bool, 2> output_parity{false, false};
    std::array<bool, 2> input_parity{false, false};

    Angles reference_angles(const Angles &theta) const {
        Angles q{};
        for (int i = 0; i < 4; ++i) {
            q[slot[i]] = theta[i];
        }
        return q;
    }
    Outcomes reference_outcomes(const Outcomes &m) const {
        Outcomes q{};
        for (int i = 0; i < 4; ++i) {
            q[slot[i]] = outcome_sign[i] * m[i];
        }
        return q;
    }
    /// Architecture angles that realize the given reference angles.
    Angles architecture_angles(const Angles &reference) const {
        Angles a{};
        for (int i = 0; i < 4; ++i) {
            a[i] = reference[slot[i]];
        }
        return a;
    }
    static SymplecticOp parities(const std::array<bool, 2> &flags) {
        return local_pair(flags[0] ? parity_block() : Eigen::Matrix2d::Identity(),
                          flags[1] ? parity_block() : Eigen::Matrix2d::Identity());
    }
    SymplecticOp output_parities() const { return parities(output_parity); }
    SymplecticOp input_parities() const { return parities(input_parity); }
};

/// Ancilla pairs hang off measured modes 2 (output i) and 4 (output ii);
/// inputs enter on modes 1 and 3.
inline QrlFrame compute_qrl_frame(ArchitectureName completed) {
    QrlDecomposition d = qrl_decomposition(completed);
    QrlFrame f;
    for (int i = 0; i < 4; ++i) {
        f.slot[i] = d.row_source[i] - 1;
        f.outcome_sign[i] = d.row_sign[i];
    }
    f.input_parity = {d.column_sign[0] < 0, d.column_sign[2] < 0};
    f.output_parity = {d.column_sign[1] < 0, d.column_sign[3] < 0};
    return f;
}

/// Cached per completed architecture.
inline const QrlFrame &qrl_frame(ArchitectureName completed) {
    static const std::array<std::optional<QrlFrame>, kAllArchitectures.size()> frames = [] {
        std::array<std::optional<QrlFrame>, kAllArchitectures.size()> t;
        for (ArchitectureName name : kAllArchitectures) {
            if (architecture(name).complete()) {
                t[static_cast<size_t>(name)] = compute_qrl_frame(name);
            }
        }
        return t;
    }();
    const auto &f = frames[static_cast<size_t>(completed)];
    if (!f) {
        throw PreconditionError("qrl_frame: " + std::string(to_string(completed)) + " is not a completed architecture");
    }
    return *f;
}

struct DisplacementAmplitudes {
    std::complex<double> first_pair;   // from the (θ1, θ2) reference pair
    std::complex<double> second_pair;  // from the (θ3, θ4) reference pair
    std::complex<double> output1;
    std::complex<double> output2;
    Eigen::Vector4d shift;  // (q_i, q_ii, p_i, p_ii) = √2 (Re, Im) of the outputs, parities applied
};

namespace detail {

inline std::complex<double> pair_amplitude(double theta1, double theta2, double m1, double m2) {
    check_nonsingular_pair(theta1, theta2);
    return -(m1 * std::polar(1.0, theta2) + m2 * std::polar(1.0, theta1)) / std::sin(theta1 - theta2);
}

}  // namespace detail

/// Outcome-dependent displacement in the reference frame; `m` are outcomes of
/// the reference homodynes.
inline DisplacementAmplitudes reference_displacement(const Angles &theta, const Outcomes &m) {
    DisplacementAmplitudes a;
    a.first_pair = detail::pair_amplitude(theta[0], theta[1], m[0], m[1]);
    a.second_pair = detail::pair_amplitude(theta[2], theta[3], m[2], m[3]);
    a.output1 = (a.first_pair + a.second_pair) / std::numbers::sqrt2;
    a.output2 = (a.second_pair - a.first_pair) / std::numbers::sqrt2;
    const double r2 = std::numbers::sqrt2;
    a.shift << r2 * a.output1.real(), r2 * a.output2.real(), r2 * a.output1.imag(), r2 * a.output2.imag();
    return a;
}

struct TeleportedGate {
    ArchitectureName architecture = ArchitectureName::QRL;  // as requested
    ArchitectureName realized = ArchitectureName::QRL;      // completed network whose gate this is
    bool virtually_completed = false;
    Angles angles{};
    Angles reference_angles{};
    QrlFrame frame;
    SymplecticOp gate = SymplecticOp::identity(2);

    /// `m` are outcomes of the completed network (already transformed when virtual).
    DisplacementAmplitudes displacement(const Outcomes &m) const {
        DisplacementAmplitudes a = reference_displacement(reference_angles, frame.reference_outcomes(m));
        a.shift = frame.output_parities().S * a.shift;
        return a;
    }
};

/// The gate teleported by the architecture at homodyne angles θ. Three-splitter
/// networks are virtually completed and their angle restriction enforced.
inline TeleportedGate two_mode_gate(ArchitectureName name, const Angles &theta, double restriction_tol = 1e-9) {
    TeleportedGate g;
    g.architecture = name;
    g.angles = theta;
    const Architecture &arch = architecture(name);
    g.realized = name;
    if (!arch.complete()) {
        VirtualCompletion vc = virtual_completion(name);
        vc.check_angles(theta, restriction_tol);
        g.realized = vc.completed;
        g.virtually_completed = true;
    }
    g.frame = qrl_frame(g.realized);
    g.reference_angles = g.frame.reference_angles(theta);
    g.gate = g.frame.output_parities() * qrl_gate(g.reference_angles) * g.frame.input_parities();
    return g;
}

inline DisplacementAmplitudes displacement_amplitudes(ArchitectureName name, const Angles &theta, const Outcomes &m) {
    return two_mode_gate(name, theta).displacement(m);
}

// ---------------------------------------------------------------------------
// Gate dictionary

/// Architecture labels as used in the dictionary: vc-prefixed names are the
/// virtually completed three-splitter networks.
inline std::string dictionary_label(ArchitectureName name) {
    const Architecture &arch = architecture(name);
    return arch.complete() ? std::string(to_string(name)) : "vc" + std::string(to_string(name));
}

struct DictionaryEntry {
    ArchitectureName architecture = ArchitectureName::QRL;
    std::string target_name;
    std::string angle_text;
    Angles angles{};
    bool expects_parity_on_mode2 = false;
    bool native = false;  // not obtained from a reference row
    std::string reference_row;  // name of the reference row it maps from
    SymplecticOp target = SymplecticOp::identity(2);

    /// Target with the expected trailing parity.
    SymplecticOp expected() const {
        return expects_parity_on_mode2 ? local(2, 2, parity_block()) * target : target;
    }
};

struct ReferenceRow {
    std::string name;
    std::string angle_text;
    Angles angles{};
    SymplecticOp target = SymplecticOp::identity(2);
};

inline SymplecticOp fourier_dressed_cz() {
    return local_pair(fourier_block(), fourier_block().transpose()) * controlled_z(2, 1, 2, 1) *
           local_pair(fourier_block().transpose(), fourier_block());
}

/// Reference-lattice rows, both sign variants where the table lists ±.
inline std::vector<ReferenceRow> reference_rows() {
    constexpr double h = std::numbers::pi / 2;
    constexpr double q = std::numbers::pi / 4;
    const double x = kChi;
    return {
        {"CZ(1)", "{π/2, π/2+χ, π/2, π/2-χ}", {h, h + x, h, h - x}, controlled_z(2, 1, 2, 1)},
        {"CZ(-1)", "{π/2, π/2-χ, π/2, π/2+χ}", {h, h - x, h, h + x}, controlled_z(2, 1, 2, -1)},
        {"SWAP", "{0, π/2, π/2, 0}", {0, h, h, 0}, swap_modes(2, 1, 2)},
        {"I⊗I", "{π/2, 0, π/2, 0}", {h, 0, h, 0}, SymplecticOp::identity(2)},
        {"F⊗F", "{3π/4, π/4, 3π/4, π/4}", {3 * q, q, 3 * q, q}, local_pair(fourier_block(), fourier_block())},
        {"P(1)⊗P(1)", "{π/2, π/2-χ, π/2, π/2-χ}", {h, h - x, h, h - x}, local_pair(shear_q_block(1), shear_q_block(1))},
        {"P(-1)⊗P(-1)", "{π/2, π/2+χ, π/2, π/2+χ}", {h, h + x, h, h + x},
         local_pair(shear_q_block(-1), shear_q_block(-1))},
    };
}

/// Every dictionary entry: reference rows on the reference lattice, then the
/// listed angle sets for the virtually completed networks.
inline std::vector<DictionaryEntry> dictionary_entries() {
    using A = ArchitectureName;
    constexpr double h = std::numbers::pi / 2;
    constexpr double q = std::numbers::pi / 4;
    const double x = kChi;
    std::vector<DictionaryEntry> out;
    std::vector<ReferenceRow> rows = reference_rows();
    auto row = [&](const std::string &name) -> const ReferenceRow & {
        return *std::find_if(rows.begin(), rows.end(), [&](const ReferenceRow &r) { return r.name == name; });
    };
    for (const auto &r : rows) {
        out.push_back({A::QRL, r.name, r.angle_text, r.angles, false, false, r.name, r.target});
    }
    auto listed = [&](A arch, const std::string &ref, const std::string &text, Angles angles) {
        const ReferenceRow &r = row(ref);
        out.push_back({arch, r.name, text, angles, true, false, ref, r.target});
    };
    for (A arch : {A::BSL, A::DBSL}) {
        bool dbsl = arch == A::DBSL;
        listed(arch, "CZ(1)", dbsl ? "{π/2, π/2-χ, π/2+χ, π/2}" : "{π/2, π/2+χ, π/2-χ, π/2}",
               dbsl ? Angles{h, h - x, h + x, h} : Angles{h, h + x, h - x, h});
        listed(arch, "CZ(-1)", dbsl ? "{π/2, π/2+χ, π/2-χ, π/2}" : "{π/2, π/2-χ, π/2+χ, π/2}",
               dbsl ? Angles{h, h + x, h - x, h} : Angles{h, h - x, h + x, h});
    }
    for (A arch : {A::BSL, A::DBSL, A::MSG}) {
        listed(arch, "I⊗I", "{π/2, 0, 0, π/2}", {h, 0, 0, h});
        listed(arch, "F⊗F", "{3π/4, π/4, π/4, 3π/4}", {3 * q, q, q, 3 * q});
        listed(arch, "P(1)⊗P(1)", "{π/2, π/2-χ, π/2-χ, π/2}", {h, h - x, h - x, h});
        listed(arch, "P(-1)⊗P(-1)", "{π/2, π/2+χ, π/2+χ, π/2}", {h, h + x, h + x, h});
    }
    out.push_back({A::MSG, "[F⊗F†]CZ(1)[F†⊗F]", "{-χ, 0, 0, χ}", {-x, 0, 0, x}, true, true, "", fourier_dressed_cz()});
    return out;
}

struct DictionaryCheck {
    DictionaryEntry entry;
    SymplecticOp computed = SymplecticOp::identity(2);
    double max_deviation = 0;
    bool pass = false;
};

/// A reference row carried to a virtually completed network through its frame.
struct MappingCheck {
    ArchitectureName architecture = ArchitectureName::BSL;
    std::string reference_row;
    Angles reference_angles{};
    Angles mapped_angles{};
    bool compatible = false;  // mapped angles satisfy the restriction
    double max_deviation = 0;  // vs F² on mode 2 · reference gate, when compatible
    bool pass = false;
};

struct SwapSearch {
    ArchitectureName architecture = ArchitectureName::BSL;
    size_t grid_points = 0;
    size_t evaluated = 0;
    size_t singular_skipped = 0;
    double min_diagonal_block = INFINITY;  // zero iff SWAP times local gates
    Angles best{};
    bool swap_found(double tol = 1e-6) const { return min_diagonal_block <= tol; }
};

struct DictionaryReport {
    std::vector<DictionaryCheck> checks;
    std::vector<MappingCheck> mappings;
    std::vector<SwapSearch> swap_searches;
    double tolerance = 1e-10;

    bool pass() const {
        bool ok = std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; }) &&
                  std::all_of(mappings.begin(), mappings.end(), [](const auto &m) { return m.pass; });
        for (const auto &s : swap_searches) {
            ok = ok && !s.swap_found();
        }
        return ok;
    }
};

/// Max-abs of the two single-mode diagonal blocks of a two-mode gate.
inline double diagonal_block_size(const SymplecticOp &g) {
    double a = std::max({std::abs(g.S(0, 0)), std::abs(g.S(0, 2)), std::abs(g.S(2, 0)), std::abs(g.S(2, 2))});
    double b = std::max({std::abs(g.S(1, 1)), std::abs(g.S(1, 3)), std::abs(g.S(3, 1)), std::abs(g.S(3, 3))});
    return std::max(a, b);
}

/// Grid over [0, π) for every free angle under the network's restriction.
inline SwapSearch swap_search(ArchitectureName incomplete, size_t grid_points) {
    VirtualCompletion vc = virtual_completion(incomplete);
    SwapSearch s;
    s.architecture = incomplete;
    s.grid_points = grid_points;
    std::vector<int> free_modes;
    for (int m = 1; m <= 4; ++m) {
        if (m != vc.restriction.mode_b) {
            free_modes.push_back(m);
        }
    }
    std::vector<double> grid(grid_points);
    for (size_t k = 0; k < grid_points; ++k) {
        grid[k] = std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_points);
    }
    for (double a : grid) {
        for (double b : grid) {
            for (double c : grid) {
                Angles theta{};
                std::array<double, 3> v{a, b, c};
                for (size_t i = 0; i < 3; ++i) {
                    theta[free_modes[i] - 1] = v[i];
                }
                theta[vc.restriction.mode_b - 1] = theta[vc.restriction.mode_a - 1];
                try {
                    double d = diagonal_block_size(two_mode_gate(incomplete, theta).gate);
                    ++s.evaluated;
                    if (d < s.min_diagonal_block) {
                        s.min_diagonal_block = d;
                        s.best = theta;
                    }
                } catch (const SingularAngleError &) {
                    ++s.singular_skipped;
                }
            }
        }
    }
    return s;
}

inline DictionaryReport verify_dictionary(double tol = 1e-10, size_t swap_grid = 49) {
    using A = ArchitectureName;
    DictionaryReport rep;
    rep.tolerance = tol;
    auto entries = dictionary_entries();
    for (const auto &e : entries) {
        DictionaryCheck c;
        c.entry = e;
        c.computed = two_mode_gate(e.architecture, e.angles).gate;
        c.max_deviation = max_deviation(c.computed, e.expected());
        c.pass = c.max_deviation <= tol;
        rep.checks.push_back(c);
    }
    for (A arch : {A::BSL, A::DBSL, A::MSG}) {
        VirtualCompletion vc = virtual_completion(arch);
        QrlFrame frame = qrl_frame(vc.completed);
        for (const auto &r : reference_rows()) {
            MappingCheck m;
            m.architecture = arch;
            m.reference_row = r.name;
            m.reference_angles = r.angles;
            m.mapped_angles = frame.architecture_angles(r.angles);
            m.compatible = std::abs(m.mapped_angles[vc.restriction.mode_a - 1] -
                                    m.mapped_angles[vc.restriction.mode_b - 1]) <= 1e-12;
            if (m.compatible) {
                SymplecticOp expected = frame.output_parities() * qrl_gate(r.angles) * frame.input_parities();
                m.max_deviation = max_deviation(two_mode_gate(arch, m.mapped_angles).gate, expected);
                // a compatible row must also be the one the dictionary lists
                bool listed = std::any_of(entries.begin(), entries.end(), [&](const DictionaryEntry &e) {
                    return e.architecture == arch && e.reference_row == r.name && e.angles == m.mapped_angles;
                });
                m.pass = m.max_deviation <= tol && listed;
            } else {
                // incompatible rows must be exactly the ones the dictionary omits
                m.pass = std::none_of(entries.begin(), entries.end(), [&](const DictionaryEntry &e) {
                    return e.architecture == arch && e.reference_row == r.name;
                });
            }
            rep.mappings.push_back(m);
        }
        rep.swap_searches.push_back(swap_search(arch, swap_grid));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Three-mode splitter networks as rotations

inline Eigen::Matrix3d rotation_x(double a) {
    return (Eigen::Matrix3d() << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a)).finished();
}
inline Eigen::Matrix3d rotation_y(double a) {
    return (Eigen::Matrix3d() << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a)).finished();
}
inline Eigen::Matrix3d rotation_z(double a) {
    return (Eigen::Matrix3d() << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1).finished();
}

/// Splitter between modes (j, k) of three modes ordered (j, k, l): (j,k) is a z
/// rotation, (k,l) an x rotation, (l,j) a y rotation.
inline Eigen::Matrix3d three_mode_splitter(int from, int to, double theta) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    double c = std::cos(theta);
    double s = std::sin(theta);
    r(from - 1, from - 1) = c;
    r(from - 1, to - 1) = -s;
    r(to - 1, from - 1) = s;
    r(to - 1, to - 1) = c;
    return r;
}

struct EulerAngles {
    double alpha = 0;  // x, applied first
    double beta = 0;   // y
    double gamma = 0;  // z, applied last
    Eigen::Matrix3d matrix() const { return rotation_z(gamma) * rotation_y(beta) * rotation_x(alpha); }
};

/// M = R_z(γ) R_y(β) R_x(α). At gimbal lock γ is set to zero.
inline EulerAngles euler_decompose(const Eigen::Matrix3d &m) {
    if ((m * m.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
        std::abs(m.determinant() - 1) > 1e-9) {
        throw PreconditionError("euler_decompose: matrix is not a proper rotation");
    }
    EulerAngles e;
    double sb = std::clamp(-m(2, 0), -1.0, 1.0);
    e.beta = std::asin(sb);
    if (std::abs(std::abs(sb) - 1) < 1e-12) {
        e.gamma = 0;
        e.alpha = std::atan2(-m(1, 2), m(1, 1));
    } else {
        e.alpha = std::atan2(m(2, 1), m(2, 2));
        e.gamma = std::atan2(m(1, 0), m(0, 0));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Measured quadratures

/// Covector (over input quadratures) of p_θ on mode j (1-based) of n modes.
inline Eigen::RowVectorXd homodyne_covector(int n, int mode, double theta) {
    Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(2 * n);
    c(mode - 1) = std::sin(theta);
    c(n + mode - 1) = std::cos(theta);
    return c;
}

/// Row j: p_θj measured after the network, written in the network's input quadratures.
inline Eigen::MatrixXd measured_quadratures(const BsNetwork &net, std::span<const double> theta) {
    int n = net.n_modes();
    if (static_cast<int>(theta.size()) != n) {
        throw DimensionError("measured_quadratures: need one angle per mode");
    }
    Eigen::MatrixXd s = passive(net.matrix()).S;
    Eigen::MatrixXd rows(n, 2 * n);
    for (int j = 0; j < n; ++j) {
        rows.row(j) = homodyne_covector(n, j + 1, theta[j]) * s;
    }
    return rows;
}

/// |cov(p_θ) - cosθ · cov(p after P(tanθ))| for |θ| < π/2.
inline double rotated_measurement_defect(double theta) {
    if (std::abs(theta) >= std::numbers::pi / 2) {
        throw PreconditionError("rotated measurement identity needs |θ| < π/2");
    }
    Eigen::RowVector2d p_theta(std::sin(theta), std::cos(theta));
    Eigen::RowVector2d p_sheared = Eigen::RowVector2d(0, 1) * shear_q_block(std::tan(theta));
    return (p_theta - std::cos(theta) * p_sheared).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Circuit identities

struct IdentityCheck {
    std::string name;
    std::string parameters;
    double max_deviation = 0;
    double tolerance = 1e-12;
    bool pass() const { return max_deviation <= tolerance; }
};

/// Identities among gates. Each is an equality of symplectic matrices with
/// factors multiplied in the order written.
inline std::vector<IdentityCheck> verify_circuit_identities(double tol = 1e-12) {
    std::vector<IdentityCheck> out;
    auto add = [&](std::string name, std::string params, double dev) {
        out.push_back({std::move(name), std::move(params), dev, tol});
    };
    auto dev = [](const SymplecticOp &a, const SymplecticOp &b) { return max_deviation(a, b); };
    const SymplecticOp f2_first = local(2, 1, parity_block());
    const SymplecticOp swap = swap_modes(2, 1, 2);

    for (double theta : {-1.2, -0.5, 0.3, std::numbers::pi / 4, 1.0, 1.3}) {
        std::string p = "θ=" + std::to_string(theta);
        double t = std::tan(theta);
        double sec = 1 / std::cos(theta);
        SymplecticOp b = beam_splitter(2, 1, 2, theta);
        add("B12(θ) = CX12(tanθ)·[S†(secθ)⊗S(secθ)]·CX21(-tanθ)", p,
            dev(b, controlled_x(2, 1, 2, t) * local_pair(squeeze_block(1 / sec), squeeze_block(sec)) *
                       controlled_x(2, 2, 1, -t)));
        add("B12(θ) = CX21(-tanθ)·[S(secθ)⊗S†(secθ)]·CX12(tanθ)", p,
            dev(b, controlled_x(2, 2, 1, -t) * local_pair(squeeze_block(sec), squeeze_block(1 / sec)) *
                       controlled_x(2, 1, 2, t)));
        add("SWAP·B12(θ)·SWAP = B21(θ)", p, dev(swap * b * swap, beam_splitter(2, 2, 1, theta)));
        add("F1²·B12(θ)·F1² = B21(θ)", p, dev(f2_first * b * f2_first, beam_splitter(2, 2, 1, theta)));
        add("B21(θ) = B12(-θ)", p, dev(beam_splitter(2, 2, 1, theta), beam_splitter(2, 1, 2, -theta)));
        if (std::abs(theta) < std::numbers::pi / 2) {
            add("p_θ = cosθ · p after P(tanθ)", p, rotated_measurement_defect(theta));
            LduCheck l = verify_ldu(theta);
            add("R(θ) = P_p†(tanθ)·S(secθ)·P(tanθ)", p, l.lower_first);
            add("R(θ) = P(tanθ)·S(cosθ)·P_p†(tanθ)", p, l.upper_first);
        }
    }
    for (double g : {-2.0, -0.5, 1.0, 2.5}) {
        add("CZ(g) = B21·[P(-g)⊗P(g)]·B12", "g=" + std::to_string(g),
            dev(controlled_z(2, 1, 2, g),
                beam_splitter(2, 2, 1) * local_pair(shear_q_block(-g), shear_q_block(g)) * beam_splitter(2, 1, 2)));
    }
    add("SWAP = F1²·CX12(1)·CX21(-1)·CX12(1)", "",
        dev(swap, f2_first * controlled_x(2, 1, 2, 1) * controlled_x(2, 2, 1, -1) * controlled_x(2, 1, 2, 1)));
    add("SWAP = F1²·B12·B12", "", dev(swap, f2_first * beam_splitter(2, 1, 2) * beam_splitter(2, 1, 2)));
    {
        ExactMatrix r12 = beam_splitter_matrix(2, 1, 2);
        bool exact = negation_matrix(2, 1) * r12 * r12 == transposition_matrix(2, 1, 2);
        add("SWAP = M1·R12·R12 (exact)", "", exact ? 0.0 : 1.0);
    }
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.3, -1.7}, std::pair{-1.1, 0.6}}) {
        add("CX32(a)·CX21(b) = CX21(b)·CX32(a)·CX31(-ab)", "a=" + std::to_string(a) + " b=" + std::to_string(b),
            dev(controlled_x(3, 3, 2, a) * controlled_x(3, 2, 1, b),
                controlled_x(3, 2, 1, b) * controlled_x(3, 3, 2, a) * controlled_x(3, 3, 1, -a * b)));
    }
    for (auto [t1, t2] : {std::pair{std::numbers::pi / 4, std::numbers::pi / 4}, std::pair{0.4, -1.1},
                          std::pair{2.0, 0.7}}) {
        Eigen::Matrix3d m = rotation_x(t2) * rotation_z(t1);
        EulerAngles e = euler_decompose(m);
        add("R_x(θ2)·R_z(θ1) = R_z(γ)·R_y(β)·R_x(α)", "θ1=" + std::to_string(t1) + " θ2=" + std::to_string(t2),
            (e.matrix() - m).cwiseAbs().maxCoeff());
    }
    {
        Eigen::Matrix3d m = rotation_x(std::numbers::pi / 4) * rotation_z(std::numbers::pi / 4);
        EulerAngles e = euler_decompose(m);
        double expected_outer = std::atan(1 / std::numbers::sqrt2);
        double expected_middle = std::atan(-std::numbers::sqrt3 / 3);
        add("balanced pair: α = γ = arctan(1/√2), β = arctan(-√3/3)", "",
            std::max({std::abs(e.alpha - expected_outer), std::abs(e.gamma - expected_outer),
                      std::abs(e.beta - expected_middle)}));
    }
    return out;
}

}  // namespace cvcluster
