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
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvcluster/errors.hpp"
#include "cvcluster/exact_matrix.hpp"

namespace cvcluster {

/// Gaussian unitary as an affine map x -> S·x + d on quadratures ordered
/// (q1..qn, p1..pn). Composition follows operator order: (a * b) applies b first.
struct SymplecticOp {
    int n_modes = 1;
    Eigen::MatrixXd S;
    Eigen::VectorXd d;

    SymplecticOp() : SymplecticOp(identity(1)) {}
    SymplecticOp(int n, Eigen::MatrixXd s, Eigen::VectorXd disp) : n_modes(n), S(std::move(s)), d(std::move(disp)) {
        if (S.rows() != 2 * n || S.cols() != 2 * n || d.size() != 2 * n) {
            throw DimensionError("SymplecticOp: shape does not match " + std::to_string(n) + " modes");
        }
    }
    SymplecticOp(int n, Eigen::MatrixXd s) : SymplecticOp(n, std::move(s), Eigen::VectorXd::Zero(2 * n)) {}

    static SymplecticOp identity(int n) {
        return {n, Eigen::MatrixXd::Identity(2 * n, 2 * n), Eigen::VectorXd::Zero(2 * n)};
    }

    friend SymplecticOp operator*(const SymplecticOp &a, const SymplecticOp &b) {
        if (a.n_modes != b.n_modes) {
            throw DimensionError("SymplecticOp: mode count mismatch in composition");
        }
        return {a.n_modes, a.S * b.S, a.S * b.d + a.d};
    }

    SymplecticOp inverse() const {
        Eigen::MatrixXd inv = S.inverse();
        return {n_modes, inv, -inv * d};
    }
};

inline Eigen::MatrixXd symplectic_form(int n) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return omega;
}

inline double symplectic_defect(const Eigen::MatrixXd &s) {
    int n = static_cast<int>(s.rows() / 2);
    Eigen::MatrixXd omega = symplectic_form(n);
    return (s.transpose() * omega * s - omega).cwiseAbs().maxCoeff();
}

inline bool is_symplectic(const SymplecticOp &op, double tol = 1e-12) { return symplectic_defect(op.S) <= tol; }

/// Largest entry-wise difference of the linear parts and displacements.
inline double max_deviation(const SymplecticOp &a, const SymplecticOp &b) {
    if (a.n_modes != b.n_modes) {
        throw DimensionError("max_deviation: mode count mismatch");
    }
    return std::max((a.S - b.S).cwiseAbs().maxCoeff(), (a.d - b.d).cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------
// Single-mode actions on (q, p)

/// q -> q cosθ - p sinθ, p -> q sinθ + p cosθ.
inline Eigen::Matrix2d rotation_block(double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    return (Eigen::Matrix2d() << c, -s, s, c).finished();
}

/// P(σ): p -> p + σq.
inline Eigen::Matrix2d shear_q_block(double sigma) { return (Eigen::Matrix2d() << 1, 0, sigma, 1).finished(); }

/// P_p(σ): q -> q + σp. The orientation is the one the LDU identity accepts.
inline Eigen::Matrix2d shear_p_block(double sigma) { return (Eigen::Matrix2d() << 1, sigma, 0, 1).finished(); }

/// S(ζ): q -> ζq, p -> p/ζ. The orientation is the one the LDU identity accepts.
inline Eigen::Matrix2d squeeze_block(double zeta) {
    if (zeta == 0) {
        throw PreconditionError("squeeze: ζ must be non-zero");
    }
    return (Eigen::Matrix2d() << zeta, 0, 0, 1 / zeta).finished();
}

inline Eigen::Matrix2d fourier_block() { return (Eigen::Matrix2d() << 0, -1, 1, 0).finished(); }
inline Eigen::Matrix2d parity_block() { return -Eigen::Matrix2d::Identity(); }

/// Places a single-mode block on `mode` (1-based) of an n-mode identity.
inline SymplecticOp local(int n, int mode, const Eigen::Matrix2d &block) {
    detail::check_mode(n, mode);
    SymplecticOp op = SymplecticOp::identity(n);
    int k = mode - 1;
    op.S(k, k) = block(0, 0);
    op.S(k, n + k) = block(0, 1);
    op.S(n + k, k) = block(1, 0);
    op.S(n + k, n + k) = block(1, 1);
    return op;
}

/// Single-mode block ⊕ single-mode block on two modes.
inline SymplecticOp local_pair(const Eigen::Matrix2d &first, const Eigen::Matrix2d &second) {
    return local(2, 1, first) * local(2, 2, second);
}

inline SymplecticOp single_mode(const Eigen::Matrix2d &block) { return local(1, 1, block); }

inline SymplecticOp rotation(double theta) { return single_mode(rotation_block(theta)); }
inline SymplecticOp shear_q(double sigma) { return single_mode(shear_q_block(sigma)); }
inline SymplecticOp shear_p(double sigma) { return single_mode(shear_p_block(sigma)); }
inline SymplecticOp squeeze(double zeta) { return single_mode(squeeze_block(zeta)); }
inline SymplecticOp fourier() { return single_mode(fourier_block()); }
inline SymplecticOp parity() { return single_mode(parity_block()); }

// ---------------------------------------------------------------------------
// Multi-mode gates

/// Real orthogonal mode mixing O acting identically on q's and p's.
inline SymplecticOp passive(const Eigen::MatrixXd &o) {
    int n = static_cast<int>(o.rows());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    s.topLeftCorner(n, n) = o;
    s.bottomRightCorner(n, n) = o;
    return {n, s};
}

inline Eigen::MatrixXd to_eigen(const ExactMatrix &m) {
    Eigen::MatrixXd r(m.size(), m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        for (size_t j = 0; j < m.size(); ++j) {
            r(i, j) = m(i, j).to_double();
        }
    }
    return r;
}

inline SymplecticOp passive(const ExactMatrix &m) { return passive(to_eigen(m)); }

/// B_jk(θ): block [[cosθ, -sinθ], [sinθ, cosθ]] on modes (j, k); θ = π/4 is balanced.
inline SymplecticOp beam_splitter(int n, int j, int k, double theta = std::numbers::pi / 4) {
    detail::check_mode(n, j);
    detail::check_mode(n, k);
    if (j == k) {
        throw std::invalid_argument("beam_splitter: j and k must differ");
    }
    Eigen::MatrixXd o = Eigen::MatrixXd::Identity(n, n);
    double c = std::cos(theta);
    double s = std::sin(theta);
    if (theta == std::numbers::pi / 4) {
        c = s = std::numbers::sqrt2 / 2;
    }
    o(j - 1, j - 1) = c;
    o(j - 1, k - 1) = -s;
    o(k - 1, j - 1) = s;
    o(k - 1, k - 1) = c;
    return passive(o);
}

/// CZ(g): p_j -> p_j + g q_k, p_k -> p_k + g q_j.
inline SymplecticOp controlled_z(int n, int j, int k, double g) {
    detail::check_mode(n, j);
    detail::check_mode(n, k);
    SymplecticOp op = SymplecticOp::identity(n);
    op.S(n + j - 1, k - 1) += g;
    op.S(n + k - 1, j - 1) += g;
    return op;
}

/// CX^{control,target}(g): q_target -> q_target + g q_control, p_control -> p_control - g p_target.
inline SymplecticOp controlled_x(int n, int control, int target, double g) {
    detail::check_mode(n, control);
    detail::check_mode(n, target);
    if (control == target) {
        throw std::invalid_argument("controlled_x: control and target must differ");
    }
    SymplecticOp op = SymplecticOp::identity(n);
    op.S(target - 1, control - 1) += g;
    op.S(n + control - 1, n + target - 1) -= g;
    return op;
}

inline SymplecticOp swap_modes(int n, int j, int k) {
    detail::check_mode(n, j);
    detail::check_mode(n, k);
    Eigen::MatrixXd o = Eigen::MatrixXd::Identity(n, n);
    o.row(j - 1).swap(o.row(k - 1));
    return passive(o);
}

inline SymplecticOp displacement(const Eigen::VectorXd &d) {
    int n = static_cast<int>(d.size() / 2);
    return {n, Eigen::MatrixXd::Identity(2 * n, 2 * n), d};
}

}  // namespace cvcluster
