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
#include <numbers>
#include <random>
#include <string>

#include "cvcluster/errors.hpp"
#include "cvcluster/gauss_gates.hpp"

namespace cvcluster {
namespace {

using A = ArchitectureName;
constexpr double kPi = std::numbers::pi;
constexpr double h = kPi / 2;
constexpr double q = kPi / 4;
const double x = std::atan(2.0);

// Two-mode targets written out on (q1, q2, p1, p2).
Eigen::Matrix4d m4(std::initializer_list<double> v) {
    Eigen::Matrix4d m;
    auto it = v.begin();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = *it++;
        }
    }
    return m;
}
Eigen::Matrix4d cz(double g) { return m4({1, 0, 0, 0, 0, 1, 0, 0, 0, g, 1, 0, g, 0, 0, 1}); }
const Eigen::Matrix4d kSwap = m4({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
const Eigen::Matrix4d kFF = m4({0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0});
Eigen::Matrix4d shears(double s) { return m4({1, 0, 0, 0, 0, 1, 0, 0, s, 0, 1, 0, 0, s, 0, 1}); }
const Eigen::Matrix4d kParity2 = m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});

double gate_error(A arch, const Angles &theta, const Eigen::Matrix4d &target) {
    return (two_mode_gate(arch, theta).gate.S - target).cwiseAbs().maxCoeff();
}

TEST(VGate, ThreeFormsAgreeOnRandomPairs) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    int checked = 0;
    while (checked < 1000) {
        double a = angle(rng);
        double b = angle(rng);
        if (std::abs(std::sin(a - b)) < 1e-6) {
            continue;
        }
        VGateForms f = v_gate_forms(a, b);
        EXPECT_LE(f.spread(), 1e-10) << a << " " << b;
        EXPECT_NEAR(f.position_shear.determinant(), 1.0, 1e-9);
        ++checked;
    }
}

TEST(VGate, SpecialAngles) {
    EXPECT_LT((v_gate_block(h, 0) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::Matrix2d f;
    f << 0, -1, 1, 0;
    EXPECT_LT((v_gate_block(3 * q, q) - f).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(v_gate_block(0.3, 0.3), SingularAngleError);
    EXPECT_THROW(v_gate_block(0.3, 0.3 + kPi), SingularAngleError);
}

TEST(Ldu, RotationFactorizesOnAGrid) {
    for (double t = -1.5; t <= 1.5; t += 0.05) {
        EXPECT_TRUE(verify_ldu(t).holds(1e-12)) << t;
    }
    EXPECT_THROW(verify_ldu(h), SingularAngleError);
}

TEST(Dictionary, ReferenceRowsOnTheQuadRail) {
    EXPECT_LT(gate_error(A::QRL, {h, h + x, h, h - x}, cz(1)), 1e-10);
    EXPECT_LT(gate_error(A::QRL, {h, h - x, h, h + x}, cz(-1)), 1e-10);
    EXPECT_LT(gate_error(A::QRL, {0, h, h, 0}, kSwap), 1e-10);
    EXPECT_LT(gate_error(A::QRL, {h, 0, h, 0}, Eigen::Matrix4d::Identity()), 1e-10);
    EXPECT_LT(gate_error(A::QRL, {3 * q, q, 3 * q, q}, kFF), 1e-10);
    EXPECT_LT(gate_error(A::QRL, {h, h - x, h, h - x}, shears(1)), 1e-10);
    EXPECT_LT(gate_error(A::QRL, {h, h + x, h, h + x}, shears(-1)), 1e-10);
}

TEST(Dictionary, VirtuallyCompletedRowsUpToParityOnModeTwo) {
    for (A a : {A::BSL, A::DBSL, A::MSG}) {
        SCOPED_TRACE(std::string(to_string(a)));
        EXPECT_LT(gate_error(a, {h, 0, 0, h}, kParity2), 1e-10);
        EXPECT_LT(gate_error(a, {3 * q, q, q, 3 * q}, kParity2 * kFF), 1e-10);
        EXPECT_LT(gate_error(a, {h, h - x, h - x, h}, kParity2 * shears(1)), 1e-10);
        EXPECT_LT(gate_error(a, {h, h + x, h + x, h}, kParity2 * shears(-1)), 1e-10);
    }
    EXPECT_LT(gate_error(A::BSL, {h, h + x, h - x, h}, kParity2 * cz(1)), 1e-10);
    EXPECT_LT(gate_error(A::BSL, {h, h - x, h + x, h}, kParity2 * cz(-1)), 1e-10);
    EXPECT_LT(gate_error(A::DBSL, {h, h - x, h + x, h}, kParity2 * cz(1)), 1e-10);
    EXPECT_LT(gate_error(A::DBSL, {h, h + x, h - x, h}, kParity2 * cz(-1)), 1e-10);
}

TEST(Dictionary, NativeMsgGateIsFourierDressedCz) {
    // (F⊗F†)·CZ(1)·(F†⊗F), with F = [[0,-1],[1,0]] per mode
    Eigen::Matrix4d f_fdag = m4({0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0});
    Eigen::Matrix4d dressed = f_fdag * cz(1) * f_fdag.transpose();
    EXPECT_LT(gate_error(A::MSG, {-x, 0, 0, x}, kParity2 * dressed), 1e-10);
    EXPECT_LT((fourier_dressed_cz().S - dressed).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Dictionary, FullReportPasses) {
    DictionaryReport r = verify_dictionary(1e-10, 25);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.checks.size(), 24u);
    for (const auto &s : r.swap_searches) {
        EXPECT_FALSE(s.swap_found()) << to_string(s.architecture);
        EXPECT_GT(s.min_diagonal_block, 0.5);
    }
}

TEST(Dictionary, SwapIsIncompatibleWithEveryRestriction) {
    // the SWAP row needs θ1 ≠ θ4 and θ2 ≠ θ3 in every mapped frame
    for (const auto &m : verify_dictionary().mappings) {
        if (m.reference_row == "SWAP") {
            EXPECT_FALSE(m.compatible) << to_string(m.architecture);
        }
    }
}

TEST(TeleportedGate, CompletedArchitecturesRelateToTheQuadRail) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        Angles th{angle(rng), angle(rng), angle(rng), angle(rng)};
        if (std::abs(std::sin(th[0] - th[1])) < 0.1 || std::abs(std::sin(th[2] - th[3])) < 0.1 ||
            std::abs(std::sin(th[0] - th[3])) < 0.1 || std::abs(std::sin(th[1] - th[2])) < 0.1 ||
            std::abs(std::sin(th[0] - th[2])) < 0.1 || std::abs(std::sin(th[1] - th[3])) < 0.1) {
            continue;
        }
        // cMSG and cBSL share a network, so they share the gate
        EXPECT_LT(max_deviation(two_mode_gate(A::cMSG, th).gate, two_mode_gate(A::cBSL, th).gate), 1e-12);
        for (A a : {A::QRL, A::cBSL, A::cDBSL, A::cMBSL}) {
            TeleportedGate g = two_mode_gate(a, th);
            EXPECT_TRUE(is_symplectic(g.gate, 1e-8));
        }
        // cBSL permutes measured modes 3 and 4 and flips output ii
        Angles ref{th[0], th[1], th[3], th[2]};
        EXPECT_LT((two_mode_gate(A::cBSL, th).gate.S - kParity2 * qrl_gate(ref).S).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(TeleportedGate, RestrictionsAndRefusals) {
    try {
        two_mode_gate(A::BSL, {0.1, 0.2, 0.3, 0.4});
        FAIL() << "restriction ignored";
    } catch (const RestrictionError &e) {
        EXPECT_NE(std::string(e.what()).find("θ1 = θ4"), std::string::npos);
    }
    EXPECT_THROW(two_mode_gate(A::MSG, {0.1, 0.2, 0.3, 0.4}), RestrictionError);
    EXPECT_THROW(two_mode_gate(A::MBSL, {0.1, 0.2, 0.3, 0.4}), TypeBCompletionError);
    EXPECT_NO_THROW(two_mode_gate(A::BSL, {0.1, 0.2, 0.3, 0.1}));
    EXPECT_THROW(two_mode_gate(A::QRL, {0.1, 0.1, 0.3, 0.4}), SingularAngleError);
}

TEST(Displacement, LinearInOutcomesAndZeroAtZero) {
    Angles th{0.3, 1.4, -0.8, 0.6};
    DisplacementAmplitudes zero = reference_displacement(th, {0, 0, 0, 0});
    EXPECT_LT(zero.shift.cwiseAbs().maxCoeff(), 1e-15);
    Outcomes a{0.2, -0.4, 1.0, 0.3};
    Outcomes b{-1.1, 0.5, 0.2, 0.9};
    Outcomes sum{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    Eigen::Vector4d lhs = reference_displacement(th, sum).shift;
    Eigen::Vector4d rhs = reference_displacement(th, a).shift + reference_displacement(th, b).shift;
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    // single pair: μ = -(m1 e^{iθ2} + m2 e^{iθ1}) / sin(θ1 - θ2)
    DisplacementAmplitudes d = reference_displacement(th, {1, 0, 0, 0});
    std::complex<double> mu = -std::polar(1.0, th[1]) / std::sin(th[0] - th[1]);
    EXPECT_LT(std::abs(d.first_pair - mu), 1e-14);
    EXPECT_LT(std::abs(d.output1 - mu / std::sqrt(2.0)), 1e-14);
    EXPECT_LT(std::abs(d.output2 + mu / std::sqrt(2.0)), 1e-14);
}

TEST(CircuitIdentities, AllHold) {
    for (const auto &c : verify_circuit_identities(1e-12)) {
        EXPECT_TRUE(c.pass()) << c.name << " " << c.parameters << " deviation " << c.max_deviation;
    }
}

TEST(CircuitIdentities, BalancedEulerAngles) {
    EulerAngles e = euler_decompose(rotation_x(q) * rotation_z(q));
    EXPECT_NEAR(e.alpha, std::atan(1 / std::sqrt(2.0)), 1e-12);
    EXPECT_NEAR(e.gamma, std::atan(1 / std::sqrt(2.0)), 1e-12);
    EXPECT_NEAR(e.beta, std::atan(-std::sqrt(3.0) / 3), 1e-12);
    EXPECT_THROW(euler_decompose(2 * Eigen::Matrix3d::Identity()), PreconditionError);
}

TEST(CircuitIdentities, GimbalLockPinsGamma) {
    EulerAngles e = euler_decompose(rotation_y(h) * rotation_x(0.3));
    EXPECT_EQ(e.gamma, 0);
    EXPECT_LT((e.matrix() - rotation_y(h) * rotation_x(0.3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MeasuredQuadratures, BalancedNetworkMixesAllInputs) {
    BsNetwork qrl = architecture_network(A::QRL);
    std::array<double, 4> th{0.2, 0.5, -0.3, 1.0};
    Eigen::MatrixXd rows = measured_quadratures(qrl, th);
    ASSERT_EQ(rows.rows(), 4);
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            EXPECT_NEAR(std::abs(rows(j, k)), 0.5 * std::abs(std::sin(th[j])), 1e-14);
            EXPECT_NEAR(std::abs(rows(j, 4 + k)), 0.5 * std::abs(std::cos(th[j])), 1e-14);
        }
    }
    std::array<double, 3> wrong{0, 0, 0};
    EXPECT_THROW(measured_quadratures(qrl, wrong), DimensionError);
}

}  // namespace
}  // namespace cvcluster
