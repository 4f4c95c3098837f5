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
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cvcluster/cluster_zoo.hpp"
#include "cvcluster/errors.hpp"
#include "cvcluster/gauss_gates.hpp"
#include "cvcluster/symplectic.hpp"

namespace cvcluster {

/// Mean and covariance over (q1..qn, p1..pn); vacuum covariance is I/2.
struct GaussianState {
    int n_modes = 1;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    static GaussianState vacuum(int n) {
        return {n, Eigen::VectorXd::Zero(2 * n), Eigen::MatrixXd::Identity(2 * n, 2 * n) / 2};
    }
    static GaussianState coherent(double q, double p) {
        GaussianState s = vacuum(1);
        s.mean << q, p;
        return s;
    }

    double purity_determinant() const { return (2 * cov).determinant(); }

    /// Smallest eigenvalue of cov + (i/2)Ω; the state is physical when it is >= 0.
    double uncertainty_margin() const {
        Eigen::MatrixXcd h = cov.cast<std::complex<double>>();
        h += std::complex<double>(0, 0.5) * symplectic_form(n_modes).cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    /// Margin above -tol, with tol scaled by the largest variance.
    bool satisfies_uncertainty(double tol = 1e-10) const {
        return uncertainty_margin() >= -tol * std::max(1.0, cov.cwiseAbs().maxCoeff());
    }

    /// Keeps the listed modes (1-based), in the listed order.
    GaussianState select(const std::vector<int> &modes) const {
        int k = static_cast<int>(modes.size());
        std::vector<int> idx;
        for (int m : modes) {
            detail::check_mode(n_modes, m);
            idx.push_back(m - 1);
        }
        for (int m : modes) {
            idx.push_back(n_modes + m - 1);
        }
        GaussianState r{k, Eigen::VectorXd(2 * k), Eigen::MatrixXd(2 * k, 2 * k)};
        for (int a = 0; a < 2 * k; ++a) {
            r.mean(a) = mean(idx[a]);
            for (int b = 0; b < 2 * k; ++b) {
                r.cov(a, b) = cov(idx[a], idx[b]);
            }
        }
        return r;
    }
};

enum class SqueezeAxis { q, p };

inline GaussianState squeezed_vacuum(double db, SqueezeAxis axis) {
    if (db < 0) {
        throw PreconditionError("squeezed_vacuum: squeezing must be non-negative dB");
    }
    double small = 0.5 * std::pow(10.0, -db / 10);
    double large = 0.5 * std::pow(10.0, db / 10);
    GaussianState s = GaussianState::vacuum(1);
    s.cov(0, 0) = axis == SqueezeAxis::q ? small : large;
    s.cov(1, 1) = axis == SqueezeAxis::q ? large : small;
    return s;
}

/// Modes of a followed by modes of b.
inline GaussianState tensor(const GaussianState &a, const GaussianState &b) {
    int na = a.n_modes;
    int nb = b.n_modes;
    int n = na + nb;
    GaussianState r{n, Eigen::VectorXd::Zero(2 * n), Eigen::MatrixXd::Zero(2 * n, 2 * n)};
    auto place = [&](const GaussianState &s, int offset) {
        int k = s.n_modes;
        std::vector<int> idx;
        for (int i = 0; i < k; ++i) {
            idx.push_back(offset + i);
        }
        for (int i = 0; i < k; ++i) {
            idx.push_back(n + offset + i);
        }
        for (int x = 0; x < 2 * k; ++x) {
            r.mean(idx[x]) = s.mean(x);
            for (int y = 0; y < 2 * k; ++y) {
                r.cov(idx[x], idx[y]) = s.cov(x, y);
            }
        }
    };
    place(a, 0);
    place(b, na);
    return r;
}

inline GaussianState apply(const SymplecticOp &op, const GaussianState &s) {
    if (op.n_modes != s.n_modes) {
        throw DimensionError("apply: operation acts on " + std::to_string(op.n_modes) + " modes, state has " +
                             std::to_string(s.n_modes));
    }
    GaussianState r = s;
    r.mean = op.S * s.mean + op.d;
    r.cov = op.S * s.cov * op.S.transpose();
    return r;
}

/// Where homodyne outcomes come from: drawn from the conditional distribution
/// with a seeded engine, or taken from a fixed list in measurement order.
class OutcomePolicy {
   public:
    static OutcomePolicy sample(uint64_t seed) {
        OutcomePolicy p;
        p.sampled_ = true;
        p.seed_ = seed;
        p.engine_.seed(seed);
        return p;
    }
    static OutcomePolicy fixed(std::vector<double> outcomes) {
        OutcomePolicy p;
        p.fixed_ = std::move(outcomes);
        return p;
    }

    bool sampled() const { return sampled_; }
    uint64_t seed() const { return seed_; }

    double next(double mean, double variance) {
        if (sampled_) {
            return std::normal_distribution<double>(mean, std::sqrt(variance))(engine_);
        }
        if (index_ >= fixed_.size()) {
            throw PreconditionError("OutcomePolicy: ran out of fixed outcomes");
        }
        return fixed_[index_++];
    }

   private:
    bool sampled_ = false;
    uint64_t seed_ = 0;
    std::mt19937_64 engine_;
    std::vector<double> fixed_;
    size_t index_ = 0;
};

struct HomodyneResult {
    double outcome = 0;
    double outcome_mean = 0;
    double outcome_variance = 0;
    GaussianState state;  // measured mode removed
};

/// Measures p_θ = q sinθ + p cosθ on `mode` (1-based) and conditions the rest.
inline HomodyneResult homodyne(const GaussianState &s, int mode, double theta, OutcomePolicy &policy) {
    detail::check_mode(s.n_modes, mode);
    Eigen::VectorXd c = homodyne_covector(s.n_modes, mode, theta).transpose();
    Eigen::VectorXd cross = s.cov * c;
    double variance = c.dot(cross);
    if (variance <= 1e-14) {
        throw PreconditionError("homodyne: measured quadrature has vanishing variance");
    }
    HomodyneResult r;
    r.outcome_mean = c.dot(s.mean);
    r.outcome_variance = variance;
    r.outcome = policy.next(r.outcome_mean, variance);
    GaussianState conditioned = s;
    conditioned.mean += cross * ((r.outcome - r.outcome_mean) / variance);
    conditioned.cov -= cross * cross.transpose() / variance;
    std::vector<int> keep;
    for (int m = 1; m <= s.n_modes; ++m) {
        if (m != mode) {
            keep.push_back(m);
        }
    }
    r.state = keep.empty() ? GaussianState{0, Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)} : conditioned.select(keep);
    return r;
}

// ---------------------------------------------------------------------------
// Two-mode teleportation gadget

/// Squeezing axes of the ancilla pairs (2, i) and (4, ii).
enum class AncillaOrientation {
    measured_p_output_q,  // modes 2, 4 p-squeezed; i, ii q-squeezed (teleports)
    all_p,                // all four p-squeezed
};

struct GadgetConfig {
    double ancilla_db = 60;
    AncillaOrientation orientation = AncillaOrientation::measured_p_output_q;
};

struct GadgetResult {
    ArchitectureName architecture = ArchitectureName::QRL;
    Angles angles{};
    double ancilla_db = 0;
    GaussianState output;       // on (i, ii), after correction
    GaussianState uncorrected;  // on (i, ii), before correction
    Outcomes raw_outcomes{};
    Outcomes processed_outcomes{};  // outcomes the completed network would give
    Eigen::Vector4d correction = Eigen::Vector4d::Zero();
    double min_uncertainty_margin = INFINITY;  // across every conditioning step
};

namespace detail {

/// Six-mode layout [1, 2, 3, 4, i, ii]; input modes go to 1 and 3.
inline GaussianState gadget_initial_state(const GaussianState &input, const GadgetConfig &cfg) {
    if (input.n_modes != 2) {
        throw DimensionError("gadget: input must be a two-mode state");
    }
    SqueezeAxis output_axis = cfg.orientation == AncillaOrientation::all_p ? SqueezeAxis::p : SqueezeAxis::q;
    GaussianState anc_measured = squeezed_vacuum(cfg.ancilla_db, SqueezeAxis::p);
    GaussianState anc_output = squeezed_vacuum(cfg.ancilla_db, output_axis);
    // built in order [1, 3, 2, 4, i, ii], then permuted
    GaussianState s = tensor(tensor(tensor(input, anc_measured), anc_measured), tensor(anc_output, anc_output));
    s = s.select({1, 3, 2, 4, 5, 6});
    s = apply(beam_splitter(6, 2, 5), s);
    s = apply(beam_splitter(6, 4, 6), s);
    return s;
}

inline SymplecticOp embed_network(const BsNetwork &net, int n) {
    Eigen::MatrixXd o = Eigen::MatrixXd::Identity(n, n);
    o.topLeftCorner(net.n_modes(), net.n_modes()) = to_eigen(net.matrix());
    return passive(o);
}

struct NetworkRun {
    GaussianState output;
    Outcomes outcomes{};
    double min_margin = INFINITY;
};

/// Network on modes 1-4, then p_θ homodynes on modes 1..4 in order.
inline NetworkRun run_network(const BsNetwork &net, const Angles &theta, const GaussianState &input,
                              const GadgetConfig &cfg, OutcomePolicy &policy) {
    GaussianState s = apply(embed_network(net, 6), gadget_initial_state(input, cfg));
    NetworkRun run;
    for (int k = 0; k < 4; ++k) {
        HomodyneResult h = homodyne(s, 1, theta[k], policy);
        run.outcomes[k] = h.outcome;
        s = std::move(h.state);
        run.min_margin = std::min(run.min_margin, s.uncertainty_margin() / std::max(1.0, s.cov.cwiseAbs().maxCoeff()));
    }
    run.output = std::move(s);
    return run;
}

inline GaussianState displaced(GaussianState s, const Eigen::Vector4d &shift) {
    s.mean += shift;
    return s;
}

}  // namespace detail

/// Runs the gadget for the architecture's physical network, post-processes the
/// outcomes of virtually completed networks, and undoes the outcome-dependent
/// displacement.
inline GadgetResult simulate_gadget(ArchitectureName name, const Angles &theta, const GaussianState &input,
                                    OutcomePolicy policy, const GadgetConfig &cfg = {}) {
    TeleportedGate gate = two_mode_gate(name, theta);
    GadgetResult r;
    r.architecture = name;
    r.angles = theta;
    r.ancilla_db = cfg.ancilla_db;
    detail::NetworkRun run = detail::run_network(architecture_network(name), theta, input, cfg, policy);
    r.raw_outcomes = run.outcomes;
    r.processed_outcomes = gate.virtually_completed ? virtual_completion(name).transform_outcomes(run.outcomes)
                                                    : run.outcomes;
    r.correction = -gate.displacement(r.processed_outcomes).shift;
    r.uncorrected = run.output;
    r.output = detail::displaced(run.output, r.correction);
    r.min_uncertainty_margin = run.min_margin;
    return r;
}

/// Angles drawn uniformly, restricted when needed, with both reference pairs
/// kept away from the singular V-gate locus.
inline Angles random_gate_angles(ArchitectureName name, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::optional<VirtualCompletion> vc;
    if (classify_incompleteness(architecture_network(name).matrix()) == Incompleteness::type_a) {
        vc = virtual_completion(name);
    }
    for (;;) {
        Angles th;
        for (double &x : th) {
            x = angle(rng);
        }
        if (vc) {
            th[vc->restriction.mode_b - 1] = th[vc->restriction.mode_a - 1];
        }
        Angles ref = two_mode_gate(name, th).reference_angles;
        if (std::abs(std::sin(ref[0] - ref[1])) > 0.5 && std::abs(std::sin(ref[2] - ref[3])) > 0.5) {
            return th;
        }
    }
}

/// A correlated, displaced two-mode probe state.
inline GaussianState probe_input() {
    GaussianState s = tensor(squeezed_vacuum(3, SqueezeAxis::q), squeezed_vacuum(1.5, SqueezeAxis::p));
    s = apply(beam_splitter(2, 1, 2, 0.4), s);
    s.mean << 0.3, -0.2, 0.5, 0.1;
    return s;
}

/// Output covariance of `name` brought to the reference frame (output parities undone).
inline Eigen::MatrixXd aligned_output_covariance(ArchitectureName name, const Angles &theta, const GaussianState &input,
                                                 double db) {
    TeleportedGate gate = two_mode_gate(name, theta);
    GadgetResult r = simulate_gadget(name, theta, input, OutcomePolicy::fixed({0, 0, 0, 0}), {db});
    Eigen::MatrixXd parity = gate.frame.output_parities().S;
    return parity * r.output.cov * parity.transpose();
}

/// Largest covariance difference between two gadgets implementing the same
/// reference gate, after undoing output parities.
inline double noise_compare(ArchitectureName a, const Angles &theta_a, ArchitectureName b, const Angles &theta_b,
                            double db, const GaussianState &input = probe_input()) {
    TeleportedGate ga = two_mode_gate(a, theta_a);
    TeleportedGate gb = two_mode_gate(b, theta_b);
    for (int k = 0; k < 4; ++k) {
        if (std::abs(ga.reference_angles[k] - gb.reference_angles[k]) > 1e-12) {
            throw PreconditionError("noise_compare: angle sets do not map to the same reference angles");
        }
        if (ga.frame.input_parity != gb.frame.input_parity) {
            throw PreconditionError("noise_compare: input parities differ");
        }
    }
    return (aligned_output_covariance(a, theta_a, input, db) - aligned_output_covariance(b, theta_b, input, db))
        .cwiseAbs()
        .maxCoeff();
}

struct VirtualCompletionReport {
    ArchitectureName incomplete = ArchitectureName::BSL;
    ArchitectureName completed = ArchitectureName::cBSL;
    Outcomes raw_outcomes{};
    Outcomes transformed_outcomes{};
    GaussianState virtual_output;
    GaussianState physical_output;
    double mean_deviation = 0;
    double cov_deviation = 0;
    bool pass(double tol = 1e-9) const { return mean_deviation <= tol && cov_deviation <= tol; }
};

/// The incomplete network with post-processed outcomes versus the physically
/// completed network conditioned on the transformed outcomes.
inline VirtualCompletionReport virtual_completion_experiment(ArchitectureName incomplete, const Angles &theta, double db,
                                                             uint64_t seed, const GaussianState &input = probe_input()) {
    VirtualCompletion vc = virtual_completion(incomplete);
    vc.check_angles(theta);
    VirtualCompletionReport rep;
    rep.incomplete = incomplete;
    rep.completed = vc.completed;
    GadgetResult virt = simulate_gadget(incomplete, theta, input, OutcomePolicy::sample(seed), {db});
    rep.raw_outcomes = virt.raw_outcomes;
    rep.transformed_outcomes = virt.processed_outcomes;
    const auto &t = rep.transformed_outcomes;
    GadgetResult phys =
        simulate_gadget(vc.completed, theta, input, OutcomePolicy::fixed({t[0], t[1], t[2], t[3]}), {db});
    rep.virtual_output = virt.output;
    rep.physical_output = phys.output;
    rep.mean_deviation = (virt.output.mean - phys.output.mean).cwiseAbs().maxCoeff();
    rep.cov_deviation = (virt.output.cov - phys.output.cov).cwiseAbs().maxCoeff();
    return rep;
}

/// Linear part of input mean -> corrected output mean, outcomes fixed at zero.
inline Eigen::Matrix4d extract_linear_map(ArchitectureName name, const Angles &theta, double db = 60) {
    auto output_mean = [&](const Eigen::Vector4d &m) {
        GaussianState in = GaussianState::vacuum(2);
        in.mean = m;
        return simulate_gadget(name, theta, in, OutcomePolicy::fixed({0, 0, 0, 0}), {db}).output.mean;
    };
    Eigen::Vector4d base = output_mean(Eigen::Vector4d::Zero());
    Eigen::Matrix4d map;
    for (int k = 0; k < 4; ++k) {
        map.col(k) = output_mean(Eigen::Vector4d::Unit(k)) - base;
    }
    return map;
}

}  // namespace cvcluster
