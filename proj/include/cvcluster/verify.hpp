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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvcluster/bs_network.hpp"
#include "cvcluster/cluster_zoo.hpp"
#include "cvcluster/gauss_gates.hpp"
#include "cvcluster/gauss_sim.hpp"
#include "cvcluster/hadamard.hpp"

namespace cvcluster {

using json = nlohmann::ordered_json;

/// Rounds to 1e-12 so that printed reports are stable across platforms.
inline double report_number(double x) {
    if (!std::isfinite(x) || std::abs(x) >= 1e6) {
        return x;
    }
    double r = std::round(x * 1e12) / 1e12;
    return r == 0 ? 0.0 : r;
}

inline json to_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(report_number(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const Eigen::VectorXd &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(report_number(v(i)));
    }
    return out;
}

inline json to_json(const std::array<double, 4> &a) {
    json out = json::array();
    for (double x : a) {
        out.push_back(report_number(x));
    }
    return out;
}

inline json to_json(const ExactMatrix &m) { return m.to_string_rows(); }

inline json to_json(const GaussianState &s) {
    return {{"modes", s.n_modes}, {"mean", to_json(s.mean)}, {"cov", to_json(s.cov)}};
}

inline json to_json(const GadgetResult &r) {
    return {{"architecture", to_string(r.architecture)},
            {"angles", to_json(r.angles)},
            {"db", report_number(r.ancilla_db)},
            {"raw_outcomes", to_json(r.raw_outcomes)},
            {"processed_outcomes", to_json(r.processed_outcomes)},
            {"correction", to_json(Eigen::VectorXd(r.correction))},
            {"output", to_json(r.output)}};
}

inline json to_json(const TeleportedGate &g) {
    json frame = {{"slot", g.frame.slot},
                  {"outcome_sign", g.frame.outcome_sign},
                  {"output_parity", g.frame.output_parity},
                  {"input_parity", g.frame.input_parity}};
    return {{"architecture", to_string(g.architecture)},
            {"realized_by", to_string(g.realized)},
            {"virtually_completed", g.virtually_completed},
            {"angles", to_json(g.angles)},
            {"reference_angles", to_json(g.reference_angles)},
            {"frame", frame},
            {"symplectic", to_json(g.gate.S)},
            {"displacement_rule",
             "shift = √2·(Re o1, Re o2, Im o1, Im o2) with o1 = (μ12+μ34)/√2, o2 = (μ34-μ12)/√2, "
             "μ = -(m_a e^{iθ_b} + m_b e^{iθ_a})/sin(θ_a-θ_b) per reference pair; correction = -shift"}};
}

// ---------------------------------------------------------------------------
// Verification subjects

struct Check {
    std::string name;
    json expected;
    json actual;
    bool pass = false;
};

struct SubjectReport {
    SubjectReport() = default;
    explicit SubjectReport(std::string name) : subject(std::move(name)) {}

    std::string subject;
    std::vector<Check> checks;
    json summary = json::object();
    double seconds = 0;  // excluded from determinism comparisons

    bool pass() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
    }

    void expect_equal(std::string name, const json &expected, const json &actual) {
        checks.push_back({std::move(name), expected, actual, expected == actual});
    }
    void expect_true(std::string name, bool value) { expect_equal(std::move(name), true, value); }
    void expect_at_most(std::string name, double value, double tol) {
        checks.push_back({std::move(name), json{{"max", tol}}, report_number(value), value <= tol});
    }
    void expect_at_least(std::string name, double value, double bound) {
        checks.push_back({std::move(name), json{{"min", bound}}, report_number(value), value >= bound});
    }

    json to_json() const {
        json cs = json::array();
        for (const auto &c : checks) {
            cs.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        }
        return {{"subject", subject}, {"pass", pass()}, {"summary", summary}, {"checks", cs}};
    }
};

struct VerifyOptions {
    std::vector<double> noise_db{5, 10, 15};
    size_t grid = 9;                // completion scan, points per angle
    size_t random_samples = 10000;  // completion scan, random angle vectors
    size_t swap_grid = 49;
    size_t random_angle_sets = 20;  // linear-map cross-check, per architecture
    double tol = 0;                 // 0: each check uses its own default
    uint64_t seed = 2026;

    double tol_or(double fallback) const { return tol > 0 ? tol : fallback; }
};

inline const std::vector<std::string> &verify_subjects() {
    static const std::vector<std::string> s{"theorem1",  "theorem2",  "census", "equivalences", "dictionary",
                                            "identities", "euler", "appendixD",  "insertion",    "noise"};
    return s;
}

namespace detail {

/// Entry (a + b√2)/2 given as integer pairs {a, b}.
inline ExactMatrix half_matrix(std::initializer_list<std::initializer_list<std::pair<int64_t, int64_t>>> rows) {
    std::vector<std::vector<ExactScalar>> out;
    for (const auto &r : rows) {
        std::vector<ExactScalar> row;
        for (auto [a, b] : r) {
            row.push_back(ExactScalar::from_parts(a, b, 2));
        }
        out.push_back(std::move(row));
    }
    return ExactMatrix::from_rows(out);
}

}  // namespace detail

/// Documented coupling matrices of the nine architectures.
inline ExactMatrix documented_architecture_matrix(ArchitectureName name) {
    using A = ArchitectureName;
    using detail::half_matrix;
    constexpr std::pair<int64_t, int64_t> p{1, 0}, m{-1, 0}, z{0, 0}, s{0, 1}, t{0, -1};
    switch (name) {
        case A::QRL:
            return half_matrix({{p, m, m, p}, {p, p, m, m}, {p, m, p, m}, {p, p, p, p}});
        case A::BSL:
            return half_matrix({{s, t, z, z}, {p, p, m, p}, {p, p, p, m}, {z, z, s, s}});
        case A::cBSL:
        case A::cMSG:
            return half_matrix({{p, m, m, m}, {p, p, m, p}, {p, p, p, m}, {p, m, p, p}});
        case A::DBSL:
            return half_matrix({{s, t, z, z}, {p, p, p, m}, {m, m, p, m}, {z, z, s, s}});
        case A::cDBSL:
            return half_matrix({{p, m, m, m}, {p, p, p, m}, {m, m, p, m}, {p, m, p, p}});
        case A::MSG:
            return half_matrix({{p, m, m, m}, {s, s, z, z}, {z, z, s, t}, {p, m, p, p}});
        case A::MBSL:
            return half_matrix({{s, z, p, m}, {z, s, p, p}, {z, t, p, p}, {s, z, m, p}});
        case A::cMBSL:
            return half_matrix({{p, m, p, m}, {p, p, p, p}, {m, m, p, p}, {p, m, m, p}});
    }
    throw std::invalid_argument("unknown architecture");
}

/// Documented MBSL residual, entries over 2√2.
inline ExactMatrix documented_mbsl_residual() {
    auto e = [](int64_t a, int64_t b) { return ExactScalar::from_parts(a, b, 3); };
    return ExactMatrix::from_rows({{e(1, 1), e(1, -1), e(-1, 0), e(-1, 0)},
                                   {e(1, -1), e(1, 1), e(-1, 0), e(-1, 0)},
                                   {e(1, 0), e(1, 0), e(1, 1), e(1, -1)},
                                   {e(1, 0), e(1, 0), e(1, -1), e(1, 1)}});
}

inline SubjectReport verify_hadamard_class(const VerifyOptions &opt = {}) {
    SubjectReport r{"theorem1"};
    std::vector<Hadamard4> all = enumerate_hadamard4();
    std::vector<Hadamard4> generated = generate_class(Hadamard4::seed());
    size_t even = 0;
    size_t odd = 0;
    for (const auto &h : all) {
        auto p = row_parity(h);
        bool all_even = std::all_of(p.begin(), p.end(), [](Parity x) { return x == Parity::even; });
        bool all_odd = std::all_of(p.begin(), p.end(), [](Parity x) { return x == Parity::odd; });
        even += all_even ? 1 : 0;
        odd += all_odd ? 1 : 0;
    }
    r.expect_equal("brute-force order-4 Hadamard count", 768, all.size());
    r.expect_equal("order-2 Hadamard count", 8, count_hadamard2());
    r.expect_true("generated class equals brute-force set", generated == all);
    r.expect_equal("row orbit of seed", 384, row_orbit(Hadamard4::seed()).size());
    r.expect_equal("even-parity members", 384, even);
    r.expect_equal("odd-parity members", 384, odd);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> column(1, 4);
    size_t agree = 0;
    for (int k = 0; k < 10; ++k) {
        agree += generate_class(all[pick(rng)], column(rng)) == all ? 1 : 0;
    }
    r.expect_equal("random seeds regenerate the class", 10, agree);
    r.summary = {{"class_size", generated.size()}, {"even", even}, {"odd", odd}};
    return r;
}

inline SubjectReport verify_balance_subject(const VerifyOptions & = {}) {
    SubjectReport r{"theorem2"};
    BalanceEquivalenceReport t = verify_balance_equivalence();
    r.expect_equal("candidate sequences", 20736, t.candidate_count);
    r.expect_equal("counterexamples", 0, t.counterexamples.size());
    r.expect_equal("balanced == conditions", t.candidate_count, t.agreement_count);
    r.expect_equal("balanced count", t.condition_pass_count, t.balanced_count);
    r.summary = {{"candidates", t.candidate_count},
                 {"balanced", t.balanced_count},
                 {"conditions_hold", t.condition_pass_count},
                 {"counterexamples", t.counterexamples.size()}};
    return r;
}

inline SubjectReport verify_census(const VerifyOptions & = {}) {
    SubjectReport r{"census"};
    CensusReport c = physical_census();
    size_t mult2 = c.multiplicity_histogram.count(2) ? c.multiplicity_histogram.at(2) : 0;
    size_t mult3 = c.multiplicity_histogram.count(3) ? c.multiplicity_histogram.at(3) : 0;
    r.expect_equal("physical networks", 96, c.physical_class_count);
    r.expect_equal("distinct matrices", 40, c.distinct_matrix_count);
    r.expect_equal("matrices with 2 networks", 24, mult2);
    r.expect_equal("matrices with 3 networks", 16, mult3);
    r.expect_equal("histogram has no other multiplicity", 2, c.multiplicity_histogram.size());
    r.expect_true("histogram consistent with totals", c.consistent());
    RealizationCensus rc = realization_census();
    r.expect_equal("constructed optical networks", 73728, rc.total_networks);
    r.expect_equal("four-splitters realized", 768, rc.realizations.size());
    r.expect_true("every four-splitter realized equally often", rc.uniform());
    r.expect_equal("realizations per four-splitter", 96,
                   rc.realizations.empty() ? 0 : rc.realizations.begin()->second);
    r.summary = {{"physical", c.physical_class_count},
                 {"matrices", c.distinct_matrix_count},
                 {"mult2", mult2},
                 {"mult3", mult3},
                 {"realizations", rc.total_networks}};
    return r;
}

inline SubjectReport verify_equivalences(const VerifyOptions & = {}) {
    using A = ArchitectureName;
    SubjectReport r{"equivalences"};
    for (A a : kAllArchitectures) {
        r.expect_true(std::string(to_string(a)) + " matrix matches documented form",
                      architecture_network(a).matrix() == documented_architecture_matrix(a));
    }
    ExactMatrix qrl = architecture_network(A::QRL).matrix();
    ExactMatrix p14 = transposition_matrix(4, 1, 4);
    ExactMatrix p23 = transposition_matrix(4, 2, 3);
    ExactMatrix p34 = transposition_matrix(4, 3, 4);
    ExactMatrix m3 = negation_matrix(4, 3);
    ExactMatrix m4 = negation_matrix(4, 4);
    auto mat = [](A a) { return architecture_network(a).matrix(); };
    r.expect_true("P34·R_QRL·M4 = R_cBSL", p34 * qrl * m4 == mat(A::cBSL));
    r.expect_true("M3·P23·P34·R_QRL·M4 = R_cDBSL", m3 * p23 * p34 * qrl * m4 == mat(A::cDBSL));
    r.expect_true("M3·P14·P23·P34·R_QRL = R_cMBSL", m3 * p14 * p23 * p34 * qrl == mat(A::cMBSL));
    r.expect_true("R_cMSG = R_cBSL", mat(A::cMSG) == mat(A::cBSL));
    json classes = json::object();
    for (A a : kAllArchitectures) {
        classes[std::string(to_string(a))] = std::string(to_string(classify_incompleteness(mat(a))));
    }
    r.expect_equal("incompleteness classes", json({{"QRL", "complete"},
                                                   {"BSL", "a"},
                                                   {"cBSL", "complete"},
                                                   {"DBSL", "a"},
                                                   {"cDBSL", "complete"},
                                                   {"MSG", "a"},
                                                   {"cMSG", "complete"},
                                                   {"MBSL", "b"},
                                                   {"cMBSL", "complete"}}),
                   classes);
    ResidualAnalysis res = residual_analysis(A::MBSL, A::cMBSL);
    r.expect_equal("MBSL residual zero entries", 0, res.zero_entry_count);
    auto perms = conjugating_permutations(res.residual, documented_mbsl_residual());
    r.expect_true("MBSL residual matches documented form up to a signed permutation", !perms.empty());
    r.summary = {{"incompleteness", classes}, {"residual_permutations", perms.size()}};
    return r;
}

inline SubjectReport verify_dictionary_subject(const VerifyOptions &opt = {}) {
    SubjectReport r{"dictionary"};
    DictionaryReport d = verify_dictionary(opt.tol_or(1e-10), opt.swap_grid);
    double worst = 0;
    for (const auto &c : d.checks) {
        worst = std::max(worst, c.max_deviation);
        r.checks.push_back({dictionary_label(c.entry.architecture) + " " + c.entry.target_name + " at " +
                                c.entry.angle_text,
                            json{{"max", d.tolerance}}, report_number(c.max_deviation), c.pass});
    }
    for (const auto &m : d.mappings) {
        r.checks.push_back({dictionary_label(m.architecture) + " mapping of " + m.reference_row,
                            json{{"compatible", m.compatible}}, report_number(m.max_deviation), m.pass});
    }
    for (const auto &s : d.swap_searches) {
        r.expect_at_least(dictionary_label(s.architecture) + " has no SWAP within its restriction",
                          s.min_diagonal_block, 1e-6);
    }
    r.summary = {{"entries", d.checks.size()}, {"mappings", d.mappings.size()}, {"max_deviation", report_number(worst)}};
    return r;
}

inline SubjectReport verify_identities(const VerifyOptions &opt = {}) {
    SubjectReport r{"identities"};
    for (const auto &c : verify_circuit_identities(opt.tol_or(1e-12))) {
        r.checks.push_back({c.name + (c.parameters.empty() ? "" : " [" + c.parameters + "]"),
                            json{{"max", c.tolerance}}, report_number(c.max_deviation), c.pass()});
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0;
    size_t drawn = 0;
    while (drawn < 1000) {
        double a = angle(rng);
        double b = angle(rng);
        if (std::abs(std::sin(a - b)) < 1e-6) {
            continue;
        }
        worst = std::max(worst, v_gate_forms(a, b).spread());
        ++drawn;
    }
    r.expect_at_most("three V-gate forms agree on 1000 random pairs", worst, opt.tol_or(1e-10));
    r.summary = {{"identities", r.checks.size() - 1}, {"v_form_spread", report_number(worst)}};
    return r;
}

inline SubjectReport verify_euler(const VerifyOptions &opt = {}) {
    SubjectReport r{"euler"};
    for (const auto &c : verify_circuit_identities(opt.tol_or(1e-12))) {
        if (c.name.find("R_z(γ)") != std::string::npos || c.name.find("balanced pair") != std::string::npos) {
            r.checks.push_back({c.name + (c.parameters.empty() ? "" : " [" + c.parameters + "]"),
                                json{{"max", c.tolerance}}, report_number(c.max_deviation), c.pass()});
        }
    }
    EulerAngles e = euler_decompose(rotation_x(std::numbers::pi / 4) * rotation_z(std::numbers::pi / 4));
    r.summary = {{"alpha", report_number(e.alpha)}, {"beta", report_number(e.beta)}, {"gamma", report_number(e.gamma)}};
    return r;
}

inline SubjectReport verify_completion_scan(const VerifyOptions &opt = {}) {
    SubjectReport r{"appendixD"};
    ResidualAnalysis res = residual_analysis(ArchitectureName::MBSL, ArchitectureName::cMBSL);
    CompletionScanReport s =
        no_virtual_completion_scan(res.residual, opt.grid, opt.tol_or(1e-6), opt.random_samples, opt.seed);
    r.expect_equal("falsifying angle vectors", 0, s.falsifying.size());
    r.expect_at_most("trivial family stays diagonal", s.trivial_family_max, s.tolerance);
    r.expect_at_least("smallest off-diagonal over non-trivial vectors", s.min_offdiagonal, s.tolerance);
    r.summary = {{"grid_vectors", s.grid_vectors_checked},
                 {"random_vectors", s.random_vectors_checked},
                 {"min_offdiagonal", report_number(s.min_offdiagonal)},
                 {"argmin", to_json(s.argmin)}};
    return r;
}

inline SubjectReport verify_insertion(const VerifyOptions & = {}) {
    SubjectReport r{"insertion"};
    r.expect_true("Bell-pair insertion leaves the network unchanged", bell_pair_insertion_identity(true));
    r.expect_true("dropping the cancelling splitter breaks the identity", !bell_pair_insertion_identity(false));
    auto [full, simplified] = insertion_networks(true);
    r.summary = {{"full", full.str()}, {"simplified", simplified.str()}};
    return r;
}

inline SubjectReport verify_noise(const VerifyOptions &opt = {}) {
    using A = ArchitectureName;
    SubjectReport r{"noise"};
    double tol = opt.tol_or(1e-9);
    double worst = 0;
    size_t pairs = 0;
    for (const auto &e : dictionary_entries()) {
        if (e.architecture == A::QRL || e.reference_row.empty()) {
            continue;
        }
        Angles ref = e.angles;
        for (const auto &row : reference_rows()) {
            if (row.name == e.reference_row) {
                ref = row.angles;
            }
        }
        A completed = virtual_completion(e.architecture).completed;
        for (double db : opt.noise_db) {
            double d = std::max(noise_compare(A::QRL, ref, e.architecture, e.angles, db),
                                noise_compare(completed, e.angles, e.architecture, e.angles, db));
            worst = std::max(worst, d);
            ++pairs;
        }
    }
    r.expect_at_most("mapped pairs share output covariance", worst, tol);
    std::mt19937_64 rng(opt.seed);
    double vc_worst = 0;
    for (A a : {A::BSL, A::DBSL, A::MSG}) {
        for (int k = 0; k < 3; ++k) {
            Angles th = random_gate_angles(a, rng);
            for (double db : opt.noise_db) {
                VirtualCompletionReport v = virtual_completion_experiment(a, th, db, rng());
                vc_worst = std::max({vc_worst, v.mean_deviation, v.cov_deviation});
            }
        }
    }
    r.expect_at_most("virtual completion matches physical completion", vc_worst, tol);
    bool refused = false;
    try {
        simulate_gadget(A::MBSL, {0.1, 0.2, 0.3, 0.4}, probe_input(), OutcomePolicy::sample(opt.seed));
    } catch (const TypeBCompletionError &) {
        refused = true;
    }
    r.expect_true("MBSL virtual completion refused", refused);
    double map_worst = 0;
    for (A a : {A::QRL, A::BSL, A::cBSL, A::DBSL, A::cDBSL, A::MSG, A::cMSG, A::cMBSL}) {
        for (size_t k = 0; k < opt.random_angle_sets; ++k) {
            Angles th = random_gate_angles(a, rng);
            map_worst = std::max(map_worst, (extract_linear_map(a, th, 60) - two_mode_gate(a, th).gate.S)
                                                .cwiseAbs()
                                                .maxCoeff());
        }
    }
    r.expect_at_most("60 dB linear map matches the teleported gate", map_worst, 1e-4);
    r.summary = {{"mapped_pairs", pairs},
                 {"max_cov_deviation", report_number(worst)},
                 {"virtual_completion_deviation", report_number(vc_worst)},
                 {"linear_map_deviation", report_number(map_worst)}};
    return r;
}

inline SubjectReport verify_subject(const std::string &subject, const VerifyOptions &opt = {}) {
    static const std::map<std::string, std::function<SubjectReport(const VerifyOptions &)>> table{
        {"theorem1", verify_hadamard_class},       {"theorem2", verify_balance_subject},
        {"census", verify_census},           {"equivalences", verify_equivalences},
        {"dictionary", verify_dictionary_subject}, {"identities", verify_identities},
        {"euler", verify_euler},             {"appendixD", verify_completion_scan},
        {"insertion", verify_insertion},     {"noise", verify_noise},
    };
    auto it = table.find(subject);
    if (it == table.end()) {
        throw std::invalid_argument("unknown subject: " + subject);
    }
    auto start = std::chrono::steady_clock::now();
    SubjectReport r = it->second(opt);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace cvcluster
