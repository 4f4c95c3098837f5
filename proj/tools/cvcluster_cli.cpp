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

// Command-line front end: verification subjects, gate queries, gadget runs.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvcluster/cvcluster.hpp"

namespace {

using namespace cvcluster;

constexpr const char *kVersion = "0.1.0";

enum ExitCode { kPass = 0, kVerificationFailure = 1, kUsage = 2, kPrecondition = 3 };

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Recursive-descent evaluator for angle expressions such as "pi/2-chi".
class AngleParser {
   public:
    explicit AngleParser(std::string text) : text_(std::move(text)) {}

    double parse() {
        double v = sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + text_.substr(pos_) + "'");
        }
        return v;
    }

   private:
    double sum() {
        double v = product();
        for (;;) {
            if (accept('+')) {
                v += product();
            } else if (accept('-')) {
                v -= product();
            } else {
                return v;
            }
        }
    }
    double product() {
        double v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                double d = unary();
                if (d == 0) {
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }
    double unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return atom();
    }
    double atom() {
        skip_space();
        if (accept('(')) {
            double v = sum();
            if (!accept(')')) {
                fail("missing ')'");
            }
            return v;
        }
        for (auto [name, value] : {std::pair<std::string, double>{"pi", std::numbers::pi}, {"π", std::numbers::pi},
                                   {"chi", kChi}, {"χ", kChi}}) {
            if (text_.compare(pos_, name.size(), name) == 0) {
                pos_ += name.size();
                return value;
            }
        }
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(text_.substr(pos_), &used);
        } catch (const std::exception &) {
            fail("expected a number, pi or chi");
        }
        pos_ += used;
        return v;
    }
    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    [[noreturn]] void fail(const std::string &why) const {
        throw UsageError("cannot parse angle '" + text_ + "': " + why);
    }

    std::string text_;
    size_t pos_ = 0;
};

Angles parse_angles(const std::vector<std::string> &texts) {
    if (texts.size() != 4) {
        throw UsageError("expected four angles, got " + std::to_string(texts.size()));
    }
    Angles a{};
    for (size_t i = 0; i < 4; ++i) {
        a[i] = AngleParser(texts[i]).parse();
    }
    return a;
}

struct ArchitectureArg {
    ArchitectureName name = ArchitectureName::QRL;
    bool virtual_alias = false;  // given as vcBSL etc.
};

ArchitectureArg parse_architecture_arg(const std::string &text) {
    bool alias = text.rfind("vc", 0) == 0;
    std::optional<ArchitectureName> name = parse_architecture(alias ? text.substr(2) : text);
    if (!name) {
        throw UsageError("unknown architecture '" + text + "'");
    }
    if (alias && classify_incompleteness(architecture_network(*name).matrix()) == Incompleteness::complete) {
        throw UsageError("'" + text + "' is not an incomplete architecture");
    }
    return {*name, alias};
}

json manifest(const std::string &command, const json &parameters, std::optional<uint64_t> seed, bool pass,
              double seconds) {
    return {{"command", command},
            {"parameters", parameters},
            {"seed", seed ? json(*seed) : json(nullptr)},
            {"version", kVersion},
            {"pass", pass},
            {"timing", {{"seconds", seconds}}}};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_json(const json &j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string subject;
    bool json_output = false;
    std::optional<double> db;
    std::optional<size_t> grid;
    std::optional<double> tol;
    std::optional<uint64_t> seed;
};

int run_verify(const VerifyArgs &args) {
    auto start = std::chrono::steady_clock::now();
    VerifyOptions opt;
    if (args.db) {
        opt.noise_db = {*args.db};
    }
    if (args.grid) {
        opt.grid = *args.grid;
    }
    if (args.tol) {
        opt.tol = *args.tol;
    }
    if (args.seed) {
        opt.seed = *args.seed;
    }
    std::vector<std::string> subjects;
    if (args.subject == "all") {
        subjects = verify_subjects();
    } else if (std::find(verify_subjects().begin(), verify_subjects().end(), args.subject) != verify_subjects().end()) {
        subjects = {args.subject};
    } else {
        throw UsageError("unknown subject '" + args.subject + "'");
    }
    json reports = json::array();
    bool pass = true;
    for (const auto &s : subjects) {
        SubjectReport r = verify_subject(s, opt);
        pass = pass && r.pass();
        if (args.json_output) {
            reports.push_back(r.to_json());
        } else {
            std::cout << (r.pass() ? "[PASS] " : "[FAIL] ") << s << " " << r.summary.dump() << "\n";
            for (const auto &c : r.checks) {
                if (!c.pass) {
                    std::cout << "    failed: " << c.name << " expected " << c.expected.dump() << " actual "
                              << c.actual.dump() << "\n";
                }
            }
        }
    }
    if (args.json_output) {
        json params = {{"subject", args.subject},
                       {"noise_db", opt.noise_db},
                       {"grid", opt.grid},
                       {"tol", opt.tol}};
        print_json({{"manifest", manifest("verify", params, opt.seed, pass, seconds_since(start))},
                    {"reports", reports}});
    }
    return pass ? kPass : kVerificationFailure;
}

/// Dictionary targets the gate equals, allowing a parity on mode 2.
json gate_matches(const SymplecticOp &gate, double tol) {
    json matches = json::array();
    SymplecticOp f2 = local(2, 2, parity_block());
    std::vector<std::pair<std::string, SymplecticOp>> targets;
    for (const auto &row : reference_rows()) {
        targets.emplace_back(row.name, row.target);
    }
    targets.emplace_back("[F⊗F†]CZ(1)[F†⊗F]", fourier_dressed_cz());
    for (const auto &[name, target] : targets) {
        if (max_deviation(gate, target) <= tol) {
            matches.push_back(name);
        } else if (max_deviation(gate, f2 * target) <= tol) {
            matches.push_back(name + " up to F² on mode 2");
        }
    }
    return matches;
}

int run_gate(const std::string &arch_text, const std::vector<std::string> &angle_texts, double tol, bool virtual_flag) {
    auto start = std::chrono::steady_clock::now();
    ArchitectureArg arch = parse_architecture_arg(arch_text);
    Angles theta = parse_angles(angle_texts);
    Incompleteness kind = classify_incompleteness(architecture_network(arch.name).matrix());
    if (kind == Incompleteness::type_b && (virtual_flag || arch.virtual_alias)) {
        virtual_completion(arch.name);  // throws the type (b) refusal
    }
    TeleportedGate gate = two_mode_gate(arch.name, theta);
    json matches = gate_matches(gate.gate, tol);
    json params = {{"architecture", arch_text}, {"angles", to_json(theta)}, {"tol", tol}};
    print_json({{"manifest", manifest("gate", params, std::nullopt, true, seconds_since(start))},
                {"gate", to_json(gate)},
                {"matches", matches}});
    return kPass;
}

struct SimulateArgs {
    std::string architecture;
    std::vector<std::string> angles;
    double db = 60;
    uint64_t seed = 2026;
    std::vector<double> fixed;
    std::string input = "probe";
    bool all_p = false;
    bool virtual_flag = false;
};

int run_simulate(const SimulateArgs &args) {
    auto start = std::chrono::steady_clock::now();
    ArchitectureArg arch = parse_architecture_arg(args.architecture);
    Angles theta = parse_angles(args.angles);
    Incompleteness kind = classify_incompleteness(architecture_network(arch.name).matrix());
    bool wants_virtual = args.virtual_flag || arch.virtual_alias;
    if (kind != Incompleteness::complete) {
        if (!wants_virtual) {
            throw PreconditionError(std::string(to_string(arch.name)) +
                                    " is incomplete; pass --virtual to complete it by restricting measurements");
        }
        virtual_completion(arch.name);  // throws for type (b)
    }
    GaussianState input;
    if (args.input == "probe") {
        input = probe_input();
    } else if (args.input == "vacuum") {
        input = GaussianState::vacuum(2);
    } else {
        throw UsageError("unknown input '" + args.input + "' (probe or vacuum)");
    }
    if (!args.fixed.empty() && args.fixed.size() != 4) {
        throw UsageError("--fixed takes four outcomes");
    }
    OutcomePolicy policy = args.fixed.empty() ? OutcomePolicy::sample(args.seed) : OutcomePolicy::fixed(args.fixed);
    GadgetConfig cfg{args.db, args.all_p ? AncillaOrientation::all_p : AncillaOrientation::measured_p_output_q};
    GadgetResult r = simulate_gadget(arch.name, theta, input, policy, cfg);
    json params = {{"architecture", args.architecture},
                   {"angles", to_json(theta)},
                   {"db", args.db},
                   {"input", args.input},
                   {"outcomes", args.fixed.empty() ? "sampled" : "fixed"},
                   {"ancillas", args.all_p ? "all_p" : "measured_p_output_q"}};
    json record = to_json(r);
    record["seed"] = args.fixed.empty() ? json(args.seed) : json(nullptr);
    record["uncertainty_ok"] = r.min_uncertainty_margin >= -1e-10;
    print_json({{"manifest", manifest("simulate", params, args.fixed.empty() ? std::optional<uint64_t>(args.seed)
                                                                             : std::nullopt,
                                      true, seconds_since(start))},
                {"run", record}});
    return kPass;
}

int run_zoo(bool csv) {
    auto start = std::chrono::steady_clock::now();
    if (csv) {
        std::cout << "architecture,network,incompleteness,completion,restriction\n";
    }
    json archs = json::array();
    for (const auto &a : architecture_registry()) {
        ExactMatrix m = a.network.matrix();
        std::string kind(to_string(classify_incompleteness(m)));
        std::string completion = a.completion ? std::string(to_string(a.completion->completed)) : "";
        std::string restriction = a.restriction ? a.restriction->str() : "";
        if (csv) {
            std::cout << to_string(a.name) << ",\"" << a.network.str() << "\"," << kind << "," << completion << ","
                      << restriction << "\n";
            continue;
        }
        json entry = {{"name", to_string(a.name)},
                      {"network", a.network.str()},
                      {"matrix", to_json(m)},
                      {"incompleteness", kind},
                      {"completion", completion},
                      {"restriction", restriction},
                      {"notes", a.notes}};
        if (classify_incompleteness(m) == Incompleteness::complete) {
            entry["qrl_decomposition"] = qrl_decomposition(a.name).expression;
        }
        archs.push_back(entry);
    }
    if (!csv) {
        print_json({{"manifest", manifest("zoo", json::object(), std::nullopt, true, seconds_since(start))},
                    {"architectures", archs}});
    }
    return kPass;
}

int run_hadamard(bool csv) {
    auto start = std::chrono::steady_clock::now();
    RealizationCensus rc = realization_census();
    if (csv) {
        std::cout << "signs,row_parity,realizations\n";
    }
    json rows = json::array();
    for (const auto &[h, count] : rc.realizations) {
        auto p = row_parity(h);
        std::string parity = p[0] == Parity::even ? "even" : "odd";
        if (csv) {
            std::cout << h.sign_string() << "," << parity << "," << count << "\n";
        } else {
            rows.push_back({{"signs", h.sign_string()}, {"row_parity", parity}, {"realizations", count}});
        }
    }
    if (!csv) {
        print_json({{"manifest", manifest("hadamard", json::object(), std::nullopt, rc.uniform(),
                                          seconds_since(start))},
                    {"total_networks", rc.total_networks},
                    {"hadamards", rows}});
    }
    return kPass;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"cvcluster: cluster-state beam-splitter networks and their Gaussian gates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    VerifyArgs verify_args;
    auto *verify = app.add_subcommand("verify", "run a verification subject (or 'all')");
    verify->add_option("subject", verify_args.subject, "subject name or 'all'")->required();
    verify->add_flag("--json", verify_args.json_output, "print the JSON report");
    verify->add_option("--db", verify_args.db, "squeezing for the noise subject, dB");
    verify->add_option("--grid", verify_args.grid, "grid points per angle for the completion scan");
    verify->add_option("--tol", verify_args.tol, "override check tolerances");
    verify->add_option("--seed", verify_args.seed, "random seed");

    std::string gate_arch;
    std::vector<std::string> gate_angles;
    double gate_tol = 1e-6;
    bool gate_virtual = false;
    auto *gate = app.add_subcommand("gate", "teleported two-mode gate for an architecture");
    gate->add_option("architecture", gate_arch, "QRL, BSL, cBSL, ..., or vcBSL/vcDBSL/vcMSG")->required();
    gate->add_option("angles", gate_angles, "four homodyne angles; pi and chi allowed")->required()->expected(4);
    gate->add_option("--tol", gate_tol, "tolerance for dictionary matches");
    gate->add_flag("--virtual", gate_virtual, "complete an incomplete architecture virtually");

    SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "Gaussian simulation of the teleportation gadget");
    simulate->add_option("architecture", sim.architecture)->required();
    simulate->add_option("angles", sim.angles)->required()->expected(4);
    simulate->add_option("--db", sim.db, "ancilla squeezing, dB");
    simulate->add_option("--seed", sim.seed, "seed for sampled outcomes");
    simulate->add_option("--fixed", sim.fixed, "use these four outcomes instead of sampling")->expected(4);
    simulate->add_option("--input", sim.input, "probe or vacuum");
    simulate->add_flag("--all-p", sim.all_p, "p-squeeze the output ancillas as well");
    simulate->add_flag("--virtual", sim.virtual_flag, "complete an incomplete architecture virtually");

    bool zoo_csv = false;
    auto *zoo = app.add_subcommand("zoo", "architectures, matrices and completions");
    zoo->add_flag("--csv", zoo_csv, "CSV instead of JSON");

    bool had_csv = false;
    auto *hadamard = app.add_subcommand("hadamard", "order-4 Hadamards and their realization counts");
    hadamard->add_flag("--csv", had_csv, "CSV instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) {
            return run_verify(verify_args);
        }
        if (*gate) {
            return run_gate(gate_arch, gate_angles, gate_tol, gate_virtual);
        }
        if (*simulate) {
            return run_simulate(sim);
        }
        if (*zoo) {
            return run_zoo(zoo_csv);
        }
        if (*hadamard) {
            return run_hadamard(had_csv);
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError &e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    }
    return kUsage;
}
