// Copyright 2026 The Epiphase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: verify, enumerate, decompose, classify-qubit.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "epiphase/qubit.h"
#include "epiphase/serialize.h"
#include "epiphase/verify.h"

namespace {

using epiphase::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int d = 2;
    double tol = epiphase::kDefaultTolerance;
    std::uint64_t seed = 1;
    int trials = 100;
    int max_chain = 2;
    std::string output = "text";
};

// Layers: defaults < config file < EPIPHASE_TOL < flags.
struct ConfigFlags {
    std::string config_path;
    int d = 2;
    double tol = 0.0;
    std::uint64_t seed = 1;
    int trials = 100;
    int max_chain = 2;
    std::string output = "text";
    CLI::Option *d_opt = nullptr;
    CLI::Option *tol_opt = nullptr;
    CLI::Option *seed_opt = nullptr;
    CLI::Option *trials_opt = nullptr;
    CLI::Option *chain_opt = nullptr;
    CLI::Option *output_opt = nullptr;
};

void add_common(CLI::App *cmd, ConfigFlags &f, bool randomized) {
    f.d_opt = cmd->add_option("--d", f.d, "Prime dimension");
    f.tol_opt = cmd->add_option("--tol", f.tol, "Tolerance (> 0)");
    f.output_opt = cmd->add_option("--output", f.output, "Output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    if (randomized) {
        f.seed_opt = cmd->add_option("--seed", f.seed, "Random seed");
        f.trials_opt = cmd->add_option("--trials", f.trials, "Number of random trials");
        f.chain_opt = cmd->add_option("--max-chain", f.max_chain, "Longest transformation chain");
    }
}

RunConfig resolve(const ConfigFlags &f) {
    RunConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception &e) {
            throw UsageError("config file " + f.config_path + ": " + e.what());
        }
        if (!j.is_object()) {
            throw UsageError("config file " + f.config_path + ": expected a JSON object");
        }
        if (j.contains("schema") && j["schema"] != epiphase::kSchemaVersion) {
            throw UsageError("config file: unsupported schema version " + j["schema"].dump());
        }
        try {
            if (j.contains("d")) c.d = j["d"].get<int>();
            if (j.contains("tol")) c.tol = j["tol"].get<double>();
            if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("trials")) c.trials = j["trials"].get<int>();
            if (j.contains("max_chain")) c.max_chain = j["max_chain"].get<int>();
            if (j.contains("output")) c.output = j["output"].get<std::string>();
        } catch (const Json::exception &e) {
            throw UsageError("config file " + f.config_path + ": " + e.what());
        }
    }
    if (const char *env = std::getenv("EPIPHASE_TOL")) {
        try {
            std::size_t used = 0;
            c.tol = std::stod(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
        } catch (const std::exception &) {
            throw UsageError(std::string("EPIPHASE_TOL is not a number: ") + env);
        }
    }
    if (f.d_opt && f.d_opt->count()) c.d = f.d;
    if (f.tol_opt && f.tol_opt->count()) c.tol = f.tol;
    if (f.seed_opt && f.seed_opt->count()) c.seed = f.seed;
    if (f.trials_opt && f.trials_opt->count()) c.trials = f.trials;
    if (f.chain_opt && f.chain_opt->count()) c.max_chain = f.max_chain;
    if (f.output_opt && f.output_opt->count()) c.output = f.output;

    if (!(c.tol > 0.0)) {
        throw UsageError("tolerance must be positive");
    }
    if (c.output != "json" && c.output != "text") {
        throw UsageError("output must be json or text");
    }
    if (!epiphase::is_prime(c.d) || c.d > epiphase::kMaxDimension) {
        throw UsageError("unsupported dimension d = " + std::to_string(c.d) + " (need a prime between 2 and " +
                         std::to_string(epiphase::kMaxDimension) + ")");
    }
    if (c.trials < 1) {
        throw UsageError("trials must be at least 1");
    }
    if (c.max_chain < 0) {
        throw UsageError("max-chain must be non-negative");
    }
    return c;
}

std::string fmt(double x, const char *spec = "%.3e") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

void emit(const Json &j) { std::cout << j.dump(2) << '\n'; }

// verify

int cmd_verify(const RunConfig &c) {
    epiphase::VerifyConfig vc;
    vc.d = c.d;
    vc.tol = c.tol;
    vc.seed = c.seed;
    vc.trials = c.trials;
    vc.max_chain = c.max_chain;
    const epiphase::VerifyReport r = epiphase::run_verify(vc);
    if (c.output == "json") {
        Json checks = Json::array();
        for (const auto &s : r.checks) {
            checks.push_back(
                {{"name", s.name}, {"max_residual", s.max_residual}, {"instances", s.instances}, {"pass", s.pass}});
        }
        Json frameworks = Json::array();
        std::uint64_t count = static_cast<std::uint64_t>(c.d) + 1;
        for (int n = 0; n <= c.max_chain; ++n) {
            frameworks.push_back({{"chain_length", n}, {"coherent", count}});
            count *= r.subgroup_order;
        }
        emit({{"schema", epiphase::kSchemaVersion},
              {"command", "verify"},
              {"d", c.d},
              {"tol", c.tol},
              {"seed", c.seed},
              {"trials", c.trials},
              {"max_chain", c.max_chain},
              {"subgroup_order", r.subgroup_order},
              {"frameworks", frameworks},
              {"purity", {{"max_sum", r.max_purity_sum}, {"bound", r.purity_bound}}},
              {"checks", checks},
              {"pass", r.pass}});
    } else {
        std::cout << "verify d=" << c.d << " seed=" << c.seed << " trials=" << c.trials << " tol=" << fmt(c.tol)
                  << '\n';
        for (const auto &s : r.checks) {
            std::printf("  %-28s %10s  n=%-5d %s\n", s.name.c_str(), fmt(s.max_residual).c_str(), s.instances,
                        s.pass ? "PASS" : "FAIL");
        }
        std::printf("  max purity sum %.6f (bound %.6f)\n", r.max_purity_sum, r.purity_bound);
        std::cout << (r.pass ? "all checks passed" : "VERIFICATION FAILED") << '\n';
    }
    return r.pass ? kExitOk : kExitFailed;
}

// enumerate

Json quaternion_json(const epiphase::UnitQuaternion &q) { return {q.u[0], q.u[1], q.u[2], q.u[3]}; }

Json matrix3_json(const Eigen::Matrix3d &m) {
    Json rows = Json::array();
    for (int r = 0; r < 3; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 3; ++k) {
            double x = std::abs(m(r, k)) < 1e-12 ? 0.0 : m(r, k);
            row.push_back(x);
        }
        rows.push_back(row);
    }
    return rows;
}

Json action_json(const epiphase::UnitQuaternion &q, const epiphase::OrthogonalAction &a) {
    const Eigen::Vector3d axis = a.axis();
    return {{"quaternion", quaternion_json(q)},
            {"matrix", matrix3_json(a.matrix)},
            {"det", a.det},
            {"angle_degrees", std::round(a.angle_degrees() * 1e9) / 1e9},
            {"axis", {std::round(axis(0) * 1e9) / 1e9, std::round(axis(1) * 1e9) / 1e9, std::round(axis(2) * 1e9) / 1e9}},
            {"label", a.label()}};
}

std::string quaternion_text(const epiphase::UnitQuaternion &q) {
    std::string s = "(";
    for (std::size_t k = 0; k < 4; ++k) {
        s += fmt(std::abs(q.u[k]) < 1e-12 ? 0.0 : q.u[k], "%+.4f");
        s += k < 3 ? ", " : ")";
    }
    return s;
}

void require_qubit(const RunConfig &c, const std::string &what) {
    if (c.d != 2) {
        throw UsageError(what + " is only defined for d = 2");
    }
}

Json rotations_json(const std::vector<epiphase::UnitQuaternion> &twelve) {
    Json list = Json::array();
    for (const auto &q : twelve) {
        list.push_back(action_json(q, epiphase::OrthogonalAction::from_matrix(q.rotation())));
    }
    return list;
}

Json permutations_json(const epiphase::PermutationTheory &t) {
    Json list = Json::array();
    for (const auto &e : t.elements) {
        Json j = action_json(e.rotation, e.action);
        j["with_inversion"] = e.with_inversion;
        j["permutation"] = e.permutation;
        list.push_back(j);
    }
    return list;
}

void print_rotations(const std::vector<epiphase::UnitQuaternion> &twelve) {
    int i = 0;
    for (const auto &q : twelve) {
        auto a = epiphase::OrthogonalAction::from_matrix(q.rotation());
        std::printf("  %2d  u=%s  det=%+d  %s\n", i++, quaternion_text(q).c_str(), a.det, a.label().c_str());
    }
}

void print_permutations(const epiphase::PermutationTheory &t) {
    int i = 0;
    for (const auto &e : t.elements) {
        std::printf("  %2d  u=%s  det=%+d  perm=[%d %d %d %d]  %s\n", i++, quaternion_text(e.rotation).c_str(),
                    e.action.det, e.permutation[0], e.permutation[1], e.permutation[2], e.permutation[3],
                    e.action.label().c_str());
    }
}

int cmd_enumerate(const RunConfig &c, const std::string &what, int length) {
    if (what == "subgroups") {
        const auto space = epiphase::PhaseSpace::make(c.d);
        const auto result = epiphase::find_special_subgroups(space);
        if (c.output == "json") {
            Json list = Json::array();
            for (const auto &s : result.subgroups) {
                list.push_back(epiphase::to_json(s));
            }
            emit({{"schema", epiphase::kSchemaVersion},
                  {"command", "enumerate"},
                  {"what", what},
                  {"d", c.d},
                  {"max_generators", result.max_generators},
                  {"coverage", result.coverage},
                  {"count", result.subgroups.size()},
                  {"subgroups", list}});
        } else {
            std::cout << result.subgroups.size() << " special subgroup(s) of order " << c.d * c.d - 1
                      << " for d=" << c.d << " (" << result.coverage << ", " << result.max_generators
                      << " generators)\n";
            for (std::size_t k = 0; k < result.subgroups.size(); ++k) {
                const auto &s = result.subgroups[k];
                std::cout << "  subgroup " << k << ":";
                for (std::size_t i = 0; i < s.size(); ++i) {
                    std::cout << ' ' << s.label(i) << '=' << s[i].to_string();
                }
                std::cout << '\n';
            }
        }
        return kExitOk;
    }
    if (what == "frameworks") {
        if (length < 0) {
            throw UsageError("--length must be non-negative");
        }
        const auto ctx = epiphase::Context::make(c.d);
        const auto frameworks = epiphase::coherent_frameworks(ctx.space, ctx.subgroup, length);
        auto chain_labels = [&](const epiphase::Framework &f) {
            Json labels = Json::array();
            for (const auto &s : f.chain) {
                labels.push_back(ctx.subgroup.label(static_cast<std::size_t>(ctx.subgroup.index_of(s))));
            }
            return labels;
        };
        if (c.output == "json") {
            Json list = Json::array();
            for (const auto &f : frameworks) {
                list.push_back({{"prep_striation", f.prep_striation},
                                {"chain", chain_labels(f)},
                                {"meas_striation", f.meas_striation}});
            }
            emit({{"schema", epiphase::kSchemaVersion},
                  {"command", "enumerate"},
                  {"what", what},
                  {"d", c.d},
                  {"chain_length", length},
                  {"count", frameworks.size()},
                  {"frameworks", list}});
        } else {
            std::cout << frameworks.size() << " coherent frameworks for d=" << c.d << ", chain length " << length
                      << '\n';
            for (const auto &f : frameworks) {
                std::cout << "  B=" << f.prep_striation << " chain=[";
                const Json labels = chain_labels(f);
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    std::cout << (i ? " " : "") << labels[i].get<std::string>();
                }
                std::cout << "] B'=" << f.meas_striation << '\n';
            }
        }
        return kExitOk;
    }
    if (what == "qubit-rotations") {
        require_qubit(c, what);
        const auto twelve = epiphase::enumerate_inversion_compatible(c.tol);
        if (c.output == "json") {
            emit({{"schema", epiphase::kSchemaVersion},
                  {"command", "enumerate"},
                  {"what", what},
                  {"count", twelve.size()},
                  {"rotations", rotations_json(twelve)}});
        } else {
            std::cout << twelve.size() << " rotations compatible with the inversion\n";
            print_rotations(twelve);
        }
        return kExitOk;
    }
    if (what == "qubit-permutations") {
        require_qubit(c, what);
        const auto theory = epiphase::enumerate_permutation_theory(c.tol);
        if (c.output == "json") {
            emit({{"schema", epiphase::kSchemaVersion},
                  {"command", "enumerate"},
                  {"what", what},
                  {"count", theory.elements.size()},
                  {"elements", permutations_json(theory)}});
        } else {
            std::cout << theory.elements.size() << " permutation transformations\n";
            print_permutations(theory);
        }
        return kExitOk;
    }
    throw UsageError("unknown enumeration target: " + what);
}

// decompose

int cmd_decompose(const RunConfig &base, const std::string &path, bool full_tables) {
    Json input;
    try {
        if (path == "-") {
            input = Json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) {
                throw UsageError("cannot open input file " + path);
            }
            input = Json::parse(in);
        }
    } catch (const Json::exception &e) {
        throw UsageError("input " + path + ": " + e.what());
    }
    const epiphase::DecomposeInput in = epiphase::decompose_input_from_json(input);
    RunConfig c = base;
    c.d = in.d;
    if (!epiphase::is_prime(c.d) || c.d > epiphase::kMaxDimension) {
        throw UsageError("unsupported dimension d = " + std::to_string(c.d));
    }
    const auto ctx = epiphase::Context::make(c.d);
    const auto &space = ctx.space;

    Json out = {{"schema", epiphase::kSchemaVersion}, {"command", "decompose"}, {"d", c.d}};
    out["subgroup"] = epiphase::to_json(ctx.subgroup);
    std::ostringstream text;
    text << "decompose d=" << c.d << '\n';

    if (in.density) {
        const auto prep = epiphase::prep_reps(ctx, *in.density);
        Json list = Json::array();
        text << "preparation\n";
        for (const auto &r : prep) {
            list.push_back(epiphase::to_json(space, r));
            text << "  striation " << r.striation << '\n' << epiphase::phase_space_diagram(space, r.values);
        }
        out["preparation"] = list;
        const auto verdict = epiphase::validate_preparation(space, prep);
        out["purity"] = {{"sum", verdict.purity_sum}, {"bound", verdict.bound}, {"pass", verdict.pass},
                         {"criterion", verdict.label}};
        text << "  purity sum " << fmt(verdict.purity_sum, "%.6f") << " (bound " << fmt(verdict.bound, "%.6f")
             << ", " << verdict.label << ")\n";
    }
    Json transformations = Json::array();
    for (std::size_t k = 0; k < in.channels.size(); ++k) {
        const auto reps = epiphase::trans_reps(ctx, in.channels[k], epiphase::RepCheck::strict, c.tol);
        Json list = Json::array();
        text << "transformation " << k << " (" << in.channels[k].name() << ")\n";
        for (std::size_t i = 0; i < reps.size(); ++i) {
            list.push_back(epiphase::to_json(ctx.subgroup, reps[i], full_tables));
            text << "  S=" << ctx.subgroup.label(i) << ' ' << reps[i].symplectic.to_string()
                 << ", value by displacement\n"
                 << epiphase::phase_space_diagram(space, reps[i].class_values);
        }
        transformations.push_back({{"channel", epiphase::to_json(in.channels[k])}, {"frameworks", list}});
    }
    out["transformations"] = transformations;
    if (in.povm_element) {
        const auto meas = epiphase::meas_reps(ctx, *in.povm_element);
        Json list = Json::array();
        text << "measurement\n";
        for (const auto &r : meas) {
            list.push_back(epiphase::to_json(space, r));
            text << "  striation " << r.striation << '\n' << epiphase::phase_space_diagram(space, r.values);
        }
        out["measurement"] = list;
    }
    if (in.reconstruct) {
        const auto rec = epiphase::make_record(ctx, *in.density, in.channels, *in.povm_element, c.tol);
        const double reconstructed = epiphase::reconstruct_probability(ctx, rec);
        const double oracle = epiphase::oracle_probability(rec);
        out["probability"] = {
            {"reconstructed", reconstructed}, {"oracle", oracle}, {"difference", std::abs(reconstructed - oracle)}};
        text << "probability reconstructed " << fmt(reconstructed, "%.12f") << " oracle " << fmt(oracle, "%.12f")
             << " difference " << fmt(std::abs(reconstructed - oracle)) << '\n';
    }
    if (c.output == "json") {
        emit(out);
    } else {
        std::cout << text.str();
    }
    return kExitOk;
}

// classify-qubit

int cmd_classify(const RunConfig &c, std::size_t samples, std::size_t maximality_samples) {
    require_qubit(c, "classify-qubit");
    const auto twelve = epiphase::enumerate_inversion_compatible(c.tol);
    const auto theory = epiphase::enumerate_permutation_theory(c.tol);
    epiphase::SweepConfig sc;
    sc.samples = samples;
    sc.seed = c.seed;
    const auto sweep = epiphase::sweep_su2(sc);
    const auto maximal = epiphase::maximality_spot_check(theory, maximality_samples, c.seed, c.tol);

    const bool group_ok = theory.elements.size() == 24 && theory.closed && theory.inverses && theory.all_valid &&
                          theory.permutes_points && theory.distinct_permutations == 24;
    const bool pass = twelve.size() == 12 && group_ok && sweep.outside_radius == 0 &&
                      maximal.rejected + maximal.inside == maximal.samples;
    if (c.output == "json") {
        emit({{"schema", epiphase::kSchemaVersion},
              {"command", "classify-qubit"},
              {"seed", c.seed},
              {"rotations", {{"count", twelve.size()}, {"elements", rotations_json(twelve)}}},
              {"permutations",
               {{"count", theory.elements.size()},
                {"closed", theory.closed},
                {"inverses", theory.inverses},
                {"all_valid", theory.all_valid},
                {"permutes_points", theory.permutes_points},
                {"distinct_permutations", theory.distinct_permutations},
                {"elements", permutations_json(theory)}}},
              {"sweep",
               {{"samples", sweep.config.samples},
                {"epsilon", sweep.config.epsilon},
                {"radius", sweep.config.radius},
                {"survivors", sweep.survivors},
                {"outside_radius", sweep.outside_radius},
                {"max_distance", sweep.max_distance}}},
              {"maximality",
               {{"samples", maximal.samples}, {"inside", maximal.inside}, {"rejected", maximal.rejected}}},
              {"pass", pass}});
    } else {
        std::cout << twelve.size() << " rotations compatible with the inversion\n";
        print_rotations(twelve);
        std::cout << theory.elements.size() << " permutation transformations (closed=" << theory.closed
                  << ", inverses=" << theory.inverses << ", valid=" << theory.all_valid
                  << ", distinct permutations=" << theory.distinct_permutations << ")\n";
        print_permutations(theory);
        std::cout << "SU(2) sweep: " << sweep.config.samples << " samples, seed " << c.seed << ", "
                  << sweep.survivors << " survivors within epsilon " << sweep.config.epsilon << ", "
                  << sweep.outside_radius << " farther than " << sweep.config.radius << " from the twelve (max "
                  << fmt(sweep.max_distance, "%.4f") << ")\n";
        std::cout << "maximality: " << maximal.rejected << " of " << maximal.samples
                  << " outside rotations rejected, " << maximal.inside << " already inside\n";
        std::cout << (pass ? "classification reproduced" : "CLASSIFICATION FAILED") << '\n';
    }
    return pass ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Epistemically restricted phase-space decomposition of finite-dimensional quantum theory"};
    app.require_subcommand(1);

    ConfigFlags verify_flags;
    auto *verify = app.add_subcommand("verify", "Randomized checks of reconstruction and composition rules");
    add_common(verify, verify_flags, true);

    ConfigFlags enum_flags;
    std::string what;
    int length = 1;
    auto *enumerate = app.add_subcommand("enumerate", "List subgroups, frameworks or qubit transformation sets");
    add_common(enumerate, enum_flags, false);
    enumerate->add_option("--what", what, "subgroups|frameworks|qubit-rotations|qubit-permutations")->required();
    enumerate->add_option("--length", length, "Chain length for frameworks");

    ConfigFlags dec_flags;
    std::string in_path;
    bool full_tables = false;
    auto *decompose = app.add_subcommand("decompose", "Classical tables of a density, channels and POVM element");
    add_common(decompose, dec_flags, false);
    decompose->add_option("--in", in_path, "Input JSON file, or - for stdin")->required();
    decompose->add_flag("--full-tables", full_tables, "Also emit expanded transition tables");

    ConfigFlags cls_flags;
    std::size_t samples = 100000;
    std::size_t maximality_samples = 1000;
    auto *classify = app.add_subcommand("classify-qubit", "Reproduce the qubit transformation classification");
    add_common(classify, cls_flags, true);
    classify->add_option("--samples", samples, "SU(2) sweep size");
    classify->add_option("--maximality-samples", maximality_samples, "Outside rotations to adjoin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(resolve(verify_flags));
        }
        if (*enumerate) {
            return cmd_enumerate(resolve(enum_flags), what, length);
        }
        if (*decompose) {
            return cmd_decompose(resolve(dec_flags), in_path, full_tables);
        }
        if (*classify) {
            return cmd_classify(resolve(cls_flags), samples, maximality_samples);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
