// Copyright 2026 The HQIS Authors
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

#ifndef HQIS_CLI_H
#define HQIS_CLI_H

// Command-line front end. Needs CLI11.hpp and json.hpp on the include path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hqis/adversary.h"
#include "hqis/channel.h"
#include "hqis/protocol.h"
#include "hqis/rng.h"
#include "hqis/secret_state.h"

namespace hqis::cli {

using Record = nlohmann::ordered_json;

enum class Mode { Sample, Enumerate, Attack, Tables };

inline std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Sample:
            return "sample";
        case Mode::Enumerate:
            return "enumerate";
        case Mode::Attack:
            return "attack";
        case Mode::Tables:
            return "tables";
    }
    return "?";
}

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitResource = 2 };

/// Secrets this far off unit norm are rescaled with a warning; beyond it they
/// are rejected.
constexpr double kSecretRenormTolerance = 1e-6;

struct RunConfig {
    Mode mode = Mode::Sample;
    PartySizes sizes{1, 1};
    std::optional<Designee> designee;
    std::optional<SecretState> secret;
    /// The --secret argument as given ("random" or four reals).
    std::string secret_spec = "random";
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    Scenario scenario = Scenario::InterceptResend;
    std::size_t rounds = kDefaultCheckRounds;
    double threshold = kDefaultDetectionThreshold;
    std::size_t branch_limit = kDefaultBranchLimit;
    std::optional<std::string> output_path;
    /// Non-fatal notices produced while parsing (e.g. secret renormalized).
    std::vector<std::string> warnings;
};

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
    /// Usage text for --help, or a one-line diagnostic on error.
    std::string message;
};

/// Stream used to draw a "random" secret; trials use streams 0, 1, 2, ...
constexpr std::uint64_t kSecretStream = std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline std::size_t parse_index(const std::string &text, const std::string &what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size() || text.front() == '-') {
        throw std::invalid_argument("malformed " + what + " '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

/// "bob:i" or "charlie:j".
inline Role parse_role(const std::string &spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("designee must look like bob:i or charlie:j, got '" + spec + "'");
    }
    std::string kind = spec.substr(0, colon);
    std::size_t index = parse_index(spec.substr(colon + 1), "designee index");
    if (kind == "bob") {
        return Role::bob(index);
    }
    if (kind == "charlie") {
        return Role::charlie(index);
    }
    throw std::invalid_argument("designee must look like bob:i or charlie:j, got '" + spec + "'");
}

/// Four comma-separated reals: Re alpha, Im alpha, Re beta, Im beta.
inline SecretState parse_secret(const std::string &spec, std::vector<std::string> &warnings) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size() || !std::isfinite(v)) {
            throw std::invalid_argument("secret component '" + item + "' is not a real number");
        }
        parts.push_back(v);
    }
    if (parts.size() != 4) {
        throw std::invalid_argument("secret needs four comma-separated reals (re_a,im_a,re_b,im_b) or 'random'");
    }
    Complex alpha(parts[0], parts[1]);
    Complex beta(parts[2], parts[3]);
    double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) <= SecretState::kNormTolerance) {
        return SecretState(alpha, beta);
    }
    if (std::abs(norm2 - 1.0) < kSecretRenormTolerance) {
        warnings.push_back("secret renormalized from |alpha|^2 + |beta|^2 = " + std::to_string(norm2));
        return SecretState::normalized(alpha, beta);
    }
    throw std::invalid_argument("secret is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(norm2));
}

}  // namespace detail

/// Parses arguments (without the program name) into a validated config.
inline ParseResult parse_args(const std::vector<std::string> &argv) {
    RunConfig c;
    std::string mode = "sample";
    std::string designee;
    std::optional<std::size_t> charlie_star;
    std::string scenario = "intercept-resend";
    std::string output;

    CLI::App app{"Hierarchical quantum-information-splitting simulator", "hqis"};
    app.require_subcommand(1);

    auto add_sizes = [&](CLI::App *sub) {
        sub->add_option("--m", c.sizes.m, "number of Bobs (upper grade)")->check(CLI::PositiveNumber);
        sub->add_option("--n", c.sizes.n, "number of Charlies (lower grade)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", c.seed, "64-bit run seed");
    };
    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--output", output, "write NDJSON records here instead of stdout");
    };

    CLI::App *run = app.add_subcommand("run", "run the protocol by sampling or exhaustive enumeration");
    add_sizes(run);
    run->add_option("--mode", mode, "sample | enumerate")->check(CLI::IsMember({"sample", "enumerate"}));
    run->add_option("--designee", designee, "bob:i or charlie:j")->required();
    run->add_option("--charlie-star", charlie_star, "assisting Charlie for a Bob designee");
    run->add_option("--secret", c.secret_spec, "re_a,im_a,re_b,im_b or 'random'");
    run->add_option("--trials", c.trials, "sampled trials")->check(CLI::PositiveNumber);
    run->add_option("--branch-limit", c.branch_limit, "maximum enumerated branches")->check(CLI::PositiveNumber);
    add_output(run);

    CLI::App *attack = app.add_subcommand("attack", "intercept-resend correlation check");
    add_sizes(attack);
    attack->add_option("--scenario", scenario, "honest | intercept-resend")
        ->check(CLI::IsMember({"honest", "intercept-resend"}));
    attack->add_option("--rounds", c.rounds, "sacrificed channel instances")->check(CLI::PositiveNumber);
    attack->add_option("--threshold", c.threshold, "flag an attack below this Alice-Bob match rate")
        ->check(CLI::Range(0.0, 1.0));
    add_output(attack);

    CLI::App *tables = app.add_subcommand("tables", "dump the correction tables");
    add_output(tables);

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        return {std::nullopt, kExitOk, app.help()};
    } catch (const CLI::CallForAllHelp &) {
        return {std::nullopt, kExitOk, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError &e) {
        return {std::nullopt, kExitUsage, std::string("error: ") + e.what()};
    }

    try {
        if (!output.empty()) {
            c.output_path = output;
        }
        c.sizes.validate();
        if (run->parsed()) {
            c.mode = mode == "enumerate" ? Mode::Enumerate : Mode::Sample;
            Role role = detail::parse_role(designee);
            Designee d{role, std::nullopt};
            if (role.is_bob()) {
                if (!charlie_star) {
                    throw std::invalid_argument("a Bob designee needs --charlie-star");
                }
                d.charlie_star = charlie_star;
            } else if (charlie_star) {
                throw std::invalid_argument("--charlie-star only applies to a Bob designee");
            }
            d.validate(c.sizes);
            c.designee = d;
            if (c.secret_spec == "random") {
                RandomSource rng = derive_stream(c.seed, kSecretStream);
                c.secret = random_secret(rng);
            } else {
                c.secret = detail::parse_secret(c.secret_spec, c.warnings);
            }
        } else if (attack->parsed()) {
            c.mode = Mode::Attack;
            c.scenario = scenario == "honest" ? Scenario::Honest : Scenario::InterceptResend;
        } else {
            c.mode = Mode::Tables;
        }
    } catch (const resource_limit_error &e) {
        return {std::nullopt, kExitResource, std::string("error: ") + e.what()};
    } catch (const std::exception &e) {
        return {std::nullopt, kExitUsage, std::string("error: ") + e.what()};
    }
    return {c, kExitOk, ""};
}

namespace detail {

inline Record header(const RunConfig &c, std::string_view record) {
    Record r;
    r["mode"] = to_string(c.mode);
    r["m"] = c.sizes.m;
    r["n"] = c.sizes.n;
    r["seed"] = c.seed;
    r["record"] = record;
    return r;
}

inline void add_trial_fields(Record &r, const RunConfig &c, const TrialResult &t) {
    r["designee"] = c.designee->role.label();
    r["charlie_star"] = c.designee->charlie_star ? Record(*c.designee->charlie_star) : Record(nullptr);
    r["secret"] = {c.secret->alpha().real(), c.secret->alpha().imag(), c.secret->beta().real(),
                   c.secret->beta().imag()};
    r["bell"] = to_string(t.bell);
    Record bits = Record::object();
    for (const auto &[role, bit] : t.classical_bits) {
        bits[role.label()] = bit;
    }
    r["classical_bits"] = bits;
    r["v_g1"] = t.v_g1;
    r["v_g2_or_charlie_star"] = t.v_g2_or_charlie_star;
    r["correction"] = to_string(t.correction);
    r["branch_probability"] = t.branch_probability;
    r["fidelity"] = t.fidelity;
    r["designee_purity"] = t.designee_purity;
}

inline void emit(std::ostream &out, const Record &r) {
    out << r.dump() << '\n';
}

inline void run_sample(const RunConfig &c, std::ostream &out) {
    for (std::size_t k = 0; k < c.trials; k++) {
        RandomSource rng = derive_stream(c.seed, k);
        TrialResult t = run_recovery(c.sizes, *c.designee, *c.secret, rng);
        Record r = header(c, "trial");
        r["trial"] = k;
        add_trial_fields(r, c, t);
        emit(out, r);
    }
}

inline void run_enumerate(const RunConfig &c, std::ostream &out) {
    std::size_t count = 0;
    double probability_sum = 0;
    double min_fidelity = 1.0;
    double max_fidelity = 0.0;
    for_each_branch(
        c.sizes, *c.designee, *c.secret,
        [&](const TrialResult &t, const StateVector &) {
            Record r = header(c, "branch");
            r["branch"] = count++;
            add_trial_fields(r, c, t);
            emit(out, r);
            probability_sum += t.branch_probability;
            min_fidelity = std::min(min_fidelity, t.fidelity);
            max_fidelity = std::max(max_fidelity, t.fidelity);
        },
        c.branch_limit);
    Record s = header(c, "summary");
    s["designee"] = c.designee->role.label();
    s["branches"] = count;
    s["probability_sum"] = probability_sum;
    s["min_fidelity"] = min_fidelity;
    s["max_fidelity"] = max_fidelity;
    emit(out, s);
}

inline void run_attack(const RunConfig &c, std::ostream &out) {
    RandomSource rng = derive_stream(c.seed, 0);
    CheckStats stats = correlation_check(c.sizes, c.scenario, c.rounds, rng, c.threshold);
    Record r = header(c, "check");
    r["scenario"] = to_string(c.scenario);
    r["rounds"] = stats.rounds;
    r["threshold"] = stats.threshold;
    r["alice_bob_match_rate"] = stats.alice_bob_match_rate;
    r["charlie_group_consistent_rate"] = stats.charlie_group_consistent_rate;
    r["detected"] = stats.detected;
    r["detection_rule"] = stats.detection_rule;
    r["exact_mismatch_probability"] = exact_mismatch_probability(c.sizes, c.scenario);
    r["exact_detection_probability"] = exact_detection_probability(c.sizes);
    r["detection_probability_after_rounds"] = detection_probability_after(c.sizes, c.rounds);
    emit(out, r);
}

inline void run_tables(const RunConfig &c, std::ostream &out) {
    std::size_t row_no = 0;
    for (const auto &row : kBobTable) {
        row_no++;
        for (auto [bell, v] : {std::pair{row.plus, row.v_sum_plus}, std::pair{row.minus, row.v_sum_minus}}) {
            Record r = header(c, "table_row");
            r["table"] = 1;
            r["row"] = row_no;
            r["bell"] = to_string(bell);
            r["v_sum"] = v;
            r["op"] = to_string(row.op);
            emit(out, r);
        }
    }
    row_no = 0;
    for (const auto &row : kCharlieTable) {
        row_no++;
        for (auto [bell, v] : {std::pair{row.plus, row.v_g1_plus}, std::pair{row.minus, row.v_g1_minus}}) {
            Record r = header(c, "table_row");
            r["table"] = 2;
            r["row"] = row_no;
            r["bell"] = to_string(bell);
            r["v_g1"] = v;
            r["v_g2"] = row.v_g2;
            r["op"] = to_string(row.op);
            emit(out, r);
        }
    }
}

}  // namespace detail

/// Writes the records for `config` to `out`. Returns an ExitCode.
inline int execute(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        switch (config.mode) {
            case Mode::Sample:
                detail::run_sample(config, out);
                break;
            case Mode::Enumerate:
                detail::run_enumerate(config, out);
                break;
            case Mode::Attack:
                detail::run_attack(config, out);
                break;
            case Mode::Tables:
                detail::run_tables(config, out);
                break;
        }
    } catch (const resource_limit_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    out.flush();
    return kExitOk;
}

/// Full program: parse, report, execute, honoring --output.
inline int main(const std::vector<std::string> &argv, std::ostream &out, std::ostream &err) {
    ParseResult parsed = parse_args(argv);
    if (!parsed.config) {
        (parsed.exit_code == kExitOk ? out : err) << parsed.message << '\n';
        return parsed.exit_code;
    }
    const RunConfig &config = *parsed.config;
    for (const auto &w : config.warnings) {
        err << "warning: " << w << '\n';
    }
    if (config.output_path) {
        std::ofstream file(*config.output_path);
        if (!file) {
            err << "error: cannot open " << *config.output_path << " for writing\n";
            return kExitUsage;
        }
        return execute(config, file, err);
    }
    return execute(config, out, err);
}

}  // namespace hqis::cli

#endif
