// Command-line front end: bound / decide / compare / simulate / verify.
//
// Exit codes: 0 success, 1 failed verification, 2 malformed input or bad
// arguments, 3 infeasible or inconsistent data.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "votebound/io.hpp"
#include "votebound/votebound.hpp"

namespace {

using namespace votebound;
using nlohmann::json;

enum class InputKind { PopulationCsv, ObservedCsv, SummaryJson };

// Everything a run needs, gathered from the command line.
struct RunConfig {
    std::string subcommand;
    std::string input_path;
    std::string input_kind;
    std::string tie_policy = "strict";
    std::string prior;
    std::vector<double> supermajority;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    double delta = 1e-9;
    std::string family;
    std::string format;  // resolved to "json" or "csv" per subcommand
};

InputKind parse_kind(const std::string& text) {
    if (text == "population-csv") return InputKind::PopulationCsv;
    if (text == "observed-csv") return InputKind::ObservedCsv;
    if (text == "summary-json") return InputKind::SummaryJson;
    throw Error("unknown input kind: '" + text +
                "' (expected population-csv, observed-csv or summary-json)");
}

TiePolicy parse_tie_policy(const std::string& text) {
    if (text == "strict") return TiePolicy::Strict;
    if (text == "status-quo-tiebreak") return TiePolicy::StatusQuoTiebreak;
    throw Error("unknown tie policy: '" + text +
                "' (expected strict or status-quo-tiebreak)");
}

double parse_cli_double(const std::string& text, const char* what) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw Error(std::string("bad ") + what + ": '" + text + "'");
    return v;
}

// "kind" or "kind:p1,p2"
PriorSpec parse_prior_text(const std::string& text) {
    PriorSpec spec;
    const auto colon = text.find(':');
    spec.kind = prior_kind_from_name(
        colon == std::string::npos ? text : text.substr(0, colon));
    if (colon != std::string::npos) {
        const std::string params = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < params.size()) {
            auto comma = params.find(',', pos);
            if (comma == std::string::npos) comma = params.size();
            spec.params.push_back(
                parse_cli_double(params.substr(pos, comma - pos), "prior parameter"));
            pos = comma + 1;
        }
    }
    return spec;
}

std::string slurp(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) throw Error("cannot open input file: " + path);
        buffer << file.rdbuf();
    }
    return buffer.str();
}

struct LoadedInput {
    std::string digest;
    SummaryStatistics stats;
    std::optional<Population> population;
    std::optional<ObservedDataset> observed;
};

LoadedInput load_input(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw Error("this subcommand requires --input");
    if (cfg.input_kind.empty()) throw Error("--input requires --kind");
    LoadedInput in;
    const std::string bytes = slurp(cfg.input_path);
    in.digest = io::fnv1a_hex(bytes);
    switch (parse_kind(cfg.input_kind)) {
        case InputKind::PopulationCsv: {
            std::istringstream stream(bytes);
            Population pop =
                io::read_population_csv(stream, parse_tie_policy(cfg.tie_policy));
            in.observed = observe(pop);
            in.stats = summarize(*in.observed);
            in.population = std::move(pop);
            break;
        }
        case InputKind::ObservedCsv: {
            std::istringstream stream(bytes);
            in.observed = io::read_observed_csv(stream);
            in.stats = summarize(*in.observed);
            break;
        }
        case InputKind::SummaryJson:
            in.stats = io::summary_from_json(json::parse(bytes));
            break;
    }
    return in;
}

std::string resolve_format(const std::string& requested, const char* fallback) {
    const std::string fmt = requested.empty() ? fallback : requested;
    if (fmt != "json" && fmt != "csv")
        throw Error("unknown format: '" + fmt + "' (expected json or csv)");
    return fmt;
}

// Splices a constant first column into a rendered CSV table.
std::string with_leading_column(const std::string& csv, const std::string& head,
                                const std::string& value) {
    std::istringstream in(csv);
    std::string line, out;
    bool first = true;
    while (std::getline(in, line)) {
        out += (first ? head : value) + ',' + line + '\n';
        first = false;
    }
    return out;
}

std::string fmt(double v) { return votebound::detail::format_double(v); }

int run_bound(const RunConfig& cfg) {
    const LoadedInput in = load_input(cfg);
    const WelfareBound b = sharp_bound(in.stats);
    const std::string format = resolve_format(cfg.format, "json");
    if (format == "csv") {
        std::cout << "input_digest,lower,upper,midpoint,width,trivial\n"
                  << in.digest << ',' << fmt(b.lower) << ',' << fmt(b.upper) << ','
                  << fmt(b.midpoint) << ',' << fmt(bound_width(b)) << ','
                  << (b.trivial ? "true" : "false") << '\n';
    } else {
        json out{{"input_digest", in.digest},
                 {"seed", nullptr},
                 {"summary", io::to_json(in.stats)},
                 {"bound", io::to_json(b)}};
        out["bound"]["width"] = bound_width(b);
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

int run_decide(const RunConfig& cfg, const char* default_format) {
    const LoadedInput in = load_input(cfg);
    std::optional<Prior> prior;
    if (!cfg.prior.empty())
        prior = make_prior(parse_prior_text(cfg.prior), sharp_bound(in.stats));
    const DecisionReport report = decide_all(in.stats, prior, cfg.supermajority);
    const std::string format = resolve_format(cfg.format, default_format);
    if (format == "csv") {
        std::cout << with_leading_column(io::decisions_csv(report), "input_digest",
                                         in.digest);
    } else {
        json out{{"input_digest", in.digest},
                 {"seed", nullptr},
                 {"summary", io::to_json(in.stats)},
                 {"bound", io::to_json(sharp_bound(in.stats))},
                 {"decisions", io::to_json(report)}};
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

int run_simulate(const RunConfig& cfg) {
    if (cfg.family.empty()) throw Error("simulate requires --family");
    const FamilySpec spec = parse_family(cfg.family);
    std::optional<PriorSpec> prior_spec;
    if (!cfg.prior.empty()) prior_spec = parse_prior_text(cfg.prior);

    const DisagreementReport rep = monte_carlo_disagreement(
        spec, cfg.trials, cfg.seed, prior_spec, cfg.supermajority);

    // No file input here; the digest covers the canonical run configuration.
    std::string config = to_string(spec);
    config += "|trials=" + std::to_string(cfg.trials);
    config += "|seed=" + std::to_string(cfg.seed);
    config += "|prior=" + (cfg.prior.empty() ? std::string("none") : cfg.prior);
    config += "|supermajority=";
    for (std::size_t i = 0; i < cfg.supermajority.size(); ++i) {
        if (i) config += ',';
        config += fmt(cfg.supermajority[i]);
    }
    const std::string digest = io::fnv1a_hex(config);

    const std::string format = resolve_format(cfg.format, "json");
    if (format == "csv") {
        std::cout << with_leading_column(io::disagreement_csv(rep), "input_digest",
                                         digest);
    } else {
        json out = io::to_json(rep);
        out["input_digest"] = digest;
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

struct SharpnessResult {
    std::size_t datasets = 0;
    double max_lower_slack = 0.0;
    double max_upper_slack = 0.0;
    bool witnesses_reproduce = true;
};

void fold_sharpness(SharpnessResult& agg, const ObservedDataset& obs, double delta) {
    const WelfareBound b = sharp_bound(summarize(obs));
    const FeasibleExtremes fe = feasible_extremes(obs, delta);
    agg.max_lower_slack =
        std::max(agg.max_lower_slack, std::abs(fe.inf_approx - b.lower));
    agg.max_upper_slack =
        std::max(agg.max_upper_slack, std::abs(b.upper - fe.sup_approx));
    agg.witnesses_reproduce =
        agg.witnesses_reproduce &&
        observe(infimum_witness_population(obs, delta)) == obs &&
        observe(supremum_witness_population(obs, delta)) == obs;
    ++agg.datasets;
}

int run_verify(const RunConfig& cfg) {
    if (cfg.family.empty() == cfg.input_path.empty())
        throw Error("verify requires exactly one of --family or --input");

    json out;
    out["delta"] = cfg.delta;
    SharpnessResult sharp;
    bool containment_pass = true;

    if (!cfg.family.empty()) {
        const FamilySpec spec = parse_family(cfg.family);
        const ContainmentSummary cont =
            verify_bound_containment(spec, cfg.trials, cfg.seed);
        containment_pass = cont.violations == 0;
        out["containment"] = io::to_json(cont);
        for (std::size_t t = 0; t < cfg.trials; ++t)
            fold_sharpness(sharp, observe(generate(spec, derive_seed(cfg.seed, t))),
                           cfg.delta);
        out["input_digest"] = io::fnv1a_hex(to_string(spec) +
                                            "|trials=" + std::to_string(cfg.trials) +
                                            "|seed=" + std::to_string(cfg.seed));
        out["seed"] = cfg.seed;
    } else {
        const LoadedInput in = load_input(cfg);
        if (!in.observed)
            throw Error("verify needs record-level input (population-csv or observed-csv)");
        if (in.population) {
            const Welfare w = true_welfare(*in.population);
            const WelfareBound b = sharp_bound(in.stats);
            ContainmentSummary cont;
            cont.trials = 1;
            for (const double v : {w.mean_u_b, w.mean_u_a}) {
                const double excess = std::max(b.lower - v, v - b.upper);
                if (excess > 0.0) {
                    cont.violations = 1;
                    cont.max_violation = std::max(cont.max_violation, excess);
                }
                cont.min_margin =
                    std::min(cont.min_margin, std::min(v - b.lower, b.upper - v));
            }
            containment_pass = cont.violations == 0;
            out["containment"] = io::to_json(cont);
        } else {
            out["containment"] = nullptr;
        }
        fold_sharpness(sharp, *in.observed, cfg.delta);
        out["input_digest"] = in.digest;
        out["seed"] = nullptr;
    }

    // Witness welfare sits within delta of the matching endpoint in exact
    // arithmetic; the extra 1e-12 absorbs accumulated rounding.
    const double slack_tolerance = cfg.delta + 1e-12;
    const bool sharp_pass = sharp.max_lower_slack <= slack_tolerance &&
                            sharp.max_upper_slack <= slack_tolerance &&
                            sharp.witnesses_reproduce;
    out["sharpness"] = json{{"datasets", sharp.datasets},
                            {"max_lower_slack", sharp.max_lower_slack},
                            {"max_upper_slack", sharp.max_upper_slack},
                            {"witnesses_reproduce", sharp.witnesses_reproduce},
                            {"pass", sharp_pass}};
    const bool pass = containment_pass && sharp_pass;
    out["pass"] = pass;

    const std::string format = resolve_format(cfg.format, "json");
    if (format == "csv") {
        std::cout << "input_digest,datasets,violations,max_lower_slack,max_upper_slack,"
                     "witnesses_reproduce,pass\n"
                  << out["input_digest"].get<std::string>() << ','
                  << sharp.datasets << ','
                  << (out["containment"].is_null()
                          ? std::string()
                          : std::to_string(
                                out["containment"]["violations"].get<std::size_t>()))
                  << ',' << fmt(sharp.max_lower_slack) << ','
                  << fmt(sharp.max_upper_slack) << ','
                  << (sharp.witnesses_reproduce ? "true" : "false") << ','
                  << (pass ? "true" : "false") << '\n';
    } else {
        std::cout << out.dump(2) << '\n';
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp welfare bounds and policy choice for binary referenda"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto add_input_options = [&cfg](CLI::App* cmd, bool required) {
        auto* input = cmd->add_option("--input", cfg.input_path,
                                      "input file path ('-' reads stdin)");
        auto* kind = cmd->add_option(
            "--kind", cfg.input_kind,
            "input kind: population-csv | observed-csv | summary-json");
        cmd->add_option("--tie-policy", cfg.tie_policy,
                        "strict | status-quo-tiebreak (population-csv only)");
        if (required) {
            input->required();
            kind->required();
        }
    };
    auto add_decision_options = [&cfg](CLI::App* cmd) {
        cmd->add_option("--prior", cfg.prior,
                        "Bayes prior, e.g. uniform-on-bound, point-mass:0.55, "
                        "truncated-beta:2,5");
        cmd->add_option("--supermajority", cfg.supermajority,
                        "supermajority thresholds in [0.5,1], comma separated")
            ->delimiter(',');
    };
    auto add_format_option = [&cfg](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format, "output format: json | csv");
    };

    CLI::App* bound_cmd =
        app.add_subcommand("bound", "identification interval for proposal welfare");
    add_input_options(bound_cmd, true);
    add_format_option(bound_cmd);

    CLI::App* decide_cmd =
        app.add_subcommand("decide", "run every decision criterion on one input");
    add_input_options(decide_cmd, true);
    add_decision_options(decide_cmd);
    add_format_option(decide_cmd);

    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "side-by-side criterion table (CSV by default)");
    add_input_options(compare_cmd, true);
    add_decision_options(compare_cmd);
    add_format_option(compare_cmd);

    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "Monte Carlo disagreement rates over a synthetic family");
    simulate_cmd->add_option("--family", cfg.family, "family spec kind:params:size")
        ->required();
    simulate_cmd->add_option("--trials", cfg.trials, "number of Monte Carlo trials");
    simulate_cmd->add_option("--seed", cfg.seed, "root seed");
    add_decision_options(simulate_cmd);
    add_format_option(simulate_cmd);

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "containment and sharpness checks (exit 1 on failure)");
    verify_cmd->add_option("--family", cfg.family, "family spec kind:params:size");
    add_input_options(verify_cmd, false);
    verify_cmd->add_option("--trials", cfg.trials, "trials in family mode");
    verify_cmd->add_option("--seed", cfg.seed, "root seed");
    verify_cmd->add_option("--delta", cfg.delta, "witness offset in (0,1)");
    add_format_option(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bound_cmd->parsed()) return run_bound(cfg);
        if (decide_cmd->parsed()) return run_decide(cfg, "json");
        if (compare_cmd->parsed()) return run_decide(cfg, "csv");
        if (simulate_cmd->parsed()) return run_simulate(cfg);
        if (verify_cmd->parsed()) return run_verify(cfg);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const InfeasibleRecord& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InconsistentSummary& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: invalid JSON: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
