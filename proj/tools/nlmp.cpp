// nlmp: validate models, compute bisimilarities, check and synthesize formulas.

#include <iostream>

#include <CLI11.hpp>

#include "nlmp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact bisimulation and logic workbench for finite nondeterministic labeled Markov processes"};
    app.require_subcommand(1);
    bool with_timing = false;
    app.add_flag("--timing", with_timing, "Include wall-clock time in the report");

    std::string path;
    std::string kind = "all";
    std::string formula;
    std::string state;
    std::string s;
    std::string t;
    std::string fragment = "Lf";

    auto* validate = app.add_subcommand("validate", "Check that a model is a well-formed, measurable NLMP");
    validate->add_option("model", path, "Model file (.nlmp)")->required();

    auto* bisim = app.add_subcommand("bisim", "Compute traditional, state and event bisimilarity");
    bisim->add_option("model", path, "Model file (.nlmp)")->required();
    bisim->add_option("--kind", kind, "traditional, state, event or all")
        ->check(CLI::IsMember({"traditional", "state", "event", "all"}));

    auto* check = app.add_subcommand("check", "Evaluate a state formula");
    check->add_option("model", path, "Model file (.nlmp)")->required();
    check->add_option("formula", formula, "State formula, e.g. '<a>[>1/4 <b>[T]>=1, <3/4 <b>[T]>=1]'")->required();
    auto* state_opt = check->add_option("--state", state, "Exit 4 unless this state satisfies the formula");

    auto* dist = app.add_subcommand("distinguish", "Synthesize a formula separating two states");
    dist->add_option("model", path, "Model file (.nlmp)")->required();
    dist->add_option("s", s, "First state")->required();
    dist->add_option("t", t, "Second state")->required();

    auto* equiv = app.add_subcommand("equiv", "Logical equivalence with separating formulas");
    equiv->add_option("model", path, "Model file (.nlmp)")->required();
    equiv->add_option("--fragment", fragment, "L or Lf")->check(CLI::IsMember({"L", "Lf"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nlmp::cli::exit_usage;
    }

    nlmp::cli::CommandResult result;
    if (*validate)
        result = nlmp::cli::cmd_validate(path);
    else if (*bisim)
        result = nlmp::cli::cmd_bisim(path, kind);
    else if (*check)
        result = nlmp::cli::cmd_check(path, formula, *state_opt ? std::optional<std::string>(state) : std::nullopt);
    else if (*dist)
        result = nlmp::cli::cmd_distinguish(path, s, t);
    else
        result = nlmp::cli::cmd_equiv(path, fragment);

    if (with_timing)
        std::cout << result.report.dump(2) << '\n';
    else
        std::cout << nlmp::cli::stable_dump(result.report) << '\n';
    return result.exit_code;
}
