// Command-line front end: `verify` runs scenario suites and reports one
// identity per line (or a machine-readable JSON document); `show` evaluates
// an expression against a scenario's named objects and prints the result.
//
// Exit codes: 0 all checks passed, 1 at least one identity failed,
// 2 bad usage or an invalid scenario.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cartan/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic verification workbench for exterior calculus, "
                 "Courant structures, and Lie 2-algebra identities"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::vector<std::string> suite_override;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string report_format = "text";
    std::string expr;

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suites of a scenario");
    verify->add_option("--scenario", scenario_path, "Path to a scenario JSON file")->required();
    verify->add_option("--suite", suite_override,
                       "Suite to run instead of the scenario's list (repeatable)");
    CLI::Option* trials_opt =
        verify->add_option("--trials", trials, "Trials per identity")->check(CLI::PositiveNumber);
    CLI::Option* seed_opt = verify->add_option("--seed", seed, "Base seed for all trials");
    verify->add_option("--report", report_format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--jobs", jobs, "Worker threads per identity (does not affect output)")
        ->check(CLI::PositiveNumber);

    CLI::App* show = app.add_subcommand("show", "Evaluate an expression over named objects");
    show->add_option("--scenario", scenario_path, "Path to a scenario JSON file")->required();
    show->add_option("--expr", expr, "Expression, e.g. semi_bracket(alpha, beta)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            cartan::Scenario s = cartan::load_scenario(scenario_path, suite_override);
            if (trials_opt->count() > 0) s.config.trials = trials;
            if (seed_opt->count() > 0) s.config.seed = seed;
            s.config.jobs = jobs;
            const std::vector<cartan::SuiteResult> results = cartan::run_suites(s);
            if (report_format == "json")
                std::cout << cartan::render_report_json(s, results);
            else
                std::cout << cartan::render_report_text(results);
            return cartan::overall_pass(results) ? 0 : 1;
        }
        cartan::Scenario s = cartan::parse_scenario_file(scenario_path);
        std::cout << cartan::show_expression(s, expr) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
