#include "jetframe/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    jetframe::RunConfig config;
    std::string suites = "all", output = "text", exec = "parallel";
    bool schema = false;

    CLI::App app{"Exact verification of jet-space vector fields on the universal hypersurface"};
    app.add_option("--n", config.n, "Jet order and dimension of the hypersurface")->check(CLI::PositiveNumber);
    app.add_option("--d", config.d, "Degree of the hypersurface, d > n");
    app.add_option("--chart", config.chart, "Chart index i in [1, n+1] for the semi-global graph");
    app.add_option("--seed", config.seed, "Seed for sampled points and random parameters");
    app.add_option("--trials", config.trials, "Random trials per suite");
    app.add_option("--suites", suites, "Comma list of suites or 'all'");
    app.add_option("--output", output, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--exec", exec, "Kernel execution")->check(CLI::IsMember({"serial", "parallel"}));
    app.add_flag("--schema", schema, "Print the JSON schema of the report and exit");
    CLI11_PARSE(app, argc, argv);

    if (schema) {
        std::cout << jetframe::report_schema().dump(2) << "\n";
        return 0;
    }
    try {
        config.suites = jetframe::parse_suites(suites);
        config.exec = exec == "serial" ? jetframe::Exec::Serial : jetframe::Exec::Parallel;
        config.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    const auto report = jetframe::run(config);
    if (output == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << jetframe::render_text(report);
    if (!jetframe::report_passed(report)) {
        std::cerr << "FAILED: " << report.at("first_failure").get<std::string>() << "\n";
        return 1;
    }
    return 0;
}
