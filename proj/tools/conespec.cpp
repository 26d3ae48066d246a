#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "conespec/config.hpp"
#include "conespec/errors.hpp"

using namespace conespec;

int main(int argc, char** argv) {
    CLI::App app{"spectra, cohomology and supertraces of model cone metrics"};
    app.require_subcommand(1, 1);
    std::string config_path, output_path, format;
    int jobs = 1;
    bool seedless = false;
    for (const char* verb : {"spectrum", "cohomology", "supertrace", "verify"}) {
        auto* sub = app.add_subcommand(verb);
        sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--output", output_path, "output file (default: config output.path, else stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--seedless", seedless, "run twice and require identical output");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string verb = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    if (!format.empty()) cfg.output.format = format;
    if (!output_path.empty()) cfg.output.path = output_path;

    CommandResult res = run_command(verb, cfg, jobs);
    if (seedless && (res.exit_code == 0 || res.exit_code == 1)) {
        CommandResult again = run_command(verb, cfg, jobs);
        if (again.text != res.text || again.exit_code != res.exit_code) {
            std::cerr << "nondeterministic output between two identical runs\n";
            return 3;
        }
    }
    if (res.exit_code >= 2) {
        std::cerr << res.text;
        return res.exit_code;
    }
    if (cfg.output.path.empty()) {
        std::cout << res.text;
    } else {
        std::ofstream out(cfg.output.path);
        if (!out) {
            std::cerr << "cannot write " << cfg.output.path << '\n';
            return 2;
        }
        out << res.text;
    }
    return res.exit_code;
}
