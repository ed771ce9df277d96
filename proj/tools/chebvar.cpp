// chebvar: prime counts in Chebotarev classes and their variance over
// arithmetic progressions.
//
//   chebvar <classify|theta|variance|thm1|thm2|check> --config <path>
//           [--out <dir>] [--workers N] [--seed S]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chebvar/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Chebotarev-class prime counts and Barban-Davenport-Halberstam variance experiments"};
    app.set_version_flag("--version", std::string("chebvar ") + chebvar::kVersion);
    app.require_subcommand(1, 1);

    chebvar::RunRequest request;
    std::string out_dir;
    unsigned workers = 0;
    std::uint64_t seed = 0;

    const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"classify", "Frobenius cycle type of every unramified prime up to max(x)"},
        {"theta", "theta(x; C, q, a) for admissible q <= Q at x = max(x)"},
        {"variance", "V(x, Q) for every configured x"},
        {"thm1", "V / (x Q log x) with Q checked against x (log x)^-M <= Q <= x"},
        {"thm2", "fit of the full-range variance against x^2 log x (totally non-Abelian only)"},
        {"check", "property checks on the configured context"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", request.config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
        sub->add_option("--workers", workers, "worker threads (overrides CHEBVAR_WORKERS and run.workers)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed for randomised checks (overrides run.seed)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return chebvar::kExitConfigError;
    }

    for (CLI::App* sub : app.get_subcommands()) {
        request.subcommand = sub->get_name();
        if (sub->count("--out")) request.out_dir = out_dir;
        if (sub->count("--workers")) request.workers = workers;
        if (sub->count("--seed")) request.seed = seed;
    }
    return chebvar::run(request, std::cout, std::cerr);
}
