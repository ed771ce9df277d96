#include "chebvar/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <vector>

#include "chebvar/checks.hpp"
#include "chebvar/config.hpp"
#include "chebvar/errors.hpp"
#include "chebvar/report.hpp"

namespace chebvar {

unsigned resolve_workers(std::optional<unsigned> flag, unsigned configured) {
    if (flag) return std::max(1u, *flag);
    if (const char* env = std::getenv("CHEBVAR_WORKERS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, configured);
}

namespace {

struct Artifacts {
    std::vector<std::pair<std::string, std::string>> files;  // name, content

    void add(const std::string& name, const std::string& content) { files.emplace_back(name, content); }
};

FrobeniusTable classify_up_to(const GaloisContext& ctx, std::uint64_t x, const ExperimentConfig& cfg) {
    SieveOptions sieve;
    sieve.memory_budget = static_cast<std::size_t>(cfg.run.memory_budget_mb) << 20;
    const PrimeList primes = sieve_primes(x, sieve);
    return classify_primes(ctx, x, primes, cfg.run.workers);
}

int execute(const RunRequest& request, ExperimentConfig cfg, Artifacts& artifacts, std::ostream& out) {
    const GaloisContext ctx = build_context(cfg.context);
    const ExperimentOptions opt = cfg.experiment_options();
    const auto& xs = cfg.run.x;
    const std::uint64_t x_max = *std::max_element(xs.begin(), xs.end());
    const std::string& cmd = request.subcommand;

    if (cmd == "classify") {
        const FrobeniusTable table = classify_up_to(ctx, x_max, cfg);
        std::ostringstream a, b;
        emit_classification(table, a);
        emit_frequencies(table, b);
        artifacts.add("classify.csv", a.str());
        artifacts.add("frequencies.csv", b.str());
        if (!table.entries.empty()) {
            out << "chebotarev fraction " << format_double(chebotarev_fraction(table)) << " (class density "
                << format_double(ctx.density()) << ") over " << table.entries.size() << " primes\n";
        }
        return kExitOk;
    }
    if (cmd == "theta") {
        const FrobeniusTable table = classify_up_to(ctx, x_max, cfg);
        const ThetaTable theta = theta_table(ctx, table, cfg.run.q_rule.resolve(x_max), opt);
        std::ostringstream a;
        emit_theta(theta, a);
        artifacts.add("theta.csv", a.str());
        out << "theta table for x = " << x_max << ", Q = " << theta.Q() << "\n";
        return kExitOk;
    }
    if (cmd == "variance" || cmd == "thm1" || cmd == "thm2") {
        const FrobeniusTable table = classify_up_to(ctx, x_max, cfg);
        std::ostringstream a;
        if (cmd == "variance") {
            const VarianceReport report = variance_report(ctx, table, xs, cfg.run.q_rule, opt);
            emit_report(report, a);
            artifacts.add("variance.csv", a.str());
        } else if (cmd == "thm1") {
            const VarianceReport report = thm1_report(ctx, table, xs, cfg.run.q_rule, cfg.run.M, opt);
            emit_report(report, a);
            artifacts.add("thm1.csv", a.str());
            for (const auto& r : report.rows)
                out << "x = " << r.x << ", Q = " << r.Q << ": V/(xQ log x) = " << format_double(r.ratio) << "\n";
        } else {
            const VarianceReport report = thm2_report(ctx, table, xs, cfg.run.q_rule, opt);
            if (report.fitted_slope) {
                emit_thm2(report, a);
                artifacts.add("thm2.csv", a.str());
                out << "fitted slope " << format_double(*report.fitted_slope) << " (|C|/|G| = "
                    << format_double(ctx.density()) << "), intercept " << format_double(*report.fitted_intercept)
                    << "\n";
            } else {
                emit_thm2_partial(report, a);
                artifacts.add("thm2_partial.csv", a.str());
                out << "fitted c' " << format_double(*report.fitted_c_prime) << "\n";
            }
        }
        return kExitOk;
    }
    if (cmd == "check") {
        CheckOptions options;
        options.x = std::min<std::uint64_t>(x_max, 10'000);
        options.seed = cfg.run.seed;
        options.experiment = opt;
        const auto results = run_property_checks(ctx, options);
        std::ostringstream a;
        a << "name,status,detail\n";
        bool ok = true;
        for (const auto& r : results) {
            ok = ok && r.passed;
            out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
            std::string detail = r.detail;
            std::replace(detail.begin(), detail.end(), ',', ';');
            a << r.name << ',' << (r.passed ? "pass" : "fail") << ',' << detail << '\n';
        }
        artifacts.add("check.csv", a.str());
        return ok ? kExitOk : kExitCheckFailed;
    }
    throw ConfigError("unknown subcommand '" + cmd + "' (expected classify, theta, variance, thm1, thm2 or check)");
}

}  // namespace

int run(const RunRequest& request, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    try {
        ExperimentConfig cfg = load_config(request.config_path);
        cfg.run.workers = resolve_workers(request.workers, cfg.run.workers);
        if (request.seed) cfg.run.seed = *request.seed;
        if (request.out_dir) cfg.output.directory = *request.out_dir;

        Artifacts artifacts;
        const int status = execute(request, cfg, artifacts, out);

        const std::filesystem::path dir(cfg.output.directory);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
        for (const auto& [name, content] : artifacts.files) write_text_file((dir / name).string(), content);

        if (cfg.output.manifest) {
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            std::ostringstream m;
            m << "tool = chebvar " << kVersion << "\n";
            m << "subcommand = " << request.subcommand << "\n";
            m << "config_path = " << request.config_path << "\n";
            m << "workers = " << cfg.run.workers << "\n";
            m << "wall_time_s = " << format_double(seconds) << "\n";
            m << "exit_status = " << status << "\n";
            for (const auto& f : artifacts.files) m << "artifact = " << f.first << "\n";
            m << "\n# effective configuration\n" << emit_config(cfg);
            write_text_file((dir / "manifest.txt").string(), m.str());
        }
        return status;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResourceError;
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace chebvar
