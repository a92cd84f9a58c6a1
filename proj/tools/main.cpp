// kmls: seed k centers with k-means++, improve them with sampled single-center
// swaps, and report the cost trajectories as JSON or CSV.
//
// Exit codes: 0 success, 2 usage error, 3 input parse error, 4 exact
// reference requested for an instance the oracle cannot enumerate.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kmls/errors.hpp"
#include "kmls/experiment.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitOracle = 4;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-means++ seeding with local search refinement"};

    kmls::ExperimentConfig cfg;
    std::string opt_mode = "none";
    std::string format = "json";
    std::string out_path;
    double epsilon = 0.0;
    std::size_t steps = 0;

    auto* input = app.add_option("--input", cfg.input_path, "Path to a CSV/whitespace point file");
    auto* generate = app.add_option(
        "--generate", cfg.generator,
        "Generator spec, e.g. gaussian_mixture:k=16,n=1600,d=8,separation=10,scatter=1");
    input->excludes(generate);

    app.add_option("--k", cfg.k, "Number of centers")->required();
    auto* eps_opt =
        app.add_option("--epsilon", epsilon, "Step budget as a fraction: ceil(epsilon * k)");
    auto* steps_opt = app.add_option("--steps", steps, "Explicit number of swap steps");
    eps_opt->excludes(steps_opt);

    app.add_option("--trials", cfg.trials, "Independent runs (trial t uses stream t)");
    app.add_option("--seed", cfg.seed, "Base seed; all randomness derives from (seed, stream)");
    app.add_option("--lloyd", cfg.lloyd_iters, "Lloyd iterations after the search");
    app.add_flag("--diagnostics", cfg.diagnostics,
                 "Record structural diagnostics (needs --opt exact or planted)");
    app.add_flag("--diagnostics-every-step", cfg.diagnostics_every_step,
                 "Snapshot after every step instead of {0, l/2, l}");
    app.add_option("--opt", opt_mode, "Reference clustering: exact, planted, or none")
        ->check(CLI::IsMember({"exact", "planted", "none"}));
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Output path (default: stdout)");
    app.add_option("--threads", cfg.threads, "Worker threads for trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (eps_opt->count()) cfg.epsilon = epsilon;
    if (steps_opt->count()) cfg.steps = steps;
    cfg.opt_mode = opt_mode == "exact"     ? kmls::OptMode::exact
                   : opt_mode == "planted" ? kmls::OptMode::planted
                                           : kmls::OptMode::none;
    cfg.format = format == "csv" ? kmls::ReportFormat::csv : kmls::ReportFormat::json;

    try {
        const kmls::ExperimentResult result = kmls::run_experiment(cfg);
        if (out_path.empty() || out_path == "-") {
            kmls::write_report(result, std::cout, cfg.format);
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot open '" << out_path << "' for writing\n";
                return kExitUsage;
            }
            kmls::write_report(result, out, cfg.format);
        }
        return 0;
    } catch (const kmls::OracleTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOracle;
    } catch (const kmls::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const kmls::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
