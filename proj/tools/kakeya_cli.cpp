// Experiment runner: builds the configured geometry, runs the named
// experiment suite, and writes a JSON or CSV report. Exit codes: 0 when every
// asserted invariant passes, 1 on assertion failure, 2 on usage errors, 3
// when a resource cap is hit.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kakeya/experiments.hpp"

int main(int argc, char** argv) {
    kakeya::ExperimentConfig cfg;

    CLI::App app{"finite-field incidence geometry engine"};
    app.add_option("--experiment", cfg.experiment,
                   "one of: gauss levelset sphere heisenberg regulus threereg "
                   "inequalities refine harvest probe all")
        ->default_val("all");
    app.add_option("--p", cfg.p, "field characteristic (odd prime)")->default_val(3);
    app.add_option("--degree", cfg.degree, "1 for F_p, 2 for GF(p^2)")->default_val(1);
    app.add_option("--form", cfg.form, "diagonal form entries, e.g. 1,1,1,1")
        ->delimiter(',');
    app.add_option("--frame", cfg.frame, "model | random")->default_val("model");
    app.add_option("--n-refine", cfg.n_refine, "refinement stages")->default_val(3);
    app.add_option("--seed", cfg.seed, "PRNG seed (std::mt19937_64)")->default_val(42);
    app.add_option("--jobs", cfg.jobs, "worker pool width")->default_val(1);
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--format", cfg.format, "json | csv")->default_val("json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        kakeya::Report report = kakeya::run_experiment(cfg);
        std::string text = cfg.format == "csv" ? report.to_csv(cfg.experiment)
                                               : report.to_json().dump(2) + "\n";
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(cfg.out);
            if (!f) {
                std::cerr << "cannot open output file: " << cfg.out << "\n";
                return 2;
            }
            f << text;
        }
        std::cerr << "asserted " << report.asserted() << ", passed " << report.passed()
                  << "\n";
        return report.all_passed() ? 0 : 1;
    } catch (const kakeya::ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
