#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "dppgap/experiment.hpp"
#include "dppgap/modified_intensity.hpp"
#include "dppgap/translation_kernel.hpp"

namespace {

void print_selfcheck(const dppgap::SelfcheckReport& report) {
    for (const dppgap::CheckResult& check : report.checks)
        std::printf("[%s] %-24s %s\n", check.passed ? "PASS" : "FAIL",
                    check.name.c_str(), check.detail.c_str());
}

void print_intensity_row(const dppgap::TranslationKernel& kernel,
                         double stilde) {
    const double fredholm = dppgap::modified_intensity_fredholm(kernel, stilde);
    const dppgap::SeriesIntensity series =
        dppgap::modified_intensity_series(kernel, stilde, 5);
    const double limit = kernel.alpha * stilde * stilde * stilde;
    std::printf("%-8.4g %-14.8e %-14.8e %-12.8g %-10.3g\n", stilde, fredholm,
                series.value, fredholm / limit, series.truncation_bound);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spacing statistics of determinantal point processes"};
    app.require_subcommand(1);

    std::string config_path;
    int workers_override = 0;
    bool skip_selfcheck = false;
    dppgap::KernelSpec spec;
    double stilde = 0.0;

    CLI::App* selfcheck_cmd =
        app.add_subcommand("selfcheck", "run the analytic cross-checks");
    selfcheck_cmd->add_option("--config", config_path, "JSON config path")
        ->required();

    CLI::App* run_cmd =
        app.add_subcommand("run", "run the Monte Carlo campaign");
    run_cmd->add_option("--config", config_path, "JSON config path")
        ->required();
    run_cmd->add_option("--workers", workers_override,
                        "override the worker count");
    run_cmd->add_flag("--skip-selfcheck", skip_selfcheck,
                      "launch trials without the analytic cross-checks");

    CLI::App* alpha_cmd =
        app.add_subcommand("alpha", "print the cubic-law coefficient");
    alpha_cmd->add_option("--kernel", spec.name, "sine|gaussian|scaled_indicator|table")
        ->required();
    alpha_cmd->add_option("--a", spec.a, "amplitude for scaled_indicator");
    alpha_cmd->add_option("--table", spec.table_path, "profile table path");

    CLI::App* intensity_cmd = app.add_subcommand(
        "intensity", "print the thinned-intensity ratio table");
    intensity_cmd
        ->add_option("--kernel", spec.name, "sine|gaussian|scaled_indicator|table")
        ->required();
    intensity_cmd->add_option("--a", spec.a, "amplitude for scaled_indicator");
    intensity_cmd->add_option("--table", spec.table_path, "profile table path");
    intensity_cmd->add_option("--stilde", stilde,
                              "single threshold instead of the ladder");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selfcheck_cmd->parsed()) {
            const dppgap::SelfcheckReport report =
                dppgap::run_selfcheck(dppgap::load_experiment_config(config_path));
            print_selfcheck(report);
            return report.all_passed ? 0 : 2;
        }

        if (run_cmd->parsed()) {
            dppgap::ExperimentConfig config =
                dppgap::load_experiment_config(config_path);
            if (workers_override > 0) config.workers = workers_override;
            for (const std::string& warning : config.warnings)
                std::fprintf(stderr, "warning: %s\n", warning.c_str());
            if (!skip_selfcheck) {
                const dppgap::SelfcheckReport report =
                    dppgap::run_selfcheck(config);
                print_selfcheck(report);
                if (!report.all_passed) return 2;
            }
            const dppgap::MonteCarloSummary summary =
                dppgap::run_montecarlo(config);
            std::printf("trials %llu  failed %zu  mean count %.6g (se %.3g)\n",
                        static_cast<unsigned long long>(config.trials),
                        summary.failed_trials.size(), summary.mean_count,
                        summary.se_mean_count);
            for (const dppgap::CountStats& cs : summary.count_stats)
                std::printf(
                    "s %.4g  mean %.6g (se %.3g)  var/mean %.4g  p_fit %.4g  "
                    "p_theory %.4g  n2 %.4g (bound %.4g)\n",
                    cs.s, cs.mean, cs.se_mean, cs.var_over_mean, cs.p_fitted,
                    cs.p_theoretical, cs.mean_n2, cs.bound_n2);
            std::printf("eta KS distance %.6g\n", summary.ks_distance);
            std::printf("wrote %s and %s (csv fnv1a64 %s)\n",
                        summary.csv_path.c_str(), summary.summary_path.c_str(),
                        summary.csv_hash.c_str());
            return 0;
        }

        const dppgap::TranslationKernel kernel = dppgap::kernel_from_spec(spec);
        if (alpha_cmd->parsed()) {
            std::printf("%.12e\n", kernel.alpha);
            return 0;
        }

        std::printf("%-8s %-14s %-14s %-12s %-10s\n", "stilde", "fredholm",
                    "series", "ratio", "tail");
        if (intensity_cmd->count("--stilde") > 0) {
            print_intensity_row(kernel, stilde);
        } else {
            for (double value : {0.2, 0.1, 0.05, 0.025})
                print_intensity_row(kernel, value);
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
