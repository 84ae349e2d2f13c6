#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dppgap/translation_kernel.hpp"

namespace dppgap {

struct KernelSpec {
    std::string name = "sine";
    double a = 1.0;
    std::string table_path;
};

struct ExperimentConfig {
    KernelSpec kernel;
    double L = 50.0;
    std::vector<double> s_values = {1.0};
    std::uint64_t trials = 5000;
    std::uint64_t master_seed = 42;
    int quadrature_order = 0; // 0 resolves to 6 nodes per unit length
    int workers = 1;
    std::string output_dir;   // empty resolves to $DPPGAP_OUTPUT_DIR or "."
    std::vector<std::string> warnings;
};

// Strict JSON parse: unknown keys anywhere are ConfigError.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

TranslationKernel kernel_from_spec(const KernelSpec& spec);
int resolved_order(const ExperimentConfig& config);
std::string resolved_output_dir(const ExperimentConfig& config);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfcheckReport {
    std::vector<CheckResult> checks;
    bool all_passed = false;
};

// Analytic cross-checks of every computational path against its
// independent counterpart; any thrown module error lands in the failing
// check's detail.
SelfcheckReport run_selfcheck(const ExperimentConfig& config);

struct TrialRecord {
    std::uint64_t trial_id = 0;
    bool failed = false;
    int n_points = 0;
    double min_spacing = std::numeric_limits<double>::infinity();
    double eta = std::numeric_limits<double>::infinity();
    std::vector<int> counts_below;
    std::vector<int> n1;
    std::vector<int> n2;
};

struct CountStats {
    double s = 0.0;
    double stilde = 0.0;
    double theoretical_mean = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    double var_over_mean = std::numeric_limits<double>::quiet_NaN();
    double se_var_over_mean = std::numeric_limits<double>::quiet_NaN();
    double p_fitted = std::numeric_limits<double>::quiet_NaN();
    double p_theoretical = std::numeric_limits<double>::quiet_NaN();
    double mean_n1 = 0.0;
    double mean_n2 = 0.0;
    double se_mean_n2 = 0.0;
    double bound_n2 = 0.0;
};

struct MonteCarloSummary {
    ExperimentConfig config;
    double alpha = 0.0;
    std::vector<TrialRecord> records;
    std::vector<CountStats> count_stats;
    std::vector<double> eta_grid;
    std::vector<double> eta_survival;
    std::vector<double> eta_target;
    std::vector<double> eta_deviation;
    double ks_distance = std::numeric_limits<double>::quiet_NaN();
    double mean_count = 0.0;
    double se_mean_count = 0.0;
    bool insufficient_for_gof = false;
    std::vector<std::uint64_t> failed_trials;
    double runtime_seconds = 0.0;
    std::string csv_path;
    std::string summary_path;
    std::string csv_hash;
};

// Builds the operator once, runs the trials across the configured
// workers with counter-based per-trial streams, writes trials.csv and
// summary.json into the resolved output directory. CSV bytes depend only
// on the config, never on worker count or scheduling.
MonteCarloSummary run_montecarlo(const ExperimentConfig& config);

} // namespace dppgap
