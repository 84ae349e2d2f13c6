#include "dppgap/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include "dppgap/conditional_kernel.hpp"
#include "dppgap/correlation_algebra.hpp"
#include "dppgap/errors.hpp"
#include "dppgap/gof.hpp"
#include "dppgap/modified_intensity.hpp"
#include "dppgap/nystrom.hpp"
#include "dppgap/sampler.hpp"
#include "dppgap/spacing_stats.hpp"
#include "dppgap/spectral_density.hpp"

namespace dppgap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const std::vector<double> kEtaGrid = {0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};

double as_number(const json& value, const std::string& key) {
    if (!value.is_number())
        throw ConfigError("key '" + key + "' must be a number");
    return value.get<double>();
}

std::uint64_t as_count(const json& value, const std::string& key) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    throw ConfigError("key '" + key + "' must be a nonnegative integer");
}

int as_int(const json& value, const std::string& key) {
    if (!value.is_number_integer())
        throw ConfigError("key '" + key + "' must be an integer");
    return value.get<int>();
}

std::string as_string(const json& value, const std::string& key) {
    if (!value.is_string())
        throw ConfigError("key '" + key + "' must be a string");
    return value.get<std::string>();
}

KernelSpec parse_kernel_spec(const json& node) {
    if (!node.is_object()) throw ConfigError("'kernel' must be an object");
    KernelSpec spec;
    bool has_a = false;
    for (const auto& [key, value] : node.items()) {
        if (key == "name") {
            spec.name = as_string(value, "kernel.name");
        } else if (key == "a") {
            spec.a = as_number(value, "kernel.a");
            has_a = true;
        } else if (key == "path") {
            spec.table_path = as_string(value, "kernel.path");
        } else {
            throw ConfigError("unknown kernel key '" + key + "'");
        }
    }
    if (spec.name != "sine" && spec.name != "gaussian" &&
        spec.name != "scaled_indicator" && spec.name != "table")
        throw ConfigError("unknown kernel name '" + spec.name + "'");
    if (has_a && spec.name != "scaled_indicator")
        throw ConfigError("'kernel.a' applies only to scaled_indicator");
    if (spec.name == "table" && spec.table_path.empty())
        throw ConfigError("table kernel requires 'kernel.path'");
    if (spec.name != "table" && !spec.table_path.empty())
        throw ConfigError("'kernel.path' applies only to table kernels");
    return spec;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 1099511628211ULL;
    }
    return hash;
}

struct RatioLadder {
    std::vector<double> stildes;
    std::vector<double> ratios;
    double extrapolated = kNaN;
    bool monotone = false;
};

RatioLadder intensity_ratio_ladder(const TranslationKernel& kernel) {
    RatioLadder ladder;
    ladder.stildes = {0.2, 0.1, 0.05, 0.025};
    for (double stilde : ladder.stildes) {
        const SeriesIntensity series =
            modified_intensity_series(kernel, stilde, 5);
        ladder.ratios.push_back(series.value /
                                (kernel.alpha * stilde * stilde * stilde));
    }
    ladder.monotone = true;
    for (std::size_t i = 1; i < ladder.ratios.size(); ++i) {
        if (std::abs(ladder.ratios[i] - 1.0) >=
            std::abs(ladder.ratios[i - 1] - 1.0))
            ladder.monotone = false;
    }
    const double r_half = ladder.ratios[3];
    const double r_full = ladder.ratios[2];
    ladder.extrapolated = (4.0 * r_half - r_full) / 3.0;
    return ladder;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");

    ExperimentConfig config;
    for (const auto& [key, value] : root.items()) {
        if (key == "kernel") {
            config.kernel = parse_kernel_spec(value);
        } else if (key == "L") {
            config.L = as_number(value, "L");
        } else if (key == "s_values") {
            if (!value.is_array() || value.empty())
                throw ConfigError("'s_values' must be a nonempty array");
            config.s_values.clear();
            for (const auto& item : value)
                config.s_values.push_back(as_number(item, "s_values[]"));
        } else if (key == "trials") {
            config.trials = as_count(value, "trials");
        } else if (key == "master_seed") {
            config.master_seed = as_count(value, "master_seed");
        } else if (key == "quadrature_order") {
            config.quadrature_order = as_int(value, "quadrature_order");
        } else if (key == "workers") {
            config.workers = as_int(value, "workers");
        } else if (key == "output_dir") {
            config.output_dir = as_string(value, "output_dir");
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    if (!(config.L > 0.0)) throw ConfigError("'L' must be positive");
    if (config.trials < 1) throw ConfigError("'trials' must be at least 1");
    if (config.workers < 1) throw ConfigError("'workers' must be at least 1");
    if (config.quadrature_order != 0 && config.quadrature_order < 4)
        throw ConfigError("'quadrature_order' must be 0 (auto) or at least 4");
    for (std::size_t i = 0; i < config.s_values.size(); ++i) {
        if (!(config.s_values[i] > 0.0))
            throw ConfigError("'s_values' entries must be positive");
        if (i > 0 && config.s_values[i] <= config.s_values[i - 1])
            throw ConfigError("'s_values' must be strictly ascending");
    }
    if (config.L < 10.0)
        config.warnings.push_back(
            "L below 10: edge effects dominate the statistics");
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

TranslationKernel kernel_from_spec(const KernelSpec& spec) {
    if (spec.name == "table")
        return kernel_from_density(validate_density(table_density(spec.table_path)));
    return kernel_from_density(
        validate_density(builtin_density(spec.name, spec.a)));
}

int resolved_order(const ExperimentConfig& config) {
    if (config.quadrature_order > 0) return config.quadrature_order;
    return std::max(64, static_cast<int>(std::ceil(6.0 * config.L)));
}

std::string resolved_output_dir(const ExperimentConfig& config) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv("DPPGAP_OUTPUT_DIR"); env && *env)
        return env;
    return ".";
}

SelfcheckReport run_selfcheck(const ExperimentConfig& config) {
    SelfcheckReport report;
    auto run_check =
        [&](const std::string& name,
            const std::function<std::pair<bool, std::string>()>& body) {
            try {
                auto [ok, detail] = body();
                report.checks.push_back({name, ok, std::move(detail)});
            } catch (const std::exception& e) {
                report.checks.push_back(
                    {name, false, std::string("error: ") + e.what()});
            }
        };

    TranslationKernel kernel;
    bool built = false;
    run_check("kernel_construction", [&]() -> std::pair<bool, std::string> {
        kernel = kernel_from_spec(config.kernel);
        built = true;
        return {true, "name=" + kernel.name +
                          " g0=" + format_double(kernel.g0) +
                          " alpha=" + format_double(kernel.alpha)};
    });
    if (!built) return report;

    run_check("alpha_two_path", [&]() -> std::pair<bool, std::string> {
        const double via_moments = alpha(kernel);
        const double via_fd = alpha_via_fd(kernel);
        const double rel =
            std::abs(via_moments - via_fd) / std::max(1e-300, via_moments);
        return {rel <= 1e-6, "moments=" + format_double(via_moments) +
                                 " curvature=" + format_double(via_fd) +
                                 " rel=" + format_double(rel)};
    });

    std::mt19937_64 rng(20260819);
    std::uniform_real_distribution<double> place(0.0, 3.0);
    auto random_points = [&](int k, double min_gap) {
        std::vector<double> pts;
        while (static_cast<int>(pts.size()) < k) {
            const double x = place(rng);
            bool distinct = true;
            for (double p : pts) distinct = distinct && std::abs(x - p) > min_gap;
            if (distinct) pts.push_back(x);
        }
        return pts;
    };

    run_check("cluster_round_trip", [&]() -> std::pair<bool, std::string> {
        double worst_pair = 0.0;
        double worst_trip = 0.0;
        for (int k = 2; k <= 5; ++k) {
            for (int rep = 0; rep < 40; ++rep) {
                const PointTuple tuple(random_points(k, 1e-3));
                const double cyc = cluster_cyclic(tuple, kernel);
                const double part = cluster_from_correlations(tuple, kernel);
                worst_pair = std::max(worst_pair, std::abs(cyc - part));
                const double corr = correlation(tuple, kernel);
                const double rebuilt = correlations_from_clusters(
                    tuple, [&](std::span<const double> pts) {
                        return cluster_cyclic(PointTuple({pts.begin(), pts.end()}),
                                              kernel);
                    });
                worst_trip = std::max(worst_trip, std::abs(corr - rebuilt));
            }
        }
        const bool ok = worst_pair <= 1e-10 && worst_trip <= 1e-10;
        return {ok, "max_pair_diff=" + format_double(worst_pair) +
                        " max_round_trip=" + format_double(worst_trip)};
    });

    run_check("cumulant_identities", [&]() -> std::pair<bool, std::string> {
        const std::vector<double> v = {2.0, -3.0, 5.0, -7.0, 11.0};
        const std::vector<double> c = cumulants_from_cluster_integrals(v, 5);
        const bool ok = c[0] == 2.0 && c[1] == -1.0 && c[2] == -2.0 &&
                        c[3] == 4.0 && c[4] == 23.0;
        std::string detail = "C=";
        for (double x : c) detail += " " + format_double(x);
        return {ok, detail};
    });

    run_check("fischer_inequality", [&]() -> std::pair<bool, std::string> {
        std::uniform_int_distribution<int> size(1, 4);
        int held = 0;
        for (int rep = 0; rep < 1000; ++rep) {
            const int p = size(rng);
            const int q = size(rng);
            const std::vector<double> pts = random_points(p + q, 1e-3);
            const Eigen::MatrixXd m = gram_matrix(pts, kernel);
            const FischerResult result =
                fischer_check(m.topLeftCorner(p, p), m.bottomRightCorner(q, q),
                              m.topRightCorner(p, q));
            held += result.holds ? 1 : 0;
        }
        return {held == 1000, "held " + std::to_string(held) + "/1000"};
    });

    run_check("conditional_vanishing", [&]() -> std::pair<bool, std::string> {
        double worst = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            const double x = place(rng);
            const double y = x + 0.3 + place(rng);
            const double u = place(rng) - 1.0;
            const ConditionalKernel ck = conditional_kernel(kernel, x, y);
            worst = std::max({worst, std::abs(ck(u, x)), std::abs(ck(u, y)),
                              std::abs(ck(x, u)), std::abs(ck(y, u)),
                              std::abs(ck(x, x)), std::abs(ck(y, y))});
        }
        return {worst <= 1e-10, "max_residual=" + format_double(worst)};
    });

    run_check("intensity_two_path", [&]() -> std::pair<bool, std::string> {
        double worst = 0.0;
        for (const auto& [stilde, m_max] :
             std::vector<std::pair<double, int>>{{0.1, 4}, {0.2, 5}}) {
            const double fredholm = modified_intensity_fredholm(kernel, stilde);
            const SeriesIntensity series =
                modified_intensity_series(kernel, stilde, m_max);
            worst = std::max(worst, std::abs(fredholm - series.value) /
                                        std::max(1e-300, std::abs(fredholm)));
        }
        return {worst <= 1e-6, "max_rel_diff=" + format_double(worst)};
    });

    run_check("intensity_ratio_ladder", [&]() -> std::pair<bool, std::string> {
        const RatioLadder ladder = intensity_ratio_ladder(kernel);
        std::string detail = "ratios";
        for (double r : ladder.ratios) detail += " " + format_double(r);
        detail += " extrapolated " + format_double(ladder.extrapolated);
        const bool ok =
            ladder.monotone && std::abs(ladder.extrapolated - 1.0) <= 0.01;
        return {ok, detail};
    });

    run_check("en2_scaling_ladder", [&]() -> std::pair<bool, std::string> {
        const double b4 = en2_bound(kernel, 1.0, 0.2);
        const double b2 = en2_bound(kernel, 1.0, 0.1);
        const double b1 = en2_bound(kernel, 1.0, 0.05);
        const double e1 = std::log2(b4 / b2);
        const double e2 = std::log2(b2 / b1);
        const bool ok = std::isfinite(e1) && std::isfinite(e2) && e1 > 7.0 &&
                        e1 < 9.0 && e2 > 7.0 && e2 < 9.0;
        return {ok, "bounds " + format_double(b4) + " " + format_double(b2) +
                        " " + format_double(b1) + " exponents " +
                        format_double(e1) + " " + format_double(e2)};
    });

    report.all_passed = true;
    for (const CheckResult& check : report.checks)
        report.all_passed = report.all_passed && check.passed;
    return report;
}

namespace {

struct SeriesStats {
    double mean = kNaN;
    double variance = kNaN;
    double se_mean = kNaN;
};

SeriesStats series_stats(const std::vector<double>& values) {
    SeriesStats stats;
    const auto n = static_cast<double>(values.size());
    if (values.empty()) return stats;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    stats.mean = sum / n;
    if (values.size() >= 2) {
        stats.variance =
            std::max(0.0, (sum_sq - n * stats.mean * stats.mean) / (n - 1.0));
        stats.se_mean = std::sqrt(stats.variance / n);
    }
    return stats;
}

// Delete-one jackknife for the variance-to-mean ratio.
double jackknife_se_var_over_mean(const std::vector<double>& values) {
    const auto n = static_cast<double>(values.size());
    if (values.size() < 3) return kNaN;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    std::vector<double> leave_out;
    leave_out.reserve(values.size());
    for (double v : values) {
        const double s1 = sum - v;
        const double s2 = sum_sq - v * v;
        const double mean = s1 / (n - 1.0);
        if (!(mean > 0.0)) return kNaN;
        const double var =
            std::max(0.0, (s2 - (n - 1.0) * mean * mean) / (n - 2.0));
        leave_out.push_back(var / mean);
    }
    double mean_theta = 0.0;
    for (double t : leave_out) mean_theta += t;
    mean_theta /= n;
    double ss = 0.0;
    for (double t : leave_out) ss += (t - mean_theta) * (t - mean_theta);
    return std::sqrt((n - 1.0) / n * ss);
}

} // namespace

MonteCarloSummary run_montecarlo(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();

    MonteCarloSummary summary;
    summary.config = config;
    const TranslationKernel kernel = kernel_from_spec(config.kernel);
    summary.alpha = kernel.alpha;

    const int order = resolved_order(config);
    const DiscretizedOperator op = discretize(kernel, 0.0, config.L, order);
    const SpectralSampler sampler(op);

    const std::size_t n_s = config.s_values.size();
    const double l_third = std::pow(config.L, -1.0 / 3.0);

    std::vector<TrialRecord> records(config.trials);
    std::atomic<std::uint64_t> next{0};
    const auto work = [&]() {
        for (;;) {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= config.trials) return;
            TrialRecord& record = records[t];
            record.trial_id = t;
            try {
                const Configuration c = sampler.sample(config.master_seed, t);
                record.n_points = static_cast<int>(c.points.size());
                const SpacingSet set = spacings(c);
                if (!set.too_few) {
                    record.min_spacing = *std::min_element(set.spacings.begin(),
                                                           set.spacings.end());
                    record.eta = std::cbrt(config.L) * record.min_spacing;
                }
                for (double s : config.s_values) {
                    record.counts_below.push_back(count_below(set, s));
                    const ModifiedConfig modified = s_modify(c, s * l_third);
                    record.n1.push_back(modified.n1);
                    record.n2.push_back(modified.n2);
                }
            } catch (const Error&) {
                record.failed = true;
                record.n_points = -1;
                record.min_spacing = kNaN;
                record.eta = kNaN;
                record.counts_below.assign(n_s, -1);
                record.n1.assign(n_s, -1);
                record.n2.assign(n_s, -1);
            }
        }
    };

    const int worker_count = std::max(
        1, std::min<int>(config.workers,
                         static_cast<int>(std::min<std::uint64_t>(
                             config.trials, 1024))));
    if (worker_count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) pool.emplace_back(work);
        for (std::thread& thread : pool) thread.join();
    }

    for (const TrialRecord& record : records)
        if (record.failed) summary.failed_trials.push_back(record.trial_id);
    if (static_cast<double>(summary.failed_trials.size()) >
        0.01 * static_cast<double>(config.trials))
        throw Error("more than 1% of trials failed; aborting the run");

    std::vector<const TrialRecord*> valid;
    valid.reserve(records.size());
    for (const TrialRecord& record : records)
        if (!record.failed) valid.push_back(&record);
    summary.insufficient_for_gof = valid.size() < 1000;

    {
        std::vector<double> n_points;
        n_points.reserve(valid.size());
        for (const TrialRecord* r : valid)
            n_points.push_back(static_cast<double>(r->n_points));
        const SeriesStats stats = series_stats(n_points);
        summary.mean_count = stats.mean;
        summary.se_mean_count = stats.se_mean;
    }

    for (std::size_t j = 0; j < n_s; ++j) {
        CountStats cs;
        cs.s = config.s_values[j];
        cs.stilde = cs.s * l_third;
        cs.theoretical_mean = kernel.alpha * cs.s * cs.s * cs.s;

        std::vector<double> counts;
        std::vector<double> n2_values;
        std::vector<int> count_ints;
        counts.reserve(valid.size());
        for (const TrialRecord* r : valid) {
            counts.push_back(static_cast<double>(r->counts_below[j]));
            count_ints.push_back(r->counts_below[j]);
            n2_values.push_back(static_cast<double>(r->n2[j]));
            cs.mean_n1 += static_cast<double>(r->n1[j]);
        }
        cs.mean_n1 = valid.empty() ? kNaN : cs.mean_n1 / static_cast<double>(valid.size());

        const SeriesStats stats = series_stats(counts);
        cs.mean = stats.mean;
        cs.variance = stats.variance;
        cs.se_mean = stats.se_mean;
        if (stats.mean > 0.0 && std::isfinite(stats.variance)) {
            cs.var_over_mean = stats.variance / stats.mean;
            cs.se_var_over_mean = jackknife_se_var_over_mean(counts);
        }

        const SeriesStats n2_stats = series_stats(n2_values);
        cs.mean_n2 = n2_stats.mean;
        cs.se_mean_n2 = n2_stats.se_mean;
        try {
            cs.bound_n2 = en2_bound(kernel, config.L, cs.stilde);
        } catch (const std::exception&) {
            cs.bound_n2 = kNaN;
        }

        if (!summary.insufficient_for_gof) {
            try {
                if (cs.mean > 0.0)
                    cs.p_fitted = poisson_gof(count_ints, cs.mean, true).p_value;
            } catch (const std::exception&) {
            }
            try {
                cs.p_theoretical =
                    poisson_gof(count_ints, cs.theoretical_mean, false).p_value;
            } catch (const std::exception&) {
            }
        }
        summary.count_stats.push_back(std::move(cs));
    }

    summary.eta_grid = kEtaGrid;
    std::vector<double> etas;
    etas.reserve(valid.size());
    for (const TrialRecord* r : valid) etas.push_back(r->eta);
    try {
        const GofReport report =
            survival_vs_weibull(etas, kernel.alpha, kEtaGrid);
        summary.ks_distance = report.value;
        summary.eta_deviation = report.deviations;
        for (std::size_t i = 0; i < kEtaGrid.size(); ++i) {
            const double target =
                std::exp(-kernel.alpha * std::pow(kEtaGrid[i], 3));
            summary.eta_target.push_back(target);
            summary.eta_survival.push_back(report.deviations[i] + target);
        }
    } catch (const InsufficientTrials&) {
        summary.insufficient_for_gof = true;
    }

    const std::string dir = resolved_output_dir(config);
    std::filesystem::create_directories(dir);

    std::string csv;
    csv.reserve(records.size() * 96 + 128);
    csv += "trial_id,n_points,min_spacing,eta";
    for (std::size_t j = 0; j < n_s; ++j) {
        const std::string suffix = "_s" + std::to_string(j);
        csv += ",count_below" + suffix + ",n1" + suffix + ",n2" + suffix;
    }
    csv += "\n";
    for (const TrialRecord& record : records) {
        csv += std::to_string(record.trial_id);
        csv += ',';
        csv += std::to_string(record.n_points);
        csv += ',';
        csv += format_double(record.min_spacing);
        csv += ',';
        csv += format_double(record.eta);
        for (std::size_t j = 0; j < n_s; ++j) {
            csv += ',';
            csv += std::to_string(record.counts_below[j]);
            csv += ',';
            csv += std::to_string(record.n1[j]);
            csv += ',';
            csv += std::to_string(record.n2[j]);
        }
        csv += '\n';
    }

    char hash_buf[24];
    std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(csv)));
    summary.csv_hash = hash_buf;
    summary.csv_path = (std::filesystem::path(dir) / "trials.csv").string();
    {
        std::ofstream out(summary.csv_path, std::ios::binary);
        if (!out) throw Error("cannot write " + summary.csv_path);
        out << csv;
    }

    summary.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    ordered_json sj;
    ordered_json kernel_json;
    kernel_json["name"] = config.kernel.name;
    if (config.kernel.name == "scaled_indicator")
        kernel_json["a"] = config.kernel.a;
    if (config.kernel.name == "table")
        kernel_json["path"] = config.kernel.table_path;
    sj["config"] = {{"kernel", kernel_json},
                    {"L", config.L},
                    {"s_values", config.s_values},
                    {"trials", config.trials},
                    {"master_seed", config.master_seed},
                    {"quadrature_order", order},
                    {"workers", config.workers},
                    {"output_dir", dir}};
    sj["alpha"] = summary.alpha;
    sj["n_trials"] = config.trials;
    sj["failed_trials"] = summary.failed_trials;
    sj["mean_count"] = summary.mean_count;
    sj["se_mean_count"] = summary.se_mean_count;
    sj["insufficient_for_gof"] = summary.insufficient_for_gof;
    sj["counts"] = ordered_json::array();
    for (const CountStats& cs : summary.count_stats) {
        sj["counts"].push_back({{"s", cs.s},
                                {"stilde", cs.stilde},
                                {"theoretical_mean", cs.theoretical_mean},
                                {"mean", cs.mean},
                                {"variance", cs.variance},
                                {"se_mean", cs.se_mean},
                                {"var_over_mean", cs.var_over_mean},
                                {"se_var_over_mean", cs.se_var_over_mean},
                                {"p_fitted_mean", cs.p_fitted},
                                {"p_theoretical_mean", cs.p_theoretical},
                                {"mean_n1", cs.mean_n1},
                                {"mean_n2", cs.mean_n2},
                                {"se_mean_n2", cs.se_mean_n2},
                                {"en2_bound", cs.bound_n2}});
    }
    sj["eta"] = {{"grid", summary.eta_grid},
                 {"survival", summary.eta_survival},
                 {"target", summary.eta_target},
                 {"deviation", summary.eta_deviation},
                 {"ks_distance", summary.ks_distance}};
    sj["csv_file"] = "trials.csv";
    sj["csv_fnv1a64"] = summary.csv_hash;
    sj["runtime_seconds"] = summary.runtime_seconds;

    summary.summary_path =
        (std::filesystem::path(dir) / "summary.json").string();
    {
        std::ofstream out(summary.summary_path, std::ios::binary);
        if (!out) throw Error("cannot write " + summary.summary_path);
        out << sj.dump(2) << "\n";
    }

    summary.records = std::move(records);
    return summary;
}

} // namespace dppgap
