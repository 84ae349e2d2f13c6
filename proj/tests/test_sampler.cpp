#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dppgap/errors.hpp"
#include "dppgap/nystrom.hpp"
#include "dppgap/quadrature.hpp"
#include "dppgap/sampler.hpp"
#include "dppgap/spectral_density.hpp"
#include "dppgap/translation_kernel.hpp"

using namespace dppgap;
using std::numbers::pi;

namespace {

const TranslationKernel& sine_kernel() {
    static const TranslationKernel k =
        kernel_from_density(validate_density(builtin_density("sine")));
    return k;
}

const TranslationKernel& half_amplitude_kernel() {
    static const TranslationKernel k =
        kernel_from_density(validate_density(builtin_density("scaled_indicator", 0.5)));
    return k;
}

const SpectralSampler& sine_sampler_10() {
    static const SpectralSampler s(discretize(sine_kernel(), 0.0, 10.0, 80));
    return s;
}

std::vector<Configuration> draw_trials(const SpectralSampler& sampler,
                                       std::uint64_t seed, int n) {
    std::vector<Configuration> trials;
    trials.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        trials.push_back(sampler.sample(seed, static_cast<std::uint64_t>(t)));
    return trials;
}

struct MomentSummary {
    double mean = 0.0;
    double var = 0.0;
    double se_mean = 0.0;
};

MomentSummary count_moments(const std::vector<Configuration>& trials) {
    MomentSummary m;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const Configuration& trial : trials) {
        const auto n = static_cast<double>(trial.points.size());
        sum += n;
        sum_sq += n * n;
    }
    const auto t = static_cast<double>(trials.size());
    m.mean = sum / t;
    m.var = (sum_sq - t * m.mean * m.mean) / (t - 1.0);
    m.se_mean = std::sqrt(m.var / t);
    return m;
}

} // namespace

TEST_SUITE_BEGIN("sampler");

TEST_CASE("identical seed and trial id reproduce the draw bit for bit") {
    const auto op = discretize(sine_kernel(), 0.0, 10.0, 80);
    const SpectralSampler first(op);
    const SpectralSampler second(op);

    const Configuration a = first.sample(7, 3);
    const Configuration b = first.sample(7, 3);
    const Configuration c = second.sample(7, 3);
    const Configuration d = sample(op, 7, 3);

    REQUIRE(a.points.size() > 0);
    CHECK(a.points == b.points);
    CHECK(a.points == c.points);
    CHECK(a.points == d.points);
    CHECK(a.L == 10.0);

    const Configuration other_trial = first.sample(7, 4);
    const Configuration other_seed = first.sample(8, 3);
    CHECK(a.points != other_trial.points);
    CHECK(a.points != other_seed.points);
}

TEST_CASE("vanishing kernel yields empty configurations") {
    const auto op = discretize([](double, double) { return 0.0; }, 0.0, 10.0, 16);
    const SpectralSampler sampler(op);
    CHECK(sampler.mode_count() == 0);
    CHECK(sampler.expected_count() == 0.0);
    const Configuration config = sampler.sample(1, 1);
    CHECK(config.points.empty());
    CHECK(config.L == 10.0);
}

TEST_CASE("modes below the retention floor are dropped") {
    const auto tiny = discretize(
        [](double x, double y) {
            const double u = pi * (x - y);
            return 1e-16 * (std::abs(u) < 1e-8 ? 1.0 : std::sin(u) / u);
        },
        0.0, 5.0, 32);
    CHECK(SpectralSampler(tiny).mode_count() == 0);

    const auto small = discretize(
        [](double x, double y) {
            const double u = pi * (x - y);
            return 1e-12 * (std::abs(u) < 1e-8 ? 1.0 : std::sin(u) / u);
        },
        0.0, 5.0, 32);
    const SpectralSampler sampler(small);
    CHECK(sampler.mode_count() >= 1);
    CHECK(sampler.expected_count() < 1e-10);
}

TEST_CASE("grid refinement converges before the cap") {
    const SpectralSampler& sampler = sine_sampler_10();
    CHECK(sampler.refine_factor() >= 8);
    CHECK(sampler.tv_change() < 1e-6);
    CHECK(sampler.grid_size() == sampler.refine_factor() * 80 + 1);
}

TEST_CASE("counts follow the spectral Bernoulli law") {
    const auto op = discretize(sine_kernel(), 0.0, 10.0, 80);
    double expected_mean = 0.0;
    double expected_var = 0.0;
    for (int i = 0; i < op.eigenvalues.size(); ++i) {
        const double lambda = op.eigenvalues(i);
        expected_mean += lambda;
        expected_var += lambda * (1.0 - lambda);
    }
    CHECK(expected_mean == doctest::Approx(10.0).epsilon(0.01));

    const auto trials = draw_trials(sine_sampler_10(), 31, 3000);
    const MomentSummary m = count_moments(trials);
    CHECK(std::abs(m.mean - expected_mean) < 4.0 * m.se_mean);
    CHECK(m.var > 0.6 * expected_var);
    CHECK(m.var < 1.5 * expected_var);
}

TEST_CASE("no trial contains duplicate or unsorted points") {
    const auto trials = draw_trials(sine_sampler_10(), 77, 500);
    for (const Configuration& trial : trials) {
        for (std::size_t i = 1; i < trial.points.size(); ++i) {
            CHECK(trial.points[i] > trial.points[i - 1]);
        }
        for (double x : trial.points) {
            CHECK(x >= 0.0);
            CHECK(x <= trial.L);
        }
    }
}

TEST_CASE("mean count tracks the operator trace on a long interval") {
    const auto op = discretize(sine_kernel(), 0.0, 50.0, 300);
    const SpectralSampler sampler(op);
    double trace = 0.0;
    for (int i = 0; i < op.eigenvalues.size(); ++i) trace += op.eigenvalues(i);
    CHECK(trace == doctest::Approx(50.0).epsilon(0.005));

    const auto trials = draw_trials(sampler, 42, 2000);
    const MomentSummary m = count_moments(trials);
    CHECK(std::abs(m.mean - trace) < 4.0 * m.se_mean);
}

TEST_CASE("amplitude-scaled profile halves the expected count") {
    const auto op = discretize(half_amplitude_kernel(), 0.0, 50.0, 300);
    const SpectralSampler sampler(op);
    CHECK(sampler.expected_count() == doctest::Approx(25.0).epsilon(0.01));

    const auto trials = draw_trials(sampler, 42, 1500);
    const MomentSummary m = count_moments(trials);
    CHECK(std::abs(m.mean - sampler.expected_count()) < 4.0 * m.se_mean);
}

TEST_CASE("pair factorial moment matches the correlation integral") {
    const double lo = 4.0;
    const double hi = 6.0;
    const GaussLegendre rule = GaussLegendre::standard(24).mapped(lo, hi);
    double expected = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double g = sine_kernel().g(rule.nodes[i] - rule.nodes[j]);
            expected += rule.weights[i] * rule.weights[j] * (1.0 - g * g);
        }
    }

    const auto trials = draw_trials(sine_sampler_10(), 5, 6000);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const Configuration& trial : trials) {
        double n = 0.0;
        for (double x : trial.points) n += (x >= lo && x < hi) ? 1.0 : 0.0;
        const double value = n * (n - 1.0);
        sum += value;
        sum_sq += value * value;
    }
    const auto t = static_cast<double>(trials.size());
    const double mean = sum / t;
    const double se = std::sqrt(
        std::max(0.0, (sum_sq - t * mean * mean) / (t - 1.0)) / t);
    CHECK(std::abs(mean - expected) < 3.0 * se + 1e-6);
}

TEST_CASE("intensity and pair histograms match the kernel") {
    const auto op = discretize(sine_kernel(), 0.0, 20.0, 140);
    const SpectralSampler sampler(op);
    const auto trials = draw_trials(sampler, 9, 2000);

    CorrelationCheckOptions options;
    options.intensity_bins = 8;
    options.pair_bins = 10;
    options.pair_max_distance = 2.0;
    const CorrelationCheckReport report =
        empirical_correlation_check(trials, sine_kernel(), options);

    CHECK_FALSE(report.no_points);
    REQUIRE(report.intensity_z.size() == 8);
    REQUIRE(report.pair_z.size() == 10);
    CHECK(report.max_abs_z < 4.5);

    const double u0 = report.pair_centers[0];
    const double poisson_pairs =
        (20.0 - u0) * 0.2 * sine_kernel().g0 * sine_kernel().g0;
    CHECK(report.pair_estimate[0] < 0.3 * poisson_pairs);
    CHECK(report.pair_expected[0] < 0.3 * poisson_pairs);
}

TEST_CASE("correlation check rejects thin or inconsistent inputs") {
    std::vector<Configuration> trials(999, Configuration{{}, 10.0});
    CHECK_THROWS_AS(empirical_correlation_check(trials, sine_kernel()),
                    InsufficientTrials);

    std::vector<Configuration> empty(1500, Configuration{{}, 10.0});
    const CorrelationCheckReport report =
        empirical_correlation_check(empty, sine_kernel());
    CHECK(report.no_points);
    CHECK(report.max_abs_z == 0.0);

    std::vector<Configuration> mixed(1500, Configuration{{}, 10.0});
    mixed.back().L = 20.0;
    CHECK_THROWS_AS(empirical_correlation_check(mixed, sine_kernel()),
                    std::invalid_argument);
}

TEST_SUITE_END();
