#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "dppgap/errors.hpp"
#include "dppgap/gof.hpp"

using namespace dppgap;
using std::numbers::pi;

namespace {

std::vector<int> poisson_sample(double mean, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::poisson_distribution<int> law(mean);
    std::vector<int> counts(static_cast<std::size_t>(n));
    for (int& c : counts) c = law(rng);
    return counts;
}

std::vector<double> weibull_sample(double alpha, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> etas(static_cast<std::size_t>(n));
    for (double& eta : etas)
        eta = std::cbrt(-std::log1p(-uniform(rng)) / alpha);
    return etas;
}

const std::vector<double> grid = {0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};

} // namespace

TEST_SUITE_BEGIN("gof");

TEST_CASE("chi-square test accepts an ideal generator across repeats") {
    int passes = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto counts =
            poisson_sample(1.1, 2000, 1000 + static_cast<std::uint64_t>(rep));
        const GofReport report = poisson_gof(counts, 1.1);
        CHECK(report.p_value >= 0.0);
        CHECK(report.p_value <= 1.0);
        passes += report.p_value > 0.01 ? 1 : 0;
    }
    CHECK(passes >= 98);
}

TEST_CASE("chi-square test rejects a gross mismatch") {
    const std::vector<int> zeros(2000, 0);
    const GofReport report = poisson_gof(zeros, 1.1);
    CHECK(report.p_value < 1e-6);
    CHECK(report.value > 100.0);
}

TEST_CASE("pooled cells all reach the expected-count floor") {
    const auto counts = poisson_sample(3.0, 1500, 7);
    const GofReport report = poisson_gof(counts, 3.0);
    REQUIRE(report.bin_expected.size() >= 3);
    double total_observed = 0.0;
    double total_expected = 0.0;
    for (std::size_t b = 0; b < report.bin_expected.size(); ++b) {
        CHECK(report.bin_expected[b] >= 5.0);
        total_observed += report.bin_observed[b];
        total_expected += report.bin_expected[b];
    }
    CHECK(total_observed == doctest::Approx(1500.0));
    CHECK(total_expected == doctest::Approx(1500.0).epsilon(1e-9));
    CHECK(report.dof == static_cast<int>(report.bin_expected.size()) - 1);

    const GofReport fitted = poisson_gof(counts, 3.0, true);
    CHECK(fitted.dof == report.dof - 1);
    CHECK(fitted.mean_estimated);
}

TEST_CASE("chi-square guards its inputs") {
    CHECK_THROWS_AS(poisson_gof(std::vector<int>(999, 1), 1.0),
                    InsufficientTrials);
    CHECK_THROWS_AS(poisson_gof(std::vector<int>(1500, 1), 0.0),
                    std::invalid_argument);
    std::vector<int> bad(1500, 1);
    bad.back() = -1;
    CHECK_THROWS_AS(poisson_gof(bad, 1.0), std::invalid_argument);
}

TEST_CASE("survival comparison accepts samples from the exact law") {
    const double alpha = pi * pi / 9.0;
    const auto etas = weibull_sample(alpha, 5000, 99);
    const GofReport report = survival_vs_weibull(etas, alpha, grid);
    CHECK(report.value < 0.03);
    CHECK(report.grid == grid);
    REQUIRE(report.deviations.size() == grid.size());
    for (double dev : report.deviations) CHECK(std::abs(dev) <= report.value);
    CHECK(report.sample_size == 5000);
}

TEST_CASE("survival comparison flags a degenerate sample") {
    const std::vector<double> zeros(1500, 0.0);
    const GofReport report = survival_vs_weibull(zeros, pi * pi / 9.0, grid);
    CHECK(report.value > 0.5);
    CHECK(report.value <= 1.0);
}

TEST_CASE("infinite values count as survivors") {
    const double alpha = pi * pi / 9.0;
    auto etas = weibull_sample(alpha, 1200, 3);
    etas.resize(1500, std::numeric_limits<double>::infinity());
    const GofReport report = survival_vs_weibull(etas, alpha, grid);
    CHECK(report.value <= 1.0);
    const double n = 1500.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double survival =
            report.deviations[i] + std::exp(-alpha * std::pow(grid[i], 3));
        CHECK(survival >= 300.0 / n);
    }
}

TEST_CASE("survival comparison guards its inputs") {
    const double alpha = pi * pi / 9.0;
    auto thin = weibull_sample(alpha, 999, 5);
    thin.resize(1600, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(survival_vs_weibull(thin, alpha, grid), InsufficientTrials);

    const auto etas = weibull_sample(alpha, 1500, 5);
    CHECK_THROWS_AS(survival_vs_weibull(etas, 0.0, grid), std::invalid_argument);
    CHECK_THROWS_AS(survival_vs_weibull(etas, alpha, {}), std::invalid_argument);
    CHECK_THROWS_AS(survival_vs_weibull(etas, alpha, {0.5, 0.5}),
                    std::invalid_argument);

    auto negative = etas;
    negative.back() = -0.1;
    CHECK_THROWS_AS(survival_vs_weibull(negative, alpha, grid),
                    std::invalid_argument);
}

TEST_SUITE_END();
