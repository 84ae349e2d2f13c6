#include "dppgap/gof.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

#include "dppgap/errors.hpp"

namespace dppgap {

GofReport poisson_gof(const std::vector<int>& counts, double mean,
                      bool mean_estimated) {
    if (counts.size() < 1000)
        throw InsufficientTrials("chi-square test needs at least 1000 counts");
    if (!(mean > 0.0)) throw std::invalid_argument("mean must be positive");

    int k_max = 0;
    for (int c : counts) {
        if (c < 0) throw std::invalid_argument("counts must be nonnegative");
        k_max = std::max(k_max, c);
    }

    const auto n = static_cast<double>(counts.size());
    std::vector<double> observed(static_cast<std::size_t>(k_max) + 2, 0.0);
    for (int c : counts) observed[static_cast<std::size_t>(c)] += 1.0;

    std::vector<double> expected(observed.size(), 0.0);
    double pmf = std::exp(-mean);
    double cumulative = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        expected[static_cast<std::size_t>(k)] = n * pmf;
        cumulative += pmf;
        pmf *= mean / (k + 1);
    }
    expected.back() = n * std::max(0.0, 1.0 - cumulative);

    GofReport report;
    report.statistic = "poisson_chi_square";
    report.sample_size = counts.size();
    report.target_mean = mean;
    report.mean_estimated = mean_estimated;

    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        pooled_obs += observed[k];
        pooled_exp += expected[k];
        if (pooled_exp >= 5.0) {
            report.bin_observed.push_back(pooled_obs);
            report.bin_expected.push_back(pooled_exp);
            pooled_obs = 0.0;
            pooled_exp = 0.0;
        }
    }
    if (pooled_exp > 0.0 || pooled_obs > 0.0) {
        if (report.bin_expected.empty())
            throw InsufficientTrials("no cell reaches the expected-count floor");
        report.bin_observed.back() += pooled_obs;
        report.bin_expected.back() += pooled_exp;
    }

    const int bins = static_cast<int>(report.bin_expected.size());
    report.dof = bins - 1 - (mean_estimated ? 1 : 0);
    if (report.dof < 1)
        throw InsufficientTrials("too few pooled cells for a chi-square test");

    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        const double diff = report.bin_observed[bi] - report.bin_expected[bi];
        chi2 += diff * diff / report.bin_expected[bi];
    }
    report.value = chi2;
    const boost::math::chi_squared dist(report.dof);
    report.p_value = boost::math::cdf(boost::math::complement(dist, chi2));
    return report;
}

GofReport survival_vs_weibull(const std::vector<double>& etas, double alpha,
                              const std::vector<double>& s_grid) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (s_grid.empty()) throw std::invalid_argument("empty survival grid");
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (!(s_grid[i] > 0.0) || (i > 0 && s_grid[i] <= s_grid[i - 1]))
            throw std::invalid_argument("grid must be positive and increasing");
    }
    std::size_t finite = 0;
    for (double eta : etas) {
        if (eta < 0.0) throw std::invalid_argument("negative rescaled spacing");
        finite += std::isfinite(eta) ? 1 : 0;
    }
    if (finite < 1000)
        throw InsufficientTrials("survival comparison needs 1000 finite values");

    GofReport report;
    report.statistic = "weibull_survival_sup";
    report.sample_size = etas.size();
    report.target_alpha = alpha;
    const auto n = static_cast<double>(etas.size());
    for (double s : s_grid) {
        double survivors = 0.0;
        for (double eta : etas) survivors += eta > s ? 1.0 : 0.0;
        const double target = std::exp(-alpha * s * s * s);
        const double deviation = survivors / n - target;
        report.grid.push_back(s);
        report.deviations.push_back(deviation);
        report.value = std::max(report.value, std::abs(deviation));
    }
    return report;
}

} // namespace dppgap
