#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace dppgap {

struct GofReport {
    std::string statistic;
    double value = 0.0;
    double p_value = std::numeric_limits<double>::quiet_NaN();
    int dof = 0;
    std::size_t sample_size = 0;
    double target_mean = std::numeric_limits<double>::quiet_NaN();
    double target_alpha = std::numeric_limits<double>::quiet_NaN();
    bool mean_estimated = false;
    std::vector<double> bin_observed;
    std::vector<double> bin_expected;
    std::vector<double> grid;
    std::vector<double> deviations;
};

// Chi-square test of integer counts against a Poisson law, cells pooled
// left to right until every expected count reaches 5. mean_estimated
// drops one further degree of freedom when the mean came from the data.
GofReport poisson_gof(const std::vector<int>& counts, double mean,
                      bool mean_estimated = false);

// Sup distance between the empirical survival curve of the rescaled
// minimum spacings and exp(-alpha s^3) on the given grid. Infinite
// values count as survivors at every grid point; at least 1000 finite
// values are required.
GofReport survival_vs_weibull(const std::vector<double>& etas, double alpha,
                              const std::vector<double>& s_grid);

} // namespace dppgap
