#include "dppgap/spacing_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dppgap/errors.hpp"
#include "dppgap/quadrature.hpp"

namespace dppgap {

namespace {

std::vector<double> sorted_points(const Configuration& config) {
    std::vector<double> xs = config.points;
    std::sort(xs.begin(), xs.end());
    return xs;
}

double rho3_nonnegative(const TranslationKernel& kernel, double y1, double y2) {
    const double a = kernel.g(y1);
    const double b = kernel.g(y2);
    const double c = kernel.g(y2 - y1);
    const double g0 = kernel.g0;
    const double det = g0 * (g0 * g0 - c * c) - a * (a * g0 - c * b) +
                       b * (a * c - g0 * b);
    return std::max(det, 0.0);
}

} // namespace

SpacingSet spacings(const Configuration& config) {
    SpacingSet set;
    set.L = config.L;
    if (config.points.size() < 2) {
        set.too_few = true;
        return set;
    }
    const std::vector<double> xs = sorted_points(config);
    set.spacings.reserve(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double gap = xs[i] - xs[i - 1];
        if (!(gap > 0.0))
            throw std::invalid_argument("configuration has coincident points");
        set.spacings.push_back(gap);
    }
    return set;
}

int count_below(const SpacingSet& set, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("threshold scale must be positive");
    if (!(set.L > 0.0)) throw std::invalid_argument("interval length must be positive");
    const double threshold = s * std::pow(set.L, -1.0 / 3.0);
    int count = 0;
    for (double gap : set.spacings) count += gap < threshold ? 1 : 0;
    return count;
}

double min_spacing_rescaled(const Configuration& config) {
    const SpacingSet set = spacings(config);
    if (set.too_few) return std::numeric_limits<double>::infinity();
    const double smallest =
        *std::min_element(set.spacings.begin(), set.spacings.end());
    return std::cbrt(config.L) * smallest;
}

ModifiedConfig s_modify(const Configuration& config, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("distance must be positive");
    ModifiedConfig modified;
    modified.s = s;
    const std::vector<double> xs = sorted_points(config);
    const auto n = xs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (xs[i + 1] - xs[i] > s) continue;
        const bool second_within = i + 2 < n && xs[i + 2] - xs[i] <= s;
        if (second_within) {
            ++modified.n2;
        } else {
            modified.kept_points.push_back(xs[i]);
            ++modified.n1;
        }
    }
    return modified;
}

double en2_bound(const TranslationKernel& kernel, double L, double stilde) {
    if (!(L > 0.0)) throw std::invalid_argument("interval length must be positive");
    if (!(stilde > 0.0 && stilde < 1.0))
        throw std::invalid_argument("threshold must lie in (0, 1)");
    const GaussLegendre rule = GaussLegendre::standard(24).mapped(0.0, stilde);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            integral += rule.weights[i] * rule.weights[j] *
                        rho3_nonnegative(kernel, rule.nodes[i], rule.nodes[j]);
        }
    }
    const double bound = L * integral;
    if (!std::isfinite(bound))
        throw QuadratureFailure("three-point correlation integral diverged");
    return bound;
}

} // namespace dppgap
