#include "dppgap/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dppgap/errors.hpp"
#include "dppgap/quadrature.hpp"
#include "dppgap/rng.hpp"

namespace dppgap {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<double> uniform_grid(double a, double b, int cells) {
    std::vector<double> grid(static_cast<std::size_t>(cells) + 1);
    const double h = (b - a) / cells;
    for (int i = 0; i <= cells; ++i) grid[static_cast<std::size_t>(i)] = a + h * i;
    grid.back() = b;
    return grid;
}

// Density of the projection onto the modes most likely to be selected
// (lambda >= 1/2, or all kept modes weighted by lambda if none qualify),
// normalized to unit mass under the trapezoid rule.
std::vector<double> witness_density(const RowMajorMatrix& modes,
                                    const std::vector<double>& lambdas,
                                    double h) {
    const auto n = static_cast<std::size_t>(modes.rows());
    const int m = static_cast<int>(lambdas.size());
    bool any_major = false;
    for (double lambda : lambdas) any_major = any_major || lambda >= 0.5;

    std::vector<double> density(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = modes.data() + r * static_cast<std::size_t>(m);
        double value = 0.0;
        for (int i = 0; i < m; ++i) {
            if (any_major && lambdas[static_cast<std::size_t>(i)] < 0.5) continue;
            const double weight =
                any_major ? 1.0 : lambdas[static_cast<std::size_t>(i)];
            value += weight * row[i] * row[i];
        }
        density[r] = value;
    }

    double mass = 0.0;
    for (std::size_t r = 0; r + 1 < n; ++r)
        mass += 0.5 * h * (density[r] + density[r + 1]);
    if (mass > 0.0)
        for (double& value : density) value /= mass;
    return density;
}

// Total variation between the density and its own coarsening to every
// second grid point (piecewise-linear in between). Even-index values of
// the two agree exactly, so only odd indices contribute.
double coarsening_tv(const std::vector<double>& density, double h) {
    double tv = 0.0;
    for (std::size_t o = 1; o + 1 < density.size(); o += 2)
        tv += std::abs(density[o] - 0.5 * (density[o - 1] + density[o + 1]));
    return 0.5 * tv * h;
}

} // namespace

SpectralSampler::SpectralSampler(const DiscretizedOperator& op) {
    L_ = op.b - op.a;

    int kept = 0;
    while (kept < op.eigenvalues.size() && op.eigenvalues(kept) > 1e-15) ++kept;
    lambdas_.assign(op.eigenvalues.data(), op.eigenvalues.data() + kept);
    for (double lambda : lambdas_) lambda_sum_ += lambda;

    if (kept == 0) {
        grid_ = {op.a, op.b};
        h_ = L_;
        modes_.resize(2, 0);
        return;
    }

    const int cap = 256;
    int factor = 8;
    for (;;) {
        const int cells = factor * op.order();
        grid_ = uniform_grid(op.a, op.b, cells);
        h_ = L_ / cells;
        modes_ = eigenfunctions_at(op, grid_, kept);
        tv_change_ = coarsening_tv(witness_density(modes_, lambdas_, h_), h_);
        refine_factor_ = factor;
        if (tv_change_ < 1e-6 || factor >= cap) break;
        factor *= 2;
    }
}

Configuration SpectralSampler::sample(std::uint64_t seed,
                                      std::uint64_t trial_id) const {
    TrialRng rng(seed, trial_id);
    Configuration config;
    config.L = L_;

    std::vector<int> selected;
    for (std::size_t i = 0; i < lambdas_.size(); ++i)
        if (rng.uniform() < lambdas_[i]) selected.push_back(static_cast<int>(i));
    const int m = static_cast<int>(selected.size());
    if (m == 0) return config;

    const auto n = static_cast<std::size_t>(grid_.size());
    const auto stride = static_cast<std::size_t>(modes_.cols());

    // Base proposal density: diagonal of the projection onto the selected
    // modes, piecewise linear on the grid. Every step's conditional
    // density lies below it, which makes exact thinning possible.
    Eigen::VectorXd density(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = modes_.data() + r * stride;
        double value = 0.0;
        for (int i : selected) value += row[i] * row[i];
        density(static_cast<Eigen::Index>(r)) = value;
    }

    std::vector<double> cumulative(n, 0.0);
    for (std::size_t r = 0; r + 1 < n; ++r)
        cumulative[r + 1] =
            cumulative[r] + 0.5 * h_ *
                                (density(static_cast<Eigen::Index>(r)) +
                                 density(static_cast<Eigen::Index>(r + 1)));
    const double total = cumulative.back();
    if (total < 1e-14)
        throw NumericalUnderflow("projection density mass below 1e-14");

    RowMajorMatrix basis(m, m);
    Eigen::VectorXd phi(m);
    Eigen::VectorXd overlaps(m);
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(m));

    for (int j = 0; j < m; ++j) {
        bool accepted = false;
        for (long attempt = 0; attempt < 1000000 && !accepted; ++attempt) {
            const double target = rng.uniform() * total;
            auto it =
                std::upper_bound(cumulative.begin(), cumulative.end(), target);
            auto cell = static_cast<std::size_t>(
                std::clamp<std::ptrdiff_t>(it - cumulative.begin() - 1, 0,
                                           static_cast<std::ptrdiff_t>(n) - 2));
            const double mass = cumulative[cell + 1] - cumulative[cell];
            const double u2 = rng.uniform();
            if (mass <= 0.0) continue;

            const double p0 = density(static_cast<Eigen::Index>(cell));
            const double p1 = density(static_cast<Eigen::Index>(cell + 1));
            const double slope = p1 - p0;
            const double c = (target - cumulative[cell]) / h_;
            double theta;
            if (std::abs(slope) <= 1e-14 * (p0 + p1))
                theta = c / p0;
            else
                theta = (std::sqrt(std::max(0.0, p0 * p0 + 2.0 * slope * c)) -
                         p0) /
                        slope;
            theta = std::clamp(theta, 0.0, 1.0);
            const double t = grid_[cell] + theta * h_;
            const double envelope = p0 + slope * theta;
            if (envelope <= 0.0) continue;

            const double* row0 = modes_.data() + cell * stride;
            const double* row1 = row0 + stride;
            double base = 0.0;
            for (int i = 0; i < m; ++i) {
                const double value = (1.0 - theta) * row0[selected[static_cast<std::size_t>(i)]] +
                                     theta * row1[selected[static_cast<std::size_t>(i)]];
                phi(i) = value;
                base += value * value;
            }

            double depleted = base;
            if (j > 0) {
                overlaps.head(j).noalias() = basis.topRows(j) * phi;
                depleted -= overlaps.head(j).squaredNorm();
            }
            const double ratio =
                std::clamp(depleted / envelope, 0.0, 1.0);
            if (u2 >= ratio) continue;
            if (std::find(points.begin(), points.end(), t) != points.end())
                continue;

            Eigen::VectorXd residual = phi;
            if (j > 0) {
                residual.noalias() -= basis.topRows(j).transpose() * overlaps.head(j);
                overlaps.head(j).noalias() = basis.topRows(j) * residual;
                residual.noalias() -=
                    basis.topRows(j).transpose() * overlaps.head(j);
            }
            const double norm2 = residual.squaredNorm();
            if (!(norm2 > 0.0))
                throw NumericalUnderflow(
                    "degenerate residual in sequential projection");
            basis.row(j) = residual.transpose() / std::sqrt(norm2);
            points.push_back(t);
            accepted = true;
        }
        if (!accepted)
            throw NumericalUnderflow("thinning acceptance stalled");
    }

    std::sort(points.begin(), points.end());
    config.points = std::move(points);
    return config;
}

Configuration sample(const DiscretizedOperator& op, std::uint64_t seed,
                     std::uint64_t trial_id) {
    return SpectralSampler(op).sample(seed, trial_id);
}

CorrelationCheckReport empirical_correlation_check(
    const std::vector<Configuration>& trials, const TranslationKernel& kernel,
    const CorrelationCheckOptions& options) {
    if (trials.size() < 1000)
        throw InsufficientTrials("correlation check needs at least 1000 trials");
    if (options.intensity_bins < 1 || options.pair_bins < 1 ||
        options.pair_max_distance <= 0.0)
        throw std::invalid_argument("bad correlation check options");

    const double L = trials.front().L;
    bool any_points = false;
    for (const Configuration& trial : trials) {
        if (trial.L != L)
            throw std::invalid_argument("trials mix different interval lengths");
        any_points = any_points || !trial.points.empty();
    }

    CorrelationCheckReport report;
    if (!any_points) {
        report.no_points = true;
        return report;
    }

    const auto n_trials = static_cast<double>(trials.size());
    const int nb = options.intensity_bins;
    const double bin_len = L / nb;
    std::vector<double> sum(static_cast<std::size_t>(nb), 0.0);
    std::vector<double> sum_sq(static_cast<std::size_t>(nb), 0.0);
    std::vector<double> local(static_cast<std::size_t>(nb), 0.0);
    for (const Configuration& trial : trials) {
        std::fill(local.begin(), local.end(), 0.0);
        for (double x : trial.points) {
            auto bin = static_cast<std::size_t>(std::clamp(
                static_cast<int>(x / bin_len), 0, nb - 1));
            local[bin] += 1.0;
        }
        for (int b = 0; b < nb; ++b) {
            sum[static_cast<std::size_t>(b)] += local[static_cast<std::size_t>(b)];
            sum_sq[static_cast<std::size_t>(b)] +=
                local[static_cast<std::size_t>(b)] * local[static_cast<std::size_t>(b)];
        }
    }
    for (int b = 0; b < nb; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        const double mean = sum[bi] / n_trials;
        const double var =
            std::max(0.0, (sum_sq[bi] - n_trials * mean * mean) / (n_trials - 1.0));
        const double se = std::sqrt(var / n_trials);
        const double expected = kernel.g0 * bin_len;
        report.intensity_centers.push_back((b + 0.5) * bin_len);
        report.intensity_estimate.push_back(mean);
        report.intensity_expected.push_back(expected);
        const double z = se > 0.0 ? (mean - expected) / se
                                  : (mean == expected ? 0.0 : 1e12);
        report.intensity_z.push_back(z);
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    }

    const int pb = options.pair_bins;
    const double u_max = std::min(options.pair_max_distance, L);
    const double pair_len = u_max / pb;
    std::vector<double> pair_sum(static_cast<std::size_t>(pb), 0.0);
    std::vector<double> pair_sum_sq(static_cast<std::size_t>(pb), 0.0);
    std::vector<double> pair_local(static_cast<std::size_t>(pb), 0.0);
    for (const Configuration& trial : trials) {
        std::fill(pair_local.begin(), pair_local.end(), 0.0);
        std::vector<double> xs = trial.points;
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                const double u = xs[j] - xs[i];
                if (u >= u_max) break;
                auto bin = static_cast<std::size_t>(std::clamp(
                    static_cast<int>(u / pair_len), 0, pb - 1));
                pair_local[bin] += 1.0;
            }
        }
        for (int b = 0; b < pb; ++b) {
            pair_sum[static_cast<std::size_t>(b)] += pair_local[static_cast<std::size_t>(b)];
            pair_sum_sq[static_cast<std::size_t>(b)] +=
                pair_local[static_cast<std::size_t>(b)] *
                pair_local[static_cast<std::size_t>(b)];
        }
    }
    const GaussLegendre& rule = GaussLegendre::standard(24);
    for (int b = 0; b < pb; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        const double lo = b * pair_len;
        const double hi = lo + pair_len;
        const GaussLegendre mapped = rule.mapped(lo, hi);
        double expected = 0.0;
        for (std::size_t q = 0; q < mapped.nodes.size(); ++q) {
            const double u = mapped.nodes[q];
            const double rho2 =
                kernel.g0 * kernel.g0 - kernel.g(u) * kernel.g(u);
            expected += mapped.weights[q] * (L - u) * rho2;
        }
        const double mean = pair_sum[bi] / n_trials;
        const double var = std::max(
            0.0, (pair_sum_sq[bi] - n_trials * mean * mean) / (n_trials - 1.0));
        const double se = std::sqrt(var / n_trials);
        report.pair_centers.push_back(0.5 * (lo + hi));
        report.pair_estimate.push_back(mean);
        report.pair_expected.push_back(expected);
        const double z = se > 0.0 ? (mean - expected) / se
                                  : (mean == expected ? 0.0 : 1e12);
        report.pair_z.push_back(z);
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    }

    return report;
}

} // namespace dppgap
