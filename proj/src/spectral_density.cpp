#include "dppgap/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dppgap/errors.hpp"
#include "dppgap/quadrature.hpp"

namespace dppgap {

namespace {

constexpr double kRangeTol = 1e-12;
constexpr double kEvenTol = 1e-12;

// Moments of unbounded profiles are accumulated over doubling blocks
// [0, 2^k]; the tail must fade below rel 1e-12 before the cap.
double half_line_moment(const std::function<double(double)>& f,
                        double support_bound) {
    if (std::isfinite(support_bound))
        return integrate_adaptive(f, 0.0, support_bound, 1e-13);
    double total = integrate_adaptive(f, 0.0, 1.0, 1e-13);
    double lo = 1.0;
    for (int k = 0; k < 64; ++k) {
        const double hi = 2.0 * lo;
        const double block = integrate_adaptive(f, lo, hi, 1e-13);
        total += block;
        if (std::abs(block) <= 1e-12 * std::max(1.0, std::abs(total)) &&
            k >= 4)
            return total;
        if (!std::isfinite(total)) break;
        lo = hi;
    }
    throw DivergentMoment("moment integral does not settle");
}

} // namespace

ValidationGrid ValidationGrid::for_density(const SpectralDensity& density) {
    double t_max = density.support_bound;
    if (!std::isfinite(t_max)) t_max = 16.0;
    t_max = std::max(t_max, 1.0);
    return ValidationGrid{1.25 * t_max, 4001};
}

ValidatedDensity validate_density(const SpectralDensity& density,
                                  const ValidationGrid& grid) {
    if (!density.eval) throw std::invalid_argument("density.eval is empty");
    if (grid.points < 3 || grid.t_max <= 0.0)
        throw std::invalid_argument("bad validation grid");

    const double step = 2.0 * grid.t_max / (grid.points - 1);
    for (int i = 0; i < grid.points; ++i) {
        const double t = -grid.t_max + i * step;
        const double v = density.eval(t);
        if (!std::isfinite(v))
            throw RangeViolation("phi(" + std::to_string(t) + ") is not finite");
        if (v < -kRangeTol || v > 1.0 + kRangeTol)
            throw RangeViolation("phi(" + std::to_string(t) + ") = " +
                                 std::to_string(v) + " outside [0, 1]");
        const double mirror = density.eval(-t);
        if (std::abs(v - mirror) > kEvenTol)
            throw NotEven("phi(" + std::to_string(t) + ") differs from phi(" +
                          std::to_string(-t) + ") by " +
                          std::to_string(v - mirror));
    }

    ValidatedDensity out;
    out.density = density;
    if (density.moment0_hint) {
        out.m0 = *density.moment0_hint;
    } else {
        out.m0 = 2.0 * half_line_moment(density.eval, density.support_bound);
    }
    if (density.moment2_hint) {
        out.m2 = *density.moment2_hint;
    } else {
        auto t2phi = [&](double t) { return t * t * density.eval(t); };
        out.m2 = 2.0 * half_line_moment(t2phi, density.support_bound);
    }
    if (!std::isfinite(out.m0) || !std::isfinite(out.m2))
        throw DivergentMoment("non-finite moment");
    if (out.m0 <= 0.0)
        throw RangeViolation("phi integrates to " + std::to_string(out.m0) +
                             "; a trivial profile has no point process");
    return out;
}

ValidatedDensity validate_density(const SpectralDensity& density) {
    return validate_density(density, ValidationGrid::for_density(density));
}

SpectralDensity builtin_density(const std::string& name, double a) {
    SpectralDensity d;
    d.name = name;
    if (name == "sine") {
        d.eval = [](double t) { return std::abs(t) <= 0.5 ? 1.0 : 0.0; };
        d.support_bound = 0.5;
        d.moment0_hint = 1.0;
        d.moment2_hint = 1.0 / 12.0;
    } else if (name == "gaussian") {
        d.eval = [](double t) {
            return std::exp(-std::numbers::pi * t * t);
        };
        d.support_bound = std::numeric_limits<double>::infinity();
        d.moment0_hint = 1.0;
        d.moment2_hint = 1.0 / (2.0 * std::numbers::pi);
    } else if (name == "scaled_indicator") {
        if (!(a > 0.0) || a > 1.0)
            throw std::invalid_argument(
                "scaled_indicator needs a in (0, 1], got " + std::to_string(a));
        d.eval = [a](double t) { return std::abs(t) <= 0.5 ? a : 0.0; };
        d.support_bound = 0.5;
        d.moment0_hint = a;
        d.moment2_hint = a / 12.0;
        d.name = "scaled_indicator";
    } else {
        throw std::invalid_argument("unknown built-in density: " + name);
    }
    return d;
}

SpectralDensity table_density(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table density file: " + path);

    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double t, v;
        if (ss >> t >> v) rows.emplace_back(t, v);
    }
    if (rows.size() < 2)
        throw ConfigError("table density needs at least two rows: " + path);
    std::sort(rows.begin(), rows.end());
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw ConfigError("duplicate abscissa in table density: " + path);

    auto raw = [rows](double t) -> double {
        if (t < rows.front().first || t > rows.back().first) return 0.0;
        auto it = std::lower_bound(
            rows.begin(), rows.end(), t,
            [](const auto& r, double x) { return r.first < x; });
        if (it->first == t) return it->second;
        const auto hi = it;
        const auto lo = it - 1;
        const double w = (t - lo->first) / (hi->first - lo->first);
        return (1.0 - w) * lo->second + w * hi->second;
    };

    // Both moments are exact cellwise integrals of the raw table, so the
    // adaptive quadrature never has to chase the interpolant's kinks.
    // Symmetrization preserves them because t^2 is even.
    double m0 = 0.0, m2 = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double a = rows[i - 1].first, b = rows[i].first;
        const double fa = rows[i - 1].second, fb = rows[i].second;
        m0 += 0.5 * (fa + fb) * (b - a);
        const double slope = (fb - fa) / (b - a);
        const double c0 = fa - slope * a;
        m2 += c0 * (b * b * b - a * a * a) / 3.0 +
              slope * (b * b * b * b - a * a * a * a) / 4.0;
    }

    SpectralDensity d;
    d.name = "table";
    d.eval = [raw](double t) { return 0.5 * (raw(t) + raw(-t)); };
    d.support_bound =
        std::max(std::abs(rows.front().first), std::abs(rows.back().first));
    d.moment0_hint = m0;
    d.moment2_hint = m2;
    return d;
}

} // namespace dppgap
