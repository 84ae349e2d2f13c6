#include "dppgap/translation_kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dppgap/errors.hpp"
#include "dppgap/quadrature.hpp"

namespace dppgap {

namespace {

using std::numbers::pi;

double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        const double z = pi * x;
        return 1.0 - z * z / 6.0;
    }
    return std::sin(pi * x) / (pi * x);
}

double sinc_prime(double x) {
    if (std::abs(x) < 1e-6) {
        const double z = pi * x;
        return -pi * z / 3.0 * (1.0 - z * z / 10.0);
    }
    return (pi * x * std::cos(pi * x) - std::sin(pi * x)) / (pi * x * x);
}

// cos(2 pi x t) completes |x| B / pi periods over [0, B]; at least four
// panels per period keeps each panel non-oscillatory before the adaptive
// doubling takes over.
int oscillation_panels(double x, double bound) {
    const double periods = std::abs(x) * bound;
    return std::max(4, static_cast<int>(std::ceil(4.0 * periods)));
}

void fill_quadrature_transform(TranslationKernel& k,
                               const ValidatedDensity& vd) {
    const auto phi = vd.density.eval;
    double bound = vd.density.support_bound;
    if (!std::isfinite(bound)) {
        // Truncate where the validated tail no longer moves the moments.
        bound = 1.0;
        while (bound < 4096.0 && std::abs(phi(bound)) > 1e-16) bound *= 2.0;
    }
    k.g = [phi, bound](double x) {
        auto f = [phi, x](double t) {
            return std::cos(2.0 * pi * x * t) * phi(t);
        };
        return 2.0 * integrate_adaptive(f, 0.0, bound, 1e-12, 16,
                                        oscillation_panels(x, bound));
    };
    k.g_prime = [phi, bound](double x) {
        auto f = [phi, x](double t) {
            return t * std::sin(2.0 * pi * x * t) * phi(t);
        };
        return -4.0 * pi *
               integrate_adaptive(f, 0.0, bound, 1e-12, 16,
                                  oscillation_panels(x, bound));
    };
    k.provenance = KernelProvenance::quadrature;
}

} // namespace

TranslationKernel kernel_via_quadrature(const ValidatedDensity& vd) {
    TranslationKernel k;
    k.name = vd.density.name;
    fill_quadrature_transform(k, vd);
    k.g0 = vd.m0;
    k.g2_at_0 = -4.0 * pi * pi * vd.m2;
    k.alpha = (4.0 * pi * pi / 3.0) * vd.m0 * vd.m2;
    return k;
}

TranslationKernel kernel_from_density(const ValidatedDensity& vd) {
    TranslationKernel k;
    k.name = vd.density.name;
    const std::string& name = vd.density.name;
    if (name == "sine") {
        k.g = [](double x) { return sinc(x); };
        k.g_prime = [](double x) { return sinc_prime(x); };
        k.provenance = KernelProvenance::closed_form;
    } else if (name == "gaussian") {
        k.g = [](double x) { return std::exp(-pi * x * x); };
        k.g_prime = [](double x) {
            return -2.0 * pi * x * std::exp(-pi * x * x);
        };
        k.provenance = KernelProvenance::closed_form;
    } else if (name == "scaled_indicator") {
        // a times the indicator of [-1/2, 1/2] transforms to a sinc(x)
        const double a = vd.m0;
        k.g = [a](double x) { return a * sinc(x); };
        k.g_prime = [a](double x) { return a * sinc_prime(x); };
        k.provenance = KernelProvenance::closed_form;
    } else {
        fill_quadrature_transform(k, vd);
    }
    k.g0 = vd.m0;
    k.g2_at_0 = -4.0 * pi * pi * vd.m2;
    k.alpha = (4.0 * pi * pi / 3.0) * vd.m0 * vd.m2;

    const DecayDiagnostic decay = decay_diagnostic(k.g);
    if (decay.suspicious)
        k.warnings.push_back(
            "slow transform decay: log-log slope " +
            std::to_string(decay.slope) + " over [1, 100] (want <= -0.5); " +
            "spacing asymptotics may be unreliable for this profile");
    return k;
}

double alpha(const TranslationKernel& kernel) { return kernel.alpha; }

double alpha_via_fd(const TranslationKernel& kernel) {
    const double h = 1e-3;
    const double second =
        (-kernel.g(2.0 * h) + 16.0 * kernel.g(h) - 30.0 * kernel.g(0.0) +
         16.0 * kernel.g(-h) - kernel.g(-2.0 * h)) /
        (12.0 * h * h);
    return kernel.g0 * std::abs(second) / 3.0;
}

DecayDiagnostic decay_diagnostic(const std::function<double(double)>& g) {
    DecayDiagnostic d;
    const int n = 48;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (int i = 0; i < n; ++i) {
        const double x = std::pow(10.0, 2.0 * i / (n - 1));
        const double v = std::abs(g(x));
        if (v < 1e-14) continue;
        const double lx = std::log(x), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++used;
    }
    d.points_used = used;
    if (used < 8) {
        // nearly everything below noise: decay is certainly fast enough
        d.slope = -std::numeric_limits<double>::infinity();
        d.suspicious = false;
        return d;
    }
    const double denom = used * sxx - sx * sx;
    d.slope = (used * sxy - sx * sy) / denom;
    d.suspicious = d.slope > -0.5;
    return d;
}

} // namespace dppgap
