#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dppgap/spectral_density.hpp"

namespace dppgap {

enum class KernelProvenance { closed_form, quadrature };

// Translation-invariant kernel K(x, y) = g(y - x) with
//   g(x) = integral of cos(2 pi x t) phi(t) dt.
// g(0) = m0 is the point density; g''(0) = -4 pi^2 m2; the cubic spacing
// coefficient is alpha = (4 pi^2 / 3) m0 m2.
struct TranslationKernel {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    double g0 = 0.0;
    double g2_at_0 = 0.0;
    double alpha = 0.0;
    KernelProvenance provenance = KernelProvenance::quadrature;
    std::vector<std::string> warnings;

    double operator()(double x, double y) const { return g(y - x); }
};

// Built-in densities get their closed-form transforms; everything else
// goes through oscillation-aware quadrature. Runs the decay diagnostic
// (see below) and stores any warning.
TranslationKernel kernel_from_density(const ValidatedDensity& density);

// Quadrature route regardless of name; used to cross-check closed forms.
TranslationKernel kernel_via_quadrature(const ValidatedDensity& density);

double alpha(const TranslationKernel& kernel);

// Central finite-difference estimate (1/3) g(0) |g''(0)| for the
// self-check against the moment form.
double alpha_via_fd(const TranslationKernel& kernel);

// Least-squares slope of log |g| against log x over x in [1, 100],
// skipping near-zeros. Slopes above -1/2 suggest the profile decays too
// slowly for the spacing asymptotics; this is advisory only.
struct DecayDiagnostic {
    double slope = 0.0;
    int points_used = 0;
    bool suspicious = false;
};

DecayDiagnostic decay_diagnostic(const std::function<double(double)>& g);

} // namespace dppgap
