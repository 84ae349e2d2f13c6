#pragma once

#include <functional>
#include <optional>
#include <string>

namespace dppgap {

// Even profile phi on the frequency line, 0 <= phi <= 1, with finite
// zeroth and second moments. support_bound is the smallest B with
// phi = 0 outside [-B, B]; +inf for unbounded profiles.
struct SpectralDensity {
    std::string name;
    std::function<double(double)> eval;
    double support_bound = 0.0;
    std::optional<double> moment0_hint;
    std::optional<double> moment2_hint;
};

struct ValidationGrid {
    double t_max = 0.0;
    int points = 0;

    static ValidationGrid for_density(const SpectralDensity& density);
};

// A density that passed validate_density, with its moments attached.
struct ValidatedDensity {
    SpectralDensity density;
    double m0 = 0.0; // integral of phi
    double m2 = 0.0; // integral of t^2 phi
};

// Checks range ([ -1e-12, 1 + 1e-12 ] on the grid), evenness (|phi(t) -
// phi(-t)| <= 1e-12) and finiteness of both moments, then computes the
// moments (hints win over quadrature). Throws RangeViolation, NotEven,
// DivergentMoment.
ValidatedDensity validate_density(const SpectralDensity& density,
                                  const ValidationGrid& grid);

ValidatedDensity validate_density(const SpectralDensity& density);

// Built-in profiles by name: "sine" (indicator of [-1/2,1/2]), "gaussian"
// (exp(-pi t^2)), "scaled_indicator" (indicator of [-a/2,a/2], a in (0,1]).
SpectralDensity builtin_density(const std::string& name, double a = 1.0);

// Two-column (t, phi) file, comma or whitespace separated, '#' comments.
// The profile is symmetrized, interpolated linearly and zero outside the
// tabulated range.
SpectralDensity table_density(const std::string& path);

} // namespace dppgap
