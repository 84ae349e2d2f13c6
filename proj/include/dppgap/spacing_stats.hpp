#pragma once

#include <vector>

#include "dppgap/sampler.hpp"
#include "dppgap/translation_kernel.hpp"

namespace dppgap {

// Consecutive gaps of a configuration on [0, L]. Fewer than two points
// leave the set empty with too_few raised instead of an error.
struct SpacingSet {
    std::vector<double> spacings;
    double L = 0.0;
    bool too_few = false;
};

SpacingSet spacings(const Configuration& config);

// Number of gaps strictly below the rescaled threshold s * L^(-1/3).
int count_below(const SpacingSet& set, double s);

// L^(1/3) times the smallest gap; +infinity when fewer than two points.
double min_spacing_rescaled(const Configuration& config);

// Thinning at distance s: a point is kept when its nearest right
// neighbor lies within s and its second right neighbor does not. The
// last point is never kept; a missing second neighbor counts as +infinity.
// n1 = kept points, n2 = points with more than one right neighbor within s.
struct ModifiedConfig {
    std::vector<double> kept_points;
    double s = 0.0;
    int n1 = 0;
    int n2 = 0;
};

ModifiedConfig s_modify(const Configuration& config, double s);

// L times the integral of the three-point correlation rho3(0, y1, y2)
// over [0, stilde]^2, by tensor Gauss-Legendre quadrature. Upper bound
// on the expected n2 count at threshold stilde.
double en2_bound(const TranslationKernel& kernel, double L, double stilde);

} // namespace dppgap
