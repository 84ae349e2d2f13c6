#pragma once

#include <functional>
#include <vector>

namespace dppgap {

// Gauss-Legendre rule. Nodes ascending. standard() rules live on [-1,1]
// and are cached per order; mapped() produces the affine image on [a,b],
// weights scaled by (b-a)/2.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    static const GaussLegendre& standard(int order);
    GaussLegendre mapped(double a, double b) const;
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 int order);

// Composite rule: `panels` equal subintervals, `order` nodes each.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int order);

// Doubles the panel count until successive composite values agree to
// rel_tol * max(1, |I|). Throws QuadratureFailure past max_panels.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int order = 16,
                          int initial_panels = 4, int max_panels = 1 << 16);

} // namespace dppgap
