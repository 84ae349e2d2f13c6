#pragma once

#include "dppgap/translation_kernel.hpp"

namespace dppgap {

// The kernel of the process conditioned on points at x and y:
//   Ktilde(u,v) = K(u,v) - [K(u,x) K(u,y)] T [K(x,v) K(y,v)]^T
// with T the inverse of the 2x2 block [[K(x,x), K(x,y)], [K(y,x),
// K(y,y)]]. Rows and columns through x and y vanish identically.
struct ConditionalKernel {
    TranslationKernel base;
    double x = 0.0;
    double y = 0.0;
    double t11 = 0.0, t12 = 0.0, t21 = 0.0, t22 = 0.0;

    double operator()(double u, double v) const {
        const auto& g = base.g;
        const double kux = g(x - u), kuy = g(y - u);
        const double kxv = g(v - x), kyv = g(v - y);
        return g(v - u) - kux * (t11 * kxv + t12 * kyv) -
               kuy * (t21 * kxv + t22 * kyv);
    }
};

// Throws SingularBlock when rho_2(x, y) <= 1e-12 (y too close to x).
ConditionalKernel conditional_kernel(const TranslationKernel& kernel, double x,
                                     double y);

} // namespace dppgap
