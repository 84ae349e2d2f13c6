#include "dppgap/conditional_kernel.hpp"

#include <string>

#include "dppgap/errors.hpp"

namespace dppgap {

ConditionalKernel conditional_kernel(const TranslationKernel& kernel, double x,
                                     double y) {
    const double kxx = kernel.g0;
    const double kxy = kernel.g(y - x);
    const double det2 = kxx * kxx - kxy * kxy; // rho_2(x, y)
    if (det2 <= 1e-12)
        throw SingularBlock("rho_2(x, y) = " + std::to_string(det2) +
                            " <= 1e-12; conditioning block not invertible");
    ConditionalKernel out;
    out.base = kernel;
    out.x = x;
    out.y = y;
    out.t11 = kxx / det2;
    out.t12 = -kxy / det2;
    out.t21 = -kxy / det2;
    out.t22 = kxx / det2;
    return out;
}

} // namespace dppgap
