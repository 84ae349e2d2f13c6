#include "dppgap/modified_intensity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dppgap/conditional_kernel.hpp"
#include "dppgap/errors.hpp"
#include "dppgap/nystrom.hpp"
#include "dppgap/quadrature.hpp"

namespace dppgap {

namespace {

// Determinant of an n x n scratch matrix by partial-pivot elimination;
// sized for the series terms (n <= 8), cheaper than a general LU object.
double small_det(double* m, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(m[col * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(m[r * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[pivot * n + c], m[col * n + c]);
            det = -det;
        }
        const double d = m[col * n + col];
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            const double f = m[r * n + col] / d;
            if (f == 0.0) continue;
            for (int c = col + 1; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
        }
    }
    return det;
}

// Hadamard-style bound on the m-th series term: subtracting the first
// row leaves m+1 rows with entries of size at most |g''(0)| stilde^2,
// the first row at most g(0).
double term_bound(const TranslationKernel& kernel, double stilde, int m) {
    const double m2 = std::abs(kernel.g2_at_0);
    double inv_mfact = 1.0;
    for (int j = 2; j <= m; ++j) inv_mfact /= j;
    return std::pow(stilde, m + 1) * inv_mfact *
           std::pow(m + 2, 0.5 * (m + 2)) * kernel.g0 *
           std::pow(m2 * stilde * stilde, m + 1);
}

} // namespace

double modified_intensity_fredholm(const TranslationKernel& kernel,
                                   double stilde, int order) {
    if (!(stilde > 0.0)) throw std::invalid_argument("stilde must be > 0");
    const GaussLegendre rule =
        GaussLegendre::standard(order).mapped(0.0, stilde);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        const double y = rule.nodes[i];
        const double gy = kernel.g(y);
        const double rho2 = kernel.g0 * kernel.g0 - gy * gy;
        // the integrand is rho2 * det with det in [0, 1]; when rho2 is
        // at the singular-block threshold the contribution is below any
        // reported digit and the conditioning would be ill-posed
        if (rho2 <= 1e-12) continue;
        const ConditionalKernel cond = conditional_kernel(kernel, 0.0, y);
        const DiscretizedOperator op = discretize(
            [&cond](double u, double v) { return cond(u, v); }, 0.0, stilde,
            order);
        total += rule.weights[i] * rho2 * fredholm_det(op);
    }
    return total;
}

SeriesIntensity modified_intensity_series(const TranslationKernel& kernel,
                                          double stilde, int m_max,
                                          int order) {
    if (!(stilde > 0.0)) throw std::invalid_argument("stilde must be > 0");
    if (stilde > 0.5)
        throw std::invalid_argument(
            "series path requires stilde <= 0.5 for the truncation bound");
    if (m_max < 0 || m_max > 6)
        throw std::invalid_argument("m_max must be in [0, 6]");

    const GaussLegendre rule =
        GaussLegendre::standard(order).mapped(0.0, stilde);

    // every tuple draws its coordinates from {0} + nodes, so all kernel
    // evaluations come from one (order+1)^2 table
    const int np = order + 1;
    std::vector<double> coords(np, 0.0);
    for (int i = 0; i < order; ++i) coords[i + 1] = rule.nodes[i];
    std::vector<double> gtab(np * np);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j)
            gtab[i * np + j] = kernel.g(coords[j] - coords[i]);

    SeriesIntensity out;
    double scratch[8 * 8];

    for (int m = 0; m <= m_max; ++m) {
        if (m >= 3) {
            const double bound = term_bound(kernel, stilde, m);
            if (bound < 1e-14) {
                out.truncation_bound += bound;
                out.terms.push_back(0.0);
                continue;
            }
        }
        const int axes = m + 1; // y plus the m z's
        const int k = m + 2;    // matrix size
        std::vector<int> idx(axes, 0);
        double term = 0.0;
        for (;;) {
            double wprod = 1.0;
            for (int ax = 0; ax < axes; ++ax) wprod *= rule.weights[idx[ax]];
            // points: 0 (table slot 0), then nodes idx[ax] (slot idx+1)
            int slot[8];
            slot[0] = 0;
            for (int ax = 0; ax < axes; ++ax) slot[ax + 1] = idx[ax] + 1;
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c)
                    scratch[r * k + c] = gtab[slot[r] * np + slot[c]];
            term += wprod * small_det(scratch, k);

            int ax = axes - 1;
            while (ax >= 0 && ++idx[ax] == order) idx[ax--] = 0;
            if (ax < 0) break;
        }
        double inv_mfact = 1.0;
        for (int j = 2; j <= m; ++j) inv_mfact /= j;
        const double signed_term =
            ((m % 2 == 0) ? 1.0 : -1.0) * inv_mfact * term;
        out.terms.push_back(signed_term);
        out.value += signed_term;
    }

    const double tail = term_bound(kernel, stilde, m_max + 1);
    out.truncation_bound += tail;
    // A deliberately coarse truncation (small m_max) just reports its
    // bound. The hard error is reserved for series that cannot certify
    // the tail below the two-path comparison tolerance even at the
    // deepest supported truncation.
    const double tol = std::max(1e-6 * std::abs(out.value), 1e-14);
    if (out.truncation_bound > tol && term_bound(kernel, stilde, 7) > tol)
        throw TruncationNotConverged(
            "series tail bound " + std::to_string(out.truncation_bound) +
            " at m_max = " + std::to_string(m_max) +
            " cannot be certified below tolerance even at m_max = 6");
    return out;
}

} // namespace dppgap
