#include "dppgap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "dppgap/errors.hpp"

namespace dppgap {

namespace {

// Nodes are the roots of the Legendre polynomial P_n, found by Newton
// iteration from the Chebyshev-like initial guess; weights from the
// standard 2 / ((1 - x^2) P_n'(x)^2) formula. Symmetry halves the work.
GaussLegendre build_rule(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    GaussLegendre rule;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussLegendre& GaussLegendre::standard(int order) {
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

GaussLegendre GaussLegendre::mapped(double a, double b) const {
    GaussLegendre out;
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    out.nodes.reserve(nodes.size());
    out.weights.reserve(weights.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out.nodes.push_back(mid + hw * nodes[i]);
        out.weights.push_back(hw * weights[i]);
    }
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int order) {
    const GaussLegendre rule = GaussLegendre::standard(order).mapped(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int order) {
    if (panels < 1) throw std::invalid_argument("panels must be >= 1");
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p)
        sum += integrate(f, a + p * h, a + (p + 1) * h, order);
    return sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int order,
                          int initial_panels, int max_panels) {
    double prev = integrate_panels(f, a, b, initial_panels, order);
    for (int panels = 2 * initial_panels; panels <= max_panels; panels *= 2) {
        double cur = integrate_panels(f, a, b, panels, order);
        if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw QuadratureFailure("integrate_adaptive: no convergence on [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]");
}

} // namespace dppgap
