#include "dppgap/nystrom.hpp"

#include <cmath>
#include <stdexcept>

#include "dppgap/errors.hpp"
#include "dppgap/quadrature.hpp"

namespace dppgap {

namespace {

constexpr double kEigTol = 1e-8;

} // namespace

DiscretizedOperator discretize(const KernelFn& kappa, double a, double b,
                               int order) {
    if (!kappa) throw std::invalid_argument("kernel function is empty");
    if (order < 4) throw OrderTooSmall("discretize needs order >= 4");
    if (!(b > a)) throw std::invalid_argument("interval must have b > a");

    DiscretizedOperator op;
    op.a = a;
    op.b = b;
    const GaussLegendre rule = GaussLegendre::standard(order).mapped(a, b);
    op.nodes = Eigen::Map<const Eigen::VectorXd>(rule.nodes.data(), order);
    op.weights = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), order);

    Eigen::VectorXd sqw = op.weights.array().sqrt();
    op.matrix.resize(order, order);
    for (int i = 0; i < order; ++i) {
        op.matrix(i, i) = op.weights(i) * kappa(op.nodes(i), op.nodes(i));
        for (int j = i + 1; j < order; ++j) {
            const double v =
                sqw(i) * sqw(j) *
                0.5 * (kappa(op.nodes(i), op.nodes(j)) +
                       kappa(op.nodes(j), op.nodes(i)));
            op.matrix(i, j) = v;
            op.matrix(j, i) = v;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.matrix);
    if (eig.info() != Eigen::Success)
        throw Error("eigendecomposition failed");

    // ascending from Eigen; flip to descending
    op.eigenvalues = eig.eigenvalues().reverse();
    op.eigenvectors = eig.eigenvectors().rowwise().reverse();

    for (int i = 0; i < order; ++i) {
        const double lambda = op.eigenvalues(i);
        if (lambda < -kEigTol || lambda > 1.0 + kEigTol)
            throw EigOutOfRange("eigenvalue " + std::to_string(lambda) +
                                " outside [0, 1] beyond tolerance");
        op.eigenvalues(i) = std::clamp(lambda, 0.0, 1.0);
    }
    return op;
}

DiscretizedOperator discretize(const TranslationKernel& kernel, double a,
                               double b, int order) {
    const auto g = kernel.g;
    return discretize([g](double u, double v) { return g(v - u); }, a, b,
                      order);
}

double fredholm_det(const DiscretizedOperator& op) {
    double det = 1.0;
    for (int i = 0; i < op.eigenvalues.size(); ++i)
        det *= 1.0 - op.eigenvalues(i);
    return det;
}

Eigen::MatrixXd eigenfunctions_at(const DiscretizedOperator& op,
                                  const std::vector<double>& points,
                                  int n_modes) {
    const int n = op.order();
    if (n_modes < 1 || n_modes > n)
        throw std::invalid_argument("n_modes out of range");

    // eigenfunction values at the nodes: v_ji / sqrt(w_j)
    Eigen::MatrixXd at_nodes(n, n_modes);
    for (int j = 0; j < n; ++j) {
        const double inv_sqw = 1.0 / std::sqrt(op.weights(j));
        for (int m = 0; m < n_modes; ++m)
            at_nodes(j, m) = op.eigenvectors(j, m) * inv_sqw;
    }

    // barycentric weights for Gauss-Legendre nodes: (-1)^j sqrt((1 - xi^2) w)
    // in standard coordinates; affine maps only rescale them uniformly.
    Eigen::VectorXd bary(n);
    const double mid = 0.5 * (op.a + op.b);
    const double hw = 0.5 * (op.b - op.a);
    for (int j = 0; j < n; ++j) {
        const double xi = (op.nodes(j) - mid) / hw;
        const double w_std = op.weights(j) / hw;
        bary(j) = ((j % 2 == 0) ? 1.0 : -1.0) *
                  std::sqrt(std::max(0.0, (1.0 - xi * xi)) * w_std);
    }

    const int total = static_cast<int>(points.size());
    Eigen::MatrixXd out(total, n_modes);
    const int chunk = 4096;
    Eigen::MatrixXd coeff(std::min(chunk, total), n);
    for (int start = 0; start < total; start += chunk) {
        const int rows = std::min(chunk, total - start);
        coeff.resize(rows, n);
        std::vector<std::pair<int, int>> exact_hits;
        for (int r = 0; r < rows; ++r) {
            const double t = points[start + r];
            double denom = 0.0;
            int hit = -1;
            for (int j = 0; j < n; ++j) {
                const double d = t - op.nodes(j);
                if (d == 0.0) {
                    hit = j;
                    break;
                }
                const double c = bary(j) / d;
                coeff(r, j) = c;
                denom += c;
            }
            if (hit >= 0) {
                coeff.row(r).setZero();
                exact_hits.emplace_back(r, hit);
            } else {
                coeff.row(r) /= denom;
            }
        }
        out.middleRows(start, rows).noalias() = coeff * at_nodes;
        for (const auto& [r, j] : exact_hits)
            out.row(start + r) = at_nodes.row(j);
    }
    return out;
}

} // namespace dppgap
