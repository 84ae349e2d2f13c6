#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "dppgap/translation_kernel.hpp"

namespace dppgap {

using KernelFn = std::function<double(double, double)>;

// Nystrom discretization on [a, b]: Gauss-Legendre nodes x_i, weights
// w_i, symmetrized matrix sqrt(w_i w_j) kappa(x_i, x_j). Eigenvalues are
// clamped to [0, 1] (tolerance 1e-8, errors beyond) and sorted
// descending, eigenvector columns matching.
struct DiscretizedOperator {
    double a = 0.0;
    double b = 0.0;
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    int order() const { return static_cast<int>(nodes.size()); }
    double trace() const { return matrix.trace(); }
};

DiscretizedOperator discretize(const KernelFn& kappa, double a, double b,
                               int order);

DiscretizedOperator discretize(const TranslationKernel& kernel, double a,
                               double b, int order);

// prod (1 - lambda_i) over the clamped spectrum.
double fredholm_det(const DiscretizedOperator& op);

// Values of the leading n_modes L^2-normalized eigenfunctions at the
// given points, via global barycentric interpolation of the Nystrom
// eigenvectors (rows: points, columns: modes). Exact at the nodes.
Eigen::MatrixXd eigenfunctions_at(const DiscretizedOperator& op,
                                  const std::vector<double>& points,
                                  int n_modes);

} // namespace dppgap
