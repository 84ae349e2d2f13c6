#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "dppgap/translation_kernel.hpp"

namespace dppgap {

// Pairwise-distinct points (min gap > 1e-12), at most 12 of them.
// Throws DegenerateTuple / TooLarge.
struct PointTuple {
    explicit PointTuple(std::vector<double> pts);

    const std::vector<double>& points() const { return pts_; }
    int size() const { return static_cast<int>(pts_.size()); }

  private:
    std::vector<double> pts_;
};

Eigen::MatrixXd gram_matrix(std::span<const double> pts,
                            const TranslationKernel& kernel);

// det of the Gram matrix, no clamping; 1 for the empty tuple.
double gram_det(std::span<const double> pts, const TranslationKernel& kernel);

// k-point correlation det K(x_i, x_j). Values in [-1e-10, 0) clamp to 0;
// anything more negative means the kernel is not positive definite.
double correlation(const PointTuple& tuple, const TranslationKernel& kernel);

// Cluster function as the signed sum over the (k-1)! cyclic orders:
//   r_k = (-1)^(k-1) sum_{cyclic sigma} prod_i K(x_i, x_sigma(i)).
double cluster_cyclic(const PointTuple& tuple, const TranslationKernel& kernel);

// Cluster function by Moebius inversion over set partitions of the
// correlations (k <= 10), and its inverse. The round trip is an identity.
double cluster_from_correlations(const PointTuple& tuple,
                                 const TranslationKernel& kernel);

using ClusterFunction = std::function<double(std::span<const double>)>;

double correlations_from_clusters(const PointTuple& tuple,
                                  const ClusterFunction& cluster);

// Cumulants of the count from cluster integrals V_j via Stirling numbers
// of the second kind: C_n = sum_j S(n, j) V_j. Exact integer recurrence,
// n_max <= 10. Returns C_1..C_n_max.
std::vector<double> cumulants_from_cluster_integrals(
    const std::vector<double>& cluster_integrals, int n_max);

// Truncation of the pair block in the cluster expansion: each z must sit
// in exactly one of the windows [x1, x1+stilde], [x2, x2+stilde] (else
// PartitionAmbiguity), y_i in [x_i, x_i+stilde], |x1-x2| > stilde.
// Returns  K[x1,y1,x2,y2,z...] - K[x1,y1,z's near x1] * K[x2,y2,z's near x2]
// where K[...] is the correlation determinant of the listed points.
double truncated_pair_correlation(double x1, double x2, double y1, double y2,
                                  std::span<const double> zs, double stilde,
                                  const TranslationKernel& kernel);

// det M <= det A * det C for M = [[A, B], [B^T, C]] positive semidefinite.
struct FischerResult {
    bool holds = false;
    double det_m = 0.0;
    double det_a = 0.0;
    double det_c = 0.0;
};

FischerResult fischer_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                            const Eigen::MatrixXd& b);

// S(n, k) via the exact integer recurrence, n <= 20.
std::uint64_t stirling2(int n, int k);

// Enumeration helpers shared with the tests.
void for_each_set_partition(
    int k, const std::function<void(const std::vector<std::vector<int>>&)>& fn);

void for_each_cyclic_order(
    int k, const std::function<void(const std::vector<int>&)>& fn);

} // namespace dppgap
