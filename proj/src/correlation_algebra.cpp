#include "dppgap/correlation_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dppgap/errors.hpp"

namespace dppgap {

namespace {

constexpr double kDistinctGap = 1e-12;
constexpr int kMaxTuple = 12;
constexpr int kMaxPartition = 10;

double scaled_tol(double value) { return 1e-10 * std::max(1.0, std::abs(value)); }

} // namespace

PointTuple::PointTuple(std::vector<double> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw std::invalid_argument("PointTuple needs k >= 1");
    if (static_cast<int>(pts_.size()) > kMaxTuple)
        throw TooLarge("PointTuple limited to k <= 12, got " +
                       std::to_string(pts_.size()));
    std::vector<double> sorted = pts_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] <= kDistinctGap)
            throw DegenerateTuple("points " + std::to_string(sorted[i - 1]) +
                                  " and " + std::to_string(sorted[i]) +
                                  " are not distinct");
}

Eigen::MatrixXd gram_matrix(std::span<const double> pts,
                            const TranslationKernel& kernel) {
    const int k = static_cast<int>(pts.size());
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i) {
        m(i, i) = kernel.g0;
        for (int j = i + 1; j < k; ++j) {
            const double v = kernel.g(pts[j] - pts[i]);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

double gram_det(std::span<const double> pts, const TranslationKernel& kernel) {
    if (pts.empty()) return 1.0;
    if (pts.size() == 1) return kernel.g0;
    if (pts.size() == 2) {
        const double v = kernel.g(pts[1] - pts[0]);
        return kernel.g0 * kernel.g0 - v * v;
    }
    return gram_matrix(pts, kernel).partialPivLu().determinant();
}

double correlation(const PointTuple& tuple, const TranslationKernel& kernel) {
    const double det = gram_det(tuple.points(), kernel);
    if (det >= 0.0) return det;
    if (det >= -scaled_tol(det)) return 0.0;
    throw NotPSD("correlation determinant " + std::to_string(det) +
                 " is negative beyond tolerance; kernel is not nonnegative "
                 "definite");
}

void for_each_cyclic_order(
    int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<int> cycle(k);
    cycle[0] = 0;
    std::vector<int> rest(k - 1);
    std::iota(rest.begin(), rest.end(), 1);
    do {
        std::copy(rest.begin(), rest.end(), cycle.begin() + 1);
        fn(cycle);
    } while (std::next_permutation(rest.begin(), rest.end()));
}

double cluster_cyclic(const PointTuple& tuple,
                      const TranslationKernel& kernel) {
    const int k = tuple.size();
    if (k > kMaxTuple) throw TooLarge("cluster_cyclic limited to k <= 12");
    const Eigen::MatrixXd m = gram_matrix(tuple.points(), kernel);
    double sum = 0.0;
    for_each_cyclic_order(k, [&](const std::vector<int>& cycle) {
        double prod = 1.0;
        for (int i = 0; i < k; ++i)
            prod *= m(cycle[i], cycle[(i + 1) % k]);
        sum += prod;
    });
    return (k % 2 == 0 ? -1.0 : 1.0) * sum;
}

void for_each_set_partition(
    int k,
    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    // restricted-growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1])
    std::vector<int> a(k, 0);
    std::vector<int> prefix_max(k, 0);
    std::vector<std::vector<int>> blocks;
    for (;;) {
        int nblocks = 0;
        for (int i = 0; i < k; ++i) nblocks = std::max(nblocks, a[i] + 1);
        blocks.assign(nblocks, {});
        for (int i = 0; i < k; ++i) blocks[a[i]].push_back(i);
        fn(blocks);

        int i = k - 1;
        while (i > 0) {
            const int cap = prefix_max[i - 1] + 1;
            if (a[i] < cap) break;
            --i;
        }
        if (i == 0) return;
        ++a[i];
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (int j = i + 1; j < k; ++j) {
            a[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
}

double cluster_from_correlations(const PointTuple& tuple,
                                 const TranslationKernel& kernel) {
    const int k = tuple.size();
    if (k > kMaxPartition)
        throw TooLarge("cluster_from_correlations limited to k <= 10");
    const auto& pts = tuple.points();
    double sum = 0.0;
    std::vector<double> sub;
    for_each_set_partition(k, [&](const std::vector<std::vector<int>>& blocks) {
        const int m = static_cast<int>(blocks.size());
        double prod = 1.0;
        for (const auto& block : blocks) {
            sub.clear();
            for (int idx : block) sub.push_back(pts[idx]);
            prod *= gram_det(sub, kernel);
        }
        double factor = (m % 2 == 0 ? -1.0 : 1.0);
        for (int j = 2; j < m; ++j) factor *= j; // (m-1)!
        sum += factor * prod;
    });
    return sum;
}

double correlations_from_clusters(const PointTuple& tuple,
                                  const ClusterFunction& cluster) {
    if (!cluster) throw std::invalid_argument("cluster oracle is empty");
    const int k = tuple.size();
    if (k > kMaxPartition)
        throw TooLarge("correlations_from_clusters limited to k <= 10");
    const auto& pts = tuple.points();
    double sum = 0.0;
    std::vector<double> sub;
    for_each_set_partition(k, [&](const std::vector<std::vector<int>>& blocks) {
        double prod = 1.0;
        for (const auto& block : blocks) {
            sub.clear();
            for (int idx : block) sub.push_back(pts[idx]);
            prod *= cluster(sub);
        }
        sum += prod;
    });
    return sum;
}

std::uint64_t stirling2(int n, int k) {
    if (n < 0 || k < 0 || n > 20)
        throw TooLarge("stirling2 supports 0 <= k <= n <= 20");
    if (k > n) return 0;
    if (n == 0) return 1; // S(0,0) = 1
    if (k == 0) return 0;
    // rolling row of S(i, .)
    std::vector<std::uint64_t> row(n + 1, 0), next(n + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        next[0] = 0;
        for (int j = 1; j <= i; ++j)
            next[j] = static_cast<std::uint64_t>(j) * row[j] + row[j - 1];
        std::swap(row, next);
    }
    return row[k];
}

std::vector<double> cumulants_from_cluster_integrals(
    const std::vector<double>& cluster_integrals, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (n_max > kMaxPartition ||
        n_max > static_cast<int>(cluster_integrals.size()))
        throw TooLarge("cumulants_from_cluster_integrals needs n_max <= 10 "
                       "and n_max <= length(V)");
    std::vector<double> cumulants(n_max);
    for (int n = 1; n <= n_max; ++n) {
        double c = 0.0;
        for (int j = 1; j <= n; ++j)
            c += static_cast<double>(stirling2(n, j)) * cluster_integrals[j - 1];
        cumulants[n - 1] = c;
    }
    return cumulants;
}

double truncated_pair_correlation(double x1, double x2, double y1, double y2,
                                  std::span<const double> zs, double stilde,
                                  const TranslationKernel& kernel) {
    if (!(stilde > 0.0)) throw std::invalid_argument("stilde must be > 0");
    if (std::abs(x1 - x2) <= stilde)
        throw std::invalid_argument("windows overlap: |x1 - x2| <= stilde");
    if (y1 < x1 || y1 > x1 + stilde || y2 < x2 || y2 > x2 + stilde)
        throw std::invalid_argument("y_i must lie in [x_i, x_i + stilde]");
    if (zs.size() + 4 > static_cast<std::size_t>(kMaxTuple))
        throw TooLarge("truncated_pair_correlation limited to 12 points");

    std::vector<double> near1 = {x1, y1};
    std::vector<double> near2 = {x2, y2};
    for (double z : zs) {
        const bool in1 = z >= x1 && z <= x1 + stilde;
        const bool in2 = z >= x2 && z <= x2 + stilde;
        if (in1 == in2)
            throw PartitionAmbiguity("z = " + std::to_string(z) +
                                     " lies in " +
                                     (in1 ? "both windows" : "neither window"));
        (in1 ? near1 : near2).push_back(z);
    }

    std::vector<double> all = {x1, y1, x2, y2};
    all.insert(all.end(), zs.begin(), zs.end());
    return gram_det(all, kernel) -
           gram_det(near1, kernel) * gram_det(near2, kernel);
}

FischerResult fischer_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                            const Eigen::MatrixXd& b) {
    const int n = static_cast<int>(a.rows());
    const int m = static_cast<int>(c.rows());
    if (a.cols() != n || c.cols() != m || b.rows() != n || b.cols() != m)
        throw std::invalid_argument("fischer_check block shapes do not match");

    Eigen::MatrixXd big(n + m, n + m);
    big.topLeftCorner(n, n) = a;
    big.topRightCorner(n, m) = b;
    big.bottomLeftCorner(m, n) = b.transpose();
    big.bottomRightCorner(m, m) = c;

    const Eigen::MatrixXd sym = 0.5 * (big + big.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, top))
        throw NotPSD("block matrix has eigenvalue " +
                     std::to_string(eig.eigenvalues().minCoeff()));

    FischerResult out;
    out.det_a = a.partialPivLu().determinant();
    out.det_c = c.partialPivLu().determinant();
    out.det_m = big.partialPivLu().determinant();
    out.holds = out.det_m <= out.det_a * out.det_c +
                                scaled_tol(out.det_a * out.det_c);
    return out;
}

} // namespace dppgap
