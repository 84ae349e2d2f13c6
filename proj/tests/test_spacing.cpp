#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "dppgap/errors.hpp"
#include "dppgap/nystrom.hpp"
#include "dppgap/sampler.hpp"
#include "dppgap/spacing_stats.hpp"
#include "dppgap/spectral_density.hpp"
#include "dppgap/translation_kernel.hpp"
#include "oracles.hpp"

using namespace dppgap;
using std::numbers::pi;

namespace {

const TranslationKernel& sine_kernel() {
    static const TranslationKernel k =
        kernel_from_density(validate_density(builtin_density("sine")));
    return k;
}

TranslationKernel zero_kernel() {
    TranslationKernel k;
    k.name = "null";
    k.g = [](double) { return 0.0; };
    k.g_prime = [](double) { return 0.0; };
    k.g0 = 0.0;
    k.g2_at_0 = 0.0;
    k.alpha = 0.0;
    return k;
}

Configuration config_of(std::vector<double> points, double L) {
    Configuration c;
    c.points = std::move(points);
    c.L = L;
    return c;
}

Configuration random_config(std::mt19937_64& rng, double L, int max_points) {
    std::uniform_int_distribution<int> count(0, max_points);
    std::uniform_real_distribution<double> place(0.0, L);
    Configuration c;
    c.L = L;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) c.points.push_back(place(rng));
    std::sort(c.points.begin(), c.points.end());
    return c;
}

double rho3_oracle(const TranslationKernel& kernel, double y1, double y2) {
    std::vector<std::vector<double>> m = {
        {kernel.g0, kernel.g(y1), kernel.g(y2)},
        {kernel.g(y1), kernel.g0, kernel.g(y2 - y1)},
        {kernel.g(y2), kernel.g(y2 - y1), kernel.g0}};
    return std::max(oracles::cofactor_det(m), 0.0);
}

} // namespace

TEST_SUITE_BEGIN("spacing");

TEST_CASE("consecutive gaps come out in order") {
    const SpacingSet set = spacings(config_of({1.0, 2.5, 4.0}, 10.0));
    CHECK_FALSE(set.too_few);
    REQUIRE(set.spacings.size() == 2);
    CHECK(set.spacings[0] == doctest::Approx(1.5));
    CHECK(set.spacings[1] == doctest::Approx(1.5));
    CHECK(set.L == 10.0);

    const SpacingSet shuffled = spacings(config_of({4.0, 1.0, 2.5}, 10.0));
    CHECK(shuffled.spacings == set.spacings);

    CHECK(spacings(config_of({3.0}, 10.0)).too_few);
    CHECK(spacings(config_of({3.0}, 10.0)).spacings.empty());
    CHECK(spacings(config_of({}, 10.0)).too_few);

    CHECK_THROWS_AS(spacings(config_of({1.0, 1.0, 2.0}, 10.0)),
                    std::invalid_argument);
}

TEST_CASE("gap counting applies the cubic-root rescaling strictly") {
    SpacingSet set;
    set.L = 1000.0;
    set.spacings = {0.5, 0.01};
    CHECK(count_below(set, 1.0) == 1);

    set.spacings = {};
    CHECK(count_below(set, 1.0) == 0);

    set.L = 1.0;
    set.spacings = {0.25};
    CHECK(count_below(set, 0.25) == 0);
    CHECK(count_below(set, 0.25 + 1e-9) == 1);

    CHECK_THROWS_AS(count_below(set, 0.0), std::invalid_argument);
}

TEST_CASE("rescaled minimum spacing and its empty sentinel") {
    CHECK(min_spacing_rescaled(config_of({0.0, 0.001, 5.0}, 1000.0)) ==
          doctest::Approx(0.01));
    CHECK(std::isinf(min_spacing_rescaled(config_of({3.0}, 1000.0))));
    CHECK(std::isinf(min_spacing_rescaled(config_of({}, 1000.0))));
}

TEST_CASE("no spacing below s is the same event as eta above s") {
    std::mt19937_64 rng(914);
    for (int rep = 0; rep < 200; ++rep) {
        const Configuration c = random_config(rng, 20.0, 12);
        if (c.points.size() < 2) continue;
        const SpacingSet set = spacings(c);
        const double eta = min_spacing_rescaled(c);
        for (double s : {0.2, 0.5, 1.0, 2.0}) {
            const bool none_below = count_below(set, s) == 0;
            if (eta > s) CHECK(none_below);
            if (none_below) CHECK(eta >= s);
        }
    }
}

TEST_CASE("thinning keeps exactly the singly-followed points") {
    const ModifiedConfig m =
        s_modify(config_of({0.0, 0.3, 5.0, 5.2, 5.3}, 10.0), 0.5);
    REQUIRE(m.kept_points.size() == 2);
    CHECK(m.kept_points[0] == doctest::Approx(0.0));
    CHECK(m.kept_points[1] == doctest::Approx(5.2));
    CHECK(m.n1 == 2);
    CHECK(m.n2 == 1);

    const ModifiedConfig wide = s_modify(config_of({0.0, 1.0, 2.0}, 10.0), 0.5);
    CHECK(wide.kept_points.empty());
    CHECK(wide.n1 == 0);
    CHECK(wide.n2 == 0);

    CHECK_THROWS_AS(s_modify(config_of({0.0, 1.0}, 10.0), 0.0),
                    std::invalid_argument);
}

TEST_CASE("thinning counts recount directly and grow with s") {
    std::mt19937_64 rng(2718);
    for (int rep = 0; rep < 200; ++rep) {
        const Configuration c = random_config(rng, 15.0, 14);
        const std::vector<double>& xs = c.points;
        double previous_total = 0.0;
        for (double s : {0.1, 0.4, 0.9, 2.0}) {
            const ModifiedConfig m = s_modify(c, s);

            int with_neighbor = 0;
            int with_two = 0;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                int within = 0;
                for (std::size_t j = i + 1; j < xs.size(); ++j)
                    within += xs[j] - xs[i] <= s ? 1 : 0;
                with_neighbor += within >= 1 ? 1 : 0;
                with_two += within >= 2 ? 1 : 0;
            }
            CHECK(m.n1 + m.n2 == with_neighbor);
            CHECK(m.n2 == with_two);
            CHECK(m.n1 == static_cast<int>(m.kept_points.size()));

            CHECK(m.n1 + m.n2 >= previous_total);
            previous_total = m.n1 + m.n2;

            if (c.points.size() >= 2) {
                const double s_rescaled = s * std::cbrt(c.L);
                CHECK(count_below(spacings(c), s_rescaled) == m.n1 + m.n2);
            }
        }
    }
}

TEST_CASE("three-point bound matches an independent quadrature") {
    const double stilde = 0.25;
    const auto inner = [&](double y1) {
        return oracles::simpson(
            [&](double y2) { return rho3_oracle(sine_kernel(), y1, y2); }, 0.0,
            stilde, 256);
    };
    const double reference = 2.0 * oracles::simpson(inner, 0.0, stilde, 256);
    const double bound = en2_bound(sine_kernel(), 2.0, stilde);
    CHECK(bound == doctest::Approx(reference).epsilon(1e-6));
}

TEST_CASE("three-point bound scales linearly in L and eighth-order in s") {
    const double b1 = en2_bound(sine_kernel(), 50.0, 0.1);
    const double b2 = en2_bound(sine_kernel(), 100.0, 0.1);
    CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-12));

    const double half = en2_bound(sine_kernel(), 50.0, 0.05);
    CHECK(b1 / half > 240.0);
    CHECK(b1 / half < 260.0);

    const double twice = en2_bound(sine_kernel(), 50.0, 0.2);
    CHECK(twice / b1 > 240.0);
    CHECK(twice / b1 < 260.0);
    CHECK(twice > b1);
}

TEST_CASE("three-point bound edge cases and guards") {
    CHECK(en2_bound(zero_kernel(), 50.0, 0.2) == 0.0);

    CHECK_THROWS_AS(en2_bound(sine_kernel(), 50.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(en2_bound(sine_kernel(), 50.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(en2_bound(sine_kernel(), 0.0, 0.2), std::invalid_argument);

    TranslationKernel broken = zero_kernel();
    broken.g = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    broken.g0 = 1.0;
    CHECK_THROWS_AS(en2_bound(broken, 50.0, 0.2), QuadratureFailure);
}

TEST_CASE("sampled gaps average to the inverse intensity") {
    const auto op = discretize(sine_kernel(), 0.0, 50.0, 300);
    const SpectralSampler sampler(op);
    double gap_sum = 0.0;
    double gap_count = 0.0;
    for (int t = 0; t < 800; ++t) {
        const SpacingSet set = spacings(sampler.sample(11, static_cast<std::uint64_t>(t)));
        for (double gap : set.spacings) {
            gap_sum += gap;
            gap_count += 1.0;
        }
    }
    const double mean_gap = gap_sum / gap_count;
    CHECK(mean_gap > 0.95);
    CHECK(mean_gap < 1.07);
}

TEST_SUITE_END();
