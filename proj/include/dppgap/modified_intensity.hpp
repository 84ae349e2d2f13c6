#pragma once

#include <vector>

#include "dppgap/translation_kernel.hpp"

namespace dppgap {

// Intensity of the process thinned to points whose right neighbour is
// within stilde, as the integral of rho_2(0, y) times the Fredholm
// determinant of the conditional kernel on [0, stilde].
double modified_intensity_fredholm(const TranslationKernel& kernel,
                                   double stilde, int order = 24);

// Same quantity as the alternating inclusion-exclusion series
//   sum_m (-1)^m / m! int rho_{m+2}(0, y, z_1..z_m)
// truncated at m_max, with a Hadamard bound on the dropped tail.
struct SeriesIntensity {
    double value = 0.0;
    double truncation_bound = 0.0;
    std::vector<double> terms;

    operator double() const { return value; }
};

SeriesIntensity modified_intensity_series(const TranslationKernel& kernel,
                                          double stilde, int m_max,
                                          int order = 8);

} // namespace dppgap
