#ifndef DISCRIMLAB_NORMALITY_HPP
#define DISCRIMLAB_NORMALITY_HPP

#include <cstddef>

#include "discrimlab/linalg.hpp"

namespace discrimlab::normality {

/// Mardia's multivariate skewness and kurtosis for one sample, with the
/// large-sample tests U ~ χ²_f and V ~ N(0,1).
struct MardiaReport {
    double b1p = 0.0;
    double b2p = 0.0;
    double u = 0.0;
    std::size_t f = 0;
    double v = 0.0;
    double p_skew = 1.0;
    double p_kurt = 1.0;
    std::size_t n = 0;
    std::size_t p = 0;
    // Asymptotic tests are unreliable below this many rows.
    bool small_sample() const noexcept { return n < 50; }
};

// S inside g_rs uses divisor n.
MardiaReport mardia(const linalg::Matrix& x);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double chi2_upper_tail(double x, double f);
double normal_two_sided(double z);
double normal_cdf(double z);
// Inverse of normal_cdf on (0, 1).
double normal_quantile(double prob);
// χ² quantile for 2 degrees of freedom (closed form).
double chi2_2_quantile(double level);
// General χ² quantile by bisection on chi2_upper_tail.
double chi2_quantile(double level, double f);

}  // namespace discrimlab::normality

#endif  // DISCRIMLAB_NORMALITY_HPP
