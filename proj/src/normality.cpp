#include "discrimlab/normality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "discrimlab/error.hpp"

namespace discrimlab::normality {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 1000;

// Series for P(a, x); converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz); for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw Error(ErrorKind::DomainError, "gamma_p: shape must be positive");
    if (x < 0.0) throw Error(ErrorKind::DomainError, "gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw Error(ErrorKind::DomainError, "gamma_q: shape must be positive");
    if (x < 0.0) throw Error(ErrorKind::DomainError, "gamma_q: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi2_upper_tail(double x, double f) {
    if (x < 0.0 || std::isnan(x)) throw Error(ErrorKind::DomainError, "chi-square statistic must be nonnegative");
    if (!(f > 0.0)) throw Error(ErrorKind::DomainError, "degrees of freedom must be positive");
    return gamma_q(0.5 * f, 0.5 * x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

double normal_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw Error(ErrorKind::DomainError, "normal quantile needs 0 < prob < 1");
    // Acklam's rational approximation, then two Newton steps on the exact CDF.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x = 0.0;
    if (prob < p_low) {
        const double q = std::sqrt(-2.0 * std::log(prob));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (prob <= 1.0 - p_low) {
        const double q = prob - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - prob));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int i = 0; i < 2; ++i) {
        const double err = normal_cdf(x) - prob;
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        x -= err / pdf;
    }
    return x;
}

double chi2_2_quantile(double level) {
    if (!(level >= 0.0 && level < 1.0)) throw Error(ErrorKind::DomainError, "level must be in [0, 1)");
    return -2.0 * std::log1p(-level);
}

double chi2_quantile(double level, double f) {
    if (!(level >= 0.0 && level < 1.0)) throw Error(ErrorKind::DomainError, "level must be in [0, 1)");
    if (level == 0.0) return 0.0;
    const double upper = 1.0 - level;
    double lo = 0.0;
    double hi = std::max(1.0, f);
    while (chi2_upper_tail(hi, f) > upper) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_upper_tail(mid, f) > upper)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

MardiaReport mardia(const linalg::Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (n <= p) {
        throw Error(ErrorKind::TooFewRows,
                    "need more rows than variables (n = " + std::to_string(n) + ", p = " + std::to_string(p) + ")");
    }

    linalg::Vector mean(p, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t v = 0; v < p; ++v) mean[v] += x(r, v);
    for (double& m : mean) m /= static_cast<double>(n);

    linalg::Matrix centered(n, p);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t v = 0; v < p; ++v) centered(r, v) = x(r, v) - mean[v];

    linalg::Matrix s = centered.transpose() * centered;
    s *= 1.0 / static_cast<double>(n);

    linalg::Matrix l;
    try {
        l = linalg::cholesky(s);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotPositiveDefinite)
            throw Error(ErrorKind::SingularCovariance, "sample covariance is not positive definite");
        throw;
    }

    // g_rs = z_rᵀ z_s with z_r = L⁻¹ (x_r − x̄).
    linalg::Matrix z(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        const linalg::Vector zr = linalg::solve_lower(l, centered.row(r));
        for (std::size_t v = 0; v < p; ++v) z(r, v) = zr[v];
    }

    double sum_cubes = 0.0;
    double sum_sq_diag = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t t = 0; t < n; ++t) {
            const double g = linalg::dot(z.row(r), z.row(t));
            sum_cubes += g * g * g;
            if (r == t) sum_sq_diag += g * g;
        }
    }

    MardiaReport rep;
    const double nd = static_cast<double>(n);
    const double pd = static_cast<double>(p);
    rep.n = n;
    rep.p = p;
    rep.b1p = sum_cubes / (nd * nd);
    rep.b2p = sum_sq_diag / nd;
    rep.f = p * (p + 1) * (p + 2) / 6;
    rep.u = nd * rep.b1p / 6.0;
    rep.v = (rep.b2p - pd * (pd + 2.0)) / std::sqrt(8.0 * pd * (pd + 2.0) / nd);
    rep.p_skew = chi2_upper_tail(std::max(rep.u, 0.0), static_cast<double>(rep.f));
    rep.p_kurt = normal_two_sided(rep.v);
    return rep;
}

}  // namespace discrimlab::normality
