#include "discrimlab/inference.hpp"

#include <cmath>

#include "discrimlab/error.hpp"
#include "discrimlab/normality.hpp"

namespace discrimlab::inference {

ContrastTestReport genetic_contrast_test(const dataset::LabeledDataset& ds, const discriminant::LinearDiscriminant& ld,
                                         std::span<const double> c, double level) {
    if (c.size() != ds.s()) throw Error(ErrorKind::DimensionMismatch, "contrast length differs from the group count");
    if (ld.coefficients.size() != ds.p()) {
        throw Error(ErrorKind::DimensionMismatch, "discriminant fitted on a different number of variables");
    }
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::DomainError, "level must be in (0, 1)");

    const dataset::GroupStats stats = dataset::group_stats(ds, dataset::DivisorPolicy::unbiased);
    ContrastTestReport rep;
    rep.level = level;
    for (std::size_t j = 0; j < ds.s(); ++j) {
        const double mean = linalg::dot(ld.coefficients, stats.means[j]);
        const double score_var = linalg::quadratic_form(stats.covariances[j], ld.coefficients, ld.coefficients);
        rep.projected_means.push_back(mean);
        rep.contrast_value += c[j] * mean;
        rep.variance += c[j] * c[j] * score_var / static_cast<double>(stats.counts[j]);
    }
    rep.variance = std::max(rep.variance, 0.0);
    rep.se = std::sqrt(rep.variance);
    rep.z_multiplier = normality::normal_quantile(0.5 + 0.5 * level);
    rep.ci = {rep.contrast_value - rep.z_multiplier * rep.se, rep.contrast_value + rep.z_multiplier * rep.se};
    rep.reject = rep.ci.first > 0.0 || rep.ci.second < 0.0;
    return rep;
}

BoxMReport box_m_test(const dataset::GroupStats& stats) {
    const std::size_t s = stats.s();
    const double p = static_cast<double>(stats.p());
    const double n = static_cast<double>(stats.n());
    const auto log_det = [](const linalg::Matrix& m) {
        try {
            return linalg::log_det_spd(m);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotPositiveDefinite)
                throw Error(ErrorKind::SingularCovariance, "covariance matrix is not positive definite");
            throw;
        }
    };

    const double pooled_log_det = log_det(stats.pooled_covariance());
    double m = (n - static_cast<double>(s)) * pooled_log_det;
    double inv_sum = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
        const double dof = static_cast<double>(stats.counts[j]) - 1.0;
        // Covariances must be on the unbiased divisor for M to be a valid statistic.
        linalg::Matrix cov = stats.covariances[j];
        if (stats.divisor_policy == dataset::DivisorPolicy::ml) cov *= static_cast<double>(stats.counts[j]) / dof;
        m -= dof * log_det(cov);
        inv_sum += 1.0 / dof;
    }
    m = std::max(m, 0.0);

    BoxMReport rep;
    rep.m_statistic = m;
    rep.scale_factor = 1.0 - (2.0 * p * p + 3.0 * p - 1.0) / (6.0 * (p + 1.0) * (static_cast<double>(s) - 1.0)) *
                                 (inv_sum - 1.0 / (n - static_cast<double>(s)));
    rep.chi2_approx = m * rep.scale_factor;
    rep.df = (s - 1) * stats.p() * (stats.p() + 1) / 2;
    rep.p_value = normality::chi2_upper_tail(std::max(rep.chi2_approx, 0.0), static_cast<double>(rep.df));
    return rep;
}

}  // namespace discrimlab::inference
