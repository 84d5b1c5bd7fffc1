#ifndef DISCRIMLAB_INFERENCE_HPP
#define DISCRIMLAB_INFERENCE_HPP

#include <cstddef>
#include <utility>

#include "discrimlab/dataset.hpp"
#include "discrimlab/discriminant.hpp"

namespace discrimlab::inference {

/// Large-sample test of Σ c_j μ_j = 0 along a fixed discriminant λ.
///
/// The variance of the contrast of projected means is Σ c_j² λᵀS_jλ / n_j
/// with unbiased S_j. λ is treated as known, so the test is approximate.
struct ContrastTestReport {
    linalg::Vector projected_means;
    double contrast_value = 0.0;
    double variance = 0.0;
    double se = 0.0;
    std::pair<double, double> ci{0.0, 0.0};
    double level = 0.95;
    double z_multiplier = 0.0;
    bool reject = false;
};

ContrastTestReport genetic_contrast_test(const dataset::LabeledDataset& ds, const discriminant::LinearDiscriminant& ld,
                                         std::span<const double> c, double level = 0.95);

struct BoxMReport {
    double m_statistic = 0.0;
    double chi2_approx = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
    double scale_factor = 1.0;
};

// Expects unbiased per-group covariances in stats.
BoxMReport box_m_test(const dataset::GroupStats& stats);

}  // namespace discrimlab::inference

#endif  // DISCRIMLAB_INFERENCE_HPP
