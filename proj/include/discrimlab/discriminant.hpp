#ifndef DISCRIMLAB_DISCRIMINANT_HPP
#define DISCRIMLAB_DISCRIMINANT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "discrimlab/dataset.hpp"
#include "discrimlab/linalg.hpp"

namespace discrimlab::discriminant {

using dataset::GroupStats;
using linalg::Matrix;
using linalg::Vector;

enum class Normalization {
    unit_norm,            // ‖λ‖ = 1
    within_variance_one,  // λᵀ (W / (n − s)) λ = 1
    inverse_within_one,   // λᵀ W⁻¹ λ = 1
    reporting_scale_x100,     // 100 × λ from the within-group SSCP matrices
};

std::string to_string(Normalization n);

/// A linear score λᵀx together with the projected group means that Rules I and
/// II compare against.
struct LinearDiscriminant {
    Vector coefficients;
    Vector projected_group_means;
    std::vector<std::string> group_names;
    Normalization normalization = Normalization::unit_norm;
    Vector projected_group_sds;  // sqrt(λᵀ S_j λ); empty when not computed

    double score(std::span<const double> x) const;
    // Same direction with coefficients (and projections) multiplied by factor.
    LinearDiscriminant scaled(double factor) const;
};

// Fills projected means (and SDs from the covariances in stats).
LinearDiscriminant make_discriminant(const GroupStats& stats, Vector coefficients, Normalization normalization);

struct CanonicalBasis {
    std::vector<LinearDiscriminant> variates;
    Vector eigenvalues;  // all p eigenvalues of W⁻¹B, descending
    std::size_t k = 0;   // min(p, s − 1)
};

CanonicalBasis canonical_variates(const GroupStats& stats,
                                  Normalization normalization = Normalization::within_variance_one);

// argmin_j |λᵀx − λᵀx̄_j|, ties to the lowest index.
std::size_t nearest_projected_mean_classify(const LinearDiscriminant& ld, std::span<const double> x);

// Nearest group mean in the space of the first `dims` canonical scores.
std::size_t canonical_space_classify(const CanonicalBasis& basis, std::span<const double> x, std::size_t dims);

enum class Covariance { equal, unequal };

/// Gaussian maximum-likelihood allocation with equal priors.
///
/// equal: pooled covariance W/(n−s); unequal: the per-group covariances held
/// in the stats (including their log-determinants).
class GaussianMlRule {
public:
    GaussianMlRule(const GroupStats& stats, Covariance covariance);

    std::size_t classify(std::span<const double> x) const;
    // Log-density up to the shared constant.
    Vector log_densities(std::span<const double> x) const;

private:
    std::vector<Vector> means_;
    std::vector<Matrix> cholesky_;
    Vector half_log_det_;
};

std::size_t gaussian_ml_classify(const GroupStats& stats, std::span<const double> x, Covariance covariance);

/// Normalized mean contrast over s groups: Σα = 0, Σα² = 1.
struct Contrast {
    Vector alpha;
    Matrix constraints;  // rows c with cᵀα = 0

    // α rescaled so its entries are the smallest integers with the same
    // ratios, when such integers (≤ 1000) exist; otherwise α / min|α_j|.
    Vector integer_form() const;
};

// s = 3, one constraint vector c.
Contrast optimal_contrast(std::span<const double> c);
// General s with an (s − 2) × s constraint matrix; null space must be 1-D.
Contrast optimal_contrast(const Matrix& constraints);

/// The fitted pre-specified-direction discriminant in two scalings.
struct GeneticDiscriminant {
    LinearDiscriminant unit;         // unit_norm, from the stats' covariances
    LinearDiscriminant reporting_scale;  // 100 × (Σ α_j² Q_j)⁻¹ Σ α_j x̄_j, Q_j within-group SSCP
    Vector alpha_used;               // integer-scaled α
};

GeneticDiscriminant genetic_discriminant(const GroupStats& stats, const Contrast& alpha);

// x1/x3 + x2/x4.
double anderson_index(std::span<const double> x);

double direction_cosine(std::span<const double> u, std::span<const double> v);

}  // namespace discrimlab::discriminant

#endif  // DISCRIMLAB_DISCRIMINANT_HPP
