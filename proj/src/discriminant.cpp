#include "discrimlab/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "discrimlab/error.hpp"

namespace discrimlab::discriminant {

namespace {

double within_scale(const GroupStats& stats, std::span<const double> v, Normalization normalization) {
    switch (normalization) {
        case Normalization::unit_norm: return 1.0 / linalg::norm(v);
        case Normalization::within_variance_one:
            return 1.0 / std::sqrt(linalg::quadratic_form(stats.pooled_covariance(), v, v));
        case Normalization::inverse_within_one: {
            const Vector winv_v = linalg::solve_spd(stats.within, v);
            return 1.0 / std::sqrt(linalg::dot(v, winv_v));
        }
        case Normalization::reporting_scale_x100: break;
    }
    throw Error(ErrorKind::InvalidArgument, "normalization not available for canonical variates");
}

void fix_sign_largest_positive(Vector& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
    if (v[best] < 0.0)
        for (double& x : v) x = -x;
}

Matrix rethrow_as_singular(const Matrix& m, ErrorKind kind, const char* what) {
    try {
        return linalg::cholesky(m);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotPositiveDefinite) throw Error(kind, what);
        throw;
    }
}

}  // namespace

std::string to_string(Normalization n) {
    switch (n) {
        case Normalization::unit_norm: return "unit_norm";
        case Normalization::within_variance_one: return "within_variance_one";
        case Normalization::inverse_within_one: return "inverse_within_one";
        case Normalization::reporting_scale_x100: return "reporting_scale_x100";
    }
    return "unknown";
}

double LinearDiscriminant::score(std::span<const double> x) const {
    if (x.size() != coefficients.size()) throw Error(ErrorKind::DimensionMismatch, "observation length differs from p");
    return linalg::dot(coefficients, x);
}

LinearDiscriminant LinearDiscriminant::scaled(double factor) const {
    LinearDiscriminant out = *this;
    for (double& c : out.coefficients) c *= factor;
    for (double& m : out.projected_group_means) m *= factor;
    for (double& sd : out.projected_group_sds) sd *= std::abs(factor);
    return out;
}

LinearDiscriminant make_discriminant(const GroupStats& stats, Vector coefficients, Normalization normalization) {
    if (coefficients.size() != stats.p()) throw Error(ErrorKind::DimensionMismatch, "coefficient length differs from p");
    if (linalg::norm(coefficients) == 0.0) throw Error(ErrorKind::ZeroVector, "discriminant coefficients are all zero");
    LinearDiscriminant ld;
    ld.coefficients = std::move(coefficients);
    ld.group_names = stats.group_names;
    ld.normalization = normalization;
    for (std::size_t j = 0; j < stats.s(); ++j) {
        ld.projected_group_means.push_back(linalg::dot(ld.coefficients, stats.means[j]));
        ld.projected_group_sds.push_back(
            std::sqrt(std::max(0.0, linalg::quadratic_form(stats.covariances[j], ld.coefficients, ld.coefficients))));
    }
    return ld;
}

CanonicalBasis canonical_variates(const GroupStats& stats, Normalization normalization) {
    if (stats.s() < 2) throw Error(ErrorKind::InvalidArgument, "canonical variates need at least two groups");
    if (normalization == Normalization::reporting_scale_x100) {
        throw Error(ErrorKind::InvalidArgument, "the x100 reporting scale applies only to the genetic discriminant");
    }
    rethrow_as_singular(stats.within, ErrorKind::SingularWithin, "within-group SSCP matrix is singular");
    const linalg::EigenResult eig = linalg::gen_eigen_spd(stats.between, stats.within);

    CanonicalBasis basis;
    basis.eigenvalues = eig.values;
    for (double& v : basis.eigenvalues)
        if (std::abs(v) <= 1e-8 * std::max(std::abs(eig.values.front()), 1e-300)) v = 0.0;
    basis.k = std::min(stats.p(), stats.s() - 1);
    for (std::size_t k = 0; k < basis.k; ++k) {
        Vector v = eig.vectors.column(k);
        const double scale = within_scale(stats, v, normalization);
        for (double& x : v) x *= scale;
        fix_sign_largest_positive(v);
        basis.variates.push_back(make_discriminant(stats, std::move(v), normalization));
    }
    return basis;
}

std::size_t nearest_projected_mean_classify(const LinearDiscriminant& ld, std::span<const double> x) {
    const double score = ld.score(x);
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ld.projected_group_means.size(); ++j) {
        const double d = std::abs(score - ld.projected_group_means[j]);
        if (d < best_dist) {
            best_dist = d;
            best = j;
        }
    }
    return best;
}

std::size_t canonical_space_classify(const CanonicalBasis& basis, std::span<const double> x, std::size_t dims) {
    dims = std::min(dims, basis.variates.size());
    if (dims == 0) throw Error(ErrorKind::InvalidArgument, "no canonical dimensions selected");
    const std::size_t s = basis.variates.front().projected_group_means.size();
    Vector scores(dims);
    for (std::size_t k = 0; k < dims; ++k) scores[k] = basis.variates[k].score(x);
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s; ++j) {
        double d = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
            const double diff = scores[k] - basis.variates[k].projected_group_means[j];
            d += diff * diff;
        }
        if (d < best_dist) {
            best_dist = d;
            best = j;
        }
    }
    return best;
}

GaussianMlRule::GaussianMlRule(const GroupStats& stats, Covariance covariance) : means_(stats.means) {
    if (covariance == Covariance::equal) {
        const Matrix l = rethrow_as_singular(stats.pooled_covariance(), ErrorKind::SingularCovariance,
                                             "pooled covariance is not positive definite");
        cholesky_.assign(stats.s(), l);
        half_log_det_.assign(stats.s(), 0.0);
    } else {
        for (std::size_t j = 0; j < stats.s(); ++j) {
            const Matrix l = rethrow_as_singular(stats.covariances[j], ErrorKind::SingularCovariance,
                                                 "a group covariance is not positive definite");
            double half_log_det = 0.0;
            for (std::size_t i = 0; i < l.rows(); ++i) half_log_det += std::log(l(i, i));
            cholesky_.push_back(l);
            half_log_det_.push_back(half_log_det);
        }
    }
}

Vector GaussianMlRule::log_densities(std::span<const double> x) const {
    if (x.size() != means_.front().size()) throw Error(ErrorKind::DimensionMismatch, "observation length differs from p");
    Vector out(means_.size());
    Vector d(x.size());
    for (std::size_t j = 0; j < means_.size(); ++j) {
        for (std::size_t v = 0; v < x.size(); ++v) d[v] = x[v] - means_[j][v];
        const Vector z = linalg::solve_lower(cholesky_[j], d);
        out[j] = -half_log_det_[j] - 0.5 * linalg::dot(z, z);
    }
    return out;
}

std::size_t GaussianMlRule::classify(std::span<const double> x) const {
    const Vector ld = log_densities(x);
    std::size_t best = 0;
    for (std::size_t j = 1; j < ld.size(); ++j)
        if (ld[j] > ld[best]) best = j;
    return best;
}

std::size_t gaussian_ml_classify(const GroupStats& stats, std::span<const double> x, Covariance covariance) {
    return GaussianMlRule(stats, covariance).classify(x);
}

Vector Contrast::integer_form() const {
    double min_abs = std::numeric_limits<double>::infinity();
    for (double a : alpha)
        if (std::abs(a) > 1e-12) min_abs = std::min(min_abs, std::abs(a));
    Vector base = alpha;
    for (double& a : base) a /= min_abs;
    for (int k = 1; k <= 1000; ++k) {
        bool integral = true;
        for (double a : base) integral = integral && std::abs(a * k - std::round(a * k)) < 1e-6;
        if (integral) {
            for (double& a : base) a = std::round(a * k);
            return base;
        }
    }
    return base;
}

Contrast optimal_contrast(std::span<const double> c) {
    if (c.size() != 3) throw Error(ErrorKind::DimensionMismatch, "a single constraint needs exactly three groups");
    Matrix m(1, 3);
    for (std::size_t j = 0; j < 3; ++j) m(0, j) = c[j];
    return optimal_contrast(m);
}

Contrast optimal_contrast(const Matrix& constraints) {
    const std::size_t s = constraints.cols();
    if (s < 3 || constraints.rows() != s - 2) {
        throw Error(ErrorKind::DimensionMismatch, "need an (s - 2) x s constraint matrix with s >= 3");
    }
    // Null space of [1ᵀ; C]: eigenvectors of AᵀA with zero eigenvalue.
    Matrix a(s - 1, s);
    for (std::size_t j = 0; j < s; ++j) a(0, j) = 1.0 / std::sqrt(static_cast<double>(s));
    for (std::size_t r = 0; r < s - 2; ++r) {
        const auto row = constraints.row(r);
        const double len = linalg::norm(row);
        if (len == 0.0) throw Error(ErrorKind::DegenerateConstraint, "constraint row is zero");
        for (std::size_t j = 0; j < s; ++j) a(r + 1, j) = row[j] / len;
    }
    const linalg::EigenResult eig = linalg::sym_eigen(a.transpose() * a);
    const double tol = 1e-10 * std::max(eig.values.front(), 1.0);
    std::size_t null_dim = 0;
    for (double v : eig.values)
        if (std::abs(v) <= tol) ++null_dim;
    if (null_dim != 1) {
        throw Error(ErrorKind::DegenerateConstraint,
                    "constraints leave a " + std::to_string(null_dim) + "-dimensional space of contrasts");
    }
    Contrast out;
    out.alpha = eig.vectors.column(s - 1);
    const double len = linalg::norm(out.alpha);
    for (double& x : out.alpha) x /= len;
    if (out.alpha.back() < 0.0 || (std::abs(out.alpha.back()) < 1e-14))
        for (double& x : out.alpha) x = -x;
    out.constraints = constraints;
    return out;
}

GeneticDiscriminant genetic_discriminant(const GroupStats& stats, const Contrast& contrast) {
    const std::size_t s = stats.s();
    const std::size_t p = stats.p();
    if (contrast.alpha.size() != s) throw Error(ErrorKind::DimensionMismatch, "contrast length differs from s");
    const Vector alpha = contrast.integer_form();

    Matrix pooled_cov(p, p);
    Matrix pooled_sscp(p, p);
    Vector delta(p, 0.0);
    for (std::size_t j = 0; j < s; ++j) {
        const double a = alpha[j];
        pooled_cov += stats.covariances[j] * (a * a);
        pooled_sscp += stats.group_sscp(j) * (a * a);
        for (std::size_t v = 0; v < p; ++v) delta[v] += a * stats.means[j][v];
    }

    const auto solve = [](const Matrix& m, const Vector& rhs) {
        try {
            return linalg::solve_spd(m, rhs);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotPositiveDefinite)
                throw Error(ErrorKind::SingularCovariance, "weighted covariance sum is not positive definite");
            throw;
        }
    };

    Vector unit = solve(pooled_cov, delta);
    const double len = linalg::norm(unit);
    if (len == 0.0) throw Error(ErrorKind::ZeroVector, "contrast of group means is zero");
    for (double& x : unit) x /= len;

    Vector scaled = solve(pooled_sscp, delta);
    for (double& x : scaled) x *= 100.0;

    GeneticDiscriminant out;
    out.unit = make_discriminant(stats, std::move(unit), Normalization::unit_norm);
    out.reporting_scale = make_discriminant(stats, std::move(scaled), Normalization::reporting_scale_x100);
    out.alpha_used = alpha;
    return out;
}

double anderson_index(std::span<const double> x) {
    if (x.size() != 4) throw Error(ErrorKind::DimensionMismatch, "index needs the four iris measurements");
    if (x[2] == 0.0 || x[3] == 0.0) throw Error(ErrorKind::DivisionByZero, "petal measurement is zero");
    return x[0] / x[2] + x[1] / x[3];
}

double direction_cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "vectors differ in length");
    const double nu = linalg::norm(u);
    const double nv = linalg::norm(v);
    if (nu == 0.0 || nv == 0.0) throw Error(ErrorKind::ZeroVector, "direction of a zero vector");
    return std::min(1.0, std::abs(linalg::dot(u, v)) / (nu * nv));
}

}  // namespace discrimlab::discriminant
