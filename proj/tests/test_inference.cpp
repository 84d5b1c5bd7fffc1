#include <doctest.h>

#include <cmath>

#include "discrimlab/dataset.hpp"
#include "discrimlab/discriminant.hpp"
#include "discrimlab/error.hpp"
#include "discrimlab/inference.hpp"
#include "discrimlab/normality.hpp"
#include "support.hpp"

using namespace discrimlab;
using namespace discrimlab::inference;
using dataset::LabeledDataset;
using linalg::Matrix;
using linalg::Vector;

namespace {

bool throws_kind(auto&& f, ErrorKind kind) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

discriminant::LinearDiscriminant iris_genetic() {
    const double con[] = {1.0, -3.0, 2.0};
    return discriminant::genetic_discriminant(dataset::group_stats(dataset::embedded_iris()),
                                              discriminant::optimal_contrast(con))
        .reporting_scale;
}

}  // namespace

TEST_CASE("genetic contrast test on iris") {
    const double c[] = {1.0, -3.0, 2.0};
    const auto rep = genetic_contrast_test(dataset::embedded_iris(), iris_genetic(), c, 0.95);
    CHECK(std::abs(std::abs(rep.contrast_value) - 3.1) <= 0.1);
    CHECK(std::abs(rep.se - 2.199) <= 0.15);
    CHECK(rep.se == doctest::Approx(std::sqrt(rep.variance)));
    CHECK(rep.z_multiplier == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(rep.ci.first == doctest::Approx(rep.contrast_value - rep.z_multiplier * rep.se));
    CHECK(rep.ci.second == doctest::Approx(rep.contrast_value + rep.z_multiplier * rep.se));
    CHECK_FALSE(rep.reject);
    // Oriented so the contrast is positive, the interval is close to (-1.33, 7.47).
    CHECK(std::abs(-rep.ci.second - -1.33) <= 0.35);
    CHECK(std::abs(-rep.ci.first - 7.47) <= 0.35);
    CHECK(rep.projected_means[0] == doctest::Approx(-10.8).epsilon(0.01));
    CHECK(rep.projected_means[1] == doctest::Approx(22.9).epsilon(0.01));
    CHECK(rep.projected_means[2] == doctest::Approx(38.2).epsilon(0.01));
}

TEST_CASE("zero contrast gives a degenerate interval") {
    const double c[] = {0.0, 0.0, 0.0};
    const auto rep = genetic_contrast_test(dataset::embedded_iris(), iris_genetic(), c);
    CHECK(rep.contrast_value == 0.0);
    CHECK(rep.variance == 0.0);
    CHECK(rep.ci.first == 0.0);
    CHECK(rep.ci.second == 0.0);
    CHECK_FALSE(rep.reject);
}

TEST_CASE("contrast test decision is invariant to rescaling the discriminant") {
    const double c[] = {1.0, -3.0, 2.0};
    const auto ld = iris_genetic();
    const auto a = genetic_contrast_test(dataset::embedded_iris(), ld, c);
    for (double k : {-2.0, 0.01, 300.0}) {
        const auto b = genetic_contrast_test(dataset::embedded_iris(), ld.scaled(k), c);
        CHECK(a.reject == b.reject);
        CHECK(b.se == doctest::Approx(std::abs(k) * a.se));
    }
    const double strong[] = {1.0, -1.0, 0.0};
    const auto s = genetic_contrast_test(dataset::embedded_iris(), ld, strong);
    CHECK(s.reject);
    CHECK(genetic_contrast_test(dataset::embedded_iris(), ld.scaled(-4.0), strong).reject);
}

TEST_CASE("contrast test errors") {
    const double two[] = {1.0, -1.0};
    CHECK(throws_kind([&] { genetic_contrast_test(dataset::embedded_iris(), iris_genetic(), two); },
                      ErrorKind::DimensionMismatch));
    const double c[] = {1.0, -3.0, 2.0};
    CHECK(throws_kind([&] { genetic_contrast_test(dataset::embedded_iris(), iris_genetic(), c, 1.5); },
                      ErrorKind::DomainError));
}

TEST_CASE("Box M is zero for identical groups") {
    std::mt19937_64 rng(61);
    const Matrix base = testsupport::random_matrix(rng, 12, 2);
    Matrix x(36, 2);
    std::vector<std::size_t> labels;
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 12; ++i) {
            labels.push_back(j);
            for (std::size_t v = 0; v < 2; ++v) x(j * 12 + i, v) = base(i, v) + static_cast<double>(j);
        }
    const auto rep = box_m_test(dataset::group_stats(LabeledDataset(x, labels, {"a", "b"}, {"g", "h", "k"})));
    CHECK(rep.m_statistic < 1e-10);
    CHECK(rep.p_value == doctest::Approx(1.0));
    CHECK(rep.df == 6);
}

TEST_CASE("Box M on iris rejects equal covariances") {
    const auto rep = box_m_test(dataset::group_stats(dataset::embedded_iris()));
    CHECK(rep.df == 20);
    CHECK(rep.m_statistic > 0.0);
    CHECK(rep.p_value < 0.01);
    const auto ml = box_m_test(dataset::group_stats(dataset::embedded_iris(), dataset::DivisorPolicy::ml));
    CHECK(ml.m_statistic == doctest::Approx(rep.m_statistic).epsilon(1e-12));
}

TEST_CASE("Box M matches the scalar formula for two groups") {
    // Two groups of 50 with sample variances exactly 1 and 4.
    std::mt19937_64 rng(62);
    const Vector z = testsupport::random_vector(rng, 50);
    double m = 0.0;
    for (double v : z) m += v / 50.0;
    double ss = 0.0;
    for (double v : z) ss += (v - m) * (v - m);
    const double scale = std::sqrt(49.0 / ss);
    Matrix x(100, 1);
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < 50; ++i) {
        x(i, 0) = (z[i] - m) * scale;
        x(50 + i, 0) = 2.0 * (z[i] - m) * scale + 10.0;
        labels.push_back(0);
    }
    for (std::size_t i = 0; i < 50; ++i) labels.push_back(1);
    const auto rep = box_m_test(dataset::group_stats(LabeledDataset(x, labels, {"x"}, {"a", "b"})));
    const double pooled = (49.0 * 1.0 + 49.0 * 4.0) / 98.0;
    const double m_oracle = 98.0 * std::log(pooled) - 49.0 * std::log(1.0) - 49.0 * std::log(4.0);
    CHECK(std::abs(rep.m_statistic - m_oracle) < 1e-9);
    const double c = 1.0 - (2.0 + 3.0 - 1.0) / (6.0 * 2.0 * 1.0) * (2.0 / 49.0 - 1.0 / 98.0);
    CHECK(std::abs(rep.chi2_approx - c * m_oracle) < 1e-9);
    CHECK(rep.df == 1);
    CHECK(rep.p_value == doctest::Approx(normality::chi2_upper_tail(c * m_oracle, 1.0)));
}

TEST_CASE("Box M is invariant under a common affine map") {
    std::mt19937_64 rng(63);
    for (int t = 0; t < 10; ++t) {
        auto ds = testsupport::random_groups(rng, 3, 3, 15);
        Matrix mm = testsupport::random_matrix(rng, 3, 3);
        for (std::size_t i = 0; i < 3; ++i) mm(i, i) += 3.0;
        Matrix y = ds.observations() * mm.transpose();
        for (std::size_t i = 0; i < y.rows(); ++i) y(i, 0) += 5.0;
        const auto a = box_m_test(dataset::group_stats(ds));
        const auto b = box_m_test(dataset::group_stats(LabeledDataset(y, ds.labels(), ds.variable_names(), ds.group_names())));
        CHECK(std::abs(a.m_statistic - b.m_statistic) < 1e-8 * std::max(1.0, a.m_statistic));
    }
}

TEST_CASE("Box M errors on singular group covariance") {
    const LabeledDataset ds(Matrix{{1, 1}, {2, 2}, {3, 3}, {0, 1}, {1, 0}, {2, 2}}, {0, 0, 0, 1, 1, 1}, {"a", "b"},
                            {"g", "h"});
    CHECK(throws_kind([&] { box_m_test(dataset::group_stats(ds)); }, ErrorKind::SingularCovariance));
}
