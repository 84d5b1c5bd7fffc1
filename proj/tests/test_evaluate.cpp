#include <doctest.h>

#include <json.hpp>

#include "discrimlab/dataset.hpp"
#include "discrimlab/discriminant.hpp"
#include "discrimlab/error.hpp"
#include "discrimlab/evaluate.hpp"
#include "support.hpp"

using namespace discrimlab;
using namespace discrimlab::evaluate;

namespace {

bool throws_kind(auto&& f, ErrorKind kind) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

const std::vector<std::string> kNames{"setosa", "versicolor", "virginica"};

}  // namespace

TEST_CASE("confusion matrix of a perfect classifier") {
    const Labels a{0, 1, 2, 2, 1, 0};
    const auto cm = confusion_matrix(a, a, kNames);
    CHECK(cm.counts == std::vector<std::vector<std::size_t>>{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    CHECK(cm.misclassified.empty());
    CHECK(correct_count(cm) == 6);
    CHECK(cm.total() == 6);
}

TEST_CASE("confusion matrix layout is predicted by actual with 1-based indices") {
    const Labels actual{0, 0, 1, 1, 2};
    const Labels predicted{0, 1, 1, 2, 2};
    const auto cm = confusion_matrix(actual, predicted, kNames);
    CHECK(cm.counts[1][0] == 1);
    CHECK(cm.counts[2][1] == 1);
    CHECK(cm.misclassified_indices() == std::vector<std::size_t>{2, 4});
    CHECK(cm.misclassified[0].actual == 0);
    CHECK(cm.misclassified[0].predicted == 1);
    CHECK(correct_count(cm) == 3);
    CHECK(cm.misclassified.size() == cm.total() - correct_count(cm));
}

TEST_CASE("confusion matrix text and record forms") {
    const Labels actual{0, 0, 1, 1, 2, 2};
    const Labels predicted{0, 0, 1, 2, 2, 2};
    const auto cm = confusion_matrix(actual, predicted, kNames);
    const std::string text = cm.to_text();
    CHECK(text.find("Predicted") != std::string::npos);
    CHECK(text.find("Actual") != std::string::npos);
    CHECK(text.find("Total") != std::string::npos);
    CHECK(text == cm.to_text());
    const auto j = nlohmann::json::parse(cm.to_json());
    CHECK(j["counts_predicted_by_actual"][2][1] == 1);
    CHECK(j["misclassified"].size() == 1);
}

TEST_CASE("confusion matrix errors") {
    CHECK(throws_kind([] { confusion_matrix({0, 1}, {0}, kNames); }, ErrorKind::LengthMismatch));
    CHECK(throws_kind([] { confusion_matrix({0, 5}, {0, 1}, kNames); }, ErrorKind::IndexOutOfRange));
}

TEST_CASE("agreement count") {
    const Labels a{0, 1, 2, 1};
    CHECK(agreement_count(a, a) == 4);
    CHECK(agreement_count(Labels{0, 0, 0}, Labels{1, 2, 1}) == 0);
    const Labels b{0, 2, 2, 0};
    CHECK(agreement_count(a, b) == agreement_count(b, a));
    CHECK(agreement_count(a, b) == 2);
    CHECK(disagreement_indices(a, b) == std::vector<std::size_t>{2, 4});
    CHECK(throws_kind([] { agreement_count({0}, {0, 1}); }, ErrorKind::LengthMismatch));
}

TEST_CASE("iris confusion matrices: canonical, genetic, and two-variable rules") {
    const auto& iris = dataset::embedded_iris();
    const auto st = dataset::group_stats(iris);
    const auto basis = discriminant::canonical_variates(st);
    const auto pc = resubstitute(iris, [&](std::span<const double> x) {
        return discriminant::nearest_projected_mean_classify(basis.variates[0], x);
    });
    const auto cmc = confusion_matrix(iris.labels(), pc, iris.group_names());
    CHECK(cmc.misclassified_indices() == std::vector<std::size_t>{73, 84});

    const double con[] = {1.0, -3.0, 2.0};
    const auto g = discriminant::genetic_discriminant(st, discriminant::optimal_contrast(con));
    const auto pg = resubstitute(iris, [&](std::span<const double> x) {
        return discriminant::nearest_projected_mean_classify(g.reporting_scale, x);
    });
    const auto cmg = confusion_matrix(iris.labels(), pg, iris.group_names());
    CHECK(cmg.counts == cmc.counts);
    CHECK(cmg.misclassified_indices() == std::vector<std::size_t>{71, 84});

    const auto sepal = dataset::transform(iris, dataset::Select{{0, 1}});
    const auto ss = dataset::group_stats(sepal);
    const auto ls = discriminant::canonical_variates(ss).variates[0];
    const discriminant::GaussianMlRule ml(ss, discriminant::Covariance::equal);
    const auto pf = resubstitute(sepal, [&](std::span<const double> x) {
        return discriminant::nearest_projected_mean_classify(ls, x);
    });
    const auto pm = resubstitute(sepal, [&](std::span<const double> x) { return ml.classify(x); });
    const auto cf = confusion_matrix(sepal.labels(), pf, sepal.group_names());
    const auto cml = confusion_matrix(sepal.labels(), pm, sepal.group_names());
    CHECK(correct_count(cf) == 117);
    CHECK(correct_count(cml) == 120);
    CHECK(agreement_count(pf, pm) == 139);
    for (const auto* cm : {&cmc, &cmg, &cf, &cml})
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t col = 0;
            for (std::size_t i = 0; i < 3; ++i) col += cm->counts[i][j];
            CHECK(col == 50);
        }
}

TEST_CASE("decision grid: constant and banded classifiers") {
    const auto constant = decision_grid([](std::span<const double>) { return std::size_t{2}; }, {0, 1}, {0, 1}, 5);
    CHECK(constant.labels.size() == 25);
    for (auto l : constant.labels) CHECK(l == 2);

    const auto banded =
        decision_grid([](std::span<const double> x) { return std::size_t{x[0] > 0.5 ? 1u : 0u}; }, {0, 1}, {-3, 3}, 10);
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 10; ++c) CHECK(banded.at(r, c) == (c >= 5 ? 1u : 0u));
}

TEST_CASE("decision grid evaluates at cell centers, lowest row at low y") {
    std::vector<std::pair<double, double>> seen;
    decision_grid(
        [&](std::span<const double> x) {
            seen.emplace_back(x[0], x[1]);
            return std::size_t{0};
        },
        {0, 2}, {10, 14}, 2);
    REQUIRE(seen.size() == 4);
    CHECK(seen[0].first == doctest::Approx(0.5));
    CHECK(seen[0].second == doctest::Approx(11.0));
    CHECK(seen[3].first == doctest::Approx(1.5));
    CHECK(seen[3].second == doctest::Approx(13.0));
}

TEST_CASE("decision grid errors") {
    const auto f = [](std::span<const double>) { return std::size_t{0}; };
    CHECK(throws_kind([&] { decision_grid(f, {0, 1}, {0, 1}, 1); }, ErrorKind::InvalidArgument));
    CHECK(throws_kind([&] { decision_grid(f, {1, 0}, {0, 1}, 4); }, ErrorKind::InvalidArgument));
}

TEST_CASE("iris sepal ML regions contain each group mean in its own label at any resolution") {
    const auto sepal = dataset::transform(dataset::embedded_iris(), dataset::Select{{0, 1}});
    const auto st = dataset::group_stats(sepal);
    const discriminant::GaussianMlRule ml(st, discriminant::Covariance::equal);
    const auto classify = [&](std::span<const double> x) { return ml.classify(x); };
    for (std::size_t res : {50u, 200u, 400u}) {
        const auto grid = decision_grid(classify, {4.0, 8.2}, {1.8, 4.6}, res);
        for (std::size_t j = 0; j < 3; ++j) CHECK(grid.label_at(st.means[j][0], st.means[j][1]) == j);
    }
}
