#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "discrimlab/dataset.hpp"
#include "discrimlab/discriminant.hpp"
#include "discrimlab/error.hpp"
#include "discrimlab/evaluate.hpp"
#include "discrimlab/viz.hpp"
#include "mini_xml.hpp"
#include "support.hpp"

using namespace discrimlab;
using namespace discrimlab::viz;
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

const LabeledDataset& iris() { return dataset::embedded_iris(); }

minixml::Document parsed(const std::string& svg) {
    const auto doc = minixml::parse(svg);
    REQUIRE(doc.has_value());
    CHECK(doc->root == "svg");
    CHECK(svg.rfind("<?xml", 0) == 0);
    return *doc;
}

std::size_t markers(const minixml::Document& d) {
    std::size_t n = 0;
    for (const auto& e : d.elements)
        if (e.attr("class").rfind("marker ", 0) == 0) ++n;
    return n;
}

std::size_t with_class_prefix(const minixml::Document& d, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& e : d.elements)
        if (e.attr("class").rfind(prefix, 0) == 0) ++n;
    return n;
}

std::vector<std::array<double, 4>> iris_means() {
    std::vector<std::array<double, 4>> out;
    for (const auto& m : dataset::group_stats(iris()).means) out.push_back({m[0], m[1], m[2], m[3]});
    return out;
}

}  // namespace

TEST_CASE("mini XML reader rejects malformed documents") {
    CHECK(minixml::parse("<svg><g></svg>") == std::nullopt);
    CHECK(minixml::parse("<svg/><svg/>") == std::nullopt);
    CHECK(minixml::parse("<svg a=\"1\" a=\"2\"/>") == std::nullopt);
    CHECK(minixml::parse("<?xml version=\"1.0\"?>\n<svg><g/></svg>\n").has_value());
}

TEST_CASE("class-preserving projection of iris") {
    const auto st = dataset::group_stats(iris());
    const auto proj = class_preserving_projection(st, iris());
    CHECK(proj.origin == BasisOrigin::between_pca);
    CHECK(std::abs(proj.eigenvalues[0] - 587.0) <= 0.5);
    CHECK(std::abs(proj.eigenvalues[1] - 5.1) <= 0.5);
    CHECK(std::abs(proj.eigenvalues[2]) <= 1e-6 * proj.eigenvalues[0]);
    CHECK(std::abs(proj.eigenvalues[3]) <= 1e-6 * proj.eigenvalues[0]);
    CHECK(discriminant::direction_cosine(proj.basis[0], Vector{0.327, -0.112, 0.863, 0.369}) >= 0.999);
    CHECK(discriminant::direction_cosine(proj.basis[1], Vector{-0.331, -0.888, 0.134, -0.288}) >= 0.999);
    for (const auto& b : proj.basis) CHECK(linalg::norm(b) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < iris().n(); i += 17)
        for (std::size_t k = 0; k < 2; ++k) {
            double s = 0.0;
            for (std::size_t v = 0; v < 4; ++v) s += (iris().observations()(i, v) - st.grand_mean[v]) * proj.basis[k][v];
            CHECK(proj.scores(i, k) == doctest::Approx(s));
        }
}

TEST_CASE("class-preserving projection with a spherical B keeps group-mean distances") {
    // Three groups whose means are (±1, 0) and (0, ... ) arranged so that B is a multiple of the identity.
    const double r = 1.0;
    const std::array<std::array<double, 2>, 3> centers{{{r, 0.0}, {-r / 2, r * std::sqrt(3.0) / 2}, {-r / 2, -r * std::sqrt(3.0) / 2}}};
    Matrix x(12, 2);
    std::vector<std::size_t> labels;
    const double jitter[4][2] = {{0.1, 0.0}, {-0.1, 0.0}, {0.0, 0.1}, {0.0, -0.1}};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 4; ++i) {
            labels.push_back(j);
            x(j * 4 + i, 0) = centers[j][0] + jitter[i][0];
            x(j * 4 + i, 1) = centers[j][1] + jitter[i][1];
        }
    const LabeledDataset ds(x, labels, {"a", "b"}, {"g1", "g2", "g3"});
    const auto st = dataset::group_stats(ds);
    CHECK(st.between(0, 0) == doctest::Approx(st.between(1, 1)));
    const auto proj = class_preserving_projection(st, ds);
    for (std::size_t a = 0; a < 12; ++a)
        for (std::size_t b = a + 1; b < 12; ++b) {
            const double d0 = std::hypot(x(a, 0) - x(b, 0), x(a, 1) - x(b, 1));
            const double d1 = std::hypot(proj.scores(a, 0) - proj.scores(b, 0), proj.scores(a, 1) - proj.scores(b, 1));
            CHECK(d1 == doctest::Approx(d0));
        }
}

TEST_CASE("confidence ellipses") {
    const double m[] = {1.0, 2.0};
    const auto e = confidence_ellipse(m, Matrix::identity(2), 0.99);
    CHECK(e.semi_axes[0] == doctest::Approx(std::sqrt(-2.0 * std::log(0.01))));
    CHECK(e.semi_axes[0] == doctest::Approx(3.0348).epsilon(1e-4));
    CHECK(e.semi_axes[1] == doctest::Approx(e.semi_axes[0]));
    CHECK(e.center[0] == 1.0);
    CHECK(e.center[1] == 2.0);

    const auto d = confidence_ellipse(m, Matrix{{4, 0}, {0, 1}}, 0.95);
    CHECK(d.semi_axes[0] / d.semi_axes[1] == doctest::Approx(2.0));
    CHECK(std::abs(std::remainder(d.rotation_degrees, 180.0)) < 1e-9);

    const auto tall = confidence_ellipse(m, Matrix{{1, 0}, {0, 9}}, 0.95);
    CHECK(std::abs(std::remainder(tall.rotation_degrees - 90.0, 180.0)) < 1e-9);

    const auto a99 = confidence_ellipse(m, Matrix{{2, 0.5}, {0.5, 1}}, 0.99);
    const auto a95 = confidence_ellipse(m, Matrix{{2, 0.5}, {0.5, 1}}, 0.95);
    CHECK(std::abs(a99.semi_axes[0] / a95.semi_axes[0] - std::sqrt(9.2103 / 5.9915)) < 1e-4);
    CHECK(std::abs(a99.semi_axes[0] / a95.semi_axes[0] - std::sqrt(std::log(0.01) / std::log(0.05))) < 1e-6);

    const auto tiny = confidence_ellipse(m, Matrix::identity(2), 1e-12);
    CHECK(tiny.semi_axes[0] < 1e-5);

    CHECK(throws_kind([&] { confidence_ellipse(m, Matrix{{1, 1}, {1, 1}}, 0.9); }, ErrorKind::SingularCovariance));
    CHECK(throws_kind([&] { confidence_ellipse(m, Matrix::identity(2), 1.0); }, ErrorKind::DomainError));
}

TEST_CASE("canonical scatter: element counts, determinism, well-formedness") {
    const auto st = dataset::group_stats(iris());
    const auto basis = discriminant::canonical_variates(st);
    const auto proj = canonical_projection(basis, st, iris());
    CHECK(proj.origin == BasisOrigin::canonical);
    PlotSpec spec;
    spec.title = "canonical <variates> & \"ellipses\"";
    const auto svg = svg_scatter(proj, iris().labels(), iris().group_names(), spec, 0.99);
    CHECK(svg == svg_scatter(proj, iris().labels(), iris().group_names(), spec, 0.99));
    const auto doc = parsed(svg);
    CHECK(markers(doc) == 150);
    CHECK(doc.count("ellipse") == 3);
    CHECK(with_class_prefix(doc, "mean ") == 3);
    CHECK(doc.count("circle", "marker g0") == 50);
    CHECK(doc.count("path", "marker g1") == 50);
    CHECK(doc.count("polygon", "marker g2") == 50);

    const auto plain = parsed(svg_scatter(proj, iris().labels(), iris().group_names(), spec));
    CHECK(plain.count("ellipse") == 0);
    CHECK(markers(plain) == 150);
}

TEST_CASE("scatter with a single group draws one ellipse") {
    std::mt19937_64 rng(71);
    Projection2D proj;
    proj.basis = {Vector{1, 0}, Vector{0, 1}};
    proj.scores = testsupport::random_matrix(rng, 20, 2);
    const auto doc = parsed(svg_scatter(proj, std::vector<std::size_t>(20, 0), {"only"}, PlotSpec{}, 0.9));
    CHECK(doc.count("ellipse") == 1);
    CHECK(markers(doc) == 20);
}

TEST_CASE("decision region plots") {
    const auto sepal = dataset::transform(iris(), dataset::Select{{0, 1}});
    const auto st = dataset::group_stats(sepal);

    const auto uniform = evaluate::decision_grid([](std::span<const double>) { return std::size_t{1}; }, {4, 8}, {2, 4.5}, 20);
    const auto u = parsed(svg_decision_regions(uniform, sepal, PlotSpec{}));
    CHECK(with_class_prefix(u, "cell g1") > 0);
    CHECK(with_class_prefix(u, "cell g0") == 0);
    CHECK(with_class_prefix(u, "cell g2") == 0);

    const auto bands = evaluate::decision_grid(
        [](std::span<const double> x) { return std::size_t{x[0] < 6.0 ? 0u : 2u}; }, {4, 8}, {2, 4.5}, 20);
    const auto b = parsed(svg_decision_regions(bands, sepal, PlotSpec{}));
    CHECK(with_class_prefix(b, "cell g0") > 0);
    CHECK(with_class_prefix(b, "cell g2") > 0);
    CHECK(with_class_prefix(b, "cell g1") == 0);

    const discriminant::GaussianMlRule ml(st, discriminant::Covariance::equal);
    const auto grid =
        evaluate::decision_grid([&](std::span<const double> x) { return ml.classify(x); }, {4.0, 8.2}, {1.8, 4.6}, 200);
    const auto svg = svg_decision_regions(grid, sepal, PlotSpec{});
    const auto d = parsed(svg);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(with_class_prefix(d, "cell g" + std::to_string(j)) > 0);
        CHECK(grid.label_at(st.means[j][0], st.means[j][1]) == j);
    }
    CHECK(markers(d) == 150);
    CHECK(with_class_prefix(d, "mean ") == 3);
    CHECK(svg == svg_decision_regions(grid, sepal, PlotSpec{}));
    CHECK(throws_kind([&] { svg_decision_regions(grid, iris(), PlotSpec{}); }, ErrorKind::DimensionMismatch));
}

TEST_CASE("histogram panels") {
    HistogramOptions opt;
    const auto one = parsed(svg_histogram_panels({{1.0}, {2.0}, {3.0}}, {"a", "b", "c"}, opt, PlotSpec{}));
    CHECK(with_class_prefix(one, "obs ") == 3);

    const auto same = parsed(svg_histogram_panels({{5, 5, 5, 5}, {1}, {9}}, {"a", "b", "c"}, opt, PlotSpec{}));
    std::set<std::string> xs;
    for (const auto& e : same.elements)
        if (e.attr("class") == "obs g0") xs.insert(e.attr("x"));
    CHECK(xs.size() == 1);

    const auto st = dataset::group_stats(iris());
    const double con[] = {1.0, -3.0, 2.0};
    const auto g = discriminant::genetic_discriminant(st, discriminant::optimal_contrast(con)).reporting_scale;
    std::vector<Vector> scores(3);
    for (std::size_t i = 0; i < iris().n(); ++i) scores[iris().labels()[i]].push_back(g.score(iris().observations().row(i)));
    opt.cell_width = 2.5;
    const auto svg = svg_histogram_panels(scores, iris().group_names(), opt, PlotSpec{});
    const auto doc = parsed(svg);
    for (std::size_t j = 0; j < 3; ++j) CHECK(doc.count_class("obs g" + std::to_string(j)) == 50);
    CHECK(doc.count_class("hypothesis-arrow") == 1);
    const double h = hypothesis_mean(g.projected_group_means);
    CHECK(h == doctest::Approx((g.projected_group_means[0] + 2.0 * g.projected_group_means[2]) / 3.0));
    CHECK(std::abs(h - (-10.8 + 2 * 38.2) / 3.0) <= 0.1);

    // Setosa squares are half as wide and twice as tall as the others.
    double w0 = 0, h0 = 0, w1 = 0, h1 = 0;
    for (const auto& e : doc.elements) {
        if (e.attr("class") == "obs g0") {
            w0 = std::stod(e.attr("width"));
            h0 = std::stod(e.attr("height"));
        }
        if (e.attr("class") == "obs g1") {
            w1 = std::stod(e.attr("width"));
            h1 = std::stod(e.attr("height"));
        }
    }
    CHECK(w0 * 2.0 == doctest::Approx(w1));
    CHECK(h0 == doctest::Approx(h1 * 2.0));

    CHECK(throws_kind([&] { svg_histogram_panels(scores, iris().group_names(), HistogramOptions{0.0}, PlotSpec{}); },
                      ErrorKind::DegenerateBinning));
    CHECK(throws_kind([&] { svg_histogram_panels({{1.0}, {}, {2.0}}, {"a", "b", "c"}, HistogramOptions{}, PlotSpec{}); },
                      ErrorKind::EmptyGroup));
}

TEST_CASE("stacked rectangles") {
    const auto unit = parsed(svg_stacked_rectangles({{1, 1, 1, 1}}, {"u"}, std::nullopt, PlotSpec{}));
    REQUIRE(unit.count("rect", "sepal") == 1);
    REQUIRE(unit.count("rect", "petal") == 1);
    minixml::Element sepal, petal;
    for (const auto& e : unit.elements) {
        if (e.attr("class") == "sepal") sepal = e;
        if (e.attr("class") == "petal") petal = e;
    }
    CHECK(std::stod(sepal.attr("width")) == doctest::Approx(std::stod(sepal.attr("height"))));
    CHECK(std::stod(petal.attr("width")) == doctest::Approx(std::stod(petal.attr("height"))));
    CHECK(std::stod(sepal.attr("y")) + std::stod(sepal.attr("height")) == doctest::Approx(std::stod(petal.attr("y"))));

    const auto means = iris_means();
    RectangleOverlay ov;
    ov.group = 1;
    for (std::size_t v = 0; v < 4; ++v) ov.means[v] = (means[0][v] + 2.0 * means[2][v]) / 3.0;
    for (std::size_t v : {0u, 2u}) CHECK(std::abs(ov.means[v] - means[1][v]) / means[1][v] <= 0.05);
    for (std::size_t v : {1u, 3u}) CHECK(std::abs(ov.means[v] - means[1][v]) / means[1][v] <= 0.15);
    CHECK(ov.means[0] == doctest::Approx(6.0607).epsilon(1e-4));
    const auto svg = svg_stacked_rectangles(means, iris().group_names(), ov, PlotSpec{});
    CHECK(svg == svg_stacked_rectangles(means, iris().group_names(), ov, PlotSpec{}));
    const auto doc = parsed(svg);
    CHECK(doc.count("rect", "sepal") == 3);
    CHECK(doc.count("rect", "petal") == 3);
    CHECK(doc.count("rect", "overlay sepal") == 1);
    CHECK(doc.count("rect", "overlay petal") == 1);
    std::vector<double> petal_heights;
    for (const auto& e : doc.elements)
        if (e.attr("class") == "petal") petal_heights.push_back(std::stod(e.attr("height")));
    REQUIRE(petal_heights.size() == 3);
    CHECK(petal_heights[0] < petal_heights[1]);
    CHECK(petal_heights[0] < petal_heights[2]);
    CHECK(petal_heights[1] / petal_heights[0] == doctest::Approx(4.260 / 1.462));

    CHECK(throws_kind([] { svg_stacked_rectangles({{1, 1, 0, 1}}, {"u"}, std::nullopt, PlotSpec{}); },
                      ErrorKind::NonPositiveMeasurement));
}

TEST_CASE("scatter matrix") {
    const auto two = dataset::transform(iris(), dataset::Select{{0, 1}});
    const auto d2 = parsed(svg_scatter_matrix(two, PlotSpec{}));
    CHECK(d2.count("g", "panel") == 2);
    CHECK(d2.count("g", "diagonal") == 2);
    CHECK(markers(d2) == 300);

    const auto svg = svg_scatter_matrix(iris(), PlotSpec{});
    CHECK(svg == svg_scatter_matrix(iris(), PlotSpec{}));
    const auto d4 = parsed(svg);
    CHECK(d4.count("g", "panel") == 12);
    CHECK(d4.count("g", "diagonal") == 4);
    CHECK(markers(d4) == 12 * 150);
    CHECK(d4.count_class("variable-name") == 4);

    const LabeledDataset one_var(Matrix{{1}, {2}, {3}}, {0, 1, 1}, {"x"}, {"a", "b"});
    CHECK(throws_kind([&] { svg_scatter_matrix(one_var, PlotSpec{}); }, ErrorKind::InvalidArgument));
}

TEST_CASE("plot file naming and spec validation") {
    CHECK(plot_file_name("canonical", "iris", "all") == "canonical-iris-all.svg");
    PlotSpec bad;
    bad.width = 10;
    CHECK(throws_kind([&] { bad.validate(); }, ErrorKind::InvalidArgument));
    PlotSpec spec;
    CHECK(spec.glyph(0) == Glyph::dot);
    CHECK(spec.glyph(1) == Glyph::plus);
    CHECK(spec.glyph(2) == Glyph::triangle);
}
