#ifndef DISCRIMLAB_VIZ_HPP
#define DISCRIMLAB_VIZ_HPP

// Deterministic SVG 1.1 emitters. Identical inputs give identical bytes;
// every coordinate is printed with four fractional digits.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "discrimlab/dataset.hpp"
#include "discrimlab/discriminant.hpp"
#include "discrimlab/evaluate.hpp"

namespace discrimlab::viz {

using linalg::Matrix;
using linalg::Vector;

enum class Glyph { dot, plus, triangle, square, cross, diamond };

struct PlotSpec {
    double width = 640.0;
    double height = 480.0;
    double margin = 56.0;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Glyph> glyphs{Glyph::dot, Glyph::plus, Glyph::triangle};
    std::vector<std::string> colors{"#1b9e77", "#d95f02", "#7570b3"};

    Glyph glyph(std::size_t group) const;
    const std::string& color(std::size_t group) const;
    void validate() const;
};

enum class BasisOrigin { between_pca, canonical };

struct Projection2D {
    std::array<Vector, 2> basis;
    Matrix scores;  // n × 2
    BasisOrigin origin = BasisOrigin::between_pca;
    Vector eigenvalues;  // spectrum the basis was taken from
};

// Top two eigenvectors of B; scores are the centered rows projected on them.
Projection2D class_preserving_projection(const dataset::GroupStats& stats, const dataset::LabeledDataset& ds);
// First two canonical directions, rescaled to unit length.
Projection2D canonical_projection(const discriminant::CanonicalBasis& basis, const dataset::GroupStats& stats,
                                  const dataset::LabeledDataset& ds);

struct Ellipse {
    std::array<double, 2> center{0.0, 0.0};
    std::array<double, 2> semi_axes{0.0, 0.0};  // major first
    double rotation_degrees = 0.0;              // of the major axis, counterclockwise from +x
};

Ellipse confidence_ellipse(std::span<const double> mean2d, const Matrix& cov2d, double level);

std::string svg_scatter(const Projection2D& proj, const std::vector<std::size_t>& labels,
                        const std::vector<std::string>& group_names, const PlotSpec& spec,
                        std::optional<double> ellipse_level = std::nullopt);

// The dataset must have exactly two variables; its rows are overlaid.
std::string svg_decision_regions(const evaluate::DecisionGrid& grid, const dataset::LabeledDataset& overlay,
                                 const PlotSpec& spec);

struct HistogramOptions {
    double cell_width = 1.0;
    // This group's cells are drawn at half width and double height.
    std::optional<std::size_t> half_width_group = 0;
    // Marks (ū_1 + 2 ū_3) / 3 with a thicker arrow when there are three groups.
    bool hypothesis_arrow = true;
};

std::string svg_histogram_panels(const std::vector<Vector>& scores, const std::vector<std::string>& group_names,
                                 const HistogramOptions& options, const PlotSpec& spec);
// Position of the thicker arrow: (m_1 + 2 m_3) / 3.
double hypothesis_mean(std::span<const double> group_means);

struct RectangleOverlay {
    std::size_t group = 0;
    std::array<double, 4> means{};  // sepal length, sepal width, petal length, petal width
};

std::string svg_stacked_rectangles(const std::vector<std::array<double, 4>>& means,
                                   const std::vector<std::string>& group_names,
                                   const std::optional<RectangleOverlay>& overlay, const PlotSpec& spec);

std::string svg_scatter_matrix(const dataset::LabeledDataset& ds, const PlotSpec& spec);

// `<kind>-<dataset>-<variant>.svg`
std::string plot_file_name(const std::string& kind, const std::string& dataset, const std::string& variant);

}  // namespace discrimlab::viz

#endif  // DISCRIMLAB_VIZ_HPP
