#include "discrimlab/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "discrimlab/error.hpp"
#include "discrimlab/normality.hpp"

namespace discrimlab::viz {

namespace {

std::string num(double v) {
    if (std::abs(v) < 5e-5) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Linear map from data coordinates onto a pixel rectangle; y grows upward in
// data space.
struct Frame {
    double left, top, width, height;
    double x_low, x_high, y_low, y_high;

    double px(double x) const { return left + (x - x_low) / (x_high - x_low) * width; }
    double py(double y) const { return top + height - (y - y_low) / (y_high - y_low) * height; }
    double sx(double dx) const { return dx / (x_high - x_low) * width; }
    double sy(double dy) const { return dy / (y_high - y_low) * height; }
};

struct Bounds {
    double x_low = std::numeric_limits<double>::infinity();
    double x_high = -std::numeric_limits<double>::infinity();
    double y_low = std::numeric_limits<double>::infinity();
    double y_high = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        x_low = std::min(x_low, x);
        x_high = std::max(x_high, x);
        y_low = std::min(y_low, y);
        y_high = std::max(y_high, y);
    }
    void pad(double fraction) {
        const double dx = x_high > x_low ? (x_high - x_low) * fraction : 1.0;
        const double dy = y_high > y_low ? (y_high - y_low) * fraction : 1.0;
        x_low -= dx;
        x_high += dx;
        y_low -= dy;
        y_high += dy;
    }
};

class SvgDoc {
public:
    SvgDoc(double width, double height) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
             << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
             << "<rect class=\"background\" x=\"0.0000\" y=\"0.0000\" width=\"" << num(width) << "\" height=\""
             << num(height) << "\" fill=\"#ffffff\"/>\n";
    }

    void open_group(const std::string& cls) { out_ << "<g class=\"" << escape(cls) << "\">\n"; }
    void close_group() { out_ << "</g>\n"; }

    void rect(const std::string& cls, double x, double y, double w, double h, const std::string& fill,
              const std::string& extra = "") {
        out_ << "<rect class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
             << "\" height=\"" << num(h) << "\" fill=\"" << fill << '"' << extra << "/>\n";
    }

    void line(const std::string& cls, double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width) {
        out_ << "<line class=\"" << cls << "\" x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
             << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_width)
             << "\"/>\n";
    }

    void text(const std::string& cls, double x, double y, const std::string& content, const std::string& anchor = "middle",
              double size = 12.0, double rotate = 0.0) {
        out_ << "<text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << '"';
        if (rotate != 0.0) out_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
        out_ << '>' << escape(content) << "</text>\n";
    }

    void ellipse(const std::string& cls, double cx, double cy, double rx, double ry, double rotate,
                 const std::string& stroke) {
        out_ << "<ellipse class=\"" << cls << "\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(rx)
             << "\" ry=\"" << num(ry) << "\" transform=\"rotate(" << num(rotate) << ' ' << num(cx) << ' ' << num(cy)
             << ")\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5000\" stroke-dasharray=\"4 3\"/>\n";
    }

    void marker(std::size_t group, Glyph glyph, double x, double y, const std::string& color, double r = 3.0) {
        const std::string cls = "marker g" + std::to_string(group);
        switch (glyph) {
            case Glyph::dot:
                out_ << "<circle class=\"" << cls << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
                     << "\" fill=\"" << color << "\"/>\n";
                break;
            case Glyph::plus:
                out_ << "<path class=\"" << cls << "\" d=\"M" << num(x - r) << ' ' << num(y) << "H" << num(x + r) << "M"
                     << num(x) << ' ' << num(y - r) << "V" << num(y + r) << "\" stroke=\"" << color
                     << "\" stroke-width=\"1.5000\" fill=\"none\"/>\n";
                break;
            case Glyph::cross:
                out_ << "<path class=\"" << cls << "\" d=\"M" << num(x - r) << ' ' << num(y - r) << "L" << num(x + r)
                     << ' ' << num(y + r) << "M" << num(x - r) << ' ' << num(y + r) << "L" << num(x + r) << ' '
                     << num(y - r) << "\" stroke=\"" << color << "\" stroke-width=\"1.5000\" fill=\"none\"/>\n";
                break;
            case Glyph::triangle:
                out_ << "<polygon class=\"" << cls << "\" points=\"" << num(x) << ',' << num(y - r) << ' '
                     << num(x - r) << ',' << num(y + r) << ' ' << num(x + r) << ',' << num(y + r)
                     << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2000\"/>\n";
                break;
            case Glyph::square:
                out_ << "<rect class=\"" << cls << "\" x=\"" << num(x - r) << "\" y=\"" << num(y - r) << "\" width=\""
                     << num(2 * r) << "\" height=\"" << num(2 * r) << "\" fill=\"none\" stroke=\"" << color
                     << "\" stroke-width=\"1.2000\"/>\n";
                break;
            case Glyph::diamond:
                out_ << "<polygon class=\"" << cls << "\" points=\"" << num(x) << ',' << num(y - r) << ' '
                     << num(x + r) << ',' << num(y) << ' ' << num(x) << ',' << num(y + r) << ' ' << num(x - r) << ','
                     << num(y) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2000\"/>\n";
                break;
        }
    }

    void mean_square(std::size_t group, double x, double y, double half = 4.5) {
        rect("mean g" + std::to_string(group), x - half, y - half, 2 * half, 2 * half, "#000000");
    }

    void raw(const std::string& s) { out_ << s; }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
};

Frame plot_frame(const PlotSpec& spec, Bounds b) {
    return Frame{spec.margin, spec.margin, spec.width - 2 * spec.margin, spec.height - 2 * spec.margin,
                 b.x_low,     b.x_high,    b.y_low,                       b.y_high};
}

void draw_axes(SvgDoc& doc, const Frame& f, const PlotSpec& spec) {
    doc.open_group("axes");
    doc.rect("frame", f.left, f.top, f.width, f.height, "none", " stroke=\"#333333\" stroke-width=\"1.0000\"");
    constexpr int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double xv = f.x_low + (f.x_high - f.x_low) * t / ticks;
        const double yv = f.y_low + (f.y_high - f.y_low) * t / ticks;
        const double px = f.px(xv);
        const double py = f.py(yv);
        doc.line("tick", px, f.top + f.height, px, f.top + f.height + 4, "#333333", 1.0);
        doc.text("tick-label", px, f.top + f.height + 16, num(xv).substr(0, num(xv).size() - 2), "middle", 10);
        doc.line("tick", f.left - 4, py, f.left, py, "#333333", 1.0);
        doc.text("tick-label", f.left - 6, py + 3, num(yv).substr(0, num(yv).size() - 2), "end", 10);
    }
    if (!spec.x_label.empty()) doc.text("axis-label", f.left + f.width / 2, spec.height - 12, spec.x_label);
    if (!spec.y_label.empty()) doc.text("axis-label", 16, f.top + f.height / 2, spec.y_label, "middle", 12, -90);
    if (!spec.title.empty()) doc.text("title", spec.width / 2, spec.margin / 2, spec.title, "middle", 14);
    doc.close_group();
}

void draw_legend(SvgDoc& doc, const PlotSpec& spec, const std::vector<std::string>& group_names) {
    doc.open_group("legend");
    double y = spec.margin + 12;
    const double x = spec.width - spec.margin - 110;
    for (std::size_t j = 0; j < group_names.size(); ++j) {
        doc.text("legend-label", x + 14, y + 4, group_names[j], "start", 11);
        // Not a data marker.
        std::ostringstream g;
        const std::string c = spec.color(j);
        g << "<circle class=\"legend-swatch\" cx=\"" << num(x + 4) << "\" cy=\"" << num(y) << "\" r=\"3.0000\" fill=\""
          << c << "\"/>\n";
        doc.raw(g.str());
        y += 16;
    }
    doc.close_group();
}

Matrix covariance_2d(const std::vector<std::array<double, 2>>& pts) {
    const double n = static_cast<double>(pts.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : pts) {
        mx += p[0];
        my += p[1];
    }
    mx /= n;
    my /= n;
    Matrix c(2, 2);
    for (const auto& p : pts) {
        c(0, 0) += (p[0] - mx) * (p[0] - mx);
        c(0, 1) += (p[0] - mx) * (p[1] - my);
        c(1, 1) += (p[1] - my) * (p[1] - my);
    }
    c(1, 0) = c(0, 1);
    return c * (1.0 / (n - 1.0));
}

}  // namespace

Glyph PlotSpec::glyph(std::size_t group) const { return glyphs[group % glyphs.size()]; }
const std::string& PlotSpec::color(std::size_t group) const { return colors[group % colors.size()]; }

void PlotSpec::validate() const {
    if (!(width > 0.0) || !(height > 0.0) || margin < 0.0 || 2 * margin >= std::min(width, height)) {
        throw Error(ErrorKind::InvalidArgument, "plot dimensions must be positive and exceed the margins");
    }
    if (glyphs.empty() || colors.empty()) throw Error(ErrorKind::InvalidArgument, "plot needs glyphs and colors");
}

Projection2D class_preserving_projection(const dataset::GroupStats& stats, const dataset::LabeledDataset& ds) {
    if (ds.p() < 2) throw Error(ErrorKind::InvalidArgument, "projection needs at least two variables");
    if (stats.p() != ds.p()) throw Error(ErrorKind::DimensionMismatch, "stats and dataset differ in p");
    const linalg::EigenResult eig = linalg::sym_eigen(stats.between);
    Projection2D proj;
    proj.origin = BasisOrigin::between_pca;
    proj.eigenvalues = eig.values;
    const double lead = std::max(std::abs(eig.values.front()), 1e-300);
    for (double& v : proj.eigenvalues)
        if (std::abs(v) <= 1e-8 * lead) v = 0.0;
    proj.basis = {eig.vectors.column(0), eig.vectors.column(1)};
    proj.scores = Matrix(ds.n(), 2);
    Vector centered(ds.p());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t v = 0; v < ds.p(); ++v) centered[v] = ds.observations()(i, v) - stats.grand_mean[v];
        proj.scores(i, 0) = linalg::dot(centered, proj.basis[0]);
        proj.scores(i, 1) = linalg::dot(centered, proj.basis[1]);
    }
    return proj;
}

Projection2D canonical_projection(const discriminant::CanonicalBasis& basis, const dataset::GroupStats& stats,
                                  const dataset::LabeledDataset& ds) {
    if (basis.variates.size() < 2) throw Error(ErrorKind::InvalidArgument, "need two canonical variates");
    Projection2D proj;
    proj.origin = BasisOrigin::canonical;
    proj.eigenvalues = basis.eigenvalues;
    for (std::size_t k = 0; k < 2; ++k) {
        Vector v = basis.variates[k].coefficients;
        const double len = linalg::norm(v);
        for (double& x : v) x /= len;
        proj.basis[k] = std::move(v);
    }
    proj.scores = Matrix(ds.n(), 2);
    Vector centered(ds.p());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t v = 0; v < ds.p(); ++v) centered[v] = ds.observations()(i, v) - stats.grand_mean[v];
        proj.scores(i, 0) = linalg::dot(centered, proj.basis[0]);
        proj.scores(i, 1) = linalg::dot(centered, proj.basis[1]);
    }
    return proj;
}

Ellipse confidence_ellipse(std::span<const double> mean2d, const Matrix& cov2d, double level) {
    if (mean2d.size() != 2 || cov2d.rows() != 2 || cov2d.cols() != 2) {
        throw Error(ErrorKind::DimensionMismatch, "ellipse needs a 2-D mean and a 2x2 covariance");
    }
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::DomainError, "level must be in (0, 1)");
    try {
        linalg::cholesky(cov2d);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotPositiveDefinite)
            throw Error(ErrorKind::SingularCovariance, "2-D covariance is not positive definite");
        throw;
    }
    const linalg::EigenResult eig = linalg::sym_eigen(cov2d);
    const double q = normality::chi2_2_quantile(level);
    Ellipse e;
    e.center = {mean2d[0], mean2d[1]};
    e.semi_axes = {std::sqrt(q * eig.values[0]), std::sqrt(q * eig.values[1])};
    e.rotation_degrees = std::atan2(eig.vectors(1, 0), eig.vectors(0, 0)) * 180.0 / std::numbers::pi;
    return e;
}

std::string svg_scatter(const Projection2D& proj, const std::vector<std::size_t>& labels,
                        const std::vector<std::string>& group_names, const PlotSpec& spec,
                        std::optional<double> ellipse_level) {
    spec.validate();
    if (labels.size() != proj.scores.rows()) throw Error(ErrorKind::LengthMismatch, "one label per score row");
    const std::size_t s = group_names.size();
    std::vector<std::vector<std::array<double, 2>>> by_group(s);
    Bounds b;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= s) throw Error(ErrorKind::IndexOutOfRange, "label outside group range");
        const double x = proj.scores(i, 0);
        const double y = proj.scores(i, 1);
        if (!std::isfinite(x) || !std::isfinite(y)) throw Error(ErrorKind::InvalidArgument, "scores must be finite");
        by_group[labels[i]].push_back({x, y});
        b.add(x, y);
    }

    std::vector<Ellipse> ellipses;
    if (ellipse_level) {
        for (std::size_t j = 0; j < s; ++j) {
            if (by_group[j].size() < 3) continue;
            double mx = 0.0;
            double my = 0.0;
            for (const auto& p : by_group[j]) {
                mx += p[0];
                my += p[1];
            }
            const double n = static_cast<double>(by_group[j].size());
            const double mean[2] = {mx / n, my / n};
            const Ellipse e = confidence_ellipse(mean, covariance_2d(by_group[j]), *ellipse_level);
            ellipses.push_back(e);
            // Bounding box of the rotated ellipse.
            const double t = e.rotation_degrees * std::numbers::pi / 180.0;
            const double hx = std::hypot(e.semi_axes[0] * std::cos(t), e.semi_axes[1] * std::sin(t));
            const double hy = std::hypot(e.semi_axes[0] * std::sin(t), e.semi_axes[1] * std::cos(t));
            b.add(e.center[0] - hx, e.center[1] - hy);
            b.add(e.center[0] + hx, e.center[1] + hy);
        }
    }
    b.pad(0.05);
    const Frame f = plot_frame(spec, b);

    SvgDoc doc(spec.width, spec.height);
    draw_axes(doc, f, spec);
    if (!ellipses.empty()) {
        doc.open_group("regions approximate");
        std::size_t k = 0;
        for (std::size_t j = 0; j < s && k < ellipses.size(); ++j) {
            if (by_group[j].size() < 3) continue;
            const Ellipse& e = ellipses[k++];
            // Pixel y is flipped, so the rotation is negated; non-uniform
            // axis scaling is folded in by scaling the semi-axes per axis.
            const double t = e.rotation_degrees * std::numbers::pi / 180.0;
            const double ax = f.sx(e.semi_axes[0] * std::cos(t));
            const double ay = f.sy(e.semi_axes[0] * std::sin(t));
            const double bx = f.sx(-e.semi_axes[1] * std::sin(t));
            const double by = f.sy(e.semi_axes[1] * std::cos(t));
            // Pixel-space ellipse from conjugate semi-diameters (ax, -ay), (bx, -by).
            Matrix m(2, 2);
            m(0, 0) = ax * ax + bx * bx;
            m(0, 1) = -(ax * ay + bx * by);
            m(1, 0) = m(0, 1);
            m(1, 1) = ay * ay + by * by;
            const linalg::EigenResult pe = linalg::sym_eigen(m);
            const double rot = std::atan2(pe.vectors(1, 0), pe.vectors(0, 0)) * 180.0 / std::numbers::pi;
            doc.ellipse("region g" + std::to_string(j), f.px(e.center[0]), f.py(e.center[1]),
                        std::sqrt(std::max(pe.values[0], 0.0)), std::sqrt(std::max(pe.values[1], 0.0)), rot,
                        spec.color(j));
        }
        doc.close_group();
    }
    doc.open_group("markers");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        doc.marker(labels[i], spec.glyph(labels[i]), f.px(proj.scores(i, 0)), f.py(proj.scores(i, 1)),
                   spec.color(labels[i]));
    }
    doc.close_group();
    doc.open_group("means");
    for (std::size_t j = 0; j < s; ++j) {
        if (by_group[j].empty()) continue;
        double mx = 0.0;
        double my = 0.0;
        for (const auto& p : by_group[j]) {
            mx += p[0];
            my += p[1];
        }
        const double n = static_cast<double>(by_group[j].size());
        doc.mean_square(j, f.px(mx / n), f.py(my / n));
    }
    doc.close_group();
    draw_legend(doc, spec, group_names);
    return doc.finish();
}

std::string svg_decision_regions(const evaluate::DecisionGrid& grid, const dataset::LabeledDataset& overlay,
                                 const PlotSpec& spec) {
    spec.validate();
    if (grid.resolution == 0 || grid.labels.size() != grid.resolution * grid.resolution) {
        throw Error(ErrorKind::InvalidArgument, "decision grid is empty");
    }
    if (overlay.p() != 2) throw Error(ErrorKind::DimensionMismatch, "region plots need exactly two variables");
    Bounds b{grid.x.low, grid.x.high, grid.y.low, grid.y.high};
    const Frame f = plot_frame(spec, b);
    const double cw = f.width / static_cast<double>(grid.resolution);
    const double ch = f.height / static_cast<double>(grid.resolution);

    static const std::vector<std::string> kRegionFill{"#cde9df", "#f8d9c0", "#dcdaec", "#f2d6e6", "#e1efc9", "#fbefb8"};

    SvgDoc doc(spec.width, spec.height);
    doc.open_group("cells");
    for (std::size_t r = 0; r < grid.resolution; ++r) {
        std::size_t c = 0;
        while (c < grid.resolution) {
            const std::size_t label = grid.at(r, c);
            std::size_t end = c + 1;
            while (end < grid.resolution && grid.at(r, end) == label) ++end;
            const double top = f.top + f.height - static_cast<double>(r + 1) * ch;
            doc.rect("cell g" + std::to_string(label), f.left + static_cast<double>(c) * cw, top,
                     static_cast<double>(end - c) * cw, ch, kRegionFill[label % kRegionFill.size()]);
            c = end;
        }
    }
    doc.close_group();
    draw_axes(doc, f, spec);

    doc.open_group("markers");
    for (std::size_t i = 0; i < overlay.n(); ++i) {
        const std::size_t g = overlay.labels()[i];
        doc.marker(g, spec.glyph(g), f.px(overlay.observations()(i, 0)), f.py(overlay.observations()(i, 1)),
                   spec.color(g));
    }
    doc.close_group();
    const auto stats = dataset::group_stats(overlay);
    doc.open_group("means");
    for (std::size_t j = 0; j < stats.s(); ++j) doc.mean_square(j, f.px(stats.means[j][0]), f.py(stats.means[j][1]));
    doc.close_group();
    draw_legend(doc, spec, overlay.group_names());
    return doc.finish();
}

double hypothesis_mean(std::span<const double> group_means) {
    if (group_means.size() != 3) throw Error(ErrorKind::DimensionMismatch, "hypothesis mean needs three groups");
    return (group_means[0] + 2.0 * group_means[2]) / 3.0;
}

std::string svg_histogram_panels(const std::vector<Vector>& scores, const std::vector<std::string>& group_names,
                                 const HistogramOptions& options, const PlotSpec& spec) {
    spec.validate();
    if (!(options.cell_width > 0.0) || !std::isfinite(options.cell_width)) {
        throw Error(ErrorKind::DegenerateBinning, "cell width must be positive");
    }
    if (scores.size() != group_names.size() || scores.empty()) {
        throw Error(ErrorKind::LengthMismatch, "one score list per group");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    Vector means;
    for (const auto& g : scores) {
        if (g.empty()) throw Error(ErrorKind::EmptyGroup, "every group needs at least one score");
        double sum = 0.0;
        for (double v : g) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        means.push_back(sum / static_cast<double>(g.size()));
    }
    const double w = options.cell_width;
    const double origin = std::floor(lo / w) * w;
    const auto bin_of = [&](double v, double width) { return static_cast<long>(std::floor((v - origin) / width)); };
    const double axis_hi = (static_cast<double>(bin_of(hi, w)) + 1.0) * w + origin;

    // Column heights (in squares) per group to size the panels.
    std::vector<std::map<long, int>> columns(scores.size());
    int tallest = 1;
    for (std::size_t j = 0; j < scores.size(); ++j) {
        const bool half = options.half_width_group && *options.half_width_group == j;
        const double cell = half ? w / 2.0 : w;
        for (double v : scores[j]) {
            const int h = ++columns[j][bin_of(v, cell)] * (half ? 2 : 1);
            tallest = std::max(tallest, h);
        }
    }

    const double axis_band = 40.0;
    const double plot_left = spec.margin;
    const double plot_width = spec.width - 2 * spec.margin;
    const double panel_gap = 12.0;
    const double available = spec.height - 2 * spec.margin - axis_band - panel_gap * static_cast<double>(scores.size());
    const double px_per_unit = plot_width / (axis_hi - origin);
    const double unit_h = std::min(available / static_cast<double>(scores.size()) / tallest, px_per_unit * w);
    const double panel_h = unit_h * tallest;
    const auto px = [&](double v) { return plot_left + (v - origin) * px_per_unit; };

    SvgDoc doc(spec.width, spec.height);
    if (!spec.title.empty()) doc.text("title", spec.width / 2, spec.margin / 2, spec.title, "middle", 14);

    // Top axis with group means and the hypothesis-implied mean.
    const double axis_y = spec.margin + axis_band - 8;
    doc.open_group("top-axis");
    doc.line("axis", px(origin), axis_y, px(axis_hi), axis_y, "#333333", 1.0);
    for (std::size_t j = 0; j < means.size(); ++j) {
        doc.line("mean-arrow g" + std::to_string(j), px(means[j]), axis_y - 18, px(means[j]), axis_y, "#333333", 1.0);
        doc.text("mean-label", px(means[j]), axis_y - 22, group_names[j], "middle", 10);
    }
    if (options.hypothesis_arrow && means.size() == 3) {
        const double hm = hypothesis_mean(means);
        doc.line("hypothesis-arrow", px(hm), axis_y - 24, px(hm), axis_y, "#000000", 3.0);
    }
    doc.close_group();

    for (std::size_t j = 0; j < scores.size(); ++j) {
        const bool half = options.half_width_group && *options.half_width_group == j;
        const double cell = half ? w / 2.0 : w;
        const double sq_w = cell * px_per_unit;
        const double sq_h = unit_h * (half ? 2.0 : 1.0);
        const double base = spec.margin + axis_band + static_cast<double>(j) * (panel_h + panel_gap) + panel_h;
        doc.open_group("panel g" + std::to_string(j));
        doc.line("baseline", px(origin), base, px(axis_hi), base, "#333333", 1.0);
        doc.text("panel-label", px(origin) + 4, base - panel_h + 12, group_names[j], "start", 11);
        std::map<long, int> stack;
        std::vector<double> sorted = scores[j];
        std::sort(sorted.begin(), sorted.end());
        for (double v : sorted) {
            const long bin = bin_of(v, cell);
            const int level = stack[bin]++;
            doc.rect("obs g" + std::to_string(j), px(origin + static_cast<double>(bin) * cell),
                     base - static_cast<double>(level + 1) * sq_h, sq_w, sq_h, spec.color(j),
                     " stroke=\"#ffffff\" stroke-width=\"0.5000\"");
        }
        doc.close_group();
    }
    return doc.finish();
}

std::string svg_stacked_rectangles(const std::vector<std::array<double, 4>>& means,
                                   const std::vector<std::string>& group_names,
                                   const std::optional<RectangleOverlay>& overlay, const PlotSpec& spec) {
    spec.validate();
    if (means.size() != group_names.size() || means.empty()) {
        throw Error(ErrorKind::LengthMismatch, "one mean vector per group");
    }
    const auto check = [](const std::array<double, 4>& m) {
        for (double v : m)
            if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NonPositiveMeasurement, "means must be positive");
    };
    double max_w = 0.0;
    double max_h = 0.0;
    for (const auto& m : means) {
        check(m);
        max_w = std::max({max_w, m[1], m[3]});
        max_h = std::max(max_h, m[0] + m[2]);
    }
    if (overlay) {
        if (overlay->group >= means.size()) throw Error(ErrorKind::IndexOutOfRange, "overlay group out of range");
        check(overlay->means);
        max_w = std::max({max_w, overlay->means[1], overlay->means[3]});
        max_h = std::max(max_h, overlay->means[0] + overlay->means[2]);
    }

    const double slot = (spec.width - 2 * spec.margin) / static_cast<double>(means.size());
    const double scale = std::min((slot * 0.8) / max_w, (spec.height - 2 * spec.margin - 20) / max_h);
    // Sepal and petal rectangles meet on one horizontal line shared by all groups.
    double top_extent = 0.0;
    for (const auto& m : means) top_extent = std::max(top_extent, m[0]);
    if (overlay) top_extent = std::max(top_extent, overlay->means[0]);
    const double edge_y = spec.margin + 10 + scale * top_extent;

    SvgDoc doc(spec.width, spec.height);
    if (!spec.title.empty()) doc.text("title", spec.width / 2, spec.margin / 2, spec.title, "middle", 14);
    for (std::size_t j = 0; j < means.size(); ++j) {
        const auto& m = means[j];
        const double cx = spec.margin + slot * (static_cast<double>(j) + 0.5);
        doc.open_group("pair g" + std::to_string(j));
        doc.rect("sepal", cx - scale * m[1] / 2, edge_y - scale * m[0], scale * m[1], scale * m[0], spec.color(j),
                 " fill-opacity=\"0.5000\" stroke=\"#333333\" stroke-width=\"1.0000\"");
        doc.rect("petal", cx - scale * m[3] / 2, edge_y, scale * m[3], scale * m[2], spec.color(j),
                 " stroke=\"#333333\" stroke-width=\"1.0000\"");
        if (overlay && overlay->group == j) {
            const auto& o = overlay->means;
            const std::string dashed = " stroke=\"#000000\" stroke-width=\"1.2000\" stroke-dasharray=\"5 3\"";
            doc.rect("overlay sepal", cx - scale * o[1] / 2, edge_y - scale * o[0], scale * o[1], scale * o[0], "none",
                     dashed);
            doc.rect("overlay petal", cx - scale * o[3] / 2, edge_y, scale * o[3], scale * o[2], "none", dashed);
        }
        doc.text("group-label", cx, spec.height - spec.margin / 2, group_names[j], "middle", 12);
        doc.close_group();
    }
    return doc.finish();
}

std::string svg_scatter_matrix(const dataset::LabeledDataset& ds, const PlotSpec& spec) {
    spec.validate();
    const std::size_t p = ds.p();
    if (p < 2) throw Error(ErrorKind::InvalidArgument, "scatter matrix needs at least two variables");
    const double cell = std::min(spec.width - 2 * spec.margin, spec.height - 2 * spec.margin) / static_cast<double>(p);
    const double pad = 4.0;

    std::vector<std::pair<double, double>> ranges(p);
    for (std::size_t v = 0; v < p; ++v) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < ds.n(); ++i) {
            lo = std::min(lo, ds.observations()(i, v));
            hi = std::max(hi, ds.observations()(i, v));
        }
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double span = hi - lo;
        ranges[v] = {lo - 0.05 * span, hi + 0.05 * span};
    }

    SvgDoc doc(spec.width, spec.height);
    if (!spec.title.empty()) doc.text("title", spec.width / 2, spec.margin / 2, spec.title, "middle", 14);
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            const double left = spec.margin + static_cast<double>(c) * cell;
            const double top = spec.margin + static_cast<double>(r) * cell;
            if (r == c) {
                doc.open_group("diagonal");
                doc.rect("frame", left + pad / 2, top + pad / 2, cell - pad, cell - pad, "none",
                         " stroke=\"#333333\" stroke-width=\"1.0000\"");
                doc.text("variable-name", left + cell / 2, top + cell / 2, ds.variable_names()[r], "middle", 11);
                doc.close_group();
                continue;
            }
            // Column variable on x, row variable on y.
            const Frame f{left + pad, top + pad, cell - 2 * pad, cell - 2 * pad,
                          ranges[c].first, ranges[c].second, ranges[r].first, ranges[r].second};
            doc.open_group("panel");
            doc.rect("frame", f.left - pad / 2, f.top - pad / 2, f.width + pad, f.height + pad, "none",
                     " stroke=\"#333333\" stroke-width=\"1.0000\"");
            for (std::size_t i = 0; i < ds.n(); ++i) {
                const std::size_t g = ds.labels()[i];
                doc.marker(g, spec.glyph(g), f.px(ds.observations()(i, c)), f.py(ds.observations()(i, r)),
                           spec.color(g), 1.8);
            }
            doc.close_group();
        }
    }
    return doc.finish();
}

std::string plot_file_name(const std::string& kind, const std::string& dataset, const std::string& variant) {
    return kind + "-" + dataset + "-" + variant + ".svg";
}

}  // namespace discrimlab::viz
