#include "discrimlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "discrimlab/discriminant.hpp"
#include "discrimlab/error.hpp"
#include "discrimlab/inference.hpp"
#include "discrimlab/nonparam.hpp"
#include "discrimlab/normality.hpp"
#include "discrimlab/viz.hpp"

namespace discrimlab::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct RunConfig {
    bool iris = false;
    std::string input;
    std::string label = "species";
    std::string select;
    std::string ratios;
    std::string products;
    std::string format = "text";
    std::string outdir;
};

std::string fixed(double v, int decimals) {
    if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string join_indices(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? ", " : "") + std::to_string(idx[i]);
    return s.empty() ? "none" : s;
}

std::string join_fixed(std::span<const double> v, int decimals) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fixed(v[i], decimals);
    return s + ")";
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::size_t parse_index(const std::string& s) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size() || v < 1) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v - 1);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArgument, "bad variable index '" + s + "' (indices are 1-based)");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text, char op) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, op);
        if (parts.size() != 2) {
            throw Error(ErrorKind::InvalidArgument, std::string("expected pairs like 1") + op + "3, got '" + item + "'");
        }
        out.emplace_back(parse_index(parts[0]), parse_index(parts[1]));
    }
    return out;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidArgument, "not a number: '" + item + "'");
        }
    }
    return out;
}

std::string dataset_name(const RunConfig& cfg) {
    if (cfg.iris) return "iris";
    return fs::path(cfg.input).stem().string();
}

std::string variant_name(const RunConfig& cfg) {
    std::string v;
    if (!cfg.select.empty()) v += "select" + cfg.select;
    if (!cfg.ratios.empty()) v += "ratios" + cfg.ratios;
    if (!cfg.products.empty()) v += "products" + cfg.products;
    if (v.empty()) return "all";
    std::replace_if(v.begin(), v.end(), [](char c) { return c == ',' || c == '/' || c == '*' || c == ' '; }, '_');
    return v;
}

dataset::LabeledDataset load(const RunConfig& cfg) {
    if (cfg.iris == !cfg.input.empty()) {
        throw Error(ErrorKind::InvalidArgument, "give exactly one input: --iris or --input FILE");
    }
    dataset::LabeledDataset ds = cfg.iris ? dataset::embedded_iris() : dataset::load_csv_file(cfg.input, cfg.label);
    const int transforms = !cfg.select.empty() + !cfg.ratios.empty() + !cfg.products.empty();
    if (transforms > 1) throw Error(ErrorKind::InvalidArgument, "use at most one of --select, --ratios, --products");
    if (!cfg.select.empty()) {
        dataset::Select sel;
        for (const auto& s : split(cfg.select, ',')) sel.indices.push_back(parse_index(s));
        ds = dataset::transform(ds, sel);
    } else if (!cfg.ratios.empty()) {
        ds = dataset::transform(ds, dataset::Ratios{parse_pairs(cfg.ratios, '/')});
    } else if (!cfg.products.empty()) {
        ds = dataset::transform(ds, dataset::Products{parse_pairs(cfg.products, '*')});
    }
    return ds;
}

fs::path output_dir(const RunConfig& cfg) {
    std::string dir = cfg.outdir;
    if (dir.empty()) {
        const char* env = std::getenv("DISCRIMLAB_OUTDIR");
        dir = env && *env ? env : ".";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw Error(ErrorKind::InvalidArgument, "output directory '" + dir + "' is not usable");
    return fs::path(dir);
}

std::string write_svg(const RunConfig& cfg, const std::string& kind, const std::string& variant,
                      const std::string& svg) {
    const fs::path path = output_dir(cfg) / viz::plot_file_name(kind, dataset_name(cfg), variant);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    f << svg;
    return path.string();
}

json confusion_json(const evaluate::ConfusionMatrix& cm) { return json::parse(cm.to_json()); }

void print_confusion(std::ostream& out, const std::string& title, const evaluate::ConfusionMatrix& cm) {
    out << title << '\n' << cm.to_text();
    out << "correct: " << evaluate::correct_count(cm) << " of " << cm.total() << '\n';
    out << "misclassified: " << join_indices(cm.misclassified_indices()) << '\n';
}

evaluate::ConfusionMatrix resubstitution(const dataset::LabeledDataset& ds, const evaluate::Classifier& classify) {
    return evaluate::confusion_matrix(ds.labels(), evaluate::resubstitute(ds, classify), ds.group_names());
}

std::vector<std::string> variable_list(const dataset::LabeledDataset& ds) { return ds.variable_names(); }

// ---------------------------------------------------------------- commands

int cmd_normality(const RunConfig& cfg, std::ostream& out) {
    const auto ds = load(cfg);
    std::vector<normality::MardiaReport> reports;
    for (std::size_t j = 0; j < ds.s(); ++j) {
        try {
            reports.push_back(normality::mardia(ds.group_rows(j)));
        } catch (const Error& e) {
            throw Error(e.kind(), "group '" + ds.group_names()[j] + "': " + e.what());
        }
    }
    if (cfg.format == "json") {
        for (std::size_t j = 0; j < reports.size(); ++j) {
            const auto& r = reports[j];
            out << json{{"report", "mardia"}, {"group", ds.group_names()[j]}, {"n", r.n}, {"p", r.p},
                        {"b1p", r.b1p}, {"U", r.u}, {"f", r.f}, {"p_skew", r.p_skew},
                        {"b2p", r.b2p}, {"V", r.v}, {"p_kurt", r.p_kurt}, {"small_sample", r.small_sample()}}
                       .dump()
                << '\n';
        }
        return kOk;
    }
    const std::size_t p = ds.p();
    const bool univariate = p == 1;
    out << "Mardia " << (univariate ? "univariate skewness b1 and kurtosis b2" : "multivariate skewness and kurtosis")
        << " (p = " << p << "); U and |V| in brackets\n";
    const int w = 16;
    out << std::left << std::setw(10) << "";
    for (const auto& g : ds.group_names()) out << std::setw(w) << g;
    out << '\n' << std::setw(10) << "skewness";
    for (const auto& r : reports) out << std::setw(w) << (fixed(r.b1p, 1) + " (" + fixed(r.u, 1) + ")");
    out << '\n' << std::setw(10) << "kurtosis";
    for (const auto& r : reports) out << std::setw(w) << (fixed(r.b2p, 1) + " (" + fixed(std::abs(r.v), 1) + ")");
    out << '\n' << std::setw(10) << "p(U)";
    for (const auto& r : reports) out << std::setw(w) << fixed(r.p_skew, 4);
    out << '\n' << std::setw(10) << "p(V)";
    for (const auto& r : reports) out << std::setw(w) << fixed(r.p_kurt, 4);
    out << '\n';
    out << "f = " << reports.front().f << "; normal reference values beta1 = 0, beta2 = " << p * (p + 2) << '\n';
    for (std::size_t j = 0; j < reports.size(); ++j) {
        if (reports[j].small_sample()) {
            out << "note: group '" << ds.group_names()[j] << "' has n = " << reports[j].n
                << " < 50; asymptotic tests are approximate\n";
        }
    }
    return kOk;
}

int cmd_canonical(const RunConfig& cfg, bool plot, double level, std::ostream& out) {
    const auto ds = load(cfg);
    const auto stats = dataset::group_stats(ds);
    const auto basis = discriminant::canonical_variates(stats);
    const auto& first = basis.variates.front();
    const auto cm = resubstitution(ds, [&](std::span<const double> x) {
        return discriminant::nearest_projected_mean_classify(first, x);
    });
    std::string svg_path;
    if (plot) {
        viz::PlotSpec spec;
        spec.title = "First two canonical variates (approximate " + fixed(level * 100, 0) + "% regions)";
        spec.x_label = "canonical variate 1";
        spec.y_label = "canonical variate 2";
        if (basis.variates.size() < 2) throw Error(ErrorKind::InvalidArgument, "--plot needs at least two canonical variates");
        const auto proj = viz::canonical_projection(basis, stats, ds);
        svg_path = write_svg(cfg, "canonical", variant_name(cfg),
                             viz::svg_scatter(proj, ds.labels(), ds.group_names(), spec, level));
    }
    if (cfg.format == "json") {
        json variates = json::array();
        for (std::size_t k = 0; k < basis.variates.size(); ++k) {
            variates.push_back({{"eigenvalue", basis.eigenvalues[k]},
                                {"coefficients", basis.variates[k].coefficients},
                                {"projected_group_means", basis.variates[k].projected_group_means}});
        }
        out << json{{"report", "canonical"}, {"variables", variable_list(ds)}, {"normalization", "within_variance_one"},
                    {"variates", variates}, {"confusion", confusion_json(cm)}}
                   .dump()
            << '\n';
        if (!svg_path.empty()) out << json{{"report", "plot"}, {"path", svg_path}}.dump() << '\n';
        return kOk;
    }
    out << "Canonical variates (normalized to unit pooled within-group variance)\n";
    for (std::size_t k = 0; k < basis.variates.size(); ++k) {
        out << "  l" << k + 1 << " = " << join_fixed(basis.variates[k].coefficients, 2)
            << "  eigenvalue " << fixed(basis.eigenvalues[k], 4) << '\n';
    }
    print_confusion(out, "Rule I on the first canonical variate", cm);
    if (!svg_path.empty()) out << "wrote " << svg_path << '\n';
    return kOk;
}

int cmd_genetic(const RunConfig& cfg, const std::string& constraint_text, double level, bool plot, std::ostream& out) {
    const auto ds = load(cfg);
    const auto constraint = parse_reals(constraint_text);
    const auto contrast = discriminant::optimal_contrast(constraint);
    const auto stats = dataset::group_stats(ds);
    const auto fit = discriminant::genetic_discriminant(stats, contrast);
    const auto cm = resubstitution(ds, [&](std::span<const double> x) {
        return discriminant::nearest_projected_mean_classify(fit.reporting_scale, x);
    });
    const auto test = inference::genetic_contrast_test(ds, fit.reporting_scale, constraint, level);

    std::string svg_path;
    if (plot) {
        std::vector<linalg::Vector> scores(ds.s());
        for (std::size_t i = 0; i < ds.n(); ++i)
            scores[ds.labels()[i]].push_back(fit.reporting_scale.score(ds.observations().row(i)));
        viz::PlotSpec spec;
        spec.height = 560;
        spec.title = "Genetic discriminant scores by group";
        viz::HistogramOptions opt;
        opt.cell_width = 2.5;
        opt.hypothesis_arrow = ds.s() == 3;
        svg_path = write_svg(cfg, "histograms", variant_name(cfg),
                             viz::svg_histogram_panels(scores, ds.group_names(), opt, spec));
    }

    if (cfg.format == "json") {
        out << json{{"report", "genetic"},
                    {"variables", variable_list(ds)},
                    {"alpha", fit.alpha_used},
                    {"coefficients_x100", fit.reporting_scale.coefficients},
                    {"coefficients_unit", fit.unit.coefficients},
                    {"projected_group_means", fit.reporting_scale.projected_group_means},
                    {"confusion", confusion_json(cm)}}
                   .dump()
            << '\n';
        out << json{{"report", "contrast_test"},
                    {"constraint", constraint},
                    {"projected_means", test.projected_means},
                    {"contrast", test.contrast_value},
                    {"variance", test.variance},
                    {"se", test.se},
                    {"level", test.level},
                    {"z", test.z_multiplier},
                    {"ci", {test.ci.first, test.ci.second}},
                    {"reject", test.reject}}
                   .dump()
            << '\n';
        if (!svg_path.empty()) out << json{{"report", "plot"}, {"path", svg_path}}.dump() << '\n';
        return kOk;
    }
    out << "Contrast alpha = " << join_fixed(fit.alpha_used, 0) << " from constraint " << join_fixed(constraint, 2)
        << '\n';
    out << "Genetic discriminant (x100, within-group SSCP): u = " << join_fixed(fit.reporting_scale.coefficients, 2) << '\n';
    out << "Unit-length direction: " << join_fixed(fit.unit.coefficients, 3) << '\n';
    print_confusion(out, "Rule II on the genetic discriminant", cm);
    out << "Contrast test along u\n";
    out << "  projected means " << join_fixed(test.projected_means, 1) << '\n';
    out << "  contrast " << fixed(test.contrast_value, 2) << "  variance " << fixed(test.variance, 4) << "  SE "
        << fixed(test.se, 3) << '\n';
    out << "  " << fixed(test.level * 100, 0) << "% CI (" << fixed(test.ci.first, 2) << ", " << fixed(test.ci.second, 2)
        << ") with z = " << fixed(test.z_multiplier, 4) << '\n';
    out << "  decision: " << (test.reject ? "reject H0" : "accept H0") << " (approximate: u treated as fixed)\n";
    if (!svg_path.empty()) out << "wrote " << svg_path << '\n';
    return kOk;
}

int cmd_classify(const RunConfig& cfg, const std::string& method, std::ostream& out) {
    const auto ds = load(cfg);
    const FittedMethod fm = fit_method(method, ds);
    const auto cm = resubstitution(ds, fm.classify);
    if (cfg.format == "json") {
        out << json{{"report", "classify"}, {"method", method}, {"variables", variable_list(ds)},
                    {"details", fm.details}, {"confusion", confusion_json(cm)}}
                   .dump()
            << '\n';
        return kOk;
    }
    out << "Method: " << method << " on " << ds.p() << " variable(s):";
    for (const auto& v : ds.variable_names()) out << ' ' << v;
    out << '\n';
    for (const auto& d : fm.details) out << "  " << d << '\n';
    print_confusion(out, "Resubstitution confusion matrix", cm);
    return kOk;
}

int cmd_compare(const RunConfig& cfg, const std::string& a, const std::string& b, std::ostream& out) {
    const auto ds = load(cfg);
    const auto pa = evaluate::resubstitute(ds, fit_method(a, ds).classify);
    const auto pb = evaluate::resubstitute(ds, fit_method(b, ds).classify);
    const std::size_t agree = evaluate::agreement_count(pa, pb);
    const auto diff = evaluate::disagreement_indices(pa, pb);
    const auto ca = evaluate::correct_count(evaluate::confusion_matrix(ds.labels(), pa, ds.group_names()));
    const auto cb = evaluate::correct_count(evaluate::confusion_matrix(ds.labels(), pb, ds.group_names()));
    const bool nonparam = a == "kernel" || a == "tree" || b == "kernel" || b == "tree";
    if (cfg.format == "json") {
        out << json{{"report", "compare"}, {"method_a", a}, {"method_b", b}, {"agreement", agree}, {"n", ds.n()},
                    {"disagreements", diff}, {"correct_a", ca}, {"correct_b", cb}}
                   .dump()
            << '\n';
        return kOk;
    }
    out << "Allocation agreement " << a << " vs " << b << ": " << agree << " of " << ds.n() << '\n';
    out << "Correct: " << a << " " << ca << ", " << b << " " << cb << '\n';
    out << "Disagreements: " << join_indices(diff) << '\n';
    if (nonparam) {
        out << "note: kernel and tree results depend on this implementation's pinned defaults (normal-reference "
               "bandwidths; Gini, max depth 6, min leaf 5)\n";
    }
    return kOk;
}

int cmd_plot(const RunConfig& cfg, const std::string& kind, const std::string& method, std::size_t resolution,
             double level, std::ostream& out) {
    const auto ds = load(cfg);
    const std::string variant = variant_name(cfg);
    std::vector<std::string> written;
    viz::PlotSpec spec;
    if (kind == "canonical") {
        const auto stats = dataset::group_stats(ds);
        const auto basis = discriminant::canonical_variates(stats);
        if (basis.variates.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two canonical variates");
        spec.title = "First two canonical variates (approximate " + fixed(level * 100, 0) + "% regions)";
        spec.x_label = "canonical variate 1";
        spec.y_label = "canonical variate 2";
        written.push_back(write_svg(cfg, "canonical", variant,
                                    viz::svg_scatter(viz::canonical_projection(basis, stats, ds), ds.labels(),
                                                     ds.group_names(), spec, level)));
    } else if (kind == "dhillon") {
        const auto stats = dataset::group_stats(ds);
        const auto proj = viz::class_preserving_projection(stats, ds);
        spec.title = "Class-preserving projection (principal components of B)";
        spec.x_label = "PC1 of B";
        spec.y_label = "PC2 of B";
        written.push_back(write_svg(cfg, "dhillon", variant,
                                    viz::svg_scatter(proj, ds.labels(), ds.group_names(), spec, level)));
        if (cfg.format != "json") {
            out << "eigenvalues of B " << join_fixed(proj.eigenvalues, 1) << '\n';
            out << "PC1 " << join_fixed(proj.basis[0], 3) << '\n';
            out << "PC2 " << join_fixed(proj.basis[1], 3) << '\n';
        } else {
            out << json{{"report", "dhillon"}, {"eigenvalues", proj.eigenvalues}, {"pc1", proj.basis[0]},
                        {"pc2", proj.basis[1]}}
                       .dump()
                << '\n';
        }
    } else if (kind == "regions") {
        if (ds.p() != 2) throw Error(ErrorKind::InvalidArgument, "regions need exactly two variables (use --select)");
        const FittedMethod fm = fit_method(method, ds);
        const auto stats = dataset::group_stats(ds);
        double xl = 1e300, xh = -1e300, yl = 1e300, yh = -1e300;
        for (std::size_t i = 0; i < ds.n(); ++i) {
            xl = std::min(xl, ds.observations()(i, 0));
            xh = std::max(xh, ds.observations()(i, 0));
            yl = std::min(yl, ds.observations()(i, 1));
            yh = std::max(yh, ds.observations()(i, 1));
        }
        const double px = 0.05 * (xh - xl);
        const double py = 0.05 * (yh - yl);
        const auto grid = evaluate::decision_grid(fm.classify, {xl - px, xh + px}, {yl - py, yh + py}, resolution);
        spec.title = "Classification regions: " + method;
        spec.x_label = ds.variable_names()[0];
        spec.y_label = ds.variable_names()[1];
        written.push_back(write_svg(cfg, "regions", variant + "-" + method, viz::svg_decision_regions(grid, ds, spec)));
    } else if (kind == "histograms") {
        const auto stats = dataset::group_stats(ds);
        if (ds.s() != 3) throw Error(ErrorKind::InvalidArgument, "histograms use the genetic contrast and need 3 groups");
        const double c[] = {1.0, -3.0, 2.0};
        const auto fit = discriminant::genetic_discriminant(stats, discriminant::optimal_contrast(c));
        std::vector<linalg::Vector> scores(ds.s());
        for (std::size_t i = 0; i < ds.n(); ++i)
            scores[ds.labels()[i]].push_back(fit.reporting_scale.score(ds.observations().row(i)));
        spec.height = 560;
        spec.title = "Genetic discriminant scores by group";
        viz::HistogramOptions opt;
        opt.cell_width = 2.5;
        written.push_back(
            write_svg(cfg, "histograms", variant, viz::svg_histogram_panels(scores, ds.group_names(), opt, spec)));
    } else if (kind == "rectangles") {
        if (ds.p() != 4) throw Error(ErrorKind::InvalidArgument, "rectangles need the four sepal/petal measurements");
        const auto stats = dataset::group_stats(ds);
        std::vector<std::array<double, 4>> means;
        for (const auto& m : stats.means) means.push_back({m[0], m[1], m[2], m[3]});
        std::optional<viz::RectangleOverlay> overlay;
        if (ds.s() == 3) {
            viz::RectangleOverlay o;
            o.group = 1;
            for (std::size_t v = 0; v < 4; ++v) o.means[v] = (means[0][v] + 2.0 * means[2][v]) / 3.0;
            overlay = o;
        }
        spec.title = "Stacked rectangles of group means (dashed: hypothesis means)";
        written.push_back(
            write_svg(cfg, "rectangles", variant, viz::svg_stacked_rectangles(means, ds.group_names(), overlay, spec)));
    } else if (kind == "matrix") {
        spec.width = 720;
        spec.height = 720;
        spec.title = "Scatter matrix";
        written.push_back(write_svg(cfg, "matrix", variant, viz::svg_scatter_matrix(ds, spec)));
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown plot kind '" + kind + "'");
    }
    for (const auto& w : written) {
        if (cfg.format == "json")
            out << json{{"report", "plot"}, {"path", w}}.dump() << '\n';
        else
            out << "wrote " << w << '\n';
    }
    return kOk;
}

int cmd_boxm(const RunConfig& cfg, std::ostream& out) {
    const auto ds = load(cfg);
    const auto rep = inference::box_m_test(dataset::group_stats(ds));
    if (cfg.format == "json") {
        out << json{{"report", "box_m"}, {"M", rep.m_statistic}, {"chi2", rep.chi2_approx}, {"df", rep.df},
                    {"p_value", rep.p_value}}
                   .dump()
            << '\n';
        return kOk;
    }
    out << "Box M test of equal covariance matrices\n";
    out << "  M = " << fixed(rep.m_statistic, 4) << "  chi2 = " << fixed(rep.chi2_approx, 4) << "  df = " << rep.df
        << "  p = " << (rep.p_value < 1e-4 ? std::string("< 0.0001") : fixed(rep.p_value, 4)) << '\n';
    return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_flag("--iris", cfg.iris, "Use the embedded iris data");
    sub->add_option("--input", cfg.input, "CSV file with a header row");
    sub->add_option("--label", cfg.label, "Name of the group label column")->capture_default_str();
    sub->add_option("--select", cfg.select, "Keep variables, 1-based, e.g. 1,2");
    sub->add_option("--ratios", cfg.ratios, "Ratio variables, e.g. 1/3,2/4");
    sub->add_option("--products", cfg.products, "Product variables, e.g. 1*2,3*4");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--outdir", cfg.outdir, "Directory for SVG output (default $DISCRIMLAB_OUTDIR or .)");
}

const std::vector<std::string> kMethods{"fisher", "ml-equal", "ml-unequal", "kernel", "tree", "index"};

}  // namespace

FittedMethod fit_method(const std::string& name, const dataset::LabeledDataset& ds) {
    FittedMethod fm;
    fm.name = name;
    if (name == "fisher") {
        const auto stats = dataset::group_stats(ds);
        auto basis = std::make_shared<discriminant::CanonicalBasis>(discriminant::canonical_variates(stats));
        fm.details.push_back("first canonical variate " + join_fixed(basis->variates.front().coefficients, 2));
        fm.details.push_back("projected means " + join_fixed(basis->variates.front().projected_group_means, 3));
        fm.classify = [basis](std::span<const double> x) {
            return discriminant::nearest_projected_mean_classify(basis->variates.front(), x);
        };
    } else if (name == "ml-equal" || name == "ml-unequal") {
        const auto stats = dataset::group_stats(ds);
        const auto cov = name == "ml-equal" ? discriminant::Covariance::equal : discriminant::Covariance::unequal;
        auto rule = std::make_shared<discriminant::GaussianMlRule>(stats, cov);
        fm.details.push_back(name == "ml-equal" ? "Gaussian ML, pooled covariance W/(n-s), equal priors"
                                                : "Gaussian ML, per-group covariances, equal priors");
        fm.classify = [rule](std::span<const double> x) { return rule->classify(x); };
    } else if (name == "kernel") {
        auto kc = std::make_shared<nonparam::KernelClassifier>(
            nonparam::kernel_fit(ds, nonparam::BandwidthSpec::normal_reference()));
        for (std::size_t j = 0; j < kc->bandwidths.size(); ++j)
            fm.details.push_back("bandwidths " + ds.group_names()[j] + " " + join_fixed(kc->bandwidths[j], 4));
        fm.classify = [kc](std::span<const double> x) { return nonparam::kernel_classify(*kc, x); };
    } else if (name == "tree") {
        auto tree = std::make_shared<nonparam::DecisionTree>(nonparam::tree_fit(ds));
        fm.details.push_back("Gini tree: depth " + std::to_string(tree->depth()) + ", " +
                             std::to_string(tree->leaf_count()) + " leaves (max depth 6, min leaf 5)");
        fm.classify = [tree](std::span<const double> x) { return nonparam::tree_classify(*tree, x); };
    } else if (name == "index") {
        if (ds.p() != 4) throw Error(ErrorKind::InvalidArgument, "the index method needs the four iris measurements");
        auto means = std::make_shared<linalg::Vector>(ds.s(), 0.0);
        const auto sizes = ds.group_sizes();
        for (std::size_t i = 0; i < ds.n(); ++i)
            (*means)[ds.labels()[i]] += discriminant::anderson_index(ds.observations().row(i));
        for (std::size_t j = 0; j < ds.s(); ++j) (*means)[j] /= static_cast<double>(sizes[j]);
        fm.details.push_back("z = x1/x3 + x2/x4; group means " + join_fixed(*means, 3));
        fm.classify = [means](std::span<const double> x) {
            const double z = discriminant::anderson_index(x);
            std::size_t best = 0;
            for (std::size_t j = 1; j < means->size(); ++j)
                if (std::abs(z - (*means)[j]) < std::abs(z - (*means)[best])) best = j;
            return best;
        };
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown method '" + name + "'");
    }
    return fm;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classical discriminant analysis toolkit", "discrimlab"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* normality_cmd = app.add_subcommand("normality", "Mardia skewness and kurtosis per group");
    add_common(normality_cmd, cfg);

    bool plot = false;
    double level = 0.99;
    auto* canonical_cmd = app.add_subcommand("canonical", "Canonical variates and Rule I confusion matrix");
    add_common(canonical_cmd, cfg);
    canonical_cmd->add_flag("--plot", plot, "Write a canonical scatter SVG");
    canonical_cmd->add_option("--level", level, "Ellipse coverage")->capture_default_str();

    std::string constraint = "1,-3,2";
    double test_level = 0.95;
    auto* genetic_cmd = app.add_subcommand("genetic", "Genetic discriminant, Rule II, and contrast test");
    add_common(genetic_cmd, cfg);
    genetic_cmd->add_option("--constraint", constraint, "Known linear constraint on the group means")
        ->capture_default_str();
    genetic_cmd->add_option("--level", test_level, "Confidence level")->capture_default_str();
    genetic_cmd->add_flag("--plot", plot, "Write score histograms SVG");

    std::string method;
    auto* classify_cmd = app.add_subcommand("classify", "Fit one rule and report its resubstitution confusion");
    add_common(classify_cmd, cfg);
    classify_cmd->add_option("--method", method, "fisher|ml-equal|ml-unequal|kernel|tree|index")
        ->required()
        ->check(CLI::IsMember(kMethods));

    std::string method_a;
    std::string method_b;
    auto* compare_cmd = app.add_subcommand("compare", "Allocation agreement between two rules");
    add_common(compare_cmd, cfg);
    compare_cmd->add_option("--method-a", method_a, "First rule")->required()->check(CLI::IsMember(kMethods));
    compare_cmd->add_option("--method-b", method_b, "Second rule")->required()->check(CLI::IsMember(kMethods));

    std::string kind;
    std::string region_method = "ml-equal";
    std::size_t resolution = 200;
    double plot_level = 0.99;
    auto* plot_cmd = app.add_subcommand("plot", "Write SVG figures");
    add_common(plot_cmd, cfg);
    plot_cmd->add_option("--kind", kind, "canonical|regions|histograms|rectangles|matrix|dhillon")
        ->required()
        ->check(CLI::IsMember({"canonical", "regions", "histograms", "rectangles", "matrix", "dhillon"}));
    plot_cmd->add_option("--method", region_method, "Rule for --kind regions")
        ->check(CLI::IsMember(kMethods))
        ->capture_default_str();
    plot_cmd->add_option("--resolution", resolution, "Grid cells per axis for regions")->capture_default_str();
    plot_cmd->add_option("--level", plot_level, "Ellipse coverage")->capture_default_str();

    auto* boxm_cmd = app.add_subcommand("boxm", "Box M test of equal group covariances");
    add_common(boxm_cmd, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUserError;
    }

    try {
        if (*normality_cmd) return cmd_normality(cfg, out);
        if (*canonical_cmd) return cmd_canonical(cfg, plot, level, out);
        if (*genetic_cmd) return cmd_genetic(cfg, constraint, test_level, plot, out);
        if (*classify_cmd) return cmd_classify(cfg, method, out);
        if (*compare_cmd) return cmd_compare(cfg, method_a, method_b, out);
        if (*plot_cmd) return cmd_plot(cfg, kind, region_method, resolution, plot_level, out);
        if (*boxm_cmd) return cmd_boxm(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUserError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}

}  // namespace discrimlab::cli
