#include "discrimlab/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "discrimlab/error.hpp"

namespace discrimlab::evaluate {

std::size_t ConfusionMatrix::total() const {
    std::size_t t = 0;
    for (const auto& row : counts)
        for (std::size_t c : row) t += c;
    return t;
}

std::vector<std::size_t> ConfusionMatrix::misclassified_indices() const {
    std::vector<std::size_t> out;
    for (const auto& m : misclassified) out.push_back(m.index);
    return out;
}

std::string ConfusionMatrix::to_text() const {
    const std::size_t s = counts.size();
    std::size_t width = 5;
    for (const auto& g : group_names) width = std::max(width, g.size());
    const int w = static_cast<int>(width) + 2;

    std::ostringstream out;
    out << std::left << std::setw(11) << "" << std::setw(w) << "" << "Actual\n";
    out << std::setw(11) << "" << std::setw(w) << "";
    for (const auto& g : group_names) out << std::right << std::setw(w) << g;
    out << std::setw(w) << "Total" << '\n';

    std::vector<std::size_t> column_totals(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        out << std::left << std::setw(11) << (i == 0 ? "Predicted" : "") << std::setw(w) << group_names[i];
        std::size_t row_total = 0;
        for (std::size_t j = 0; j < s; ++j) {
            out << std::right << std::setw(w) << counts[i][j];
            row_total += counts[i][j];
            column_totals[j] += counts[i][j];
        }
        out << std::setw(w) << row_total << '\n';
    }
    out << std::left << std::setw(11) << "" << std::setw(w) << "Total";
    for (std::size_t j = 0; j < s; ++j) out << std::right << std::setw(w) << column_totals[j];
    out << std::setw(w) << total() << '\n';
    return out.str();
}

std::string ConfusionMatrix::to_json() const {
    nlohmann::ordered_json j;
    j["groups"] = group_names;
    j["counts_predicted_by_actual"] = counts;
    j["correct"] = correct_count(*this);
    j["total"] = total();
    nlohmann::ordered_json mis = nlohmann::ordered_json::array();
    for (const auto& m : misclassified) {
        mis.push_back({{"index", m.index}, {"actual", group_names[m.actual]}, {"predicted", group_names[m.predicted]}});
    }
    j["misclassified"] = mis;
    return j.dump();
}

ConfusionMatrix confusion_matrix(const Labels& actual, const Labels& predicted, std::vector<std::string> group_names) {
    if (actual.size() != predicted.size()) throw Error(ErrorKind::LengthMismatch, "label lists differ in length");
    const std::size_t s = group_names.size();
    ConfusionMatrix cm;
    cm.counts.assign(s, std::vector<std::size_t>(s, 0));
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] >= s || predicted[i] >= s) throw Error(ErrorKind::IndexOutOfRange, "label outside group range");
        ++cm.counts[predicted[i]][actual[i]];
        if (actual[i] != predicted[i]) cm.misclassified.push_back({i + 1, actual[i], predicted[i]});
    }
    cm.group_names = std::move(group_names);
    return cm;
}

std::size_t agreement_count(const Labels& a, const Labels& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "label lists differ in length");
    std::size_t agree = 0;
    for (std::size_t i = 0; i < a.size(); ++i) agree += a[i] == b[i] ? 1 : 0;
    return agree;
}

std::vector<std::size_t> disagreement_indices(const Labels& a, const Labels& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "label lists differ in length");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) out.push_back(i + 1);
    return out;
}

std::size_t correct_count(const ConfusionMatrix& cm) {
    std::size_t trace = 0;
    for (std::size_t i = 0; i < cm.counts.size(); ++i) trace += cm.counts[i][i];
    return trace;
}

Labels resubstitute(const dataset::LabeledDataset& ds, const Classifier& classify) {
    Labels out(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) out[i] = classify(ds.observations().row(i));
    return out;
}

std::size_t DecisionGrid::label_at(double px, double py) const {
    const auto cell = [&](double v, const Range& r) {
        const double t = (v - r.low) / (r.high - r.low) * static_cast<double>(resolution);
        return static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(resolution - 1)));
    };
    return at(cell(py, y), cell(px, x));
}

DecisionGrid decision_grid(const Classifier& classify, Range x, Range y, std::size_t resolution) {
    if (resolution < 2) throw Error(ErrorKind::InvalidArgument, "grid resolution must be at least 2");
    if (!std::isfinite(x.low) || !std::isfinite(x.high) || !std::isfinite(y.low) || !std::isfinite(y.high) ||
        !(x.high > x.low) || !(y.high > y.low)) {
        throw Error(ErrorKind::InvalidArgument, "grid bounds must be finite with low < high");
    }
    DecisionGrid grid{x, y, resolution, Labels(resolution * resolution)};
    const double dx = (x.high - x.low) / static_cast<double>(resolution);
    const double dy = (y.high - y.low) / static_cast<double>(resolution);
    double point[2];
    for (std::size_t r = 0; r < resolution; ++r) {
        point[1] = y.low + (static_cast<double>(r) + 0.5) * dy;
        for (std::size_t c = 0; c < resolution; ++c) {
            point[0] = x.low + (static_cast<double>(c) + 0.5) * dx;
            grid.labels[r * resolution + c] = classify(point);
        }
    }
    return grid;
}

}  // namespace discrimlab::evaluate
