#ifndef DISCRIMLAB_EVALUATE_HPP
#define DISCRIMLAB_EVALUATE_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "discrimlab/dataset.hpp"

namespace discrimlab::evaluate {

using Labels = std::vector<std::size_t>;

struct Misclassification {
    std::size_t index = 0;  // 1-based row position
    std::size_t actual = 0;
    std::size_t predicted = 0;
};

/// counts[predicted][actual].
struct ConfusionMatrix {
    std::vector<std::vector<std::size_t>> counts;
    std::vector<std::string> group_names;
    std::vector<Misclassification> misclassified;

    std::size_t total() const;
    std::vector<std::size_t> misclassified_indices() const;
    // Predicted-by-actual table with Total margins.
    std::string to_text() const;
    std::string to_json() const;
};

ConfusionMatrix confusion_matrix(const Labels& actual, const Labels& predicted, std::vector<std::string> group_names);
std::size_t agreement_count(const Labels& a, const Labels& b);
// 1-based positions where the two allocations differ.
std::vector<std::size_t> disagreement_indices(const Labels& a, const Labels& b);
std::size_t correct_count(const ConfusionMatrix& cm);

using Classifier = std::function<std::size_t(std::span<const double>)>;

Labels resubstitute(const dataset::LabeledDataset& ds, const Classifier& classify);

struct Range {
    double low = 0.0;
    double high = 1.0;
};

/// labels[row * resolution + col]; row 0 is the lowest y, col 0 the lowest x.
struct DecisionGrid {
    Range x;
    Range y;
    std::size_t resolution = 0;
    Labels labels;

    std::size_t at(std::size_t row, std::size_t col) const { return labels[row * resolution + col]; }
    // Label of the cell containing (px, py).
    std::size_t label_at(double px, double py) const;
};

DecisionGrid decision_grid(const Classifier& classify, Range x, Range y, std::size_t resolution);

}  // namespace discrimlab::evaluate

#endif  // DISCRIMLAB_EVALUATE_HPP
