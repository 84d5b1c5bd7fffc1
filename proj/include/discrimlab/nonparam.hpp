#ifndef DISCRIMLAB_NONPARAM_HPP
#define DISCRIMLAB_NONPARAM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "discrimlab/dataset.hpp"

namespace discrimlab::nonparam {

using linalg::Matrix;
using linalg::Vector;

// Either explicit per-variable bandwidths (shared by all groups) or the
// normal-reference rule h = σ̂ (4 / ((p + 2) n_j))^(1 / (p + 4)) per group.
struct BandwidthSpec {
    std::optional<Vector> explicit_values;

    static BandwidthSpec normal_reference() { return {}; }
    static BandwidthSpec fixed(Vector h) { return {std::move(h)}; }
};

/// Product-Gaussian kernel density per group, equal priors.
struct KernelClassifier {
    std::vector<Matrix> training;  // rows of each group
    std::vector<Vector> bandwidths;
    std::vector<std::string> group_names;

    double density(std::size_t group, std::span<const double> x) const;
};

KernelClassifier kernel_fit(const dataset::LabeledDataset& ds, const BandwidthSpec& bandwidth);
std::size_t kernel_classify(const KernelClassifier& kc, std::span<const double> x);

struct TreeParams {
    std::size_t max_depth = 6;
    std::size_t min_leaf = 5;
};

struct TreeNode {
    bool leaf = true;
    std::size_t variable = 0;
    double threshold = 0.0;
    std::size_t left = 0;   // index into DecisionTree::nodes, x[variable] <= threshold
    std::size_t right = 0;
    std::size_t prediction = 0;
    std::vector<std::size_t> class_counts;
};

/// Binary classification tree; nodes[0] is the root.
struct DecisionTree {
    std::vector<TreeNode> nodes;
    std::vector<std::string> variable_names;
    std::vector<std::string> group_names;

    std::size_t depth() const;
    std::size_t leaf_count() const;
    // Nested {"variable", "threshold", "left", "right"} / {"leaf", "counts"} text.
    std::string to_json() const;
};

double gini(std::span<const std::size_t> counts);

DecisionTree tree_fit(const dataset::LabeledDataset& ds, const TreeParams& params = {});
std::size_t tree_classify(const DecisionTree& tree, std::span<const double> x);

}  // namespace discrimlab::nonparam

#endif  // DISCRIMLAB_NONPARAM_HPP
