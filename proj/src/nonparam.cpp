#include "discrimlab/nonparam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "discrimlab/error.hpp"

namespace discrimlab::nonparam {

namespace {

constexpr double kMinGain = 1e-12;

std::size_t majority(const std::vector<std::size_t>& counts) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < counts.size(); ++j)
        if (counts[j] > counts[best]) best = j;
    return best;
}

class TreeBuilder {
public:
    TreeBuilder(const dataset::LabeledDataset& ds, const TreeParams& params) : ds_(ds), params_(params) {}

    std::size_t build(std::vector<std::size_t> rows, std::size_t depth) {
        const std::size_t s = ds_.s();
        std::vector<std::size_t> counts(s, 0);
        for (std::size_t r : rows) ++counts[ds_.labels()[r]];

        const std::size_t id = nodes.size();
        nodes.push_back(TreeNode{});
        nodes[id].class_counts = counts;
        nodes[id].prediction = majority(counts);

        const double parent = gini(counts);
        if (depth >= params_.max_depth || parent <= 0.0 || rows.size() < 2 * params_.min_leaf) return id;

        const Split split = best_split(rows, parent);
        if (!split.found) return id;

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t r : rows) {
            (ds_.observations()(r, split.variable) <= split.threshold ? left : right).push_back(r);
        }
        const std::size_t left_id = build(std::move(left), depth + 1);
        const std::size_t right_id = build(std::move(right), depth + 1);
        TreeNode& node = nodes[id];
        node.leaf = false;
        node.variable = split.variable;
        node.threshold = split.threshold;
        node.left = left_id;
        node.right = right_id;
        return id;
    }

    std::vector<TreeNode> nodes;

private:
    struct Split {
        bool found = false;
        std::size_t variable = 0;
        double threshold = 0.0;
        double gain = 0.0;
    };

    Split best_split(std::vector<std::size_t> rows, double parent) const {
        const std::size_t s = ds_.s();
        const std::size_t n = rows.size();
        const Matrix& x = ds_.observations();
        Split best;
        for (std::size_t v = 0; v < ds_.p(); ++v) {
            std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) { return x(a, v) < x(b, v); });
            std::vector<std::size_t> left(s, 0);
            std::vector<std::size_t> right(s, 0);
            for (std::size_t r : rows) ++right[ds_.labels()[r]];
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const std::size_t label = ds_.labels()[rows[i]];
                ++left[label];
                --right[label];
                const double lo = x(rows[i], v);
                const double hi = x(rows[i + 1], v);
                if (!(hi > lo)) continue;
                const std::size_t n_left = i + 1;
                const std::size_t n_right = n - n_left;
                if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
                const double weighted = (static_cast<double>(n_left) * gini(left) +
                                         static_cast<double>(n_right) * gini(right)) /
                                        static_cast<double>(n);
                const double gain = parent - weighted;
                if (gain > kMinGain && (!best.found || gain > best.gain + kMinGain)) {
                    best = Split{true, v, 0.5 * (lo + hi), gain};
                }
            }
        }
        return best;
    }

    const dataset::LabeledDataset& ds_;
    TreeParams params_;
};

nlohmann::ordered_json node_json(const DecisionTree& tree, std::size_t id) {
    const TreeNode& node = tree.nodes[id];
    nlohmann::ordered_json j;
    if (node.leaf) {
        j["leaf"] = tree.group_names.empty() ? std::to_string(node.prediction) : tree.group_names[node.prediction];
        j["counts"] = node.class_counts;
    } else {
        j["variable"] = tree.variable_names.empty() ? std::to_string(node.variable) : tree.variable_names[node.variable];
        j["threshold"] = node.threshold;
        j["left"] = node_json(tree, node.left);
        j["right"] = node_json(tree, node.right);
    }
    return j;
}

std::size_t depth_from(const DecisionTree& tree, std::size_t id) {
    const TreeNode& node = tree.nodes[id];
    if (node.leaf) return 0;
    return 1 + std::max(depth_from(tree, node.left), depth_from(tree, node.right));
}

}  // namespace

double KernelClassifier::density(std::size_t group, std::span<const double> x) const {
    const Matrix& rows = training.at(group);
    const Vector& h = bandwidths.at(group);
    if (x.size() != rows.cols()) throw Error(ErrorKind::DimensionMismatch, "observation length differs from p");
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double norm_const = 1.0;
    for (double hv : h) norm_const *= inv_sqrt_2pi / hv;
    double sum = 0.0;
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        double exponent = 0.0;
        for (std::size_t v = 0; v < x.size(); ++v) {
            const double u = (x[v] - rows(i, v)) / h[v];
            exponent += u * u;
        }
        sum += std::exp(-0.5 * exponent);
    }
    return norm_const * sum / static_cast<double>(rows.rows());
}

KernelClassifier kernel_fit(const dataset::LabeledDataset& ds, const BandwidthSpec& bandwidth) {
    KernelClassifier kc;
    kc.group_names = ds.group_names();
    const std::size_t p = ds.p();
    if (bandwidth.explicit_values) {
        if (bandwidth.explicit_values->size() != p) throw Error(ErrorKind::DimensionMismatch, "one bandwidth per variable");
        for (double h : *bandwidth.explicit_values)
            if (!(h > 0.0)) throw Error(ErrorKind::DegenerateVariable, "bandwidths must be positive");
    }
    for (std::size_t j = 0; j < ds.s(); ++j) {
        Matrix rows = ds.group_rows(j);
        if (rows.rows() < 2) {
            throw Error(ErrorKind::EmptyGroup, "group '" + ds.group_names()[j] + "' needs at least 2 rows");
        }
        Vector h(p);
        if (bandwidth.explicit_values) {
            h = *bandwidth.explicit_values;
        } else {
            const double n = static_cast<double>(rows.rows());
            const double factor =
                std::pow(4.0 / ((static_cast<double>(p) + 2.0) * n), 1.0 / (static_cast<double>(p) + 4.0));
            for (std::size_t v = 0; v < p; ++v) {
                double mean = 0.0;
                for (std::size_t i = 0; i < rows.rows(); ++i) mean += rows(i, v);
                mean /= n;
                double ss = 0.0;
                for (std::size_t i = 0; i < rows.rows(); ++i) ss += (rows(i, v) - mean) * (rows(i, v) - mean);
                const double sd = std::sqrt(ss / (n - 1.0));
                if (!(sd > 0.0)) {
                    throw Error(ErrorKind::DegenerateVariable, "variable '" + ds.variable_names()[v] +
                                                                   "' has zero spread in group '" +
                                                                   ds.group_names()[j] + "'");
                }
                h[v] = sd * factor;
            }
        }
        kc.training.push_back(std::move(rows));
        kc.bandwidths.push_back(std::move(h));
    }
    return kc;
}

std::size_t kernel_classify(const KernelClassifier& kc, std::span<const double> x) {
    std::size_t best = 0;
    double best_density = -1.0;
    for (std::size_t j = 0; j < kc.training.size(); ++j) {
        const double d = kc.density(j, x);
        if (d > best_density) {
            best_density = d;
            best = j;
        }
    }
    return best;
}

double gini(std::span<const std::size_t> counts) {
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    if (total == 0.0) return 0.0;
    double sum_sq = 0.0;
    for (std::size_t c : counts) {
        const double f = static_cast<double>(c) / total;
        sum_sq += f * f;
    }
    return 1.0 - sum_sq;
}

DecisionTree tree_fit(const dataset::LabeledDataset& ds, const TreeParams& params) {
    if (params.min_leaf == 0) throw Error(ErrorKind::InvalidArgument, "min_leaf must be at least 1");
    std::vector<std::size_t> rows(ds.n());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    TreeBuilder builder(ds, params);
    builder.build(std::move(rows), 0);
    return DecisionTree{std::move(builder.nodes), ds.variable_names(), ds.group_names()};
}

std::size_t tree_classify(const DecisionTree& tree, std::span<const double> x) {
    std::size_t id = 0;
    while (!tree.nodes[id].leaf) {
        const TreeNode& node = tree.nodes[id];
        if (node.variable >= x.size()) throw Error(ErrorKind::DimensionMismatch, "observation length differs from p");
        id = x[node.variable] <= node.threshold ? node.left : node.right;
    }
    return tree.nodes[id].prediction;
}

std::size_t DecisionTree::depth() const { return nodes.empty() ? 0 : depth_from(*this, 0); }

std::size_t DecisionTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.leaf; }));
}

std::string DecisionTree::to_json() const { return node_json(*this, 0).dump(2); }

}  // namespace discrimlab::nonparam
