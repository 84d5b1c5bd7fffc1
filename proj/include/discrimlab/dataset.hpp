#ifndef DISCRIMLAB_DATASET_HPP
#define DISCRIMLAB_DATASET_HPP

#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "discrimlab/linalg.hpp"

namespace discrimlab::dataset {

using linalg::Matrix;
using linalg::Vector;

/// n×p observations with a group label per row.
///
/// Rows keep their input order; reports refer to rows by 1-based position.
/// Groups are indexed in declaration order (first appearance for CSV input).
class LabeledDataset {
public:
    LabeledDataset(Matrix observations, std::vector<std::size_t> labels, std::vector<std::string> variable_names,
                   std::vector<std::string> group_names, std::vector<std::string> units = {});

    const Matrix& observations() const noexcept { return observations_; }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }
    const std::vector<std::string>& variable_names() const noexcept { return variable_names_; }
    const std::vector<std::string>& group_names() const noexcept { return group_names_; }
    const std::vector<std::string>& units() const noexcept { return units_; }

    std::size_t n() const noexcept { return observations_.rows(); }
    std::size_t p() const noexcept { return observations_.cols(); }
    std::size_t s() const noexcept { return group_names_.size(); }

    std::vector<std::size_t> group_sizes() const;
    // Rows of one group, in dataset order.
    Matrix group_rows(std::size_t group) const;

private:
    Matrix observations_;
    std::vector<std::size_t> labels_;
    std::vector<std::string> variable_names_;
    std::vector<std::string> group_names_;
    std::vector<std::string> units_;
};

LabeledDataset load_csv(std::istream& source, const std::string& label_column);
LabeledDataset load_csv_file(const std::string& path, const std::string& label_column);

// Fisher's iris data: setosa rows 1–50, versicolor 51–100, virginica 101–150.
const LabeledDataset& embedded_iris();
// The same table rendered as CSV with a "species" label column.
std::string iris_csv();

enum class DivisorPolicy {
    ml,        // divide by n_j
    unbiased,  // divide by n_j - 1
};

struct GroupStats {
    std::vector<std::size_t> counts;
    std::vector<Vector> means;
    std::vector<Matrix> covariances;  // per divisor_policy
    Matrix within;                    // W, pooled within-group SSCP
    Matrix between;                   // B
    Vector grand_mean;
    DivisorPolicy divisor_policy = DivisorPolicy::unbiased;
    std::vector<std::string> group_names;

    std::size_t n() const noexcept;
    std::size_t p() const noexcept { return grand_mean.size(); }
    std::size_t s() const noexcept { return counts.size(); }
    // Within-group SSCP of group j, recovered from its covariance.
    Matrix group_sscp(std::size_t j) const;
    // W / (n - s).
    Matrix pooled_covariance() const;
};

GroupStats group_stats(const LabeledDataset& ds, DivisorPolicy policy = DivisorPolicy::unbiased);

// Total SSCP about the grand mean.
Matrix total_sscp(const LabeledDataset& ds);

struct Select {
    std::vector<std::size_t> indices;  // 0-based
};
struct Ratios {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // numerator, denominator (0-based)
};
struct Products {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};
using Transform = std::variant<Select, Ratios, Products>;

LabeledDataset transform(const LabeledDataset& ds, const Transform& spec);

}  // namespace discrimlab::dataset

#endif  // DISCRIMLAB_DATASET_HPP
