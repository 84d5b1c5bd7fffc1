#include "discrimlab/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "discrimlab/error.hpp"

namespace discrimlab::dataset {

namespace {

struct IrisRow {
    double v[4];
    int species;
};

constexpr IrisRow kIris[] = {
#include "iris_data.inc"
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV record. Double-quoted fields may contain commas; "" is an
// escaped quote.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw Error(ErrorKind::ParseError, "unterminated quote on line " + std::to_string(line_no));
    fields.push_back(trim(cur));
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no, const std::string& column) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line_no) + ", column '" + column + "': not a number: '" + text + "'");
    }
    return value;
}

std::string compose_unit(const std::string& a, const std::string& b, char op) {
    if (op == '/') {
        if (a == b) return "1";
        if (a.empty() && b.empty()) return "";
        return a + "/" + b;
    }
    if (a == b && !a.empty()) return a + "^2";
    if (a.empty() && b.empty()) return "";
    return a + "*" + b;
}

}  // namespace

LabeledDataset::LabeledDataset(Matrix observations, std::vector<std::size_t> labels,
                               std::vector<std::string> variable_names, std::vector<std::string> group_names,
                               std::vector<std::string> units)
    : observations_(std::move(observations)),
      labels_(std::move(labels)),
      variable_names_(std::move(variable_names)),
      group_names_(std::move(group_names)),
      units_(std::move(units)) {
    if (observations_.rows() == 0 || observations_.cols() == 0) {
        throw Error(ErrorKind::InvalidArgument, "dataset needs at least one row and one variable");
    }
    if (labels_.size() != observations_.rows()) throw Error(ErrorKind::LengthMismatch, "one label per row required");
    if (variable_names_.size() != observations_.cols()) {
        throw Error(ErrorKind::LengthMismatch, "one name per variable required");
    }
    if (units_.empty()) units_.assign(observations_.cols(), "");
    if (units_.size() != observations_.cols()) throw Error(ErrorKind::LengthMismatch, "one unit per variable required");
    if (group_names_.size() < 2) throw Error(ErrorKind::InvalidArgument, "at least two groups required");
    for (std::size_t label : labels_) {
        if (label >= group_names_.size()) throw Error(ErrorKind::IndexOutOfRange, "label refers to undeclared group");
    }
    for (double x : observations_.data()) {
        if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "observations must be finite");
    }
    const auto sizes = group_sizes();
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] == 0) throw Error(ErrorKind::EmptyGroup, "group '" + group_names_[j] + "' has no rows");
    }
}

std::vector<std::size_t> LabeledDataset::group_sizes() const {
    std::vector<std::size_t> sizes(group_names_.size(), 0);
    for (std::size_t label : labels_) ++sizes[label];
    return sizes;
}

Matrix LabeledDataset::group_rows(std::size_t group) const {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n(); ++i) {
        if (labels_[i] == group) rows.emplace_back(observations_.row(i).begin(), observations_.row(i).end());
    }
    if (rows.empty()) return Matrix(0, p());
    return Matrix::from_rows(rows);
}

LabeledDataset load_csv(std::istream& source, const std::string& label_column) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(source, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
            header = split_csv_line(line, line_no);
            break;
        }
    }
    if (header.empty()) throw Error(ErrorKind::ParseError, "missing header row");
    const auto label_it = std::find(header.begin(), header.end(), label_column);
    if (label_it == header.end()) throw Error(ErrorKind::MissingColumn, "no column named '" + label_column + "'");
    const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

    std::vector<std::string> variable_names;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != label_idx) variable_names.push_back(header[c]);
    if (variable_names.empty()) throw Error(ErrorKind::ParseError, "no numeric columns");

    std::vector<Vector> rows;
    std::vector<std::size_t> labels;
    std::vector<std::string> group_names;
    std::map<std::string, std::size_t> group_index;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line, line_no);
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + " has " +
                                                   std::to_string(fields.size()) + " fields, expected " +
                                                   std::to_string(header.size()));
        }
        Vector row;
        row.reserve(variable_names.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == label_idx) continue;
            row.push_back(parse_number(fields[c], line_no, header[c]));
        }
        const std::string& label = fields[label_idx];
        if (label.empty()) throw Error(ErrorKind::ParseError, "empty label on line " + std::to_string(line_no));
        auto [it, inserted] = group_index.try_emplace(label, group_names.size());
        if (inserted) group_names.push_back(label);
        labels.push_back(it->second);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::EmptyGroup, "no data rows");
    if (group_names.size() < 2) throw Error(ErrorKind::EmptyGroup, "at least two groups required");
    return LabeledDataset(Matrix::from_rows(rows), std::move(labels), std::move(variable_names),
                          std::move(group_names));
}

LabeledDataset load_csv_file(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    return load_csv(in, label_column);
}

const LabeledDataset& embedded_iris() {
    static const LabeledDataset iris = [] {
        constexpr std::size_t n = std::size(kIris);
        Matrix x(n, 4);
        std::vector<std::size_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t v = 0; v < 4; ++v) x(i, v) = kIris[i].v[v];
            labels[i] = static_cast<std::size_t>(kIris[i].species);
        }
        return LabeledDataset(std::move(x), std::move(labels),
                              {"sepal_length", "sepal_width", "petal_length", "petal_width"},
                              {"setosa", "versicolor", "virginica"}, {"cm", "cm", "cm", "cm"});
    }();
    return iris;
}

std::string iris_csv() {
    const auto& iris = embedded_iris();
    std::ostringstream out;
    out << "sepal_length,sepal_width,petal_length,petal_width,species\n";
    char buf[32];
    for (std::size_t i = 0; i < iris.n(); ++i) {
        for (std::size_t v = 0; v < iris.p(); ++v) {
            std::snprintf(buf, sizeof buf, "%.1f", iris.observations()(i, v));
            out << buf << ',';
        }
        out << iris.group_names()[iris.labels()[i]] << '\n';
    }
    return out.str();
}

std::size_t GroupStats::n() const noexcept {
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    return total;
}

Matrix GroupStats::group_sscp(std::size_t j) const {
    const double divisor = divisor_policy == DivisorPolicy::ml ? static_cast<double>(counts[j])
                                                               : static_cast<double>(counts[j]) - 1.0;
    return covariances[j] * divisor;
}

Matrix GroupStats::pooled_covariance() const {
    return within * (1.0 / (static_cast<double>(n()) - static_cast<double>(s())));
}

GroupStats group_stats(const LabeledDataset& ds, DivisorPolicy policy) {
    const std::size_t p = ds.p();
    const std::size_t s = ds.s();
    GroupStats st;
    st.divisor_policy = policy;
    st.group_names = ds.group_names();
    st.counts = ds.group_sizes();
    for (std::size_t j = 0; j < s; ++j) {
        if (st.counts[j] < 2) {
            throw Error(ErrorKind::DegenerateGroup, "group '" + ds.group_names()[j] + "' has fewer than 2 rows");
        }
    }

    st.means.assign(s, Vector(p, 0.0));
    st.grand_mean.assign(p, 0.0);
    const Matrix& x = ds.observations();
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const auto row = x.row(i);
        for (std::size_t v = 0; v < p; ++v) {
            st.means[ds.labels()[i]][v] += row[v];
            st.grand_mean[v] += row[v];
        }
    }
    for (std::size_t j = 0; j < s; ++j)
        for (double& m : st.means[j]) m /= static_cast<double>(st.counts[j]);
    for (double& m : st.grand_mean) m /= static_cast<double>(ds.n());

    std::vector<Matrix> sscp(s, Matrix(p, p));
    Vector d(p);
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const std::size_t j = ds.labels()[i];
        for (std::size_t v = 0; v < p; ++v) d[v] = x(i, v) - st.means[j][v];
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < p; ++b) sscp[j](a, b) += d[a] * d[b];
    }

    st.within = Matrix(p, p);
    st.between = Matrix(p, p);
    for (std::size_t j = 0; j < s; ++j) {
        st.within += sscp[j];
        Vector dm(p);
        for (std::size_t v = 0; v < p; ++v) dm[v] = st.means[j][v] - st.grand_mean[v];
        st.between += linalg::outer(dm, dm) * static_cast<double>(st.counts[j]);
        const double divisor = policy == DivisorPolicy::ml ? static_cast<double>(st.counts[j])
                                                           : static_cast<double>(st.counts[j]) - 1.0;
        st.covariances.push_back(sscp[j] * (1.0 / divisor));
    }
    return st;
}

Matrix total_sscp(const LabeledDataset& ds) {
    const std::size_t p = ds.p();
    Vector mean(p, 0.0);
    for (std::size_t i = 0; i < ds.n(); ++i)
        for (std::size_t v = 0; v < p; ++v) mean[v] += ds.observations()(i, v);
    for (double& m : mean) m /= static_cast<double>(ds.n());
    Matrix t(p, p);
    Vector d(p);
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t v = 0; v < p; ++v) d[v] = ds.observations()(i, v) - mean[v];
        t += linalg::outer(d, d);
    }
    return t;
}

LabeledDataset transform(const LabeledDataset& ds, const Transform& spec) {
    const auto check = [&](std::size_t idx) {
        if (idx >= ds.p()) {
            throw Error(ErrorKind::IndexOutOfRange, "variable index " + std::to_string(idx + 1) + " exceeds p = " +
                                                        std::to_string(ds.p()));
        }
    };
    const Matrix& x = ds.observations();
    const auto& names = ds.variable_names();
    const auto& units = ds.units();

    std::vector<std::string> new_names;
    std::vector<std::string> new_units;
    std::vector<std::vector<double>> columns;

    if (const auto* sel = std::get_if<Select>(&spec)) {
        if (sel->indices.empty()) throw Error(ErrorKind::InvalidArgument, "empty selection");
        for (std::size_t idx : sel->indices) {
            check(idx);
            new_names.push_back(names[idx]);
            new_units.push_back(units[idx]);
            columns.push_back(x.column(idx));
        }
    } else {
        const bool ratio = std::holds_alternative<Ratios>(spec);
        const auto& pairs = ratio ? std::get<Ratios>(spec).pairs : std::get<Products>(spec).pairs;
        if (pairs.empty()) throw Error(ErrorKind::InvalidArgument, "empty transform");
        const char op = ratio ? '/' : '*';
        for (const auto& [a, b] : pairs) {
            check(a);
            check(b);
            std::vector<double> col(ds.n());
            for (std::size_t i = 0; i < ds.n(); ++i) {
                if (ratio) {
                    if (x(i, b) == 0.0) {
                        throw Error(ErrorKind::DivisionByZero,
                                    "row " + std::to_string(i + 1) + ": '" + names[b] + "' is zero");
                    }
                    col[i] = x(i, a) / x(i, b);
                } else {
                    col[i] = x(i, a) * x(i, b);
                }
            }
            new_names.push_back(names[a] + op + names[b]);
            new_units.push_back(compose_unit(units[a], units[b], op));
            columns.push_back(std::move(col));
        }
    }

    Matrix out(ds.n(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t i = 0; i < ds.n(); ++i) out(i, c) = columns[c][i];
    return LabeledDataset(std::move(out), ds.labels(), std::move(new_names), ds.group_names(), std::move(new_units));
}

}  // namespace discrimlab::dataset
