#ifndef DISCRIMLAB_TESTS_SUPPORT_HPP
#define DISCRIMLAB_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "discrimlab/dataset.hpp"
#include "discrimlab/linalg.hpp"

namespace testsupport {

using discrimlab::linalg::Matrix;
using discrimlab::linalg::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::normal_distribution<double> g;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = g(rng);
    return m;
}

inline Matrix random_spd(std::mt19937_64& rng, std::size_t n) {
    const Matrix a = random_matrix(rng, n, n);
    Matrix s = a * a.transpose();
    for (std::size_t i = 0; i < n; ++i) s(i, i) += static_cast<double>(n);
    return s;
}

inline Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    const Matrix a = random_matrix(rng, n, n);
    return (a + a.transpose()) * 0.5;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

// s groups of nj Gaussian rows with group-dependent shifts.
inline discrimlab::dataset::LabeledDataset random_groups(std::mt19937_64& rng, std::size_t p, std::size_t s,
                                                        std::size_t nj, double shift = 1.5) {
    Matrix x = random_matrix(rng, s * nj, p);
    std::vector<std::size_t> labels;
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < nj; ++i) {
            labels.push_back(j);
            for (std::size_t v = 0; v < p; ++v) x(j * nj + i, v) += shift * static_cast<double>((j + v) % 3);
        }
    std::vector<std::string> vars, groups;
    for (std::size_t v = 0; v < p; ++v) vars.push_back("v" + std::to_string(v + 1));
    for (std::size_t j = 0; j < s; ++j) groups.push_back("g" + std::to_string(j + 1));
    return discrimlab::dataset::LabeledDataset(x, labels, vars, groups);
}

}  // namespace testsupport

#endif  // DISCRIMLAB_TESTS_SUPPORT_HPP
