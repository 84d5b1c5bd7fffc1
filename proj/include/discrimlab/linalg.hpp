#ifndef DISCRIMLAB_LINALG_HPP
#define DISCRIMLAB_LINALG_HPP

// Dense real linear algebra for small problems (p up to a few hundred).
// Row-major storage, value semantics.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace discrimlab::linalg {

using Vector = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Matrix outer(std::span<const double> a, std::span<const double> b);
// xᵀ A y
double quadratic_form(const Matrix& a, std::span<const double> x, std::span<const double> y);
double max_abs(const Matrix& a);
// Largest entrywise |a - b| divided by max(1, max|a|).
double relative_difference(const Matrix& a, const Matrix& b);
bool is_symmetric(const Matrix& a, double rel_tol = 1e-10);

struct EigenResult {
    Vector values;   // descending
    Matrix vectors;  // column k pairs with values[k]; unit Euclidean norm
};

// Lower-triangular L with L Lᵀ = a. Throws NotPositiveDefinite when a pivot
// falls below 1e-12 × max diagonal.
Matrix cholesky(const Matrix& a);

Matrix invert_spd(const Matrix& a);
Vector solve_spd(const Matrix& a, std::span<const double> b);
double log_det_spd(const Matrix& a);

// Forward/back substitution with a lower-triangular factor.
Vector solve_lower(const Matrix& l, std::span<const double> b);
Vector solve_lower_transpose(const Matrix& l, std::span<const double> b);

// Cyclic Jacobi. Eigenvectors are sign-fixed so that the first entry with
// magnitude above 1e-8 is positive.
EigenResult sym_eigen(const Matrix& a);

// Solves B v = λ W v for symmetric b and SPD w by reduction to
// L⁻¹ B L⁻ᵀ with W = L Lᵀ. Returned vectors have unit Euclidean norm and the
// sym_eigen sign convention.
EigenResult gen_eigen_spd(const Matrix& b, const Matrix& w);

// Sign convention shared by the eigensolvers.
void fix_sign_first_significant(std::span<double> v);

}  // namespace discrimlab::linalg

#endif  // DISCRIMLAB_LINALG_HPP
