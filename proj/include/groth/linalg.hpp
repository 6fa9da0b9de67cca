#pragma once

// Dense complex linear algebra for small matrices (d up to a few dozen).
//
// Everything here is a pure function of its arguments. Matrices are stored
// row-major as std::complex<double>; non-finite entries are rejected at the
// construction boundary.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace groth {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Raised for malformed or out-of-contract inputs (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative method exhausts its budget (CLI exit code 3).
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_iterate)
        : std::runtime_error(what), last_iterate_(last_iterate) {}

    double last_iterate() const noexcept { return last_iterate_; }

private:
    double last_iterate_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// Row-major entries; throws InputError on size mismatch or non-finite values.
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;

    Matrix adjoint() const;
    Matrix transpose() const;
    Complex trace() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex z);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex z) { return a *= z; }
    friend Matrix operator*(Complex z, Matrix a) { return a *= z; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, std::span<const Complex> x);

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Throws InputError if any entry is NaN or infinite.
void require_finite(const Matrix& m);
void require_square(const Matrix& m, const char* who);

double max_abs_diff(const Matrix& a, const Matrix& b);

// Vector helpers.
double norm(std::span<const Complex> x);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);  // sum conj(x_i) y_i
Vector scaled(std::span<const Complex> x, Complex z);

// Norms.
double norm_entrywise_l1(const Matrix& m);
double norm_frobenius(const Matrix& m);

/// True iff ||M M^+ - M^+ M||_F <= tol * (1 + ||M||_F^2).
bool is_normal(const Matrix& m, double tol = 1e-12);

struct PowerIterationOptions {
    int restarts = 10;
    int max_iterations = 20000;
    double relative_tolerance = 1e-14;
    unsigned long long seed = 0x5eed5eedULL;
};

/// Largest singular value by power iteration on M^+ M.
double largest_singular_value(const Matrix& m, const PowerIterationOptions& options = {});

/// All singular values (descending) by one-sided Jacobi; any shape.
std::vector<double> singular_values(const Matrix& m);

/// Numerical rank: singular values above rel_tol * largest.
std::size_t numerical_rank(const Matrix& m, double rel_tol = 1e-10);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // columns
    double residual = 0.0;            // ||H V - V diag(lambda)||_F
};

struct JacobiOptions {
    double hermitian_tolerance = 1e-12;
    double off_diagonal_tolerance = 1e-12;  // relative to ||H||_F
    int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
EigenDecomposition hermitian_eig(const Matrix& h, const JacobiOptions& options = {});

/// Group sorted eigenvalues into clusters within `tol`; returns (value, multiplicity).
std::vector<std::pair<double, int>> eigenvalue_multiplicities(std::span<const double> descending,
                                                              double tol = 1e-8);

// Standard constructors.
Matrix fourier_matrix(std::size_t d);
/// tau(i, j) = delta(pi(i), j); throws InputError if pi is not a bijection.
Matrix permutation_matrix(std::span<const std::size_t> pi);

}  // namespace groth
