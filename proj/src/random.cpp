#include "groth/random.hpp"

#include <cmath>
#include <numbers>

namespace groth {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over (seed ^ golden * index)
    std::uint64_t z = seed ^ (index * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Complex complex_gaussian(Rng& rng) {
    std::normal_distribution<double> g;
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_gaussian(rng);
    return m;
}

Vector random_unit_vector(Rng& rng, std::size_t n) {
    Vector v(n);
    double nv = 0.0;
    while (nv == 0.0) {
        for (auto& z : v) z = complex_gaussian(rng);
        nv = norm(v);
    }
    for (auto& z : v) z /= nv;
    return v;
}

Vector random_torus_point(Rng& rng, std::size_t n) {
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    Vector t(n);
    for (auto& z : t) z = std::polar(1.0, phase(rng));
    return t;
}

Matrix random_unitary(Rng& rng, std::size_t n) {
    Matrix g = gaussian_matrix(rng, n, n);
    std::vector<Vector> q;
    q.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector col = g.column(j);
        // two passes of modified Gram-Schmidt for orthogonality at 1e-15
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : q) {
                const Complex proj = dot(prev, col);
                for (std::size_t i = 0; i < n; ++i) col[i] -= proj * prev[i];
            }
        }
        const double nc = norm(col);
        for (auto& z : col) z /= nc;
        q.push_back(std::move(col));
    }
    Matrix u(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) u(i, j) = q[j][i];
    return u;
}

Matrix random_hermitian(Rng& rng, std::size_t n) {
    Matrix g = gaussian_matrix(rng, n, n);
    Matrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

Matrix random_normal(Rng& rng, std::size_t n) {
    const Matrix u = random_unitary(rng, n);
    Vector diag(n);
    for (auto& z : diag) z = complex_gaussian(rng);
    return u * Matrix::diagonal(diag) * u.adjoint();
}

Matrix random_density(Rng& rng, std::size_t n) {
    const Matrix u = random_unitary(rng, n);
    std::normal_distribution<double> g;
    Vector p(n);
    double total = 0.0;
    while (total == 0.0) {
        total = 0.0;
        for (auto& z : p) {
            const double x = g(rng);
            z = x * x;
            total += x * x;
        }
    }
    for (auto& z : p) z /= total;
    Matrix rho = u * Matrix::diagonal(p) * u.adjoint();
    // exact Hermiticity
    for (std::size_t i = 0; i < n; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) rho(j, i) = std::conj(rho(i, j));
    }
    return rho;
}

Matrix random_projector(Rng& rng, std::size_t n, std::size_t rank) {
    const Matrix u = random_unitary(rng, n);
    Matrix p(n, n);
    for (std::size_t k = 0; k < rank && k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p(i, j) += u(i, k) * std::conj(u(j, k));
    return p;
}

}  // namespace groth
