#include "groth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace groth {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw InputError("matrix entries length " + std::to_string(data_.size()) +
                         " does not match rows*cols = " + std::to_string(rows_ * cols_));
    }
    require_finite(*this);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InputError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(*this);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex Matrix::trace() const {
    require_square(*this, "trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix difference: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(Complex z) {
    for (auto& v : data_) v *= z;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Vector operator*(const Matrix& a, std::span<const Complex> x) {
    if (a.cols_ != x.size()) throw InputError("matrix-vector product: shape mismatch");
    Vector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

void require_finite(const Matrix& m) {
    for (const auto& z : m.entries()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InputError("matrix contains a non-finite entry");
        }
    }
}

void require_square(const Matrix& m, const char* who) {
    if (!m.is_square()) {
        throw InputError(std::string(who) + ": square matrix required, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
    }
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    return worst;
}

double norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

Vector scaled(std::span<const Complex> x, Complex z) {
    Vector out(x.begin(), x.end());
    for (auto& v : out) v *= z;
    return out;
}

double norm_entrywise_l1(const Matrix& m) {
    require_finite(m);
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::abs(z);
    return s;
}

double norm_frobenius(const Matrix& m) {
    require_finite(m);
    return norm(m.entries());
}

bool is_normal(const Matrix& m, double tol) {
    require_square(m, "is_normal");
    const Matrix ma = m.adjoint();
    const Matrix commutator = m * ma - ma * m;
    const double f = norm_frobenius(m);
    return norm_frobenius(commutator) <= tol * (1.0 + f * f);
}

double largest_singular_value(const Matrix& m, const PowerIterationOptions& options) {
    require_square(m, "largest_singular_value");
    require_finite(m);
    const std::size_t n = m.rows();
    const Matrix gram = m.adjoint() * m;
    if (norm(gram.entries()) == 0.0) return 0.0;

    double best = -1.0;
    double last = 0.0;
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        Vector v(n);
        for (auto& z : v) z = {gauss(rng), gauss(rng)};
        const double v0 = norm(v);
        for (auto& z : v) z /= v0;

        double previous = -1.0;
        bool converged = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            Vector w = gram * std::span<const Complex>(v);
            const double rayleigh = dot(v, w).real();
            const double wn = norm(w);
            last = rayleigh;
            if (wn == 0.0) {
                converged = true;
                break;
            }
            for (auto& z : w) z /= wn;
            v = std::move(w);
            if (previous >= 0.0 && std::abs(rayleigh - previous) <= options.relative_tolerance * rayleigh) {
                converged = true;
                break;
            }
            previous = rayleigh;
        }
        if (converged) best = std::max(best, last);
    }
    if (best < 0.0) {
        throw ConvergenceError("largest_singular_value: power iteration did not converge",
                               std::sqrt(std::max(0.0, last)));
    }
    return std::sqrt(std::max(0.0, best));
}

std::vector<double> singular_values(const Matrix& m) {
    require_finite(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    // Columns of a working copy are rotated pairwise until mutually orthogonal.
    std::vector<Vector> c(cols, Vector(rows));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) c[j][i] = m(i, j);

    // Pairs count as orthogonal at a relative level of a few ulps per row, or when both
    // columns are rounding noise next to the whole matrix.
    const double eps = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(rows, 1));
    const double fro = norm_frobenius(m);
    const double floor = 1e-30 * fro * fro;
    constexpr int max_sweeps = 100;
    bool rotated = true;
    for (int sweep = 0; sweep < max_sweeps && rotated; ++sweep) {
        rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double alpha = std::norm(norm(c[p]));
                const double beta = std::norm(norm(c[q]));
                const Complex gamma = dot(c[p], c[q]);
                const double g = std::abs(gamma);
                if (g <= floor || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = std::conj(gamma) / g;  // makes <c_p, phase*c_q> = |gamma|
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const Complex u = c[p][i];
                    const Complex v = phase * c[q][i];
                    c[p][i] = cs * u - sn * v;
                    c[q][i] = sn * u + cs * v;
                }
            }
        }
    }
    if (rotated) throw ConvergenceError("singular_values: one-sided Jacobi did not converge", 0.0);
    std::vector<double> s(cols);
    for (std::size_t j = 0; j < cols; ++j) s[j] = norm(c[j]);
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
    if (m.empty()) return 0;
    const auto s = singular_values(m);
    if (s.empty() || s.front() == 0.0) return 0;
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](double v) { return v > rel_tol * s.front(); }));
}

EigenDecomposition hermitian_eig(const Matrix& h_in, const JacobiOptions& options) {
    require_square(h_in, "hermitian_eig");
    require_finite(h_in);
    const std::size_t n = h_in.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(h_in(i, j) - std::conj(h_in(j, i))) > options.hermitian_tolerance) {
                throw InputError("hermitian_eig: matrix is not Hermitian");
            }
        }
    }

    Matrix h = h_in;
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = avg;
            h(j, i) = std::conj(avg);
        }
    }
    Matrix v = Matrix::identity(n);
    const double scale = norm_frobenius(h);

    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(h(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; off_diagonal() > options.off_diagonal_tolerance * scale; ++sweep) {
        if (sweep >= options.max_sweeps) {
            throw ConvergenceError("hermitian_eig: Jacobi sweeps exhausted", off_diagonal());
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = h(p, q);
                const double mag = std::abs(b);
                if (mag == 0.0) continue;
                const double a = h(p, p).real();
                const double c = h(q, q).real();
                const Complex phase = std::conj(b) / mag;  // e^{-i arg b}
                const double zeta = (c - a) / (2.0 * mag);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                // G restricted to (p,q): [[cs, sn], [-phase*sn, phase*cs]]; H <- G^+ H G, V <- V G.
                const Complex g_pp = cs, g_pq = sn, g_qp = -phase * sn, g_qq = phase * cs;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hkp = h(k, p), hkq = h(k, q);
                    h(k, p) = hkp * g_pp + hkq * g_qp;
                    h(k, q) = hkp * g_pq + hkq * g_qq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hpk = h(p, k), hqk = h(q, k);
                    h(p, k) = std::conj(g_pp) * hpk + std::conj(g_qp) * hqk;
                    h(q, k) = std::conj(g_pq) * hpk + std::conj(g_qq) * hqk;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * g_pp + vkq * g_qp;
                    v(k, q) = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return h(x, x).real() > h(y, y).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    Matrix lambda(n, n);
    for (std::size_t k = 0; k < n; ++k) lambda(k, k) = out.eigenvalues[k];
    out.residual = norm_frobenius(h_in * out.eigenvectors - out.eigenvectors * lambda);
    return out;
}

std::vector<std::pair<double, int>> eigenvalue_multiplicities(std::span<const double> descending, double tol) {
    std::vector<std::pair<double, int>> clusters;
    for (double v : descending) {
        if (!clusters.empty() && std::abs(clusters.back().first - v) <= tol) {
            ++clusters.back().second;
        } else {
            clusters.emplace_back(v, 1);
        }
    }
    return clusters;
}

Matrix fourier_matrix(std::size_t d) {
    if (d == 0) throw InputError("fourier_matrix: d must be >= 1");
    Matrix f(d, d);
    const double inv = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            // Reduce the exponent first so large i*j keeps full phase accuracy.
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * j) % d) / static_cast<double>(d);
            f(i, j) = std::polar(inv, angle);
        }
    }
    return f;
}

Matrix permutation_matrix(std::span<const std::size_t> pi) {
    const std::size_t n = pi.size();
    std::vector<bool> hit(n, false);
    for (std::size_t v : pi) {
        if (v >= n || hit[v]) throw InputError("permutation_matrix: input is not a bijection");
        hit[v] = true;
    }
    Matrix tau(n, n);
    for (std::size_t i = 0; i < n; ++i) tau(i, pi[i]) = 1.0;
    return tau;
}

}  // namespace groth
