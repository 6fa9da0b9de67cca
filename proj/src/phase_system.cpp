#include <cmath>
#include <numbers>

#include "groth/forms.hpp"

namespace groth {
namespace {

constexpr double kRankTolerance = 1e-10;

struct RealSystem {
    std::size_t n_eq = 0;
    std::size_t n_unknowns = 0;
    std::vector<std::pair<std::size_t, std::size_t>> entries;  // (i, j) of each nonzero theta_ij
    std::vector<double> rhs;                                   // principal arg(theta_ij)
};

Matrix coefficient_matrix(const RealSystem& sys, std::size_t d) {
    Matrix a(sys.n_eq, sys.n_unknowns);
    for (std::size_t r = 0; r < sys.n_eq; ++r) {
        a(r, sys.entries[r].first) = 1.0;
        a(r, d + sys.entries[r].second) = 1.0;
    }
    return a;
}

Matrix augmented_matrix(const Matrix& a, std::span<const double> rhs) {
    Matrix dmat(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) dmat(r, c) = a(r, c);
        dmat(r, a.cols()) = rhs[r];
    }
    return dmat;
}

// Minimum-norm least-squares solution x of A x = b via the eigendecomposition of A^T A.
std::vector<double> least_squares(const Matrix& a, std::span<const double> b) {
    const Matrix ata = a.adjoint() * a;
    const auto eig = hermitian_eig(ata);
    const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    Vector atb(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t r = 0; r < a.rows(); ++r) atb[c] += a(r, c).real() * b[r];
    std::vector<double> x(a.cols(), 0.0);
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        const double lam = eig.eigenvalues[k];
        if (lam <= kRankTolerance * kRankTolerance * top || lam <= 0.0) continue;
        Complex proj = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) proj += std::conj(eig.eigenvectors(c, k)) * atb[c];
        for (std::size_t c = 0; c < a.cols(); ++c) x[c] += (eig.eigenvectors(c, k) * proj / lam).real();
    }
    return x;
}

// Projector onto the orthogonal complement of range(A) (left null space), as a dense N x N matrix.
Matrix left_null_projector(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix p = Matrix::identity(n);
    const Matrix aat = a * a.adjoint();
    const auto eig = hermitian_eig(aat);
    const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        if (eig.eigenvalues[k] <= kRankTolerance * top) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) -= eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
    }
    return p;
}

}  // namespace

PhaseSystemResult phase_system_solvable(const Matrix& theta) {
    require_square(theta, "phase_system_solvable");
    require_finite(theta);
    const std::size_t d = theta.rows();

    PhaseSystemResult out;
    out.unknowns = 2 * d;
    out.l1_norm = norm_entrywise_l1(theta);

    RealSystem sys;
    sys.n_unknowns = 2 * d;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (theta(i, j) == Complex{}) continue;
            sys.entries.emplace_back(i, j);
            sys.rhs.push_back(std::arg(theta(i, j)));  // principal value in (-pi, pi]
        }
    }
    sys.n_eq = sys.entries.size();
    out.equations = sys.n_eq;

    std::vector<double> rhs = sys.rhs;
    if (sys.n_eq == 0) {
        out.solvable = true;
    } else {
        const Matrix a = coefficient_matrix(sys, d);
        out.rank_A = numerical_rank(a, kRankTolerance);
        out.rank_D = numerical_rank(augmented_matrix(a, rhs), kRankTolerance);
        out.solvable = out.rank_A == out.rank_D;

        if (!out.solvable && sys.n_eq <= kMaxShiftSearchEquations) {
            // The equations hold modulo 2*pi; try every right-hand side shift in {-1, 0, 1} * 2*pi.
            out.shift_search_used = true;
            const Matrix p = left_null_projector(a);
            const std::size_t n = sys.n_eq;
            Vector base(n);
            for (std::size_t r = 0; r < n; ++r) base[r] = rhs[r];
            const Vector pc = p * std::span<const Complex>(base);
            double rhs_scale = 1.0;
            for (double v : rhs) rhs_scale += std::abs(v);
            const double tol = 1e-9 * rhs_scale;

            std::vector<int> k(n, -1);
            Vector residual(n);
            bool found = false;
            while (!found) {
                for (std::size_t r = 0; r < n; ++r) {
                    Complex acc = pc[r];
                    for (std::size_t c = 0; c < n; ++c)
                        if (k[c] != 0) acc += p(r, c) * (2.0 * std::numbers::pi * k[c]);
                    residual[r] = acc;
                }
                if (norm(residual) <= tol) {
                    found = true;
                    break;
                }
                std::size_t pos = 0;
                while (pos < n && k[pos] == 1) k[pos++] = -1;
                if (pos == n) break;
                ++k[pos];
            }
            if (found) {
                out.solvable = true;
                out.shifts = k;
                for (std::size_t r = 0; r < n; ++r) rhs[r] += 2.0 * std::numbers::pi * k[r];
            }
        }
    }

    if (out.solvable) {
        out.chi.assign(d, 0.0);
        out.psi.assign(d, 0.0);
        if (sys.n_eq > 0) {
            const auto x = least_squares(coefficient_matrix(sys, d), rhs);
            for (std::size_t i = 0; i < d; ++i) {
                out.chi[i] = x[i];
                out.psi[i] = x[d + i];
            }
        }
        PolydiscTuple s{Vector(d), ConstraintKind::unit_disc};
        PolydiscTuple t{Vector(d), ConstraintKind::unit_disc};
        for (std::size_t i = 0; i < d; ++i) {
            s.values[i] = std::polar(1.0, -out.chi[i]);
            t.values[i] = std::polar(1.0, -out.psi[i]);
        }
        out.witness_value = eval_C(theta, s, t);
        out.witnesses = std::pair{std::move(s), std::move(t)};
    }
    return out;
}

}  // namespace groth
