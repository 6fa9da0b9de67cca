#include "groth/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace groth {

Vector state_from_recipe(std::size_t d, const StateRecipe& recipe) {
    if (recipe.zero_position >= d || recipe.fourier_column + 1 >= d || recipe.start_position >= d) {
        throw InputError("state_from_recipe: recipe out of range");
    }
    const Matrix f = fourier_matrix(d - 1);
    Vector v(d);
    std::size_t pos = recipe.start_position;
    for (std::size_t m = 0; m + 1 < d; ++m) {
        if (pos == recipe.zero_position) pos = (pos + 1) % d;
        v[pos] = f(m, recipe.fourier_column);
        pos = (pos + 1) % d;
    }
    return v;
}

StateFamily build_family(std::size_t d) {
    if (d < 2) throw InputError("build_family: d must be >= 2");
    StateFamily family;
    family.dim = d;
    if (d == 3) {
        // Column-major layout with ascending placement: (1,1,0), (1,0,1), (0,1,1), (1,-1,0), ...
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t p = 3; p-- > 0;) family.recipe.push_back({p, k, p == 0 ? 1u : 0u});
    } else {
        // Blocks by zero position d-1, 0, 1, ..., d-2; entries written cyclically after the zero.
        for (std::size_t b = 0; b < d; ++b) {
            const std::size_t p = (d - 1 + b) % d;
            for (std::size_t k = 0; k + 1 < d; ++k) family.recipe.push_back({p, k, (p + 1) % d});
        }
    }
    family.states.reserve(family.recipe.size());
    for (const auto& r : family.recipe) family.states.push_back(state_from_recipe(d, r));
    return family;
}

double resolution_check(const StateFamily& family) {
    const std::size_t d = family.dim;
    Matrix sum(d, d);
    for (const auto& a : family.states)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) sum(i, j) += a[i] * std::conj(a[j]);
    sum *= 1.0 / static_cast<double>(d - 1);
    return norm_frobenius(sum - Matrix::identity(d));
}

IsotropyReport isotropy_check(const StateFamily& family, double tol) {
    IsotropyReport report;
    const std::size_t n = family.size();
    report.overlap_multisets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = report.overlap_multisets[i];
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.push_back(std::norm(dot(family.states[i], family.states[j])));
        std::sort(row.begin(), row.end());
    }
    report.isotropic = true;
    for (std::size_t i = 1; i < n && report.isotropic; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(report.overlap_multisets[i][j] - report.overlap_multisets[0][j]) > tol) {
                report.isotropic = false;
                break;
            }
    return report;
}

PermutationReport permutation_invariance_check(const StateFamily& family, double tol) {
    const std::size_t d = family.dim;
    if (d > kMaxPermutationCheckDim) {
        throw InputError("permutation_invariance_check: d = " + std::to_string(d) + " exceeds enumeration limit " +
                         std::to_string(kMaxPermutationCheckDim));
    }
    PermutationReport report;
    report.invariant = true;
    std::vector<std::size_t> pi(d);
    std::iota(pi.begin(), pi.end(), 0);
    do {
        ++report.permutations_checked;
        const Matrix tau = permutation_matrix(pi);
        for (std::size_t i = 0; i < family.size(); ++i) {
            const Vector x = tau * std::span<const Complex>(family.states[i]);
            bool matched = false;
            for (std::size_t j = 0; j < family.size() && !matched; ++j) {
                const Vector& a = family.states[j];
                const auto lead = std::find_if(a.begin(), a.end(), [&](Complex z) { return std::abs(z) > tol; });
                if (lead == a.end()) continue;
                const std::size_t m = static_cast<std::size_t>(lead - a.begin());
                const Complex c = x[m] / a[m];
                if (std::abs(std::abs(c) - 1.0) > tol) continue;
                bool same = true;
                for (std::size_t k = 0; k < d && same; ++k) same = std::abs(x[k] - c * a[k]) <= tol;
                if (same) {
                    matched = true;
                    report.mappings.push_back({pi, i, j, c});
                }
            }
            if (!matched) report.invariant = false;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return report;
}

double overlap_power_sum(const StateFamily& family, std::size_t i, int r) {
    if (i >= family.size()) throw InputError("overlap_power_sum: state index out of range");
    if (r < 1) throw InputError("overlap_power_sum: r must be positive");
    double s = 0.0;
    for (const auto& a : family.states) s += std::pow(std::abs(dot(family.states[i], a)), r);
    return s;
}

Vector expand_state(const StateFamily& family, std::span<const Complex> f) {
    if (f.size() != family.dim) throw InputError("expand_state: vector dimension mismatch");
    if (std::abs(norm(f) - 1.0) > 1e-10) throw InputError("expand_state: state must have unit norm");
    const double w = 1.0 / static_cast<double>(family.dim - 1);
    Vector coeffs(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) coeffs[i] = w * dot(family.states[i], f);
    return coeffs;
}

Vector reconstruct_state(const StateFamily& family, std::span<const Complex> coefficients) {
    if (coefficients.size() != family.size()) throw InputError("reconstruct_state: coefficient count mismatch");
    Vector f(family.dim);
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t k = 0; k < family.dim; ++k) f[k] += coefficients[i] * family.states[i][k];
    return f;
}

OverlapProjector build_projector(const StateFamily& family) {
    const std::size_t n = family.size();
    const double w = 1.0 / static_cast<double>(family.dim - 1);
    OverlapProjector out;
    out.dim_big = n;
    out.matrix = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = w * dot(family.states[i], family.states[j]);
    const auto eig = hermitian_eig(out.matrix);
    out.rank = static_cast<std::size_t>(
        std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(), [](double v) { return v > 0.5; }));
    return out;
}

Matrix coherent_projector(std::size_t d) { return build_projector(build_family(d)).matrix; }

}  // namespace groth
