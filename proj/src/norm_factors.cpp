#include "groth/norm_factors.hpp"

#include <algorithm>
#include <cmath>

namespace groth {

std::vector<double> row_norms(const Matrix& m) {
    require_finite(m);
    std::vector<double> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = norm(m.row(i));
    return out;
}

double normalization_factor(const Matrix& m) {
    const auto r = row_norms(m);
    return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

bool in_unit_S(const Matrix& m) { return normalization_factor(m) <= 1.0 + kSdMembershipTolerance; }

Matrix to_unit_S(const Matrix& m) {
    const double n = normalization_factor(m);
    if (n == 0.0) throw InputError("to_unit_S: zero matrix has no normalization");
    return m * Complex(1.0 / n);
}

NormReport norm_report(const Matrix& m) {
    require_square(m, "norm_report");
    NormReport r;
    r.row_norms = row_norms(m);
    r.n_factor = r.row_norms.empty() ? 0.0 : *std::max_element(r.row_norms.begin(), r.row_norms.end());
    r.frobenius = norm_frobenius(m);
    r.lower_bound = r.frobenius / std::sqrt(static_cast<double>(m.rows()));
    r.is_normal = is_normal(m, 1e-10);
    r.upper_bound = r.is_normal ? largest_singular_value(m) : r.frobenius;
    r.in_S_d = r.n_factor <= 1.0 + kSdMembershipTolerance;

    const double lo = *std::min_element(r.row_norms.begin(), r.row_norms.end());
    r.lower_bound_tight = (r.n_factor - lo) <= 1e-10 * (1.0 + r.n_factor);

    const auto nonzero_rows = std::count_if(r.row_norms.begin(), r.row_norms.end(), [](double v) { return v > 0.0; });
    bool diagonal = true;
    for (std::size_t i = 0; i < m.rows() && diagonal; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != Complex{}) {
                diagonal = false;
                break;
            }
    r.upper_bound_tight = nonzero_rows <= 1 || (r.is_normal && diagonal);
    return r;
}

}  // namespace groth
