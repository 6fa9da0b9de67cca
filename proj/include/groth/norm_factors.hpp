#pragma once

// Row-norm normalization N(M) = max_i ||row_i(M)|| and the unit set S_d = {N(M) <= 1}.

#include <vector>

#include "groth/linalg.hpp"

namespace groth {

inline constexpr double kSdMembershipTolerance = 1e-12;

struct NormReport {
    std::vector<double> row_norms;
    double n_factor = 0.0;
    double frobenius = 0.0;
    double lower_bound = 0.0;  // ||M||_2 / sqrt(d)
    double upper_bound = 0.0;  // ||M||_2, or the spectral radius when M is normal
    bool is_normal = false;
    bool in_S_d = false;
    bool lower_bound_tight = false;  // all row norms equal
    bool upper_bound_tight = false;  // single nonzero row (or diagonal, for normal M)
};

std::vector<double> row_norms(const Matrix& m);
double normalization_factor(const Matrix& m);
bool in_unit_S(const Matrix& m);

/// M / N(M); throws InputError for the zero matrix.
Matrix to_unit_S(const Matrix& m);

NormReport norm_report(const Matrix& m);

}  // namespace groth
