#pragma once

// Generalized coherent states in C^d built from zero-diluted Fourier columns.
//
// Each of the d(d-1) states places the entries of one column of the
// (d-1)-point Fourier matrix on the d-1 positions other than a chosen zero
// position. The family resolves the identity with weight 1/(d-1) and the
// overlap matrix Pi_ij = <a_i|a_j>/(d-1) is a rank-d projector.
//
// d = 3 and d = 4 follow the reference layouts exactly (order and phases);
// other d use the d = 4 scheme. Families with d >= 5 are an extrapolation of
// the construction and are labelled as such in reports.

#include <cstddef>
#include <vector>

#include "groth/linalg.hpp"

namespace groth {

struct StateRecipe {
    std::size_t zero_position = 0;
    std::size_t fourier_column = 0;
    /// Column entries are written cyclically starting here, skipping zero_position.
    std::size_t start_position = 0;
};

struct StateFamily {
    std::size_t dim = 0;
    std::vector<Vector> states;
    std::vector<StateRecipe> recipe;

    std::size_t size() const noexcept { return states.size(); }
    bool conjectural() const noexcept { return dim >= 5; }
};

struct OverlapProjector {
    std::size_t dim_big = 0;
    Matrix matrix;
    std::size_t rank = 0;
};

struct IsotropyReport {
    bool isotropic = false;
    /// Sorted multiset {|<a_i|a_j>|^2}_j for each i.
    std::vector<std::vector<double>> overlap_multisets;
};

struct PermutationMapping {
    std::vector<std::size_t> permutation;
    std::size_t source = 0;
    std::size_t target = 0;
    Complex phase;
};

struct PermutationReport {
    bool invariant = false;
    std::size_t permutations_checked = 0;
    std::vector<PermutationMapping> mappings;
};

inline constexpr std::size_t kMaxPermutationCheckDim = 6;

StateFamily build_family(std::size_t d);
Vector state_from_recipe(std::size_t d, const StateRecipe& recipe);

/// ||(1/(d-1)) sum_i |a_i><a_i| - 1||_F
double resolution_check(const StateFamily& family);
IsotropyReport isotropy_check(const StateFamily& family, double tol = 1e-10);
PermutationReport permutation_invariance_check(const StateFamily& family, double tol = 1e-10);
double overlap_power_sum(const StateFamily& family, std::size_t i, int r);

/// f_i = <a_i|f>/(d-1); requires ||f|| = 1.
Vector expand_state(const StateFamily& family, std::span<const Complex> f);
/// sum_i f_i |a_i>
Vector reconstruct_state(const StateFamily& family, std::span<const Complex> coefficients);

OverlapProjector build_projector(const StateFamily& family);

/// Convenience: the projector of build_family(d).
Matrix coherent_projector(std::size_t d);

}  // namespace groth
