#pragma once

// Classical and quantum bilinear forms of a d x d matrix theta:
//
//   C(s, t) = | sum_ij theta_ij s_i t_j |            s, t in the polydisc (|s_i| <= 1)
//   Q(u, v) = | sum_ij theta_ij <u_i | v_j> |         u_i, v_j in the unit ball of C^d
//
// g(theta) is the supremum of C over the polydisc and g'(theta) the supremum over
// the radius-sqrt(d) ball. g' = d * s_max exactly; g is only bracketed here:
// from below by multistart search with explicit witnesses and from above by
// min(||theta||_1, d * s_max).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groth/linalg.hpp"

namespace groth {

/// Published upper bound of the complex Grothendieck constant.
inline constexpr double kGrothendieckUpper = 1.4049;
inline constexpr double kConstraintSlack = 1e-12;

enum class ConstraintKind { unit_disc, ball_d };

struct PolydiscTuple {
    Vector values;
    ConstraintKind kind = ConstraintKind::unit_disc;

    bool feasible() const;
};

/// Vectors lambda_i |u_i> stored as unit (or zero) vectors plus scales in [0, 1].
struct VectorTuple {
    std::vector<Vector> vectors;
    std::vector<double> scales;

    bool feasible() const;
};

struct OptimizerConfig {
    int starts = 64;
    std::uint64_t seed = 0;
    int max_iterations = 500;  // coordinate sweeps (classical) or alternations (quantum) per start
    double phase_tolerance = 1e-10;
};

/// Result of a classical (polydisc) maximization.
struct OptimizerRun {
    OptimizerConfig config;
    double best_value = 0.0;
    PolydiscTuple best_s;
    PolydiscTuple best_t;
    std::size_t best_start = 0;
    double converged_fraction = 0.0;
    std::vector<double> start_values;  // per-start converged objective, in start order
};

/// Result of a quantum (unit-ball vectors) maximization.
struct QuantumRun {
    OptimizerConfig config;
    double best_value = 0.0;
    VectorTuple best_u;  // row vectors of W
    VectorTuple best_v;  // row vectors of V
    std::size_t best_start = 0;
    double converged_fraction = 0.0;
    std::vector<double> start_values;
};

double eval_C(const Matrix& theta, const PolydiscTuple& s, const PolydiscTuple& t);
double eval_Q(const Matrix& theta, const VectorTuple& u, const VectorTuple& v);
/// |Tr(theta V W^+)|
double eval_Q_trace(const Matrix& theta, const Matrix& v, const Matrix& w);

/// sum_i |(theta t)_i|: the classical form with s eliminated at its optimum.
double torus_objective(const Matrix& theta, std::span<const Complex> t);

double g_prime(const Matrix& theta);
double g_upper(const Matrix& theta);
OptimizerRun g_lower(const Matrix& theta, const OptimizerConfig& config = {});

/// Lower bound on sup Q by alternating maximization. Start 0 embeds the classical
/// witness (scalars as parallel vectors) so the result never falls below it.
QuantumRun max_Q_lower(const Matrix& theta, const OptimizerConfig& config = {});
QuantumRun max_Q_lower(const Matrix& theta, const OptimizerConfig& config, const OptimizerRun& classical);

enum class Membership { certified_yes, certified_no, unknown };
std::string to_string(Membership m);

struct GClassification {
    double g_lower = 0.0;
    double g_upper = 0.0;
    double g_prime = 0.0;
    double l1_norm = 0.0;
    double frobenius = 0.0;
    double max_abs_entry = 0.0;
    bool in_G_prime = false;
    Membership in_G = Membership::unknown;
    bool region_necessary_condition = false;  // g(theta) <= 1 < ||theta||_1 still possible
    bool prime_necessary_conditions = false;  // |theta_ij| <= 1/d, ||theta||_1 <= d, ||theta||_2 <= 1
    bool g_necessary_conditions = false;      // |theta_ij| <= 1, ||theta||_1 <= d^2, ||theta||_2 <= d
    std::optional<std::pair<PolydiscTuple, PolydiscTuple>> witnesses;
    OptimizerRun run;
};

GClassification classify(const Matrix& theta, const OptimizerConfig& config = {});

/// Rouche-Capelli test of phi_ij = chi_i + psi_j over the nonzero entries of theta.
struct PhaseSystemResult {
    bool solvable = false;
    std::size_t equations = 0;  // N, number of nonzero entries
    std::size_t unknowns = 0;   // 2d
    std::size_t rank_A = 0;     // for the principal-value right-hand side
    std::size_t rank_D = 0;
    bool shift_search_used = false;
    std::vector<int> shifts;  // multiples of 2*pi added per equation, when a shift was needed
    std::vector<double> chi;
    std::vector<double> psi;
    double l1_norm = 0.0;
    double witness_value = 0.0;  // C at s_i = exp(-i chi_i), t_j = exp(-i psi_j)
    std::optional<std::pair<PolydiscTuple, PolydiscTuple>> witnesses;
};

inline constexpr std::size_t kMaxShiftSearchEquations = 12;

PhaseSystemResult phase_system_solvable(const Matrix& theta);

enum class Region { classical, grothendieck, exceeds };
std::string to_string(Region r);
Region kg_region_check(double q_value);

}  // namespace groth
