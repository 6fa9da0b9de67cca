#pragma once

// Reproducible numerical experiments on the coherent-state projectors and on
// random matrix ensembles. Every randomized routine takes an explicit seed and
// is deterministic for a given (seed, configuration).

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include <json.hpp>

#include "groth/forms.hpp"

namespace groth {

struct ExperimentRecord {
    std::string name;
    nlohmann::json parameters = nlohmann::json::object();
    double q_value = 0.0;
    Region region = Region::classical;
    nlohmann::json diagnostics = nlohmann::json::object();
};

/// theta = lambda * Pi_6, V = W = sqrt(2) * Pi_6. Requires 0 < lambda <= 1/5.
ExperimentRecord run_h6(double lambda, const OptimizerConfig& config = {});

/// theta = lambda * Pi_12, V = W = sqrt(3) * Pi_12. Requires 0 < lambda <= 1 / g_lower(Pi_12).
ExperimentRecord run_h12(double lambda, const OptimizerConfig& config = {});

/// Two independent maximizations of the classical form of Pi_6: the general
/// torus search and a coordinate search over t_j = R_j exp(i chi_j) of
/// ||sum_j t_j a_j||^2 = (A^2 + B^2 + C^2) / 2, whose maximum is 2 g(Pi_6).
struct Pi6Certificate {
    OptimizerRun general;
    double specialized_max = 0.0;     // max of (A^2 + B^2 + C^2) / 2
    Vector specialized_witness;       // t achieving it
    std::array<double, 3> all_ones_abc{};
    double all_ones_objective = 0.0;  // t = (1,1,1,1,1,1)
    double flipped_objective = 0.0;   // t_5 = -1, others 1
    double all_ones_g = 0.0;          // torus objective of Pi_6 at t = all ones
    double agreement = 0.0;           // |specialized_max / 2 - general.best_value|
};

/// Throws std::logic_error when the two routes disagree by more than 1e-6.
Pi6Certificate certify_g_pi6(int starts, std::uint64_t seed);

/// (A, B, C) for a 6-tuple t.
std::array<double, 3> pi6_abc(std::span<const Complex> t);
double pi6_specialized_objective(std::span<const Complex> t);

/// Displacement operator D(a, b) = omega^{-a b / 2} X^a Z^b on Z_d, d odd.
Matrix displacement_operator(std::size_t d, std::size_t a, std::size_t b);

ExperimentRecord run_bounded_demo(std::size_t d, int samples, std::uint64_t seed);

enum class Ensemble { scaled_projector, random_normal, random_general };
enum class Scaling { certified, estimated };

std::string to_string(Ensemble e);
std::string to_string(Scaling s);
Ensemble parse_ensemble(const std::string& name);
Scaling parse_scaling(const std::string& name);

struct RarityConfig {
    Ensemble ensemble = Ensemble::random_normal;
    int samples = 100;
    std::uint64_t seed = 0;
    int starts = 16;
    /// certified: theta = M / g_upper(M), so theta is provably in G_d.
    /// estimated: theta = M / g_lower(M), membership in G_d rests on the optimizer.
    Scaling scaling = Scaling::certified;
};

struct RarityStats {
    std::string ensemble;
    std::string scaling;
    int samples = 0;
    int count_in_region = 0;
    int count_exceeds = 0;
    double fraction = 0.0;
    double max_q_seen = 0.0;
    int max_q_sample = -1;
    std::uint64_t seed = 0;
    int starts = 0;
};

/// Runs the sampling study; `sink` receives one JSON object per sample, in sample order.
RarityStats run_rarity(const RarityConfig& config,
                       const std::function<void(const nlohmann::json&)>& sink = {});

}  // namespace groth
