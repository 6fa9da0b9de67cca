#include "groth/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "groth/coherent.hpp"
#include "groth/norm_factors.hpp"
#include "groth/random.hpp"

namespace groth {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double von_neumann_entropy(const Matrix& rho) {
    double e = 0.0;
    for (double p : hermitian_eig(rho, {.hermitian_tolerance = 1e-10}).eigenvalues)
        if (p > 1e-15) e -= p * std::log(p);
    return e;
}

Matrix hermitian_part(const Matrix& m) {
    Matrix h = m + m.adjoint();
    h *= 0.5;
    return h;
}

Membership scaled_membership(double lambda, double g_low, double g_up) {
    if (lambda * g_up <= 1.0) return Membership::certified_yes;
    if (lambda * g_low > 1.0 + 1e-9) return Membership::certified_no;
    return Membership::unknown;
}

// Shared body of the coherent-projector experiments: theta = lambda Pi, V = W = Pi / N(Pi).
ExperimentRecord projector_experiment(const std::string& name, std::size_t d, double lambda,
                                      const OptimizerRun& pi_run, const Matrix& pi) {
    const auto start = Clock::now();
    const std::size_t n = pi.rows();
    const Matrix v = to_unit_S(pi);
    const Matrix theta = pi * Complex(lambda);

    ExperimentRecord rec;
    rec.name = name;
    rec.parameters = {{"lambda", lambda}, {"d", d}, {"dim", n}, {"seed", pi_run.config.seed},
                      {"starts", pi_run.config.starts}};
    rec.q_value = eval_Q_trace(theta, v, v);
    rec.region = kg_region_check(rec.q_value);

    const double closed_form = static_cast<double>(n) * lambda;
    const double g_low = pi_run.best_value;
    const double g_up = g_upper(pi);
    const double g_pr = g_prime(pi);
    const bool in_prime = lambda * g_pr <= 1.0 + 1e-10;
    const Membership in_g = scaled_membership(lambda, g_low, g_up);

    const Matrix rho = hermitian_part(v * v.adjoint()) * Complex(1.0 / static_cast<double>(n));
    const double purity = (rho * rho).trace().real();

    rec.diagnostics = {
        {"closed_form_q", closed_form},
        {"closed_form_deviation", std::abs(rec.q_value - closed_form)},
        {"n_factor_pi", normalization_factor(pi)},
        {"g_lower_pi", g_low},
        {"g_upper_pi", g_up},
        {"g_prime_pi", g_pr},
        {"lambda_G_prime_max", 1.0 / g_pr},
        {"lambda_G_max_estimate", 1.0 / g_low},
        {"theta_in_G_prime", in_prime},
        {"theta_in_G", to_string(in_g)},
        {"grothendieck_bound_applies", in_g != Membership::certified_no},
        {"density_purity", purity},
        {"density_entropy", von_neumann_entropy(rho)},
        {"runtime_ms", elapsed_ms(start)},
    };
    return rec;
}

std::string bracket_message(double g_low, double g_up) {
    std::ostringstream os;
    os.precision(12);
    os << "optimizer bracket for g(Pi) = [" << g_low << ", " << g_up << "]";
    return os.str();
}

}  // namespace

ExperimentRecord run_h6(double lambda, const OptimizerConfig& config) {
    const Matrix pi = coherent_projector(3);
    const OptimizerRun run = g_lower(pi, config);
    if (!(lambda > 0.0) || lambda > 0.2 + 1e-15) {
        throw InputError("h6: lambda must lie in (0, 1/5]; " + bracket_message(run.best_value, g_upper(pi)));
    }
    return projector_experiment("h6", 3, lambda, run, pi);
}

ExperimentRecord run_h12(double lambda, const OptimizerConfig& config) {
    const Matrix pi = coherent_projector(4);
    const OptimizerRun run = g_lower(pi, config);
    const double limit = 1.0 / run.best_value;
    if (!(lambda > 0.0) || lambda > limit * (1.0 + 1e-12)) {
        std::ostringstream os;
        os.precision(12);
        os << "h12: lambda must lie in (0, 1/g_lower(Pi)] = (0, " << limit << "]; ";
        throw InputError(os.str() + bracket_message(run.best_value, g_upper(pi)));
    }
    return projector_experiment("h12", 4, lambda, run, pi);
}

std::array<double, 3> pi6_abc(std::span<const Complex> t) {
    if (t.size() != 6) throw InputError("pi6_abc: expected 6 components");
    return {std::abs(t[0] + t[1] + t[3] + t[4]), std::abs(t[0] + t[2] - t[3] + t[5]),
            std::abs(t[1] + t[2] - t[4] - t[5])};
}

double pi6_specialized_objective(std::span<const Complex> t) {
    const auto [a, b, c] = pi6_abc(t);
    return 0.5 * (a * a + b * b + c * c);
}

Pi6Certificate certify_g_pi6(int starts, std::uint64_t seed) {
    if (starts < 1) throw InputError("certify_g_pi6: starts must be >= 1");
    Pi6Certificate cert;
    const Matrix pi = coherent_projector(3);
    cert.general = g_lower(pi, {.starts = starts, .seed = seed});

    // Sign pattern of t_j in A, B, C.
    constexpr double coeff[3][6] = {{1, 1, 0, 1, 1, 0}, {1, 0, 1, -1, 0, 1}, {0, 1, 1, 0, -1, -1}};
    double best = -1.0;
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    for (int k = 0; k < starts; ++k) {
        Vector t(6);
        if (k == 0) {
            for (auto& z : t) z = std::polar(0.5, 0.5);  // R_j = 0.5, chi_j = 0.5
        } else {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
            for (auto& z : t) {
                const double r = radius(rng);
                z = std::polar(r, phase(rng));
            }
        }
        double value = pi6_specialized_objective(t);
        for (int sweep = 0; sweep < 1000; ++sweep) {
            const double before = value;
            for (int j = 0; j < 6; ++j) {
                // With the other variables fixed the objective is |beta| * 2R cos(...) + R^2 n_j + const:
                // optimal chi aligns with conj(beta) and optimal R is the endpoint 1.
                Complex beta = 0.0;
                for (int r = 0; r < 3; ++r) {
                    Complex rest = 0.0;
                    for (int m = 0; m < 6; ++m)
                        if (m != j) rest += coeff[r][m] * t[static_cast<std::size_t>(m)];
                    beta += coeff[r][j] * std::conj(rest);
                }
                const Complex candidate = std::abs(beta) == 0.0 ? Complex{1.0, 0.0} : std::conj(beta) / std::abs(beta);
                const Complex old = t[static_cast<std::size_t>(j)];
                t[static_cast<std::size_t>(j)] = candidate;
                const double trial = pi6_specialized_objective(t);
                if (trial >= value) {
                    value = trial;
                } else {
                    t[static_cast<std::size_t>(j)] = old;
                }
            }
            if (value - before <= 1e-13 * std::max(1.0, value)) break;
        }
        if (value > best) {
            best = value;
            cert.specialized_witness = t;
        }
    }
    cert.specialized_max = best;

    const Vector ones(6, Complex{1.0, 0.0});
    Vector flipped = ones;
    flipped[5] = -1.0;
    cert.all_ones_abc = pi6_abc(ones);
    cert.all_ones_objective = pi6_specialized_objective(ones);
    cert.flipped_objective = pi6_specialized_objective(flipped);
    cert.all_ones_g = torus_objective(pi, ones);
    cert.agreement = std::abs(0.5 * cert.specialized_max - cert.general.best_value);
    if (cert.agreement > 1e-6) {
        std::ostringstream os;
        os.precision(15);
        os << "certify_g_pi6: routes disagree: specialized/2 = " << 0.5 * cert.specialized_max
           << ", general = " << cert.general.best_value;
        throw std::logic_error(os.str());
    }
    return cert;
}

Matrix displacement_operator(std::size_t d, std::size_t a, std::size_t b) {
    if (d < 3 || d % 2 == 0) throw InputError("displacement_operator: d must be odd and >= 3");
    const std::size_t inv2 = (d + 1) / 2;
    const std::size_t phase_exp = (d - (inv2 * (a % d) % d) * (b % d) % d) % d;
    const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
    Matrix out(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        // X^a Z^b |j> = omega^{b j} |j + a>
        const std::size_t e = (phase_exp + (b % d) * j) % d;
        out((j + a) % d, j) = std::polar(1.0, w * static_cast<double>(e));
    }
    return out;
}

ExperimentRecord run_bounded_demo(std::size_t d, int samples, std::uint64_t seed) {
    if (d < 2) throw InputError("bounded: d must be >= 2");
    if (samples < 1) throw InputError("bounded: samples must be >= 1");
    const auto start = Clock::now();

    double max_trace = 0.0;
    double min_rrr_bound = std::numeric_limits<double>::infinity();
    double max_weyl = 0.0;
    int rrr_not_tighter = 0;
    for (int k = 0; k < samples; ++k) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
        const Matrix rho = random_density(rng, d);
        const Matrix u = random_unitary(rng, d);
        const double q = std::abs((rho * u).trace());
        max_trace = std::max(max_trace, q);

        const double e_max = hermitian_eig(rho, {.hermitian_tolerance = 1e-10}).eigenvalues.front();
        const double rrr = std::min(static_cast<double>(d) * e_max * kGrothendieckUpper, norm_entrywise_l1(rho));
        min_rrr_bound = std::min(min_rrr_bound, rrr);
        if (rrr < 1.0 - 1e-12) ++rrr_not_tighter;

        if (d % 2 == 1) {
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    max_weyl = std::max(max_weyl, std::abs((rho * displacement_operator(d, a, b)).trace()));
        }
    }
    const double q = std::max(max_trace, max_weyl);
    if (q > 1.0 + 1e-12) throw std::logic_error("bounded: |Tr(rho U)| exceeded 1");

    ExperimentRecord rec;
    rec.name = "bounded";
    rec.parameters = {{"d", d}, {"samples", samples}, {"seed", seed}};
    rec.q_value = q;
    rec.region = kg_region_check(q);
    rec.diagnostics = {
        {"max_abs_trace_rho_u", max_trace},
        {"max_abs_weyl", d % 2 == 1 ? nlohmann::json(max_weyl) : nlohmann::json(nullptr)},
        {"weyl_checked", d % 2 == 1},
        {"min_grothendieck_side_bound", min_rrr_bound},
        {"bound_one_is_tighter", rrr_not_tighter == 0},
        {"runtime_ms", elapsed_ms(start)},
    };
    return rec;
}

std::string to_string(Ensemble e) {
    switch (e) {
        case Ensemble::scaled_projector: return "scaled_projector";
        case Ensemble::random_normal: return "random_normal";
        case Ensemble::random_general: return "random_general";
    }
    return "random_normal";
}

std::string to_string(Scaling s) { return s == Scaling::certified ? "certified" : "estimated"; }

Ensemble parse_ensemble(const std::string& name) {
    if (name == "scaled_projector") return Ensemble::scaled_projector;
    if (name == "random_normal") return Ensemble::random_normal;
    if (name == "random_general") return Ensemble::random_general;
    throw InputError("unknown ensemble '" + name + "' (expected scaled_projector, random_normal, random_general)");
}

Scaling parse_scaling(const std::string& name) {
    if (name == "certified") return Scaling::certified;
    if (name == "estimated") return Scaling::estimated;
    throw InputError("unknown scaling '" + name + "' (expected certified or estimated)");
}

namespace {

Matrix draw_sample(Ensemble ensemble, int index, Rng& rng) {
    std::uniform_int_distribution<std::size_t> dim(2, 5);
    switch (ensemble) {
        case Ensemble::scaled_projector: {
            if (index == 0) return coherent_projector(3);
            if (index == 1) return coherent_projector(4);
            const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
            const std::size_t r = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
            return random_projector(rng, d, r);
        }
        case Ensemble::random_normal: return random_normal(rng, dim(rng));
        case Ensemble::random_general: {
            const std::size_t d = dim(rng);
            return gaussian_matrix(rng, d, d);
        }
    }
    return {};
}

}  // namespace

RarityStats run_rarity(const RarityConfig& config, const std::function<void(const nlohmann::json&)>& sink) {
    if (config.samples < 1) throw InputError("rarity: samples must be >= 1");
    if (config.starts < 1) throw InputError("rarity: starts must be >= 1");

    RarityStats stats;
    stats.ensemble = to_string(config.ensemble);
    stats.scaling = to_string(config.scaling);
    stats.samples = config.samples;
    stats.seed = config.seed;
    stats.starts = config.starts;

    for (int k = 0; k < config.samples; ++k) {
        const std::uint64_t sample_seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
        Rng rng(sample_seed);
        const Matrix m = draw_sample(config.ensemble, k, rng);
        const OptimizerConfig opt{.starts = config.starts, .seed = sample_seed};

        const OptimizerRun classical = g_lower(m, opt);
        const double l1 = norm_entrywise_l1(m);
        const double g_pr = g_prime(m);
        const double g_up = std::min(l1, g_pr);
        const double scale = config.scaling == Scaling::certified ? g_up : classical.best_value;

        double q = 0.0;
        bool in_prime = true;
        if (scale > 0.0) {
            const Matrix theta = m * Complex(1.0 / scale);
            OptimizerRun scaled = classical;
            scaled.best_value /= scale;
            q = max_Q_lower(theta, opt, scaled).best_value;
            in_prime = g_pr / scale <= 1.0 + 1e-10;
        }
        const Region region = kg_region_check(q);
        if (region == Region::grothendieck) ++stats.count_in_region;
        if (region == Region::exceeds) ++stats.count_exceeds;
        if (q > stats.max_q_seen) {
            stats.max_q_seen = q;
            stats.max_q_sample = k;
        }
        if (sink) {
            sink({{"sample", k},
                  {"ensemble", stats.ensemble},
                  {"scaling", stats.scaling},
                  {"seed", sample_seed},
                  {"dim", m.rows()},
                  {"l1_norm", l1},
                  {"g_lower", classical.best_value},
                  {"g_upper", g_up},
                  {"g_prime", g_pr},
                  {"scale", scale},
                  {"theta_in_G_certified", scale > 0.0 && g_up / scale <= 1.0 + 1e-12},
                  {"theta_in_G_prime", in_prime},
                  {"q_value", q},
                  {"region", to_string(region)}});
        }
    }
    stats.fraction = static_cast<double>(stats.count_in_region) / stats.samples;
    return stats;
}

}  // namespace groth
