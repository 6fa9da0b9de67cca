#include "groth/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groth/random.hpp"

namespace groth {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCoarseScanPoints = 24;

void require_config(const OptimizerConfig& config) {
    if (config.starts < 1) throw InputError("optimizer: starts must be >= 1");
    if (config.max_iterations < 1) throw InputError("optimizer: max_iterations must be >= 1");
    if (!(config.phase_tolerance > 0.0)) throw InputError("optimizer: phase_tolerance must be positive");
}

Complex unit_phase_of_conj(Complex z) {
    const double a = std::abs(z);
    return a == 0.0 ? Complex{1.0, 0.0} : std::conj(z) / a;
}

// Maximizes f on [lo, hi] by golden-section search; assumes a single peak in the bracket.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct StartResult {
    Vector t;
    double value = 0.0;
    bool converged = false;
};

// Coordinate ascent over the phases of t on the torus, objective F(t) = sum_i |(theta t)_i|.
StartResult classical_start(const Matrix& theta, Vector t, const OptimizerConfig& config) {
    const std::size_t d = theta.rows();
    Vector y = theta * std::span<const Complex>(t);
    auto total = [&] {
        double s = 0.0;
        for (const auto& z : y) s += std::abs(z);
        return s;
    };
    double value = total();
    bool converged = false;
    Vector base(d);

    for (int sweep = 0; sweep < config.max_iterations; ++sweep) {
        const double before = value;
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i) base[i] = y[i] - theta(i, j) * t[j];
            auto f = [&](double phi) {
                const Complex e = std::polar(1.0, phi);
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += std::abs(base[i] + theta(i, j) * e);
                return s;
            };
            const double current_phi = std::arg(t[j]);
            double best_phi = current_phi;
            double best_f = f(current_phi);
            const double h = 2.0 * kPi / kCoarseScanPoints;
            double grid_phi = current_phi;
            double grid_f = best_f;
            for (int k = 1; k < kCoarseScanPoints; ++k) {
                const double phi = current_phi + k * h;
                const double v = f(phi);
                if (v > grid_f) {
                    grid_f = v;
                    grid_phi = phi;
                }
            }
            const auto [gphi, gval] = golden_max(f, grid_phi - h, grid_phi + h, 1e-12);
            if (gval > best_f) {
                best_f = gval;
                best_phi = gphi;
            }
            if (grid_f > best_f) {
                best_f = grid_f;
                best_phi = grid_phi;
            }
            if (best_phi != current_phi) {
                t[j] = std::polar(1.0, best_phi);
                for (std::size_t i = 0; i < d; ++i) y[i] = base[i] + theta(i, j) * t[j];
            }
        }
        value = total();

        // Exact block step: optimal s for this t, then optimal t for that s.
        Vector s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = unit_phase_of_conj(y[i]);
        Vector t_alt(d);
        for (std::size_t j = 0; j < d; ++j) {
            Complex z = 0.0;
            for (std::size_t i = 0; i < d; ++i) z += theta(i, j) * s[i];
            t_alt[j] = unit_phase_of_conj(z);
        }
        Vector y_alt = theta * std::span<const Complex>(t_alt);
        double alt_value = 0.0;
        for (const auto& z : y_alt) alt_value += std::abs(z);
        if (alt_value > value) {
            t = std::move(t_alt);
            y = std::move(y_alt);
            value = alt_value;
        }

        if (value - before <= config.phase_tolerance * std::max(1.0, value)) {
            converged = true;
            break;
        }
    }
    return {std::move(t), value, converged};
}

PolydiscTuple optimal_s(const Matrix& theta, std::span<const Complex> t) {
    const Vector y = theta * t;
    PolydiscTuple s{Vector(y.size()), ConstraintKind::unit_disc};
    for (std::size_t i = 0; i < y.size(); ++i) s.values[i] = unit_phase_of_conj(y[i]);
    return s;
}

// Normalizes x into v; returns ||x|| and the scale (0 for a zero vector).
double normalize_into(const Vector& x, Vector& v, double& scale) {
    const double n = norm(x);
    if (n == 0.0) {
        std::fill(v.begin(), v.end(), Complex{});
        scale = 0.0;
    } else {
        for (std::size_t k = 0; k < x.size(); ++k) v[k] = x[k] / n;
        scale = 1.0;
    }
    return n;
}

struct QuantumStartResult {
    VectorTuple u;
    VectorTuple v;
    double value = 0.0;
    bool converged = false;
};

// Alternating maximization: v_j <- normalized sum_i conj(theta_ij) u_i, then u_i <- normalized sum_j theta_ij v_j.
QuantumStartResult quantum_start(const Matrix& theta, VectorTuple u, const OptimizerConfig& config) {
    const std::size_t d = theta.rows();
    const std::size_t dim = u.vectors.empty() ? d : u.vectors.front().size();
    VectorTuple v{std::vector<Vector>(d, Vector(dim)), std::vector<double>(d, 0.0)};
    double value = 0.0;
    bool converged = false;
    Vector acc(dim);
    for (int it = 0; it < std::max(1, config.max_iterations) * 20; ++it) {
        for (std::size_t j = 0; j < d; ++j) {
            std::fill(acc.begin(), acc.end(), Complex{});
            for (std::size_t i = 0; i < d; ++i) {
                const Complex c = std::conj(theta(i, j)) * u.scales[i];
                if (c == Complex{}) continue;
                for (std::size_t k = 0; k < dim; ++k) acc[k] += c * u.vectors[i][k];
            }
            normalize_into(acc, v.vectors[j], v.scales[j]);
        }
        double next = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            std::fill(acc.begin(), acc.end(), Complex{});
            for (std::size_t j = 0; j < d; ++j) {
                const Complex c = theta(i, j) * v.scales[j];
                if (c == Complex{}) continue;
                for (std::size_t k = 0; k < dim; ++k) acc[k] += c * v.vectors[j][k];
            }
            next += normalize_into(acc, u.vectors[i], u.scales[i]);
        }
        const bool done = it > 0 && next - value <= 1e-13 * std::max(1.0, next);
        value = std::max(value, next);
        if (done) {
            converged = true;
            break;
        }
    }
    return {std::move(u), std::move(v), value, converged};
}

}  // namespace

bool PolydiscTuple::feasible() const {
    if (kind == ConstraintKind::unit_disc) {
        return std::all_of(values.begin(), values.end(),
                           [](Complex z) { return std::abs(z) <= 1.0 + kConstraintSlack; });
    }
    double s = 0.0;
    for (const auto& z : values) s += std::norm(z);
    return s <= static_cast<double>(values.size()) * (1.0 + kConstraintSlack);
}

bool VectorTuple::feasible() const {
    if (vectors.size() != scales.size()) return false;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (scales[i] < 0.0 || scales[i] > 1.0) return false;
        if (scales[i] * norm(vectors[i]) > 1.0 + kConstraintSlack) return false;
    }
    return true;
}

double eval_C(const Matrix& theta, const PolydiscTuple& s, const PolydiscTuple& t) {
    require_square(theta, "eval_C");
    if (s.values.size() != theta.rows() || t.values.size() != theta.cols()) {
        throw InputError("eval_C: tuple length does not match matrix dimension");
    }
    if (!s.feasible() || !t.feasible()) throw InputError("eval_C: tuple violates its constraint");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < theta.rows(); ++i)
        for (std::size_t j = 0; j < theta.cols(); ++j) acc += theta(i, j) * s.values[i] * t.values[j];
    return std::abs(acc);
}

double eval_Q(const Matrix& theta, const VectorTuple& u, const VectorTuple& v) {
    require_square(theta, "eval_Q");
    if (u.vectors.size() != theta.rows() || v.vectors.size() != theta.cols()) {
        throw InputError("eval_Q: tuple length does not match matrix dimension");
    }
    if (!u.feasible() || !v.feasible()) throw InputError("eval_Q: vector outside the unit ball");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < theta.rows(); ++i)
        for (std::size_t j = 0; j < theta.cols(); ++j)
            acc += theta(i, j) * u.scales[i] * v.scales[j] * dot(u.vectors[i], v.vectors[j]);
    return std::abs(acc);
}

double eval_Q_trace(const Matrix& theta, const Matrix& v, const Matrix& w) {
    require_square(theta, "eval_Q_trace");
    if (v.rows() != theta.rows() || v.cols() != theta.rows() || w.rows() != theta.rows() ||
        w.cols() != theta.rows()) {
        throw InputError("eval_Q_trace: dimension mismatch");
    }
    require_finite(theta);
    require_finite(v);
    require_finite(w);
    return std::abs((theta * v * w.adjoint()).trace());
}

double torus_objective(const Matrix& theta, std::span<const Complex> t) {
    const Vector y = theta * t;
    double s = 0.0;
    for (const auto& z : y) s += std::abs(z);
    return s;
}

double g_prime(const Matrix& theta) {
    require_square(theta, "g_prime");
    return static_cast<double>(theta.rows()) * largest_singular_value(theta);
}

double g_upper(const Matrix& theta) { return std::min(norm_entrywise_l1(theta), g_prime(theta)); }

OptimizerRun g_lower(const Matrix& theta, const OptimizerConfig& config) {
    require_square(theta, "g_lower");
    require_finite(theta);
    require_config(config);
    const std::size_t d = theta.rows();

    OptimizerRun run;
    run.config = config;
    run.start_values.resize(static_cast<std::size_t>(config.starts));
    std::size_t converged = 0;
    Vector best_t;
    double best = -1.0;
    for (int k = 0; k < config.starts; ++k) {
        Rng rng(config.seed ^ static_cast<std::uint64_t>(k));
        auto result = classical_start(theta, random_torus_point(rng, d), config);
        run.start_values[static_cast<std::size_t>(k)] = result.value;
        if (result.converged) ++converged;
        if (result.value > best) {  // strict: ties keep the lowest start index
            best = result.value;
            best_t = std::move(result.t);
            run.best_start = static_cast<std::size_t>(k);
        }
    }
    run.best_t = PolydiscTuple{best_t, ConstraintKind::unit_disc};
    run.best_s = optimal_s(theta, best_t);
    run.best_value = eval_C(theta, run.best_s, run.best_t);
    run.converged_fraction = static_cast<double>(converged) / config.starts;
    return run;
}

QuantumRun max_Q_lower(const Matrix& theta, const OptimizerConfig& config) {
    return max_Q_lower(theta, config, g_lower(theta, config));
}

QuantumRun max_Q_lower(const Matrix& theta, const OptimizerConfig& config, const OptimizerRun& classical) {
    require_square(theta, "max_Q_lower");
    require_finite(theta);
    require_config(config);
    const std::size_t d = theta.rows();

    QuantumRun run;
    run.config = config;
    std::size_t converged = 0;
    double best = -1.0;
    const std::size_t total_starts = static_cast<std::size_t>(config.starts) + 1;
    run.start_values.resize(total_starts);
    for (std::size_t k = 0; k < total_starts; ++k) {
        VectorTuple u{std::vector<Vector>(d, Vector(d)), std::vector<double>(d, 1.0)};
        if (k == 0) {
            // <u_i| = s_i e_0^T and |v_j> = t_j e_0 reproduce the classical form.
            for (std::size_t i = 0; i < d; ++i) u.vectors[i][0] = std::conj(classical.best_s.values[i]);
        } else {
            Rng rng(derive_seed(config.seed, k));
            for (auto& vec : u.vectors) vec = random_unit_vector(rng, d);
        }
        auto result = quantum_start(theta, std::move(u), config);
        const double value = eval_Q(theta, result.u, result.v);
        run.start_values[k] = value;
        if (result.converged) ++converged;
        if (value > best) {
            best = value;
            run.best_u = std::move(result.u);
            run.best_v = std::move(result.v);
            run.best_start = k;
        }
    }
    run.best_value = best;
    run.converged_fraction = static_cast<double>(converged) / static_cast<double>(total_starts);
    return run;
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::certified_yes: return "certified_yes";
        case Membership::certified_no: return "certified_no";
        case Membership::unknown: return "unknown";
    }
    return "unknown";
}

GClassification classify(const Matrix& theta, const OptimizerConfig& config) {
    require_square(theta, "classify");
    GClassification c;
    const double d = static_cast<double>(theta.rows());
    c.run = g_lower(theta, config);
    c.g_lower = c.run.best_value;
    c.l1_norm = norm_entrywise_l1(theta);
    c.g_prime = g_prime(theta);
    c.g_upper = std::min(c.l1_norm, c.g_prime);
    c.frobenius = norm_frobenius(theta);
    for (const auto& z : theta.entries()) c.max_abs_entry = std::max(c.max_abs_entry, std::abs(z));

    c.in_G_prime = c.g_prime <= 1.0 + 1e-10;
    if (c.g_upper <= 1.0) {
        c.in_G = Membership::certified_yes;
    } else if (c.g_lower > 1.0 + 1e-9) {
        c.in_G = Membership::certified_no;
    } else {
        c.in_G = Membership::unknown;
    }
    c.region_necessary_condition = (c.g_upper <= 1.0 || c.in_G != Membership::certified_no) && c.l1_norm > 1.0;
    c.prime_necessary_conditions = c.max_abs_entry <= 1.0 / d + 1e-12 && c.l1_norm <= d + 1e-12 &&
                                   c.frobenius <= 1.0 + 1e-12;
    c.g_necessary_conditions = c.max_abs_entry <= 1.0 + 1e-12 && c.l1_norm <= d * d + 1e-12 &&
                               c.frobenius <= d + 1e-12;
    c.witnesses = std::pair{c.run.best_s, c.run.best_t};
    return c;
}

std::string to_string(Region r) {
    switch (r) {
        case Region::classical: return "classical";
        case Region::grothendieck: return "grothendieck";
        case Region::exceeds: return "exceeds";
    }
    return "exceeds";
}

Region kg_region_check(double q_value) {
    if (!(q_value >= 0.0)) throw InputError("kg_region_check: q must be a non-negative number");
    if (q_value <= 1.0 + 1e-9) return Region::classical;
    if (q_value <= kGrothendieckUpper + 1e-9) return Region::grothendieck;
    return Region::exceeds;
}

}  // namespace groth
