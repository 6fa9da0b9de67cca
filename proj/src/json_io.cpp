#include "groth/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace groth {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(std::span<const Complex> v) {
    json out = json::array();
    for (Complex z : v) out.push_back(complex_to_json(z));
    return out;
}

json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", vector_to_json(m.entries())}};
}

namespace {

// The JSON grammar has no NaN or Infinity literals. Quote them so a file that
// contains them is reported as a non-finite entry rather than as malformed JSON.
std::string quote_nonfinite_literals(const std::string& text) {
    static const char* const literals[] = {"-Infinity", "Infinity", "-NaN", "NaN", "-nan", "nan", "-inf", "inf"};
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (in_string) {
            out += c;
            if (c == '\\' && i + 1 < text.size()) {
                out += text[i + 1];
                i += 2;
                continue;
            }
            if (c == '"') in_string = false;
            ++i;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out += c;
            ++i;
            continue;
        }
        bool replaced = false;
        for (const char* lit : literals) {
            const std::string_view l(lit);
            if (text.compare(i, l.size(), l) == 0) {
                out += '"';
                out += l;
                out += '"';
                i += l.size();
                replaced = true;
                break;
            }
        }
        if (!replaced) out += text[i++];
    }
    return out;
}

double entry_component(const json& v, std::size_t index) {
    if (v.is_string()) {
        throw InputError("non-finite entry at index " + std::to_string(index) + ": " + v.get<std::string>());
    }
    if (!v.is_number()) throw InputError("schema error: entry " + std::to_string(index) + " must hold numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError("non-finite entry at index " + std::to_string(index));
    return x;
}

std::size_t dimension_field(const json& doc, const char* key) {
    if (!doc.contains(key)) throw InputError(std::string("schema error: missing field '") + key + "'");
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InputError(std::string("schema error: '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

Matrix matrix_from_json(const json& doc) {
    if (!doc.is_object()) throw InputError("schema error: matrix document must be a JSON object");
    const std::size_t rows = dimension_field(doc, "rows");
    const std::size_t cols = dimension_field(doc, "cols");
    if (!doc.contains("entries") || !doc.at("entries").is_array()) {
        throw InputError("schema error: 'entries' must be an array of [re, im] pairs");
    }
    const json& entries = doc.at("entries");
    if (entries.size() != rows * cols) {
        throw InputError("dimension mismatch: " + std::to_string(entries.size()) + " entries for a " +
                         std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    std::vector<Complex> values;
    values.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const json& e = entries[k];
        if (!e.is_array() || e.size() != 2) {
            throw InputError("schema error: entry " + std::to_string(k) + " must be a [re, im] pair");
        }
        values.emplace_back(entry_component(e[0], k), entry_component(e[1], k));
    }
    return Matrix(rows, cols, std::move(values));
}

Matrix parse_matrix_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(quote_nonfinite_literals(text));
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    } catch (const json::out_of_range& e) {
        // Raised for numeric literals beyond the double range, e.g. 1e999.
        throw InputError(std::string("non-finite entry: ") + e.what());
    }
    return matrix_from_json(doc);
}

Matrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!std::filesystem::is_regular_file(path) || !in) throw InputError("missing file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << matrix_to_json(m).dump(2) << '\n';
}

json to_json(const NormReport& r) {
    return {{"row_norms", r.row_norms},
            {"n_factor", r.n_factor},
            {"frobenius", r.frobenius},
            {"lower_bound", r.lower_bound},
            {"upper_bound", r.upper_bound},
            {"is_normal", r.is_normal},
            {"in_S_d", r.in_S_d},
            {"lower_bound_tight", r.lower_bound_tight},
            {"upper_bound_tight", r.upper_bound_tight}};
}

json to_json(const PolydiscTuple& t) {
    return {{"values", vector_to_json(t.values)},
            {"kind", t.kind == ConstraintKind::unit_disc ? "unit_disc" : "ball_d"},
            {"feasible", t.feasible()}};
}

json to_json(const VectorTuple& t) {
    json vecs = json::array();
    for (const auto& v : t.vectors) vecs.push_back(vector_to_json(v));
    return {{"vectors", vecs}, {"scales", t.scales}, {"feasible", t.feasible()}};
}

json to_json(const OptimizerRun& r) {
    return {{"seed", r.config.seed},
            {"starts", r.config.starts},
            {"best_value", r.best_value},
            {"best_start", r.best_start},
            {"converged_fraction", r.converged_fraction},
            {"start_values", r.start_values},
            {"s", to_json(r.best_s)},
            {"t", to_json(r.best_t)}};
}

json to_json(const QuantumRun& r) {
    return {{"seed", r.config.seed},
            {"starts", r.config.starts},
            {"best_value", r.best_value},
            {"best_start", r.best_start},
            {"converged_fraction", r.converged_fraction},
            {"start_values", r.start_values},
            {"u", to_json(r.best_u)},
            {"v", to_json(r.best_v)}};
}

namespace {

json witness_json(const std::optional<std::pair<PolydiscTuple, PolydiscTuple>>& w) {
    if (!w) return nullptr;
    return {{"s", to_json(w->first)}, {"t", to_json(w->second)}};
}

}  // namespace

json to_json(const GClassification& c) {
    return {{"g_lower", c.g_lower},
            {"g_upper", c.g_upper},
            {"g_prime", c.g_prime},
            {"l1_norm", c.l1_norm},
            {"frobenius", c.frobenius},
            {"max_abs_entry", c.max_abs_entry},
            {"in_G_prime", c.in_G_prime},
            {"in_G", to_string(c.in_G)},
            {"region_necessary_condition", c.region_necessary_condition},
            {"prime_necessary_conditions", c.prime_necessary_conditions},
            {"g_necessary_conditions", c.g_necessary_conditions},
            {"scale_to_G_prime", c.g_prime > 0.0 ? json(1.0 / c.g_prime) : json(nullptr)},
            {"scale_to_G_estimate", c.g_lower > 0.0 ? json(1.0 / c.g_lower) : json(nullptr)},
            {"witnesses", witness_json(c.witnesses)},
            {"seed", c.run.config.seed},
            {"starts", c.run.config.starts},
            {"start_values", c.run.start_values},
            {"best_start", c.run.best_start},
            {"converged_fraction", c.run.converged_fraction}};
}

json to_json(const PhaseSystemResult& r) {
    return {{"solvable", r.solvable},
            {"equations", r.equations},
            {"unknowns", r.unknowns},
            {"rank_A", r.rank_A},
            {"rank_D", r.rank_D},
            {"shift_search_used", r.shift_search_used},
            {"shifts", r.shifts},
            {"chi", r.chi},
            {"psi", r.psi},
            {"l1_norm", r.l1_norm},
            {"witness_value", r.witness_value},
            {"witnesses", witness_json(r.witnesses)}};
}

json to_json(const ExperimentRecord& r) {
    return {{"name", r.name},
            {"parameters", r.parameters},
            {"q_value", r.q_value},
            {"region", to_string(r.region)},
            {"diagnostics", r.diagnostics}};
}

json to_json(const Pi6Certificate& c) {
    return {{"general", to_json(c.general)},
            {"g_lower", c.general.best_value},
            {"specialized_max", c.specialized_max},
            {"specialized_half", 0.5 * c.specialized_max},
            {"specialized_witness", vector_to_json(c.specialized_witness)},
            {"all_ones_abc", c.all_ones_abc},
            {"all_ones_objective", c.all_ones_objective},
            {"flipped_objective", c.flipped_objective},
            {"all_ones_g", c.all_ones_g},
            {"agreement", c.agreement}};
}

json to_json(const RarityStats& s) {
    return {{"ensemble", s.ensemble},
            {"scaling", s.scaling},
            {"samples", s.samples},
            {"count_in_region", s.count_in_region},
            {"count_exceeds", s.count_exceeds},
            {"fraction", s.fraction},
            {"max_q_seen", s.max_q_seen},
            {"max_q_sample", s.max_q_sample},
            {"seed", s.seed},
            {"starts", s.starts}};
}

json to_json(const IsotropyReport& r) {
    return {{"isotropic", r.isotropic}, {"overlap_multisets", r.overlap_multisets}};
}

json to_json(const PermutationReport& r) {
    return {{"invariant", r.invariant},
            {"permutations_checked", r.permutations_checked},
            {"mappings_found", r.mappings.size()}};
}

json to_json(const StateFamily& f) {
    json states = json::array();
    for (const auto& s : f.states) states.push_back(vector_to_json(s));
    json recipe = json::array();
    for (const auto& r : f.recipe)
        recipe.push_back({{"zero_position", r.zero_position},
                          {"fourier_column", r.fourier_column},
                          {"start_position", r.start_position}});
    return {{"dim", f.dim}, {"size", f.size()}, {"conjectural", f.conjectural()}, {"states", states},
            {"recipe", recipe}};
}

}  // namespace groth
