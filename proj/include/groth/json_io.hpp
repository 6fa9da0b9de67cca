#pragma once

// Matrix file format and JSON serialization of every report type.
//
// Matrix schema: {"rows": n, "cols": m, "entries": [[re, im], ...]} in row-major order.

#include <string>

#include <json.hpp>

#include "groth/coherent.hpp"
#include "groth/experiments.hpp"
#include "groth/forms.hpp"
#include "groth/norm_factors.hpp"

namespace groth {

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json complex_to_json(Complex z);
nlohmann::json vector_to_json(std::span<const Complex> v);

/// Parses and validates a matrix document. Throws InputError with a message
/// naming the failure: malformed JSON, schema, dimension mismatch or non-finite entry.
Matrix parse_matrix_text(const std::string& text);
Matrix matrix_from_json(const nlohmann::json& doc);

/// Adds a missing-file check in front of parse_matrix_text.
Matrix parse_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

nlohmann::json to_json(const NormReport& r);
nlohmann::json to_json(const PolydiscTuple& t);
nlohmann::json to_json(const VectorTuple& t);
nlohmann::json to_json(const OptimizerRun& r);
nlohmann::json to_json(const QuantumRun& r);
nlohmann::json to_json(const GClassification& c);
nlohmann::json to_json(const PhaseSystemResult& r);
nlohmann::json to_json(const ExperimentRecord& r);
nlohmann::json to_json(const Pi6Certificate& c);
nlohmann::json to_json(const RarityStats& s);
nlohmann::json to_json(const IsotropyReport& r);
nlohmann::json to_json(const PermutationReport& r);
nlohmann::json to_json(const StateFamily& f);

}  // namespace groth
