#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "groth/json_io.hpp"
#include "groth/random.hpp"

using namespace groth;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_matrix_text(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("well-formed matrix") {
    const Matrix m = parse_matrix_text(R"({"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1], [0, -1], [2.5, 0]]})");
    CHECK(m(0, 1) == Complex(0, 1));
    CHECK(m(1, 0) == Complex(0, -1));
    CHECK(m(1, 1) == Complex(2.5, 0));
}

TEST_CASE("each failure has its own message") {
    const std::string malformed = error_of("{\"rows\": 2,");
    const std::string schema = error_of(R"({"rows": 1, "cols": 1, "entries": [[1]]})");
    const std::string missing_field = error_of(R"({"rows": 1, "entries": [[1, 0]]})");
    const std::string dims = error_of(R"({"rows": 2, "cols": 2, "entries": [[1, 0]]})");
    const std::string nan = error_of(R"({"rows": 1, "cols": 1, "entries": [[NaN, 0]]})");
    const std::string inf = error_of(R"({"rows": 1, "cols": 1, "entries": [[0, -Infinity]]})");
    const std::string overflow = error_of(R"({"rows": 1, "cols": 1, "entries": [[1e999, 0]]})");
    CHECK(malformed.rfind("malformed JSON", 0) == 0);
    CHECK(schema.rfind("schema error", 0) == 0);
    CHECK(missing_field.rfind("schema error", 0) == 0);
    CHECK(dims.rfind("dimension mismatch", 0) == 0);
    CHECK(nan.rfind("non-finite entry", 0) == 0);
    CHECK(inf.rfind("non-finite entry", 0) == 0);
    CHECK(overflow.rfind("non-finite entry", 0) == 0);
}

TEST_CASE("non-finite literals inside strings are left alone") {
    const std::string e = error_of(R"({"rows": 1, "cols": 1, "entries": [[1, 0]], "note": "NaN inf"})");
    CHECK(e.empty());
}

TEST_CASE("missing file") {
    try {
        parse_matrix_file("/nonexistent/definitely_missing.json");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).rfind("missing file", 0) == 0);
    }
}

TEST_CASE("matrix file round trip is exact") {
    Rng rng(51);
    const Matrix m = gaussian_matrix(rng, 3, 4);
    const auto path = std::filesystem::temp_directory_path() / "groth_json_io_roundtrip.json";
    write_matrix_file(path.string(), m);
    CHECK(parse_matrix_file(path.string()) == m);
    std::filesystem::remove(path);
}

TEST_CASE("report serialization is idempotent") {
    Rng rng(52);
    const Matrix m = gaussian_matrix(rng, 3, 3);
    const std::vector<nlohmann::json> docs{to_json(norm_report(m)), to_json(classify(m, {.starts = 4})),
                                           to_json(phase_system_solvable(m)), to_json(max_Q_lower(m, {.starts = 2}))};
    for (const auto& d : docs) {
        const std::string once = d.dump();
        CHECK(nlohmann::json::parse(once).dump() == once);
    }
}
