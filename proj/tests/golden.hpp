#pragma once

// Reference data for the d = 3 and d = 4 coherent-state families, transcribed by hand.

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "groth/linalg.hpp"

namespace golden {

using groth::Complex;
using groth::Matrix;

// 4 * Pi_6
inline constexpr int kPi6Times4[6][6] = {
    {2, 1, 1, 0, 1, 1},   {1, 2, 1, 1, 0, -1}, {1, 1, 2, -1, -1, 0},
    {0, 1, -1, 2, 1, -1}, {1, 0, -1, 1, 2, 1}, {1, -1, 0, -1, 1, 2},
};

// sqrt(2) * a_i for the d = 3 family.
inline constexpr int kStates3[6][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}};

inline Complex omega_power(int k) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(((k % 3) + 3) % 3) / 3.0);
}

// Tokens: integer n, or [c]w / [c]w2 meaning c * omega^k with c in {"", "-", "2", "-2"}.
inline Complex parse_token(const std::string& tok) {
    const auto w = tok.find('w');
    if (w == std::string::npos) return Complex(std::stod(tok), 0.0);
    const std::string coef = tok.substr(0, w);
    const int power = tok.size() > w + 1 ? std::stoi(tok.substr(w + 1)) : 1;
    double c = 1.0;
    if (coef == "-") c = -1.0;
    else if (!coef.empty()) c = std::stod(coef);
    return c * omega_power(power);
}

inline Matrix parse_table(const char* const* rows, std::size_t n_rows, std::size_t n_cols, double scale) {
    Matrix m(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
        std::istringstream in(rows[i]);
        std::string tok;
        for (std::size_t j = 0; j < n_cols; ++j) {
            in >> tok;
            m(i, j) = scale * parse_token(tok);
        }
    }
    return m;
}

// Rows are the 4 components; columns are sqrt(3) * a_0 ... sqrt(3) * a_11.
inline const char* const kTable1[4] = {
    "1 1 1 0 0 0 1 w2 w 1 w w2",
    "1 w w2 1 1 1 0 0 0 1 w2 w",
    "1 w2 w 1 w w2 1 1 1 0 0 0",
    "0 0 0 1 w2 w 1 w w2 1 1 1",
};

// 9 * Pi_12
inline const char* const kTable2[12] = {
    "3 0 0 2 -w2 -w 2 -w -w2 2 -1 -1",
    "0 3 0 -1 2w2 -w -w2 -1 2w -w 2w -w",
    "0 0 3 -1 -w2 2w -w 2w2 -1 -w2 -w2 2w2",
    "2 -1 -1 3 0 0 2 -w2 -w 2 -w -w2",
    "-w 2w -w 0 3 0 -1 2w2 -w -w2 -1 2w",
    "-w2 -w2 2w2 0 0 3 -1 -w2 2w -w 2w2 -1",
    "2 -w -w2 2 -1 -1 3 0 0 2 -w2 -w",
    "-w2 -1 2w -w 2w -w 0 3 0 -1 2w2 -w",
    "-w 2w2 -1 -w2 -w2 2w2 0 0 3 -1 -w2 2w",
    "2 -w2 -w 2 -w -w2 2 -1 -1 3 0 0",
    "-1 2w2 -w -w2 -1 2w -w 2w -w 0 3 0",
    "-1 -w2 2w -w 2w2 -1 -w2 -w2 2w2 0 0 3",
};

inline Matrix pi6() {
    Matrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = kPi6Times4[i][j] / 4.0;
    return m;
}

inline Matrix pi12() { return parse_table(kTable2, 12, 12, 1.0 / 9.0); }

/// Column i is a_i.
inline Matrix table1_states() { return parse_table(kTable1, 4, 12, 1.0 / std::sqrt(3.0)); }

}  // namespace golden
