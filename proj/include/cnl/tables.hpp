#pragma once

#include "cnl/identity.hpp"

#include <string>
#include <vector>

namespace cnl {

// One published verification row: the identity is evaluated at (k, x) and
// both sides are compared with the printed values to two units in their
// last printed digit.
struct reference_row {
    std::string preset;
    std::string k_label;  // as printed
    double k = 0.0;       // as evaluated
    std::string x_label;
    double x = 0.0;
    std::string lhs_printed;
    std::string rhs_printed;
    std::string note;
};

struct reference_result {
    reference_row row;
    IdentityReport report;
    double lhs_unit = 0.0;
    double rhs_unit = 0.0;
    bool lhs_ok = false;
    bool rhs_ok = false;

    bool ok() const { return lhs_ok && rhs_ok; }
};

std::vector<reference_row> reference_table(int which);  // 1 or 2

// size of one unit in the last printed digit, e.g. "-8.02103e-07" -> 1e-12
double last_digit_unit(const std::string& printed);

std::vector<reference_result> run_reference_table(int which, const truncations& t, zero_cache& zeros);

}
