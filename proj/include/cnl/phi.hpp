#pragma once

#include "cnl/numeric.hpp"

#include <string>
#include <vector>

namespace cnl {

enum class source_kind { zeta, dirichlet, delta };

// A primitive L-function whose zeros feed the zero sums: zeta, L(s, chi_D),
// or L(Delta, s).  Each carries the gamma factor c^s Gamma(A s + B) that
// makes it self-dual about Re s = 1/2.
struct zero_source {
    source_kind kind = source_kind::zeta;
    long D = 1;

    std::string label() const;
    cplx value(cplx s) const;
    cplx derivative(cplx s) const;

    double c() const;
    double A() const;
    double B() const;
};

zero_source zeta_source();
zero_source dirichlet_source(long D);
zero_source delta_source();
zero_source source_from_label(const std::string& label);

// phi(s) = scale * prod_i L_i(s - shift_i)
struct phi_factor {
    zero_source source;
    double shift = 0.0;
};

struct phi_spec {
    double scale = 1.0;
    std::vector<phi_factor> factors;
};

cplx phi_eval(const phi_spec& phi, cplx s);
cplx phi_prime(const phi_spec& phi, cplx s);

// phi'(s0) at a zero of factor j, where the other factors are evaluated
// directly; rejects a coincident zero of another factor
cplx phi_prime_at_factor_zero(const phi_spec& phi, std::size_t j, cplx s0, cplx factor_derivative);

}
