#pragma once

#include "cnl/numeric.hpp"

namespace cnl {

cplx hurwitz_zeta(cplx s, double q);
cplx hurwitz_zeta_ds(cplx s, double q);

cplx riemann_zeta(cplx s);
cplx zeta_prime(cplx s);

// L(s, chi_D) for a fundamental discriminant D; D = 1 gives zeta
cplx dirichlet_l_quadratic(long D, cplx s);
cplx dirichlet_l_quadratic_prime(long D, cplx s);

inline cplx dirichlet_beta(cplx s) { return dirichlet_l_quadratic(-4, s); }

}
