#pragma once

#include "cnl/numeric.hpp"

#include <vector>

namespace cnl {

// L(Delta, s) = sum tau(n) n^{-11/2} n^{-s}, normalized so that the
// completed function
//   Lambda(s) = (2 pi)^{-s} Gamma(s + 11/2) L(Delta, s)
// satisfies Lambda(s) = Lambda(1 - s).
class delta_l_function {
public:
    static const delta_l_function& instance();

    explicit delta_l_function(std::size_t terms = 1200);

    cplx value(cplx s) const;
    cplx derivative(cplx s) const;
    cplx completed(cplx s) const;

    struct completed_pair {
        cplx value;
        cplx derivative;
    };
    // split-Mellin integrals along the ray arg y = theta
    completed_pair completed_rotated(cplx s, double theta) const;
    // the same split at theta = 0 written as two incomplete-gamma sums;
    // throws precision_loss when more than 6 digits cancel
    cplx completed_incomplete_gamma(cplx s) const;

    // rotation used for a given ordinate
    static double rotation_for(double t);

    const std::vector<double>& tau() const { return tau_; }

private:
    std::vector<double> tau_;  // tau(n) as exact doubles, index 0 unused
};

}
