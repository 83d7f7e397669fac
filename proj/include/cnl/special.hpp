#pragma once

#include "cnl/numeric.hpp"

namespace cnl {

cplx log_gamma(cplx z);
cplx gamma(cplx z);
double rgamma(double x);  // 1/Gamma(x), zero at the poles
cplx digamma(cplx z);

// 1F1(a; b; z) for real z <= 0; precision_loss where the |z| > 30 expansion fails
double kummer_1f1(double a, double b, double z);
// e^z 1F1(b - a; b; -z), the branch used for |z| <= 30
double kummer_1f1_transformed(double a, double b, double z);
// 1F1(a; b; z) - 1 without cancellation for small |z|
double kummer_1f1_minus_one(double a, double b, double z);

struct kummer_expansion {
    double value;
    double error;  // size of the first omitted term
};
// large-|z| expansion alone, z < 0
kummer_expansion kummer_1f1_asymptotic(double a, double b, double z);

cplx upper_incomplete_gamma(cplx s, double x);

}
