#include "cnl/zeta.hpp"

#include "cnl/arith.hpp"
#include "cnl/special.hpp"

#include <array>
#include <vector>

namespace cnl {

namespace {

// B_2j / (2j)!, j = 1..12
constexpr std::array<long double, 12> bernoulli_over_factorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.2044840173323941e23,
};

struct em_result {
    cplx value;
    cplx ds;
};

// extended precision: for Re s < 0 the direct terms and the tail cancel
using lreal = long double;
using lcplx = std::complex<long double>;

// (w^{1-s} - w^0 [drop]) / (s-1) and its s-derivative
void pole_part(lcplx s, lreal lw, bool drop, lcplx& v, lcplx& dv)
{
    lcplx e = s - 1.0L;
    lcplx w1s = std::exp(-e * lw);
    if (!drop) {
        v = w1s / e;
        dv = w1s * (-lw / e - 1.0L / (e * e));
        return;
    }
    lcplx x = -e * lw;
    if (std::abs(x) < 1e-3L) {
        // (e^x - 1)/e = -lw (1 + x/2 + x^2/6 + x^3/24 + x^4/120 + x^5/720)
        v = -lw * (1.0L + x * (0.5L + x * (1.0L / 6.0L + x * (1.0L / 24.0L + x * (1.0L / 120.0L + x / 720.0L)))));
        // d/ds = lw^2 (1/2 + x/3 + x^2/8 + x^3/30 + x^4/144)
        dv = lw * lw * (0.5L + x * (1.0L / 3.0L + x * (0.125L + x * (1.0L / 30.0L + x / 144.0L))));
        return;
    }
    lcplx em1 = w1s - 1.0L;
    v = em1 / e;
    dv = (-lw * w1s * e - em1) / (e * e);
}

// Euler-Maclaurin for zeta(s, q) with N direct terms; with drop_unit_pole the
// constant 1/(s-1) is omitted from the tail (it cancels in character sums)
em_result hurwitz_em(cplx s_in, double q, bool drop_unit_pole, bool want_ds)
{
    if (!drop_unit_pole && s_in == cplx(1.0, 0.0))
        throw domain_error("hurwitz_zeta: pole at s = 1");
    if (!(q > 0.0 && q <= 1.0))
        throw domain_error("hurwitz_zeta: q must lie in (0, 1]");
    const lcplx s(s_in.real(), s_in.imag());
    const int N = std::max(50, static_cast<int>(std::ceil(std::abs(s_in))) + 10);
    lcplx v = 0.0L, d = 0.0L;
    for (int n = 0; n < N; ++n) {
        lreal lq = std::log(n + static_cast<lreal>(q));
        lcplx t = std::exp(-s * lq);
        v += t;
        if (want_ds)
            d += -lq * t;
    }
    lreal w = N + static_cast<lreal>(q), lw = std::log(w);
    lcplx ws = std::exp(-s * lw);
    lcplx pv, pd;
    pole_part(s, lw, drop_unit_pole, pv, pd);
    v += pv + 0.5L * ws;
    if (want_ds)
        d += pd - 0.5L * lw * ws;
    // P_m(s) = s (s+1) ... (s+m-1) and its derivative
    lcplx P = s, dP = 1.0L;
    lcplx wpow = ws / w;  // w^{-s-1}
    const lreal w2 = 1.0L / (w * w);
    for (int j = 1; j <= 12; ++j) {
        lreal c = bernoulli_over_factorial[j - 1];
        v += c * P * wpow;
        if (want_ds)
            d += c * (dP - lw * P) * wpow;
        // advance P_{2j-1} -> P_{2j+1}
        for (int k = 0; k < 2; ++k) {
            lreal m = 2.0L * j - 1.0L + k;
            dP = dP * (s + m) + P;
            P = P * (s + m);
        }
        wpow *= w2;
    }
    return {cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())),
            cplx(static_cast<double>(d.real()), static_cast<double>(d.imag()))};
}

// chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s), zeta(s) = chi(s) zeta(1-s)
void reflection_factor(cplx s, cplx& chi, cplx& dchi)
{
    cplx base = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_gamma(1.0 - s));
    cplx sn = std::sin(0.5 * pi * s), cs = std::cos(0.5 * pi * s);
    chi = base * sn;
    dchi = base * ((log_two_pi - digamma(1.0 - s)) * sn + 0.5 * pi * cs);
}

}

cplx hurwitz_zeta(cplx s, double q) { return hurwitz_em(s, q, false, false).value; }

cplx hurwitz_zeta_ds(cplx s, double q) { return hurwitz_em(s, q, false, true).ds; }

cplx riemann_zeta(cplx s)
{
    if (s == cplx(1.0, 0.0))
        throw domain_error("riemann_zeta: pole at s = 1");
    if (s.real() < 0.0) {
        if (s.imag() == 0.0 && std::fmod(s.real(), 2.0) == 0.0)
            return 0.0;
        cplx chi, dchi;
        reflection_factor(s, chi, dchi);
        return chi * hurwitz_em(1.0 - s, 1.0, false, false).value;
    }
    return hurwitz_em(s, 1.0, false, false).value;
}

cplx zeta_prime(cplx s)
{
    if (s == cplx(1.0, 0.0))
        throw domain_error("zeta_prime: pole at s = 1");
    if (s.real() < 0.0) {
        cplx chi, dchi;
        reflection_factor(s, chi, dchi);
        auto r = hurwitz_em(1.0 - s, 1.0, false, true);
        return dchi * r.value - chi * r.ds;
    }
    return hurwitz_em(s, 1.0, false, true).ds;
}

namespace {

em_result dirichlet_l_pair(long D, cplx s, bool want_ds)
{
    if (D == 1) {
        if (s == cplx(1.0, 0.0))
            throw domain_error("dirichlet_l_quadratic: pole of the principal character");
        auto r = hurwitz_em(s, 1.0, false, want_ds);
        return r;
    }
    if (!arith::is_fundamental_discriminant(D))
        throw std::invalid_argument("dirichlet_l_quadratic: D is not a fundamental discriminant");
    const long m = std::labs(D);
    const double lm = std::log(static_cast<double>(m));
    compensated_csum v, d;
    for (long r = 1; r <= m; ++r) {
        int chi = arith::kronecker_symbol(D, r);
        if (chi == 0)
            continue;
        auto h = hurwitz_em(s, static_cast<double>(r) / m, true, want_ds);
        v.add(static_cast<double>(chi) * h.value);
        if (want_ds)
            d.add(static_cast<double>(chi) * h.ds);
    }
    cplx ms = std::exp(-s * lm);
    cplx val = ms * v.value();
    cplx der = want_ds ? ms * (d.value() - lm * v.value()) : cplx(0.0);
    return {val, der};
}

}

cplx dirichlet_l_quadratic(long D, cplx s) { return dirichlet_l_pair(D, s, false).value; }

cplx dirichlet_l_quadratic_prime(long D, cplx s) { return dirichlet_l_pair(D, s, true).ds; }

}
