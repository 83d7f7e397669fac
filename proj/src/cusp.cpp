#include "cnl/cusp.hpp"

#include "cnl/arith.hpp"
#include "cnl/quadrature.hpp"
#include "cnl/special.hpp"

namespace cnl {

namespace {

constexpr double half_weight = 5.5;       // (12 - 1) / 2
constexpr double rotation_kappa = 6.0;    // pi/2 - theta = kappa / |t|

}

const delta_l_function& delta_l_function::instance()
{
    static const delta_l_function f;
    return f;
}

delta_l_function::delta_l_function(std::size_t terms)
{
    auto t = arith::ramanujan_tau(terms);
    tau_ = arith::to_real(t);
}

double delta_l_function::rotation_for(double t)
{
    if (std::abs(t) < 2.0 * rotation_kappa / pi)
        return 0.0;
    double th = 0.5 * pi - rotation_kappa / std::abs(t);
    return t > 0 ? th : -th;
}

delta_l_function::completed_pair delta_l_function::completed_rotated(cplx s, double theta) const
{
    const cplx sp = s + half_weight;
    const cplx a1 = sp, a2 = 12.0 - sp;
    const double sigma_max = std::max(a1.real(), a2.real());
    const double ct = std::cos(theta), st = std::sin(theta);
    const cplx rot = std::polar(1.0, theta);

    // upper limit where e^{-2 pi u cos theta} u^{sigma-1} has died off
    double U = 2.0;
    for (int it = 0; it < 50; ++it)
        U = std::max(2.0, (55.0 + std::max(0.0, sigma_max - 1.0) * std::log(U)) / (two_pi * ct));

    const std::size_t nmax = tau_.size() - 1;
    auto F = [&](double u) {
        cplx q = std::exp(-two_pi * rot * u);
        double aq = std::abs(q), lq = std::log(aq);
        double peak = 6.0 / std::max(1e-300, -lq);
        cplx sum = 0.0, qn = 1.0;
        double an = 1.0;
        for (std::size_t n = 1;; ++n) {
            if (n > nmax)
                throw precision_loss("L(Delta): tau table too short for this rotation");
            qn *= q;
            an *= aq;
            sum += tau_[n] * qn;
            double nd = static_cast<double>(n);
            if (nd > peak && std::pow(nd, 6.0) * an < 1e-19 * std::max(std::abs(sum), 1e-300))
                break;
            if (an < 1e-300)
                break;
        }
        return sum;
    };
    auto integrand = [&](double u) {
        cplx f = F(u);
        double lu = std::log(u);
        cplx g1 = f * std::exp((a1 - 1.0) * lu);
        cplx g2 = std::conj(f) * std::exp((a2 - 1.0) * lu);
        return std::array<cplx, 5>{g1, g1 * lu, g2, g2 * lu, cplx(std::abs(g1) + std::abs(g2), 0.0)};
    };

    double n_peak = std::max(1.0, 6.0 / (two_pi * ct));
    double omega = two_pi * n_peak * std::abs(st) + std::abs(sp.imag());
    int panels = static_cast<int>(std::ceil((U - 1.0) * omega / two_pi)) + 8;

    auto coarse = integrate_gk<5>(integrand, 1.0, U, 0.0, panels, 0);
    double scale = coarse[4].real();
    auto r = integrate_gk<5>(integrand, 1.0, U, 1e-14 * scale, panels, 14);

    const cplx e12 = std::polar(1.0, -12.0 * theta);
    const cplx front = std::exp(cplx(0.0, theta) * sp);
    const double norm = std::pow(two_pi, half_weight);
    cplx lam = front * (r[0] + e12 * r[2]);
    cplx dlam = cplx(0.0, theta) * lam + front * (r[1] - e12 * r[3]);
    if (std::abs(lam) < 1e-11 * std::abs(front) * scale && std::abs(dlam) < 1e-11 * std::abs(front) * scale) {
        // both tiny compared with the integrals: nothing trustworthy is left
        throw precision_loss("L(Delta): rotated integrals cancel beyond binary64");
    }
    return {norm * lam, norm * dlam};
}

cplx delta_l_function::completed_incomplete_gamma(cplx s) const
{
    const cplx sp = s + half_weight;
    compensated_csum sum;
    double mag = 0.0;
    for (std::size_t n = 1; n < tau_.size(); ++n) {
        double x = two_pi * static_cast<double>(n), lx = std::log(x);
        cplx t1 = std::exp(-sp * lx) * upper_incomplete_gamma(sp, x);
        cplx t2 = std::exp(-(12.0 - sp) * lx) * upper_incomplete_gamma(12.0 - sp, x);
        cplx term = tau_[n] * (t1 + t2);
        sum.add(term);
        mag += std::abs(tau_[n]) * (std::abs(t1) + std::abs(t2));
        if (n > 2 && std::abs(term) < 1e-18 * std::abs(sum.value()))
            break;
    }
    cplx v = sum.value();
    if (mag > 1e6 * std::abs(v))
        throw precision_loss("L(Delta): incomplete-gamma sums lose more than 6 digits");
    return std::pow(two_pi, half_weight) * v;
}

cplx delta_l_function::completed(cplx s) const
{
    if (std::abs(s.imag()) <= 4.0)
        return completed_incomplete_gamma(s);
    return completed_rotated(s, rotation_for(s.imag())).value;
}

cplx delta_l_function::value(cplx s) const
{
    cplx g = std::exp(-s * log_two_pi + log_gamma(s + half_weight));
    return completed(s) / g;
}

cplx delta_l_function::derivative(cplx s) const
{
    auto p = completed_rotated(s, rotation_for(s.imag()));
    cplx g = std::exp(-s * log_two_pi + log_gamma(s + half_weight));
    cplx dlogg = -log_two_pi + digamma(s + half_weight);
    return (p.derivative - dlogg * p.value) / g;
}

}
