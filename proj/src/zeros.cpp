#include "cnl/zeros.hpp"

#include "cnl/cusp.hpp"
#include "cnl/special.hpp"

#include <stdexcept>

namespace cnl {

double hardy_z(const zero_source& src, double t)
{
    const cplx s(0.5, t);
    cplx z;
    if (src.kind == source_kind::delta) {
        cplx lam = delta_l_function::instance().completed(s);
        double g = std::exp(-0.5 * log_two_pi + log_gamma(s + 5.5).real());
        z = lam / g;
    } else {
        double theta = t * std::log(src.c()) + log_gamma(src.A() * s + src.B()).imag();
        z = std::polar(1.0, theta) * src.value(s);
    }
    if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z.real())))
        throw precision_loss("hardy_z(" + src.label() + "): imaginary residue " + std::to_string(z.imag()) +
                             " at t = " + std::to_string(t));
    return z.real();
}

double riemann_von_mangoldt(double T)
{
    return T / two_pi * std::log(T / (two_pi * euler_e)) + 0.875;
}

std::vector<ZeroRecord> find_zeros(const zero_source& src, int count, const zero_search_options& opt)
{
    if (count <= 0)
        throw std::invalid_argument("find_zeros: count must be positive");
    std::vector<ZeroRecord> out;
    double t0 = 0.0, z0 = hardy_z(src, t0);
    const double t_limit = 400.0;
    for (long k = 1; static_cast<int>(out.size()) < count; ++k) {
        double t1 = k * opt.step;
        if (t1 > t_limit)
            throw precision_loss("find_zeros: ordinate limit reached before " + std::to_string(count) + " zeros");
        double z1 = hardy_z(src, t1);
        if (z0 == 0.0 || (z0 < 0) != (z1 < 0)) {
            double lo = t0, hi = t1, zlo = z0;
            while (hi - lo > opt.tolerance) {
                double mid = 0.5 * (lo + hi);
                double zm = hardy_z(src, mid);
                if (zm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((zm < 0) == (zlo < 0)) {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            ZeroRecord r;
            r.source_label = src.label();
            r.index = static_cast<int>(out.size()) + 1;
            r.ordinate = 0.5 * (lo + hi);
            out.push_back(r);
        }
        t0 = t1;
        z0 = z1;
    }

    // a gap far above the running average suggests two zeros inside one cell
    for (std::size_t i = 4; i < out.size(); ++i) {
        double avg = (out[i - 1].ordinate - out[i - 4].ordinate) / 3.0;
        double gap = out[i].ordinate - out[i - 1].ordinate;
        if (gap > 3.0 * avg)
            throw precision_loss("find_zeros(" + src.label() + "): suspicious gap before zero " +
                                 std::to_string(i + 1) + "; refine the grid");
    }

    for (auto& r : out) {
        r.verified_residual = std::abs(src.value(r.rho()));
        if (!(r.verified_residual <= opt.residual_limit))
            throw precision_loss("find_zeros(" + src.label() + "): zero " + std::to_string(r.index) +
                                 " fails re-verification, residual " + std::to_string(r.verified_residual));
        r.phi_prime = src.derivative(r.rho());
        if (std::abs(r.phi_prime) == 0.0)
            throw precision_loss("find_zeros: vanishing derivative at a located zero");
    }
    return out;
}

cplx derivative_at_composite_zero(const phi_spec& phi, std::size_t factor, const ZeroRecord& rec)
{
    if (factor >= phi.factors.size())
        throw std::out_of_range("derivative_at_composite_zero: no such factor");
    const auto& f = phi.factors[factor];
    if (f.source.label() != rec.source_label)
        throw std::invalid_argument("derivative_at_composite_zero: record belongs to " + rec.source_label);
    return phi_prime_at_factor_zero(phi, factor, rec.rho() + f.shift, rec.phi_prime);
}

}
