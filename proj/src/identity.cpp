#include "cnl/identity.hpp"

#include "cnl/special.hpp"
#include "cnl/zeta.hpp"

#include <cstdio>
#include <stdexcept>

namespace cnl {

namespace {

std::string fmt15(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void require_table(const std::shared_ptr<const arith::CoefficientTable>& t, std::size_t N, const char* what)
{
    if (!t || t->N < N)
        throw std::invalid_argument(std::string(what) + ": coefficient table shorter than " + std::to_string(N));
}

}

double inverse_phi_at(const CNPreset& p, double k)
{
    if (p.edge_inverse_vanishes && p.fe && std::abs(k - p.fe->k_min()) < 1e-12)
        return 0.0;
    try {
        return 1.0 / real_checked(phi_eval(p, k), 1e-9, "phi");
    } catch (const domain_error&) {
        return 0.0;  // pole of phi
    }
}

smoothed_sum smoothed_inverse_sum(const CNPreset& p, const arith::real_sequence& inv, double k, double ell, double x,
                                  std::size_t N, lhs_form form)
{
    if (inv.size() < N + 1)
        throw std::invalid_argument("smoothed_inverse_sum: coefficient table shorter than " + std::to_string(N));
    compensated_sum sum;
    for (std::size_t n = 1; n <= N; ++n) {
        if (inv[n] == 0.0)
            continue;
        double ln = std::log(static_cast<double>(n));
        double u = -x * std::exp(-ell * ln);
        double w = form == lhs_form::natural ? std::exp(u) : std::expm1(u);
        sum.add(inv[n] * std::exp(-k * ln) * w);
    }
    if (form == lhs_form::regularized)
        sum.add(inverse_phi_at(p, k));
    return {sum.value(), sum.magnitude()};
}

double eval_lhs(const CNPreset& p, double k, double x, std::size_t N_lhs, lhs_form form)
{
    const auto& fe = p.params();
    require_table(p.a_table, N_lhs, "eval_lhs");
    return smoothed_inverse_sum(p, p.a_table->a_inv_real, k, 1.0 / fe.A, x, N_lhs, form).value;
}

double hyper_prefactor(const CNPreset& p, double k, double x)
{
    const auto& fe = p.params();
    const double a = fe.A * k + fe.B, b = fe.A * fe.delta + 2.0 * fe.B;
    if (!(a > 0.0))
        throw domain_error("hyper_prefactor: A k + B must be positive");
    double mag = std::exp(-b / fe.A * std::log(fe.c) + std::lgamma(a) - a * std::log(x) - std::lgamma(b));
    return real_checked(mag / fe.nu, 1e-9, "hyper prefactor phase");
}

double eval_hyper_term(const CNPreset& p, double k, double x, std::size_t N_rhs, hyper_form form)
{
    const auto& fe = p.params();
    require_table(p.b_table, N_rhs, "eval_hyper_term");
    if (form == hyper_form::bare && !p.edge_inverse_vanishes)
        throw std::invalid_argument("eval_hyper_term: bare form needs a vanishing edge constant (preset " + p.name +
                                    ")");
    const double a = fe.A * k + fe.B, b = fe.A * fe.delta + 2.0 * fe.B;
    const double e = (fe.A * fe.delta + fe.B) / fe.A;
    const double log_c2 = 2.0 * std::log(fe.c);
    const auto& inv = p.b_table->a_inv_real;
    compensated_sum sum;
    for (std::size_t n = 1; n <= N_rhs; ++n) {
        if (inv[n] == 0.0)
            continue;
        double ln = std::log(static_cast<double>(n));
        double z = -1.0 / (std::exp((log_c2 + ln) / fe.A) * x);
        double f = form == hyper_form::bare ? kummer_1f1(a, b, z) : kummer_1f1_minus_one(a, b, z);
        sum.add(inv[n] * std::exp(-e * ln) * f);
    }
    // small x makes the prefactor huge and the terms cancel to match it
    if (sum.magnitude() > 1e10 * std::abs(sum.value()))
        throw precision_loss("eval_hyper_term: the n-sum cancels by more than 10 digits at x = " + fmt15(x));
    return hyper_prefactor(p, k, x) * sum.value();
}

double hyper_term_estimate(const CNPreset& p, double k, double x, std::size_t n)
{
    const auto& fe = p.params();
    require_table(p.b_table, n, "hyper_term_estimate");
    const double a = fe.A * k + fe.B, b = fe.A * fe.delta + 2.0 * fe.B;
    double nn = static_cast<double>(n);
    return std::abs(p.b_table->a_inv_real[n]) * std::pow(nn, -fe.delta - fe.B / fe.A - 1.0 / fe.A) * a /
           (b * std::pow(fe.c, 2.0 / fe.A) * x);
}

double eval_rt(const CNPreset& p, double k, double x)
{
    switch (p.rt) {
    case rt_rule::none:
        return 0.0;
    case rt_rule::sigma_r: {
        const int r = p.r;
        compensated_sum sum;
        double fact = 1.0;  // (2m)!
        for (int m = 1; m <= r / 2; ++m) {
            fact *= (2.0 * m - 1.0) * (2.0 * m);
            if (r - 2 * m == 1)
                continue;  // 1/zeta(1) = 0
            double zz = riemann_zeta(static_cast<double>(r - 2 * m)).real() *
                        riemann_zeta(static_cast<double>(2 * m + 1)).real();
            double sign = m % 2 == 0 ? 1.0 : -1.0;
            double lg = std::lgamma(k - r + 2.0 * m) + 2.0 * m * std::log(two_pi) + (r - k - 2.0 * m) * std::log(x);
            sum.add(sign * 2.0 * std::exp(lg) / (fact * zz));
        }
        return -sum.value();
    }
    case rt_rule::cusp:
        return -hyper_prefactor(p, k, x) * inverse_phi_at(p, p.params().k_min());
    }
    return 0.0;
}

zero_sum_result eval_zero_sum(const CNPreset& p, double k, double x, int zero_pairs, zero_cache& zeros)
{
    const auto& fe = p.params();
    if (zero_pairs <= 0)
        throw std::invalid_argument("eval_zero_sum: zero_pairs must be positive");
    zero_sum_result out;
    compensated_sum sum;
    const double log_x = std::log(x);
    for (std::size_t j = 0; j < p.phi.factors.size(); ++j) {
        const auto& f = p.phi.factors[j];
        auto recs = zeros.zeros(f.source, zero_pairs);
        if (static_cast<int>(recs.size()) < zero_pairs)
            throw insufficient_zeros("eval_zero_sum: catalog for " + f.source.label() + " holds only " +
                                     std::to_string(recs.size()) + " zeros");
        double last = 0.0;
        for (const auto& rec : recs) {
            cplx s0 = rec.rho() + f.shift;
            cplx d = derivative_at_composite_zero(p.phi, j, rec);
            cplx w = fe.A * (k - s0);
            cplx term = fe.A * std::exp(log_gamma(w) - w * log_x) / d;
            double pair = 2.0 * term.real();
            sum.add(pair);
            last = 2.0 * std::abs(term);
            out.scale += last;
        }
        out.tail_bound += last;
    }
    out.value = sum.value();
    out.pairs = zero_pairs;
    if (out.tail_bound > 1e-12 * out.scale)
        throw insufficient_zeros("eval_zero_sum: last zero pair still contributes " + fmt15(out.tail_bound) +
                                 " against a sum of size " + fmt15(out.scale) + "; raise zero_pairs");
    return out;
}

std::string IdentityReport::csv_header()
{
    return "preset,k,x,N_lhs,N_rhs,zero_pairs,lhs,rhs_hyper,rhs_rt,rhs_zero_sum,rhs_total,abs_diff,rel_diff";
}

std::string IdentityReport::csv_row() const
{
    return preset + ',' + fmt15(k) + ',' + fmt15(x) + ',' + std::to_string(trunc.N_lhs) + ',' +
           std::to_string(trunc.N_rhs) + ',' + std::to_string(trunc.zero_pairs) + ',' + fmt15(lhs) + ',' +
           fmt15(rhs_hyper) + ',' + fmt15(rhs_rt) + ',' + fmt15(rhs_zero_sum) + ',' + fmt15(rhs_total) + ',' +
           fmt15(abs_diff) + ',' + fmt15(rel_diff);
}

IdentityReport verify_identity(const CNPreset& p, double k, double x, const truncations& t, zero_cache& zeros,
                               const identity_options& opt)
{
    const auto& fe = p.params();
    if (!(x > 0.0))
        throw std::invalid_argument("verify_identity: x must be positive");
    IdentityReport rep;
    rep.preset = p.name;
    rep.k = k;
    rep.x = x;
    rep.trunc = t;
    rep.lhs_mode = opt.lhs;
    rep.hyper = opt.hyper.value_or(opt.lhs == lhs_form::regularized ? hyper_form::subtracted : p.default_hyper);
    if (opt.lhs == lhs_form::regularized && rep.hyper == hyper_form::bare)
        throw std::invalid_argument("verify_identity: the regularized left side pairs with the subtracted form");
    if (k < fe.k_min() - 1e-12)
        rep.warnings.push_back("k below k_min = " + fmt15(fe.k_min()) + ": series converge only conditionally");

    rep.lhs = eval_lhs(p, k, x, t.N_lhs, opt.lhs);
    rep.rhs_hyper = eval_hyper_term(p, k, x, t.N_rhs, rep.hyper);
    rep.rhs_rt = -eval_rt(p, k, x);
    auto zs = eval_zero_sum(p, k, x, t.zero_pairs, zeros);
    rep.rhs_zero_sum = zs.value;
    rep.zero_tail = zs.tail_bound;
    rep.rhs_total = rep.rhs_hyper + rep.rhs_rt + rep.rhs_zero_sum;
    rep.abs_diff = std::abs(rep.lhs - rep.rhs_total);
    rep.rel_diff = rep.lhs != 0.0 ? rep.abs_diff / std::abs(rep.lhs) : rep.abs_diff;
    return rep;
}

double symmetric_alpha(const CNPreset& p)
{
    const auto& fe = p.params();
    return std::pow(fe.c, -1.0 / fe.A);
}

AlphaBetaReport alpha_beta(const CNPreset& p, double alpha, const truncations& t, zero_cache& zeros, lhs_form form)
{
    const auto& fe = p.params();
    if (!(alpha > 0.0))
        throw std::invalid_argument("alpha_beta: alpha must be positive");
    require_table(p.a_table, t.N_lhs, "alpha_beta");
    const double k = fe.k_min();
    const double beta = std::pow(fe.c, -2.0 / fe.A) / alpha;
    const double pw = (fe.A * fe.delta + 2.0 * fe.B) / 2.0;
    const double ell = 1.0 / fe.A;
    const double nu = real_checked(fe.nu, 1e-15, "alpha_beta: nu");

    // Both sides are multiplied through by sqrt(nu), which removes the
    // branch choice: sqrt(nu) conj(sqrt(nu)) = 1 and sqrt(nu)^2 = nu.
    AlphaBetaReport rep;
    rep.preset = p.name;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.k = k;
    rep.lhs_alpha = std::pow(alpha, pw) * smoothed_inverse_sum(p, p.b_table->a_inv_real, k, ell, alpha, t.N_lhs, form).value;
    rep.lhs_beta = nu * std::pow(beta, pw) * smoothed_inverse_sum(p, p.a_table->a_inv_real, k, ell, beta, t.N_lhs, form).value;
    rep.lhs = rep.lhs_alpha - rep.lhs_beta;
    rep.rhs_constant = std::pow(alpha, pw) * inverse_phi_at(p, k);
    rep.rhs_rt = nu * std::pow(beta, pw) * eval_rt(p, k, beta);
    auto zs = eval_zero_sum(p, k, beta, t.zero_pairs, zeros);
    rep.rhs_zero_sum = -nu * std::pow(beta, pw) * zs.value;
    rep.zero_tail = std::pow(beta, pw) * zs.tail_bound;
    rep.rhs = rep.rhs_constant + rep.rhs_rt + rep.rhs_zero_sum;
    rep.diff = rep.lhs - rep.rhs;
    return rep;
}

}
