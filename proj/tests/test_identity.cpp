#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnl/identity.hpp"
#include "cnl/special.hpp"
#include "cnl/zeta.hpp"

using namespace cnl;

namespace {

zero_cache& zeros()
{
    static zero_cache cache;
    return cache;
}

const double e = std::exp(1.0);

}

TEST_CASE("preset parameters")
{
    auto mu = make_preset("mu", 10);
    CHECK(mu.params().A == 0.5);
    CHECK(mu.params().c == doctest::Approx(1.0 / std::sqrt(pi)));
    CHECK(mu.params().k_min() == 1.0);
    auto delta = make_preset("delta", 10);
    CHECK(delta.params().B == 5.5);
    CHECK(delta.params().k_min() == 6.5);
    CHECK(delta.params().c == doctest::Approx(1.0 / two_pi));
    auto s5 = make_preset("sigma:5", 10);
    CHECK(s5.params().delta == 6.0);
    CHECK(s5.params().nu == cplx(-1.0));
    CHECK(make_preset("sigma:3", 10).params().nu == cplx(1.0));
    CHECK_THROWS(make_preset("sigma:2", 10).params());
    CHECK_THROWS(make_preset("dedekind:5", 10));
    CHECK_THROWS(make_preset("dedekind:-12", 10));
    CHECK_THROWS(make_preset("sigma:x", 10));
    CHECK_THROWS(make_preset("nope", 10));
    for (const std::string n : {"mu", "epstein", "dedekind:-3", "sigma:1", "delta"})
        REQUIRE(std::abs(std::abs(make_preset(n, 4).params().nu) - 1.0) <= 1e-15);
    // tables are shared between presets of equal length
    CHECK(make_preset("epstein", 50).a_table == make_preset("epstein", 50).a_table);
    auto ep = make_preset("epstein", 10);
    REQUIRE(ep.zero_sources().size() == 2);
    CHECK(ep.zero_sources()[1].label() == "beta");
    CHECK(make_preset("sigma:3", 10).zero_sources().size() == 1);
}

TEST_CASE("left-hand side")
{
    auto ded = make_preset("dedekind:-4", 200);
    CHECK(eval_lhs(ded, 2.0, e + 1.0, 200) == doctest::Approx(-0.0577422).epsilon(2e-7 / 0.0577422));
    auto s1 = make_preset("sigma:1", 200);
    CHECK(eval_lhs(s1, 4.0, pi, 200) == doctest::Approx(-0.0103086).epsilon(2e-7 / 0.0103086));
    CHECK(std::abs(eval_lhs(make_preset("epstein", 200), 2.0, 1e9, 200)) < 1e-300);
    CHECK_THROWS(eval_lhs(ded, 2.0, 1.0, 500));
    // the regularized form of the same series differs only by truncation
    auto mu = make_preset("mu", 20000);
    double nat = eval_lhs(mu, 2.0, 3.0, 20000, lhs_form::natural);
    double reg = eval_lhs(mu, 2.0, 3.0, 20000, lhs_form::regularized);
    CHECK(std::abs(nat - reg) < 1e-4);
}

TEST_CASE("hypergeometric term")
{
    // mu reduces to Gamma(k/2)/x^(k/2) sum mu(n)/n (1F1(k/2; 1/2; -pi^2/(n^2 x)) - 1)
    auto mu = make_preset("mu", 3000);
    const double k = 2.0, x = 1.7;
    compensated_sum s;
    const auto& inv = mu.b_table->a_inv_real;
    for (std::size_t n = 1; n <= 3000; ++n)
        s.add(inv[n] / n * kummer_1f1_minus_one(k / 2.0, 0.5, -pi * pi / (double(n) * n * x)));
    double ref = std::tgamma(k / 2.0) / std::pow(x, k / 2.0) * s.value();
    CHECK(eval_hyper_term(mu, k, x, 3000, hyper_form::subtracted) == doctest::Approx(ref).epsilon(1e-13));

    // cusp prefactor (2 pi)^w Gamma(k + (w-1)/2) / (x^(k + (w-1)/2) Gamma(w))
    auto delta = make_preset("delta", 10);
    const double w = 12.0, kk = 7.0, xx = 2.2;
    double pref = std::pow(two_pi, w) * std::tgamma(kk + 5.5) / (std::pow(xx, kk + 5.5) * std::tgamma(w));
    CHECK(hyper_prefactor(delta, kk, xx) == doctest::Approx(pref).epsilon(1e-12));
    CHECK_THROWS(eval_hyper_term(delta, kk, xx, 10, hyper_form::bare));

    // first-order tail estimate against the exact term at n = 1e5
    auto ep = make_preset("epstein", 100000);
    std::size_t n = 99989;  // prime, r2^-1(n) = -1/2 since n = 1 mod 4
    const double kx = 3.0, xt = 2.0;
    double exact = std::abs(ep.b_table->a_inv_real[n]) / double(n) *
                   std::abs(kummer_1f1_minus_one(kx, 1.0, -pi * pi / (double(n) * xt)));
    CHECK(hyper_term_estimate(ep, kx, xt, n) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("residual term")
{
    CHECK(eval_rt(make_preset("epstein", 10), 3.0, 2.0) == 0.0);
    CHECK(eval_rt(make_preset("sigma:0", 10), 3.0, 2.0) == 0.0);
    // r = 1: the only m = 1 term has 1/zeta(r - 2m) at a pole, so R_t vanishes
    CHECK(eval_rt(make_preset("sigma:1", 10), 4.0, pi) == 0.0);
    // r = 5 plug-in of the displayed sum
    const double k = 8.0, x = e;
    double want = 0.0, fact = 1.0;
    for (int m = 1; m <= 2; ++m) {
        fact *= (2.0 * m - 1.0) * 2.0 * m;
        if (5 - 2 * m == 1)
            continue;  // 1/zeta(1) = 0
        double sign = m % 2 ? -1.0 : 1.0;
        want += std::tgamma(k - 5.0 + 2 * m) / (riemann_zeta(5.0 - 2 * m).real() * riemann_zeta(2.0 * m + 1).real()) *
                sign * 2.0 * std::pow(two_pi, 2 * m) / fact * std::pow(x, 5.0 - k - 2 * m);
    }
    CHECK(eval_rt(make_preset("sigma:5", 10), k, x) == doctest::Approx(-want).epsilon(1e-13));
    auto delta = make_preset("delta", 10);
    CHECK(eval_rt(delta, 7.0, 2.0) ==
          doctest::Approx(-hyper_prefactor(delta, 7.0, 2.0) / phi_eval(delta, 6.5).real()).epsilon(1e-12));
}

TEST_CASE("zero sum")
{
    auto ep = make_preset("epstein", 10);
    auto zs = eval_zero_sum(ep, 2.0, e + 1.0, 50, zeros());
    CHECK(zs.pairs == 50);
    CHECK(zs.tail_bound <= 1e-12 * zs.scale);
    // Stirling decay of the pair size
    auto z = zeros().zeros(zeta_source(), 50);
    double t1 = z[9].ordinate, t2 = z[39].ordinate;
    auto term = [&](double t) {
        cplx rho(0.5, t);
        return std::abs(std::exp(log_gamma(2.0 - rho)) / zeta_prime(rho));
    };
    auto model = [&](double t) { return std::pow(t, 2.0 - 1.0) * std::exp(-pi * t / 2.0); };
    double ratio = (term(t2) / term(t1)) / (model(t2) / model(t1));
    CHECK(ratio > 0.01);
    CHECK(ratio < 100.0);
    CHECK_THROWS_AS(eval_zero_sum(make_preset("mu", 10), 1.0, 1e-4, 3, zeros()), insufficient_zeros);
}

TEST_CASE("identity reports")
{
    auto ep = make_preset("epstein", 200000);
    auto d4 = make_preset("dedekind:-4", 200000);
    truncations t;
    auto r = verify_identity(d4, 6.0, pi * pi, t, zeros());
    CHECK(r.lhs == doctest::Approx(-0.0000785321).epsilon(2e-10 / 0.0000785321));
    CHECK(r.rhs_total == doctest::Approx(-0.0000787028).epsilon(2e-10 / 0.0000787028));
    CHECK(r.rhs_total == r.rhs_hyper + r.rhs_rt + r.rhs_zero_sum);
    CHECK(r.abs_diff == std::abs(r.lhs - r.rhs_total));
    CHECK(r.warnings.empty());

    auto s5 = make_preset("sigma:5", 200000);
    auto r5 = verify_identity(s5, 8.0, e, t, zeros());
    CHECK(r5.lhs == doctest::Approx(0.0147028).epsilon(2e-7 / 0.0147028));
    CHECK(r5.rhs_total == doctest::Approx(0.0147079).epsilon(2e-7 / 0.0147079));
    CHECK(r5.rhs_total == r5.rhs_hyper + r5.rhs_rt + r5.rhs_zero_sum);
    auto s7 = make_preset("sigma:7", 200000);
    auto r7 = verify_identity(s7, 15.0, pi * pi, t, zeros());
    CHECK(r7.lhs == doctest::Approx(0.0000174587).epsilon(2e-10 / 0.0000174587));
    CHECK(r7.rhs_total == doctest::Approx(0.0000174586).epsilon(2e-10 / 0.0000174586));

    auto below = verify_identity(ep, 0.9, 3.0, {200, 2000, 50}, zeros());
    CHECK(!below.warnings.empty());
    CHECK_THROWS(verify_identity(ep, 2.0, 3.0, t, zeros(), {hyper_form::bare, lhs_form::regularized}));

    std::string header = IdentityReport::csv_header();
    CHECK(header == "preset,k,x,N_lhs,N_rhs,zero_pairs,lhs,rhs_hyper,rhs_rt,rhs_zero_sum,rhs_total,abs_diff,rel_diff");
    std::string row = r.csv_row();
    CHECK(row.rfind("dedekind:-4,6,9.86960440108936,200,200000,50,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 12);
}

TEST_CASE("bare and subtracted forms differ by the truncated edge sum")
{
    auto ep = make_preset("epstein", 200000);
    double bare = eval_hyper_term(ep, 6.0, pi * pi, 200000, hyper_form::bare);
    double sub = eval_hyper_term(ep, 6.0, pi * pi, 200000, hyper_form::subtracted);
    // the subtracted 1 leaves prefactor * sum_{n <= N} a_inv(n) / n, which tends to 0
    compensated_sum edge;
    for (std::size_t n = 1; n <= 200000; ++n)
        edge.add(ep.b_table->a_inv_real[n] / static_cast<double>(n));
    CHECK(std::abs((bare - sub) - hyper_prefactor(ep, 6.0, pi * pi) * edge.value()) < 1e-12 * std::abs(bare));
}

TEST_CASE("alpha-beta symmetric form")
{
    for (const std::string name : {"mu", "epstein"}) {
        CNPreset p = make_preset(name, 200);
        auto r = alpha_beta(p, symmetric_alpha(p), {}, zeros());
        INFO(name);
        CHECK(r.lhs == 0.0);
        CHECK(std::abs(r.rhs) <= 1e-6);
    }
        // x = alpha^2 in the exponent e^(-x / n^2), so the classical sqrt(pi) is x = pi
    CHECK(symmetric_alpha(make_preset("mu", 4)) == doctest::Approx(pi));
    CHECK(symmetric_alpha(make_preset("epstein", 4)) == doctest::Approx(pi));
    CHECK(symmetric_alpha(make_preset("delta", 4)) == doctest::Approx(two_pi));

    // swapping alpha and beta negates both sides for nu = 1
    CNPreset mu = make_preset("mu", 200);
    auto a = alpha_beta(mu, 1.3, {}, zeros());
    auto b = alpha_beta(mu, a.beta, {}, zeros());
    CHECK(b.beta == doctest::Approx(1.3));
    CHECK(std::abs(a.lhs + b.lhs) <= 1e-9);
    CHECK(std::abs(a.rhs + b.rhs) <= 1e-9);

    // away from the symmetric point the identity still balances
    CNPreset big = make_preset("mu", 100000);
    auto off = alpha_beta(big, 1.3, {100000, 100000, 50}, zeros(), lhs_form::regularized);
    CHECK(std::abs(off.diff) <= 1e-9);
}

TEST_CASE("hardy-littlewood identity away from the table")
{
    CNPreset mu = make_preset("mu", 100000);
    for (double x : {0.5, 4.0}) {
        auto r = verify_identity(mu, 1.5, x, {10000, 100000, 40}, zeros(), {std::nullopt, lhs_form::regularized});
        INFO("x = " << x);
        REQUIRE(r.abs_diff <= 1e-8);
    }
}
