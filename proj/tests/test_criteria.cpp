#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnl/criteria.hpp"
#include "cnl/quadrature.hpp"
#include "cnl/special.hpp"
#include "cnl/zeta.hpp"

using namespace cnl;

TEST_CASE("p_kfl basics")
{
    auto ep = make_preset("epstein", 200);
    double nat = p_kfl(ep, 2.0, 1.0, std::exp(1.0) + 1.0, 200, lhs_form::natural).value;
    CHECK(nat == eval_lhs(ep, 2.0, std::exp(1.0) + 1.0, 200));

    auto mu = make_preset("mu", 1000000);
    double at0 = p_kfl(mu, 2.0, 2.0, 0.0, 1000000, lhs_form::natural).value;
    CHECK(at0 == doctest::Approx(6.0 / (pi * pi)).epsilon(1e-5));

    auto p = p_kfl(mu, 2.0, 2.0, 1e4, 1000000);
    CHECK(std::abs(p.value) < std::pow(10.0, -0.75 * 4.0 + 1.0));
    CHECK(p.error() < 1e-3 * std::abs(p.value));

    // the auto form never reports a larger budget than either fixed form
    for (double x : {1.0, 100.0, 1e5}) {
        auto a = p_kfl(mu, 2.0, 2.0, x, 100000);
        auto n = p_kfl(mu, 2.0, 2.0, x, 100000, lhs_form::natural);
        auto r = p_kfl(mu, 2.0, 2.0, x, 100000, lhs_form::regularized);
        REQUIRE(a.error() <= std::min(n.error(), r.error()));
        REQUIRE(std::abs(n.value - r.value) <= 2.0 * (n.error() + r.error()));
    }
}

TEST_CASE("p_kfl agrees with its power series")
{
    for (const std::string name : {"mu", "sigma:1", "epstein"}) {
        auto p = make_preset(name, 1000000);
        const double k = name == "sigma:1" ? 3.0 : 2.0, ell = name == "mu" ? 2.0 : 1.0;
        for (double x : {0.25, 1.0, 2.5, 5.0}) {
            // sum_m (-1)^m x^m / (m! phi(ell m + k))
            compensated_sum s;
            double term = 1.0;
            for (int m = 0; m < 80; ++m) {
                if (m > 0)
                    term *= -x / m;
                s.add(term * inverse_phi_at(p, k + ell * m));
            }
            auto v = p_kfl(p, k, ell, x, 1000000);
            INFO(name << " x = " << x);
            REQUIRE(std::abs(v.value - s.value()) <= 1e-9 * std::abs(s.value()) + v.error());
            REQUIRE(v.error() <= 1e-8 * std::abs(s.value()));
        }
    }
}

TEST_CASE("tail bound dominates the observed truncation error")
{
    auto mu = make_preset("mu", 1000000);
    for (double x : {10.0, 1000.0}) {
        double full = p_kfl(mu, 2.0, 2.0, x, 1000000, lhs_form::natural).value;
        auto part = p_kfl(mu, 2.0, 2.0, x, 20000, lhs_form::natural);
        REQUIRE(std::abs(full - part.value) <= part.tail + 1e-15);
        double bound = p_tail_bound(mu, 2.0, 2.0, x, 20000, lhs_form::natural);
        REQUIRE(bound == part.tail);
    }
}

TEST_CASE("predicted exponents")
{
    CHECK(predicted_exponent(make_preset("mu", 4), 2.0, 2.0) == doctest::Approx(-0.75));
    CHECK(predicted_exponent(make_preset("mu", 4), 1.0, 2.0) == doctest::Approx(-0.25));
    CHECK(predicted_exponent(make_preset("sigma:1", 4), 4.0, 1.0) == doctest::Approx(-2.5));
}

TEST_CASE("envelope fitter recovers synthetic exponents")
{
    auto grid = log_grid(1e2, 1e6, 41);
    REQUIRE(grid.size() == 41);
    CHECK(grid.front() == 1e2);
    CHECK(grid.back() == 1e6);
    for (double p : {0.25, 0.75, 1.3, 2.5}) {
        std::vector<double> v, e(grid.size(), 0.0);
        for (double x : grid)
            v.push_back(std::pow(x, -p) * (1.5 + std::cos(20.0 * std::log(x))));
        auto f = fit_envelope(grid, v, e);
        REQUIRE(std::abs(f.slope + p) <= 0.01);
        std::vector<double> pure;
        for (double x : grid)
            pure.push_back(3.0 * std::pow(x, -p));
        REQUIRE(std::abs(fit_envelope(grid, pure, e).slope + p) <= 1e-9);
    }
    // points drowned in their error estimate are excluded
    std::vector<double> v(grid.size(), 1.0), e(grid.size(), 1.0);
    CHECK_THROWS_AS(fit_envelope(grid, v, e), insufficient_signal);
}

TEST_CASE("decay fit report")
{
    auto mu = make_preset("mu", 100000);
    auto rep = decay_fit(mu, 2.0, 2.0, 1e2, 1e5, 16, 100000);
    CHECK(rep.predicted_exponent == doctest::Approx(-0.75));
    CHECK(rep.grid.size() == rep.values.size());
    CHECK(rep.used >= 5);
    std::string csv = rep.csv();
    CHECK(csv.rfind("x,value,envelope,ratio\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep.grid.size()) + 1);
    CHECK(csv == decay_fit(mu, 2.0, 2.0, 1e2, 1e5, 16, 100000).csv());
    CHECK_THROWS(decay_fit(mu, 2.0, 2.0, 1e2, 1e5, 5, 100000));
    CHECK_THROWS(decay_fit(mu, 2.0, 2.0, 0.5, 1e5, 16, 100000));
}

TEST_CASE("tanh-sinh quadrature")
{
    auto r = tanh_sinh([](double x) { return cplx(std::exp(-x)); }, 0.0, 3.0, 1e-13);
    CHECK(r.value.real() == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-13));
    auto s = tanh_sinh([](double x) { return cplx(1.0 / std::sqrt(x)); }, 0.0, 1.0, 1e-10);
    CHECK(s.value.real() == doctest::Approx(2.0).epsilon(1e-9));
    auto g = integrate_gk<1>([](double x) { return std::array<cplx, 1>{cplx(std::cos(x))}; }, 0.0, pi / 2.0, 1e-13);
    CHECK(g[0].real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mellin transform checks")
{
    auto mu = make_preset("mu", 1000000);
    auto m = mellin_check(mu, 2.0, 2.0, -0.4, 1000000);
    CHECK(std::abs(m.closed_form - gamma(cplx(0.4)) / riemann_zeta(1.2)) < 1e-12 * std::abs(m.closed_form));
    CHECK(m.rel_diff <= 1e-6);

    auto s1 = make_preset("sigma:1", 1000000);
    auto r = mellin_check(s1, 3.0, 1.0, -0.3, 1000000);
    cplx closed = gamma(cplx(0.3)) / (riemann_zeta(2.7) * riemann_zeta(1.7));
    CHECK(std::abs(r.closed_form - closed) < 1e-12 * std::abs(closed));
    CHECK(r.rel_diff <= 1e-6);

    // Re s > 0 needs the subtracted Taylor head; two tolerances bracket it
    auto s0 = make_preset("sigma:0", 1000000);
    auto a = mellin_check(s0, 1.0, 1.0, cplx(0.5, 0.3), 1000000, 1e-7);
    auto b = mellin_check(s0, 1.0, 1.0, cplx(0.5, 0.3), 1000000, 1e-9);
    CHECK(a.subtracted_terms == 1);
    CHECK(std::abs(a.numeric - b.numeric) <= 1e-5 * std::abs(b.closed_form));
    CHECK(b.rel_diff <= 1e-5);

    CHECK_THROWS_AS(mellin_check(mu, 2.0, 2.0, -1.5, 100000), domain_error);
    CHECK_THROWS_AS(mellin_check(mu, 2.0, 2.0, 1.02, 100000), domain_error);
    CHECK_THROWS_AS(mellin_check(mu, 2.0, 2.0, 0.0, 100000), domain_error);
}

TEST_CASE("mertens probe")
{
    auto mu = make_preset("mu", 100);
    auto rep = mertens_check(mu, 100);
    bool seen10 = false;
    for (const auto& r : rep.rows)
        if (r.x == 10.0) {
            CHECK(r.value == -1);
            seen10 = true;
        }
    CHECK(seen10);
    CHECK(rep.exponent == 0.5);

    auto ep = make_preset("epstein", 10);
    auto e = mertens_check(ep, 4);
    CHECK(e.rows.back().x == 4.0);
    CHECK(e.rows.back().value == 0);

    auto s1 = make_preset("sigma:1", 100000);
    auto s = mertens_check(s1, 100000);
    CHECK(s.exponent == 1.5);
    for (const auto& r : s.rows)
        REQUIRE(r.ratio < 10.0);
    CHECK(s.csv().rfind("x,value,envelope,ratio\n", 0) == 0);
    CHECK_THROWS(mertens_check(s1, 200000));
}
