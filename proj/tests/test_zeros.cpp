#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnl/zeros.hpp"
#include "cnl/zeta.hpp"
#include "oracles.hpp"

#include <fstream>
#include <thread>

using namespace cnl;

namespace {

zero_cache& shared_cache()
{
    static zero_cache cache;
    return cache;
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "cnl-test-zeros";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}

TEST_CASE("hardy Z sign changes")
{
    CHECK((hardy_z(zeta_source(), 14.0) < 0) != (hardy_z(zeta_source(), 14.2) < 0));
    CHECK((hardy_z(dirichlet_source(-4), 6.0) < 0) != (hardy_z(dirichlet_source(-4), 6.1) < 0));
    double z0 = hardy_z(zeta_source(), 0.0);
    CHECK(std::abs(z0) == doctest::Approx(1.4603545088095868).epsilon(1e-10));
    for (double t : {3.0, 17.5, 44.4}) {
        double ref = static_cast<double>(oracle::hardy_z(1, t));
        REQUIRE(hardy_z(zeta_source(), t) == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
    }
}

TEST_CASE("zeros match the independent sign-change oracle")
{
    auto z = find_zeros(zeta_source(), 10);
    auto ref = oracle::critical_zeros(1, 10);
    for (int i = 0; i < 10; ++i)
        REQUIRE(std::abs(z[i].ordinate - static_cast<double>(ref[i])) <= 1e-9);
    CHECK(z[0].ordinate == doctest::Approx(14.134725141).epsilon(1e-10));
    CHECK(z[1].ordinate == doctest::Approx(21.022039639).epsilon(1e-10));

    auto b = find_zeros(dirichlet_source(-4), 5);
    auto bref = oracle::critical_zeros(-4, 5);
    for (int i = 0; i < 5; ++i)
        REQUIRE(std::abs(b[i].ordinate - static_cast<double>(bref[i])) <= 1e-9);
    CHECK(b[0].ordinate == doctest::Approx(6.0209489).epsilon(1e-7));

    auto c = find_zeros(dirichlet_source(-3), 3);
    auto cref = oracle::critical_zeros(-3, 3);
    for (int i = 0; i < 3; ++i)
        REQUIRE(std::abs(c[i].ordinate - static_cast<double>(cref[i])) <= 1e-9);
}

TEST_CASE("record invariants")
{
    auto z = shared_cache().zeros(zeta_source(), 50);
    REQUIRE(z.size() >= 50);
    for (std::size_t i = 0; i < z.size(); ++i) {
        REQUIRE(z[i].index == static_cast<int>(i) + 1);
        REQUIRE(z[i].verified_residual <= 1e-9);
        REQUIRE(std::abs(z[i].phi_prime) > 0.0);
        REQUIRE(std::abs(riemann_zeta(z[i].rho())) <= 1e-9);
        if (i > 0)
            REQUIRE(z[i].ordinate > z[i - 1].ordinate);
    }
    CHECK(z[0].phi_prime.real() == doctest::Approx(0.7832).epsilon(1e-3));
    CHECK(z[0].phi_prime.imag() == doctest::Approx(0.1247).epsilon(1e-3));
}

TEST_CASE("riemann-von mangoldt tripwire")
{
    auto z = shared_cache().zeros(zeta_source(), 50);
    for (double T = 15.0; T <= 120.0; T += 0.5) {
        int count = 0;
        for (const auto& r : z)
            count += r.ordinate <= T;
        INFO("T = " << T);
        REQUIRE(std::abs(count - riemann_von_mangoldt(T)) <= 1.0 + 0.5);
    }
}

TEST_CASE("derivative at composite zeros")
{
    auto zz = shared_cache().zeros(zeta_source(), 1);
    auto bz = shared_cache().zeros(dirichlet_source(-4), 1);
    phi_spec epstein{4.0, {{zeta_source(), 0.0}, {dirichlet_source(-4), 0.0}}};
    cplx at_zeta = derivative_at_composite_zero(epstein, 0, zz[0]);
    CHECK(std::abs(at_zeta - 4.0 * zeta_prime(zz[0].rho()) * dirichlet_beta(zz[0].rho())) < 1e-12);
    cplx at_beta = derivative_at_composite_zero(epstein, 1, bz[0]);
    CHECK(std::abs(at_beta - 4.0 * riemann_zeta(bz[0].rho()) * dirichlet_l_quadratic_prime(-4, bz[0].rho())) < 1e-12);
    CHECK_THROWS(derivative_at_composite_zero(epstein, 0, bz[0]));
    CHECK_THROWS(derivative_at_composite_zero(epstein, 5, zz[0]));
    // zeta(s) zeta(s - r): the shifted factor contributes at rho + r
    phi_spec sig{1.0, {{zeta_source(), 0.0}, {zeta_source(), 1.0}}};
    cplx shifted = derivative_at_composite_zero(sig, 1, zz[0]);
    cplx s0 = zz[0].rho() + 1.0;
    CHECK(std::abs(shifted - riemann_zeta(s0) * zeta_prime(zz[0].rho())) < 1e-12 * std::abs(shifted));
    // coincident zeros are rejected
    phi_spec twice{1.0, {{zeta_source(), 0.0}, {zeta_source(), 0.0}}};
    CHECK_THROWS(derivative_at_composite_zero(twice, 0, zz[0]));
}

TEST_CASE("L(Delta) zeros")
{
    auto d = shared_cache().zeros(delta_source(), 3);
    CHECK(d[0].ordinate == doctest::Approx(9.22237939992110252).epsilon(1e-10));
    for (const auto& r : d)
        REQUIRE(std::abs(delta_source().value(r.rho())) <= 1e-9);
}

TEST_CASE("catalog round trip")
{
    ZeroCatalog cat;
    cat.provenance = {"method test", "tolerance 1e-11"};
    cat.set_records("zeta", {{"zeta", 1, 14.134725141734693, {0.78, -0.12}, 1e-15},
                             {"zeta", 2, 21.022039638771555, {1.1, 0.3}, 2e-15}});
    cat.set_records("beta", {{"beta", 1, 6.020948904697597, {1.2965, 0.1827}, 3.1e-13}});
    auto path = scratch("roundtrip.tsv");
    catalog_store(cat, path);
    CHECK(catalog_load(path) == cat);

    std::ofstream(scratch("empty.tsv")).close();
    CHECK(catalog_load(scratch("empty.tsv")).empty());

    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    auto pos = text.find("21.022");
    text.replace(pos, 6, "21.0x2");
    std::ofstream(scratch("bad.tsv")) << text;
    try {
        catalog_load(scratch("bad.tsv"));
        FAIL("corrupted catalog loaded");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS(cat.set_records("zeta", {{"zeta", 2, 1.0, {1.0, 0.0}, 0.0}}));
}

TEST_CASE("zero cache persists and serializes writers")
{
    auto path = scratch("cache.tsv");
    std::filesystem::remove(path);
    {
        zero_cache cache(path);
        std::vector<std::thread> pool;
        for (int i = 0; i < 4; ++i)
            pool.emplace_back([&cache, i] { cache.zeros(i % 2 ? zeta_source() : dirichlet_source(-4), 5 + i); });
        for (auto& t : pool)
            t.join();
    }
    auto loaded = catalog_load(path);
    CHECK(loaded.records("zeta").size() >= 8);
    CHECK(loaded.records("beta").size() >= 7);
    bool dated = false;
    for (const auto& p : loaded.provenance)
        dated = dated || p.find("date") != std::string::npos;
    CHECK(dated);
    zero_cache again(path);
    CHECK(again.zeros(zeta_source(), 3) == std::vector<ZeroRecord>(loaded.records("zeta").begin(),
                                                                     loaded.records("zeta").begin() + 3));
}
