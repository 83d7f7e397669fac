#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct run_result {
    int status = -1;
    std::string out;
};

run_result run(const std::string& args)
{
    std::string cmd = std::string(CNL_CLI_PATH) + " " + args + " 2>/dev/null";
    run_result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("identity --preset mu --k 2").status == 2);  // no x
    CHECK(run("identity --preset nosuch --k 2 --x 1").status == 2);
    CHECK(run("identity --preset mu --k 2 --x 1 --format xml").status == 2);
    CHECK(run("--help").status == 0);
}

TEST_CASE("table reproduction")
{
    auto t1 = run("table1");
    CHECK(t1.status == 0);
    CHECK(t1.out.find("-0.0554663") != std::string::npos);
    CHECK(t1.out.find("result: PASS") != std::string::npos);
    auto t2 = run("table2 --format csv");
    CHECK(t2.status == 0);
    CHECK(t2.out.rfind("preset,k,x,lhs,lhs_printed,rhs,rhs_printed,abs_diff,status\n", 0) == 0);
    CHECK(t2.out.find("0.0213461") != std::string::npos);
}

TEST_CASE("identity output formats")
{
    const std::string args = "identity --preset sigma:1 --k 4 --x 3.141592653589793";
    auto csv1 = run(args + " --format csv");
    auto csv2 = run(args + " --format csv");
    CHECK(csv1.status == 0);
    CHECK(csv1.out == csv2.out);
    CHECK(csv1.out.rfind("preset,k,x,N_lhs,N_rhs,zero_pairs,lhs,", 0) == 0);
    CHECK(csv1.out.find("sigma:1,4,3.14159265358979,200,200000,50,-0.010308598") != std::string::npos);

    auto js = run(args + " --format json");
    REQUIRE(js.status == 0);
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["rows"][0]["lhs"].get<double>() == doctest::Approx(-0.0103086).epsilon(1e-5));
    CHECK(doc["summary"]["result"] == "PASS");

    auto tab = run(args);
    CHECK(tab.out.find("-0.0103086") != std::string::npos);

    // an impossible tolerance is a tolerance failure, not an error
    CHECK(run(args + " --tol 1e-12").status == 1);
}

TEST_CASE("config file supplies RunConfig keys")
{
    auto path = std::filesystem::temp_directory_path() / "cnl-test-config.json";
    std::ofstream(path) << R"({"preset": "dedekind:-4", "k": 6, "x": 9.869604401089358, "format": "csv"})";
    auto r = run("identity --config " + path.string());
    CHECK(r.status == 0);
    CHECK(r.out.find("dedekind:-4,6,9.86960440108936") != std::string::npos);
    // explicit flags override the file
    auto o = run("identity --config " + path.string() + " --k 7 --x 20.085536923187668");
    CHECK(o.out.find("dedekind:-4,7,") != std::string::npos);
    std::ofstream(path) << R"({"preset": "mu", "bogus": 1})";
    CHECK(run("identity --config " + path.string()).status == 2);
}

TEST_CASE("precision failures exit with 3")
{
    // 1F1(15.5; 1; -pi^2/0.3) lies beyond |z| = 30 where the expansion diverges
    CHECK(run("identity --preset epstein --k 15.5 --x 0.3").status == 3);
}

TEST_CASE("subcommands")
{
    auto ab = run("alphabeta --preset mu");
    CHECK(ab.status == 0);
    auto z = run("zeros --source zeta --count 3 --format csv");
    CHECK(z.status == 0);
    CHECK(z.out.find("zeta,1,14.13472514173") != std::string::npos);  // bisection stops at 1e-11
    auto c = run("coeffs --preset epstein --terms 5");
    CHECK(c.out == "n,a,a_inv\n1,4,1/4\n2,4,-1/4\n3,0,0\n4,4,0\n5,8,-1/2\n");
    auto m = run("mertens --preset mu --x-max 1000 --format json");
    REQUIRE(m.status == 0);
    auto doc = nlohmann::json::parse(m.out);
    bool found = false;
    for (const auto& row : doc["rows"])
        if (row["x"] == 10.0) {
            CHECK(row["value"] == "-1");
            found = true;
        }
    CHECK(found);
    auto d = run("decay --preset mu --k 2 --ell 2 --x-min 100 --x-max 100000 --points 16 --N 100000 --format csv");
    CHECK(d.out.rfind("x,value,envelope,ratio\n", 0) == 0);
    CHECK(d.out == run("decay --preset mu --k 2 --ell 2 --x-min 100 --x-max 100000 --points 16 --N 100000 --format csv").out);
    auto me = run("mellin --preset sigma:1 --k 3 --ell 1 --s-re -0.3 --N 100000");
    CHECK(me.out.find("rel_diff") != std::string::npos);
    CHECK(run("mellin --preset mu --k 2 --ell 2 --s-re 1.01").status == 2);
    auto pr = run("presets");
    CHECK(pr.out.find("dedekind:-4") != std::string::npos);
}

TEST_CASE("selftest")
{
    auto s = run("selftest");
    CHECK(s.status == 0);
    CHECK(s.out.find("selftest passed") != std::string::npos);
    CHECK(s.out.find("special.functional_equation") != std::string::npos);
}
