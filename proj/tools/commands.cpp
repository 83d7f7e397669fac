#include "commands.hpp"

#include "cnl/criteria.hpp"
#include "cnl/special.hpp"
#include "cnl/tables.hpp"
#include "cnl/zeta.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

namespace cnl::cli {

namespace {

using cell = std::variant<std::string, double, long long>;

std::string fmt(double v, int digits)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double round15(double v) { return std::stod(fmt(v, 15)); }

// A rectangular result plus a key/value summary, rendered per output format.
struct sheet {
    std::vector<std::string> columns;
    std::vector<std::vector<cell>> rows;
    std::vector<std::pair<std::string, cell>> summary;

    void add(std::vector<cell> r) { rows.push_back(std::move(r)); }
    void note(std::string key, cell v) { summary.emplace_back(std::move(key), std::move(v)); }
};

std::string render(const cell& c, int digits)
{
    if (auto s = std::get_if<std::string>(&c))
        return *s;
    if (auto d = std::get_if<double>(&c))
        return fmt(*d, digits);
    return std::to_string(std::get<long long>(c));
}

nlohmann::ordered_json to_json(const cell& c)
{
    if (auto s = std::get_if<std::string>(&c))
        return *s;
    if (auto d = std::get_if<double>(&c))
        return std::isfinite(*d) ? nlohmann::ordered_json(round15(*d)) : nlohmann::ordered_json(nullptr);
    return std::get<long long>(c);
}

void emit(const sheet& sh, const std::string& format, std::ostream& out)
{
    if (format == "csv") {
        for (std::size_t i = 0; i < sh.columns.size(); ++i)
            out << (i ? "," : "") << sh.columns[i];
        out << '\n';
        for (const auto& r : sh.rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                out << (i ? "," : "") << render(r[i], 15);
            out << '\n';
        }
        for (const auto& [k, v] : sh.summary)
            std::cerr << k << ": " << render(v, 15) << '\n';
        return;
    }
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : sh.rows) {
            nlohmann::ordered_json row;
            for (std::size_t i = 0; i < r.size(); ++i)
                row[sh.columns[i]] = to_json(r[i]);
            doc["rows"].push_back(row);
        }
        doc["summary"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : sh.summary)
            doc["summary"][k] = to_json(v);
        out << doc.dump(2) << '\n';
        return;
    }
    if (format != "table")
        throw std::invalid_argument("unknown format '" + format + "' (table, csv or json)");
    std::vector<std::size_t> width(sh.columns.size());
    for (std::size_t i = 0; i < sh.columns.size(); ++i)
        width[i] = sh.columns[i].size();
    std::vector<std::vector<std::string>> text;
    for (const auto& r : sh.rows) {
        std::vector<std::string> t;
        for (std::size_t i = 0; i < r.size(); ++i) {
            t.push_back(render(r[i], 6));
            width[i] = std::max(width[i], t.back().size());
        }
        text.push_back(std::move(t));
    }
    auto line = [&](const std::vector<std::string>& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
            out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << t[i];
        out << '\n';
    };
    if (!sh.columns.empty())
        line(sh.columns);
    for (const auto& t : text)
        line(t);
    for (const auto& [k, v] : sh.summary)
        out << k << ": " << render(v, 6) << '\n';
}

std::filesystem::path catalog_path(const RunConfig& cfg)
{
    return cfg.catalog.empty() ? default_catalog_path() : std::filesystem::path(cfg.catalog);
}

lhs_form parse_lhs(const std::string& s)
{
    if (s == "natural")
        return lhs_form::natural;
    if (s == "regularized")
        return lhs_form::regularized;
    throw std::invalid_argument("lhs must be natural or regularized, got '" + s + "'");
}

std::optional<hyper_form> parse_hyper(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    if (s == "subtracted")
        return hyper_form::subtracted;
    if (s == "bare")
        return hyper_form::bare;
    throw std::invalid_argument("hyper must be subtracted or bare, got '" + s + "'");
}

truncations make_truncations(const RunConfig& cfg, const CNPreset& p)
{
    return {cfg.N_lhs, cfg.N_rhs, cfg.zero_pairs > 0 ? cfg.zero_pairs : p.default_zero_pairs};
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

template <class T>
void read_key(const nlohmann::json& j, const char* key, T& dst)
{
    if (j.contains(key))
        dst = j.at(key).get<T>();
}

template <class T>
void read_key(const nlohmann::json& j, const char* key, std::optional<T>& dst)
{
    if (j.contains(key))
        dst = j.at(key).get<T>();
}

}

void load_config(const std::string& path, RunConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("config " + path + ": expected a JSON object");
    static const std::vector<std::string> known = {
        "preset", "k",      "x",      "alpha", "ell",  "N_lhs", "N_rhs", "zero_pairs", "format", "catalog", "lhs",
        "hyper",  "x_min",  "x_max",  "points", "N",   "s_re",  "s_im",  "tol",        "source", "count",   "terms",
        "recompute"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config " + path + ": unknown key '" + key + "'");
    try {
        read_key(j, "preset", cfg.preset);
        read_key(j, "k", cfg.k);
        read_key(j, "x", cfg.x);
        read_key(j, "alpha", cfg.alpha);
        read_key(j, "ell", cfg.ell);
        read_key(j, "N_lhs", cfg.N_lhs);
        read_key(j, "N_rhs", cfg.N_rhs);
        read_key(j, "zero_pairs", cfg.zero_pairs);
        read_key(j, "format", cfg.format);
        read_key(j, "catalog", cfg.catalog);
        read_key(j, "lhs", cfg.lhs);
        read_key(j, "hyper", cfg.hyper);
        read_key(j, "x_min", cfg.x_min);
        read_key(j, "x_max", cfg.x_max);
        read_key(j, "points", cfg.points);
        read_key(j, "N", cfg.N);
        read_key(j, "s_re", cfg.s_re);
        read_key(j, "s_im", cfg.s_im);
        read_key(j, "tol", cfg.tol);
        read_key(j, "source", cfg.source);
        read_key(j, "count", cfg.count);
        read_key(j, "terms", cfg.terms);
        read_key(j, "recompute", cfg.recompute);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config " + path + ": " + e.what());
    }
}

int cmd_presets(const RunConfig& cfg, std::ostream& out)
{
    sheet sh;
    sh.columns = {"preset", "A", "B", "c", "delta", "nu", "k_min", "zero_sources"};
    for (const std::string name : {"mu", "epstein", "dedekind:-3", "dedekind:-4", "sigma:1", "sigma:5", "delta"}) {
        CNPreset p = make_preset(name, 16);
        const auto& fe = p.params();
        std::string src;
        for (const auto& s : p.zero_sources())
            src += (src.empty() ? "" : " ") + s.label();
        sh.add({p.name, fe.A, fe.B, fe.c, fe.delta, fe.nu.real(), fe.k_min(), src});
    }
    sh.note("families", std::string("mu, epstein, dedekind:D (D < 0 fundamental), sigma:r, delta"));
    sh.note("note", std::string("sigma:r with even r has no functional equation of the required shape"));
    emit(sh, cfg.format, out);
    return exit_pass;
}

int cmd_table(int which, const RunConfig& cfg, std::ostream& out)
{
    zero_cache zeros(catalog_path(cfg), cfg.recompute);
    truncations t{cfg.N_lhs, cfg.N_rhs, cfg.zero_pairs > 0 ? cfg.zero_pairs : 50};
    auto results = run_reference_table(which, t, zeros);
    sheet sh;
    sh.columns = {"preset", "k", "x", "lhs", "lhs_printed", "rhs", "rhs_printed", "abs_diff", "status"};
    bool all = true;
    for (const auto& r : results) {
        all = all && r.ok();
        std::string status = r.ok() ? "ok" : std::string("MISMATCH") + (r.lhs_ok ? "" : " lhs") + (r.rhs_ok ? "" : " rhs");
        sh.add({r.row.preset, r.row.k_label, r.row.x_label, r.report.lhs, r.row.lhs_printed, r.report.rhs_total,
                r.row.rhs_printed, r.report.abs_diff, status});
        if (!r.ok())
            std::cerr << "row k=" << r.row.k_label << " x=" << r.row.x_label << ": lhs " << fmt(r.report.lhs, 12)
                      << " vs " << r.row.lhs_printed << ", rhs " << fmt(r.report.rhs_total, 12) << " vs "
                      << r.row.rhs_printed << " (tolerance 2 units in the last printed digit)\n";
    }
    sh.note("result", std::string(verdict(all)));
    emit(sh, cfg.format, out);
    return all ? exit_pass : exit_tolerance;
}

int cmd_identity(const RunConfig& cfg, std::ostream& out)
{
    if (!cfg.x)
        throw std::invalid_argument("identity needs --x");
    CNPreset p = make_preset(cfg.preset, std::max(cfg.N_lhs, cfg.N_rhs));
    zero_cache zeros(catalog_path(cfg), cfg.recompute);
    identity_options opt{parse_hyper(cfg.hyper), parse_lhs(cfg.lhs)};
    auto rep = verify_identity(p, cfg.k, *cfg.x, make_truncations(cfg, p), zeros, opt);
    for (const auto& w : rep.warnings)
        std::cerr << "warning: " << w << '\n';
    const double tol = cfg.tol.value_or(1e-2);
    const bool ok = rep.rel_diff <= tol;
    if (cfg.format == "csv") {
        out << IdentityReport::csv_header() << '\n' << rep.csv_row() << '\n';
        std::cerr << "result: " << verdict(ok) << '\n';
        return ok ? exit_pass : exit_tolerance;
    }
    sheet sh;
    sh.columns = {"preset", "k", "x", "N_lhs", "N_rhs", "zero_pairs", "lhs", "rhs_hyper", "rhs_rt", "rhs_zero_sum",
                  "rhs_total", "abs_diff", "rel_diff"};
    sh.add({rep.preset, rep.k, rep.x, static_cast<long long>(rep.trunc.N_lhs),
            static_cast<long long>(rep.trunc.N_rhs), static_cast<long long>(rep.trunc.zero_pairs), rep.lhs,
            rep.rhs_hyper, rep.rhs_rt, rep.rhs_zero_sum, rep.rhs_total, rep.abs_diff, rep.rel_diff});
    sh.note("zero_tail", rep.zero_tail);
    sh.note("tolerance", tol);
    sh.note("result", std::string(verdict(ok)));
    emit(sh, cfg.format, out);
    return ok ? exit_pass : exit_tolerance;
}

int cmd_alphabeta(const RunConfig& cfg, std::ostream& out)
{
    CNPreset p = make_preset(cfg.preset, cfg.N_lhs);
    zero_cache zeros(catalog_path(cfg), cfg.recompute);
    const double alpha = cfg.alpha.value_or(symmetric_alpha(p));
    auto rep = alpha_beta(p, alpha, make_truncations(cfg, p), zeros, parse_lhs(cfg.lhs));
    const double tol = cfg.tol.value_or(p.rt == rt_rule::cusp ? 1e-5 : 1e-6);
    const bool ok = std::abs(rep.diff) <= tol;
    sheet sh;
    sh.columns = {"preset", "alpha", "beta", "k", "lhs_alpha", "lhs_beta", "lhs", "rhs_constant", "rhs_rt",
                  "rhs_zero_sum", "rhs", "diff"};
    sh.add({rep.preset, rep.alpha, rep.beta, rep.k, rep.lhs_alpha, rep.lhs_beta, rep.lhs, rep.rhs_constant,
            rep.rhs_rt, rep.rhs_zero_sum, rep.rhs, rep.diff});
    sh.note("zero_tail", rep.zero_tail);
    sh.note("tolerance", tol);
    sh.note("result", std::string(verdict(ok)));
    emit(sh, cfg.format, out);
    return ok ? exit_pass : exit_tolerance;
}

int cmd_zeros(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.count < 1)
        throw std::invalid_argument("zeros needs --count >= 1");
    zero_source src = source_from_label(cfg.source);
    zero_cache zeros(catalog_path(cfg), cfg.recompute);
    auto recs = zeros.zeros(src, cfg.count);
    sheet sh;
    sh.columns = {"source", "index", "ordinate", "re_phi_prime", "im_phi_prime", "residual"};
    double worst = 0.0;
    for (int i = 0; i < cfg.count; ++i) {
        const auto& r = recs[i];
        worst = std::max(worst, r.verified_residual);
        sh.add({r.source_label, static_cast<long long>(r.index), r.ordinate, r.phi_prime.real(), r.phi_prime.imag(),
                r.verified_residual});
    }
    sh.note("catalog", zeros.path().string());
    sh.note("max_residual", worst);
    emit(sh, cfg.format, out);
    return worst <= 1e-9 ? exit_pass : exit_tolerance;
}

int cmd_decay(const RunConfig& cfg, std::ostream& out)
{
    CNPreset p = make_preset(cfg.preset, cfg.N);
    auto rep = decay_fit(p, cfg.k, cfg.ell, cfg.x_min, cfg.x_max, cfg.points, cfg.N);
    const double slack = cfg.tol.value_or(p.rt == rt_rule::sigma_r ? 0.2 : 0.15);
    const bool ok = std::abs(rep.fitted_slope - rep.predicted_exponent) <= slack;
    if (cfg.format == "csv") {
        out << rep.csv();
    } else {
        sheet sh;
        sh.columns = {"x", "value", "envelope", "error", "usable"};
        for (std::size_t i = 0; i < rep.grid.size(); ++i)
            sh.add({rep.grid[i], rep.values[i], rep.envelope[i], rep.error[i],
                    std::string(rep.usable[i] ? "yes" : "no")});
        sh.note("probe", std::string("consistency probe, not a proof"));
        sh.note("fitted_slope", rep.fitted_slope);
        sh.note("predicted_exponent", rep.predicted_exponent);
        sh.note("fit_residual", rep.residual);
        sh.note("points_used", static_cast<long long>(rep.used));
        sh.note("slack", slack);
        sh.note("result", std::string(verdict(ok)));
        emit(sh, cfg.format, out);
        return ok ? exit_pass : exit_tolerance;
    }
    std::cerr << "fitted_slope: " << fmt(rep.fitted_slope, 15) << "\npredicted_exponent: "
              << fmt(rep.predicted_exponent, 15) << "\nresult: " << verdict(ok) << '\n';
    return ok ? exit_pass : exit_tolerance;
}

int cmd_mellin(const RunConfig& cfg, std::ostream& out)
{
    CNPreset p = make_preset(cfg.preset, cfg.N);
    cplx s(cfg.s_re, cfg.s_im);
    auto rep = mellin_check(p, cfg.k, cfg.ell, s, cfg.N);
    const double tol = cfg.tol.value_or(1e-6);
    const bool ok = rep.rel_diff <= tol;
    sheet sh;
    sh.columns = {"quantity", "re", "im"};
    sh.add({std::string("numeric"), rep.numeric.real(), rep.numeric.imag()});
    sh.add({std::string("closed_form"), rep.closed_form.real(), rep.closed_form.imag()});
    sh.note("rel_diff", rep.rel_diff);
    sh.note("quadrature_error", rep.quadrature_error);
    sh.note("tail_bound", rep.tail_bound);
    sh.note("x_cut", rep.x_cut);
    sh.note("subtracted_terms", static_cast<long long>(rep.subtracted_terms));
    sh.note("tolerance", tol);
    sh.note("result", std::string(verdict(ok)));
    emit(sh, cfg.format, out);
    return ok ? exit_pass : exit_tolerance;
}

int cmd_mertens(const RunConfig& cfg, std::ostream& out)
{
    if (!(cfg.x_max >= 1.0) || cfg.x_max > 1e8)
        throw std::invalid_argument("mertens needs 1 <= x_max <= 1e8");
    const auto x_max = static_cast<std::size_t>(cfg.x_max);
    CNPreset p = make_preset(cfg.preset, x_max);
    auto rep = mertens_check(p, x_max);
    const double bound = cfg.tol.value_or(10.0);
    double worst = 0.0;
    for (const auto& r : rep.rows)
        worst = std::max(worst, r.ratio);
    const bool ok = worst <= bound;
    if (cfg.format == "csv") {
        out << rep.csv();
        std::cerr << "max_ratio: " << fmt(worst, 15) << "\nresult: " << verdict(ok) << '\n';
        return ok ? exit_pass : exit_tolerance;
    }
    sheet sh;
    sh.columns = {"x", "value", "envelope", "ratio"};
    for (const auto& r : rep.rows)
        sh.add({r.x, p.a_table->exact ? cell(arith::to_string(r.value)) : cell(r.value_real), r.envelope, r.ratio});
    sh.note("exponent", rep.exponent + 0.1);
    sh.note("max_ratio", worst);
    sh.note("bound", bound);
    sh.note("result", std::string(verdict(ok)));
    emit(sh, cfg.format, out);
    return ok ? exit_pass : exit_tolerance;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.terms < 1)
        throw std::invalid_argument("coeffs needs --terms >= 1");
    CNPreset p = make_preset(cfg.preset, cfg.terms);
    out << arith::to_csv(p.integer_table ? *p.integer_table : *p.a_table);
    return exit_pass;
}

namespace {

struct check {
    const char* module;
    const char* id;
    std::function<std::string()> run;  // empty string on success, else the violation
};

std::string rel_check(double got, double want, double tol)
{
    double r = std::abs(got - want) / std::abs(want);
    return r <= tol ? std::string() : "relative error " + fmt(r, 3) + " > " + fmt(tol, 3);
}

std::vector<check> selftest_checks(zero_cache& zeros)
{
    std::vector<check> c;
    c.push_back({"arith", "convolution_identity", [] {
                     const std::size_t N = 3000;
                     for (const auto& a :
                          {arith::ones(N), arith::sigma_r(1, N), arith::r2_sequence(N), arith::ramanujan_tau(N),
                           arith::dedekind_coefficients(-3, N)}) {
                         auto e = arith::dirichlet_convolve(a, arith::dirichlet_inverse(a, N), N);
                         if (e != arith::identity_element(N))
                             return std::string("a * a^-1 differs from the identity");
                     }
                     return std::string();
                 }});
    c.push_back({"arith", "sigma_inverse_sieve", [] {
                     const std::size_t N = 3000;
                     for (unsigned r : {1u, 3u, 5u}) {
                         auto mu = arith::mobius(N);
                         auto sieve = arith::dirichlet_convolve(arith::pointwise(mu, arith::power_sequence(r, N)), mu, N);
                         if (sieve != arith::dirichlet_inverse(arith::sigma_r(r, N), N))
                             return "sigma_" + std::to_string(r) + " inverse differs from (mu N^r) * mu";
                     }
                     return std::string();
                 }});
    c.push_back({"arith", "dedekind_r2", [] {
                     const std::size_t N = 3000;
                     auto a = arith::dedekind_coefficients(-4, N), r2 = arith::r2_sequence(N);
                     for (std::size_t n = 1; n <= N; ++n)
                         if (4 * a[n] != r2[n])
                             return "4 a_n != r2(n) at n = " + std::to_string(n);
                     return std::string();
                 }});
    c.push_back({"special", "gamma_reflection", [] {
                     std::mt19937_64 rng(20261014);
                     std::uniform_real_distribution<double> re(-10.0, 10.0), im(-30.0, 30.0);
                     for (int i = 0; i < 100; ++i) {
                         cplx z(re(rng), im(rng));
                         if (std::abs(z.imag()) < 0.1 && std::abs(z.real() - std::round(z.real())) < 0.1)
                             z += cplx(0.0, 0.5);
                         cplx lhs = gamma(z) * gamma(1.0 - z), rhs = pi / std::sin(pi * z);
                         if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs))
                             return "reflection fails at z = " + fmt(z.real(), 6) + " + " + fmt(z.imag(), 6) + "i";
                     }
                     return std::string();
                 }});
    c.push_back({"special", "zeta_minus_one", [] { return rel_check(riemann_zeta(-1.0).real(), -1.0 / 12.0, 1e-10); }});
    c.push_back({"special", "zeta_prime_trivial_zeros", [] {
                     double fact = 1.0;
                     for (int m = 1; m <= 3; ++m) {
                         fact *= (2.0 * m - 1.0) * (2.0 * m);
                         double want = (m % 2 ? -1.0 : 1.0) * fact * riemann_zeta(2.0 * m + 1.0).real() /
                                       (2.0 * std::pow(two_pi, 2.0 * m));
                         auto r = rel_check(zeta_prime(-2.0 * m).real(), want, 1e-10);
                         if (!r.empty())
                             return "m = " + std::to_string(m) + ": " + r;
                     }
                     return std::string();
                 }});
    c.push_back({"special", "catalan", [] {
                     return rel_check(dirichlet_beta(2.0).real(), 0.915965594177219015054603514932384, 1e-10);
                 }});
    c.push_back({"special", "kummer_branches", [] {
                     // (A k + B, A delta + 2B) at k = k_min and k_min + 1
                     const std::vector<std::pair<double, double>> ab = {
                         {0.5, 0.5}, {1.0, 0.5}, {1.0, 1.0}, {2.0, 1.0}, {2.0, 2.0},
                         {3.0, 2.0}, {6.0, 6.0}, {7.0, 6.0}, {12.0, 12.0}, {13.0, 12.0}};
                     for (auto [a, b] : ab)
                         for (double y = 25.0; y <= 35.0; y += 1.0) {
                             double s = kummer_1f1_transformed(a, b, -y);
                             auto as = kummer_1f1_asymptotic(a, b, -y);
                             if (std::abs(s - as.value) > 1e-8 * std::abs(s))
                                 return "a = " + fmt(a, 4) + ", b = " + fmt(b, 4) + ", z = " + fmt(-y, 4);
                         }
                     return std::string();
                 }});
    c.push_back({"special", "functional_equation", [] {
                     for (const std::string name : {"mu", "epstein", "dedekind:-3", "sigma:1", "sigma:3", "delta"}) {
                         CNPreset p = make_preset(name, 8);
                         for (int i = 0; i < 20; ++i) {
                             double t = -20.0 + 40.0 * (i + 0.5) / 20.0;
                             cplx s(p.params().delta / 2.0 + 0.1, t);
                             double r = functional_equation_residual(p, s);
                             if (!(r <= 1e-8))
                                 return name + ": residual " + fmt(r, 3) + " at Im s = " + fmt(t, 4);
                         }
                     }
                     return std::string();
                 }});
    c.push_back({"zeros", "reverify", [&zeros] {
                     for (auto [src, n] : {std::pair{zeta_source(), 10}, std::pair{dirichlet_source(-4), 5}})
                         for (const auto& r : zeros.zeros(src, n)) {
                             double v = std::abs(src.value(r.rho()));
                             if (!(v <= 1e-9))
                                 return src.label() + " zero " + std::to_string(r.index) + ": |L| = " + fmt(v, 3);
                         }
                     return std::string();
                 }});
    c.push_back({"zeros", "first_ordinates", [&zeros] {
                     auto z = zeros.zeros(zeta_source(), 2);
                     auto b = zeros.zeros(dirichlet_source(-4), 1);
                     if (std::abs(z[0].ordinate - 14.134725141734693) > 1e-9 ||
                         std::abs(z[1].ordinate - 21.022039638771555) > 1e-9 ||
                         std::abs(b[0].ordinate - 6.0209489) > 1e-6)
                         return std::string("ordinates differ from reference values");
                     return std::string();
                 }});
    c.push_back({"identity", "assembly", [&zeros] {
                     CNPreset p = make_preset("dedekind:-4", 20000);
                     auto r = verify_identity(p, 2.0, std::exp(1.0) + 1.0, {200, 20000, 50}, zeros);
                     if (r.rhs_total != r.rhs_hyper + r.rhs_rt + r.rhs_zero_sum)
                         return std::string("rhs_total is not the sum of its parts");
                     if (r.abs_diff != std::abs(r.lhs - r.rhs_total))
                         return std::string("abs_diff is not |lhs - rhs_total|");
                     return std::string();
                 }});
    c.push_back({"identity", "symmetric_point", [&zeros] {
                     CNPreset p = make_preset("mu", 200);
                     auto r = alpha_beta(p, symmetric_alpha(p), {200, 200, 50}, zeros);
                     if (!(std::abs(r.rhs) <= 1e-6) || r.lhs != 0.0)
                         return "rhs " + fmt(r.rhs, 3) + ", lhs " + fmt(r.lhs, 3);
                     return std::string();
                 }});
    c.push_back({"criteria", "synthetic_fit", [] {
                     auto grid = log_grid(1e2, 1e6, 41);
                     for (double p : {0.75, 2.5}) {
                         std::vector<double> v, e(grid.size(), 0.0);
                         for (double x : grid)
                             v.push_back(std::pow(x, -p) * (1.5 + std::cos(20.0 * std::log(x))));
                         auto f = fit_envelope(grid, v, e);
                         if (std::abs(f.slope + p) > 0.01)
                             return "recovered " + fmt(f.slope, 6) + " for exponent " + fmt(-p, 6);
                     }
                     return std::string();
                 }});
    c.push_back({"criteria", "mertens_10", [] {
                     auto rep = mertens_check(make_preset("mu", 10), 10);
                     if (rep.rows.back().value != -1)
                         return "M(10) = " + arith::to_string(rep.rows.back().value);
                     return std::string();
                 }});
    return c;
}

}

int cmd_selftest(const RunConfig& cfg, std::ostream& out)
{
    zero_cache zeros(catalog_path(cfg), cfg.recompute);
    for (const auto& c : selftest_checks(zeros)) {
        std::string why;
        try {
            why = c.run();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        if (!why.empty()) {
            out << "FAIL " << c.module << '.' << c.id << ": " << why << '\n';
            return exit_tolerance;
        }
        out << "ok   " << c.module << '.' << c.id << '\n';
    }
    out << "selftest passed\n";
    return exit_pass;
}

}
