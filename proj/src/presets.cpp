#include "cnl/identity.hpp"

#include "cnl/special.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace cnl {

namespace {

using table_ptr = std::shared_ptr<const arith::CoefficientTable>;

std::mutex table_mutex;
std::map<std::string, table_ptr> table_memo;

template <class Make>
table_ptr cached(const std::string& key, Make make)
{
    {
        std::lock_guard<std::mutex> lock(table_mutex);
        auto it = table_memo.find(key);
        if (it != table_memo.end())
            return it->second;
    }
    // built outside the lock; a racing builder produces the same table
    auto t = std::make_shared<const arith::CoefficientTable>(make());
    std::lock_guard<std::mutex> lock(table_mutex);
    return table_memo.emplace(key, t).first->second;
}

long parse_parameter(const std::string& name, const std::string& prefix)
{
    std::string arg = name.substr(prefix.size());
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(arg, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (arg.empty() || used != arg.size())
        throw std::invalid_argument("preset '" + name + "': bad parameter '" + arg + "'");
    return v;
}

CNPreset mu_preset(std::size_t N)
{
    CNPreset p;
    p.name = "mu";
    p.fe = FunctionalEquationParams{0.5, 0.0, 1.0 / std::sqrt(pi), 1.0, 1.0};
    p.a_table = cached("ones:" + std::to_string(N), [&] { return arith::make_table("1", arith::ones(N)); });
    p.b_table = p.a_table;
    p.phi = {1.0, {{zeta_source(), 0.0}}};
    p.edge_inverse_vanishes = true;
    p.default_hyper = hyper_form::subtracted;
    p.growth = {1.0, 0.0};
    return p;
}

CNPreset epstein_preset(std::size_t N)
{
    CNPreset p;
    p.name = "epstein";
    p.fe = FunctionalEquationParams{1.0, 0.0, 1.0 / pi, 1.0, 1.0};
    p.a_table = cached("r2:" + std::to_string(N), [&] { return arith::make_table("r2", arith::r2_sequence(N)); });
    p.b_table = p.a_table;
    p.phi = {4.0, {{zeta_source(), 0.0}, {dirichlet_source(-4), 0.0}}};
    p.edge_inverse_vanishes = true;
    p.default_hyper = hyper_form::bare;
    p.growth = {0.25, 0.0};
    return p;
}

CNPreset dedekind_preset(long D, std::size_t N)
{
    if (D >= 0 || !arith::is_fundamental_discriminant(D))
        throw std::invalid_argument("dedekind preset needs a negative fundamental discriminant, got " +
                                    std::to_string(D));
    CNPreset p;
    p.name = "dedekind:" + std::to_string(D);
    p.fe = FunctionalEquationParams{1.0, 0.0, std::sqrt(static_cast<double>(-D)) / two_pi, 1.0, 1.0};
    p.a_table = cached(p.name + ":" + std::to_string(N),
                       [&] { return arith::make_table("a_D", arith::dedekind_coefficients(D, N)); });
    p.b_table = p.a_table;
    p.phi = {1.0, {{zeta_source(), 0.0}, {dirichlet_source(D), 0.0}}};
    p.edge_inverse_vanishes = true;
    p.default_hyper = hyper_form::bare;
    p.growth = {1.0, 0.0};
    return p;
}

CNPreset sigma_preset(long r, std::size_t N)
{
    if (r < 0 || r > 64)
        throw std::invalid_argument("sigma preset needs 0 <= r <= 64");
    CNPreset p;
    p.name = "sigma:" + std::to_string(r);
    if (r % 2 == 1) {
        double nu = ((r + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        p.fe = FunctionalEquationParams{1.0, 0.0, 1.0 / two_pi, static_cast<double>(r + 1), nu};
    }
    p.a_table = cached(p.name + ":" + std::to_string(N), [&] {
        return arith::make_table("sigma_" + std::to_string(r), arith::sigma_r(static_cast<unsigned>(r), N));
    });
    p.b_table = p.a_table;
    p.phi = {1.0, {{zeta_source(), 0.0}, {zeta_source(), static_cast<double>(r)}}};
    p.rt = rt_rule::sigma_r;
    p.r = static_cast<int>(r);
    p.edge_inverse_vanishes = true;
    p.default_hyper = hyper_form::subtracted;
    p.growth = {1.0, static_cast<double>(r)};
    p.abscissa = r + 1.0;
    p.mertens_exponent = 0.5 + r;
    return p;
}

CNPreset delta_preset(std::size_t N)
{
    CNPreset p;
    p.name = "delta";
    p.omega = 12.0;
    p.fe = FunctionalEquationParams{1.0, (p.omega - 1.0) / 2.0, 1.0 / two_pi, 1.0, 1.0};
    const std::string n = std::to_string(N);
    p.integer_table = cached("tau:" + n, [&] { return arith::make_table("tau", arith::ramanujan_tau(N)); });
    auto ints = p.integer_table;
    p.a_table = cached("tau0:" + n, [&] {
        arith::real_sequence a = arith::tau_normalized(ints->a);
        arith::real_sequence inv(N + 1, 0.0);
        for (std::size_t m = 1; m <= N; ++m)
            inv[m] = ints->a_inv_real[m] * std::pow(static_cast<double>(m), -5.5);
        return arith::make_real_table("tau0", std::move(a), std::move(inv));
    });
    p.b_table = p.a_table;
    p.phi = {1.0, {{delta_source(), 0.0}}};
    p.rt = rt_rule::cusp;
    p.edge_inverse_vanishes = false;
    p.default_hyper = hyper_form::subtracted;
    p.growth = {1.0, 0.0};
    p.default_zero_pairs = 20;
    return p;
}

}

const FunctionalEquationParams& CNPreset::params() const
{
    if (!fe)
        throw std::invalid_argument("preset " + name + " has no functional equation of the required shape");
    return *fe;
}

std::vector<zero_source> CNPreset::zero_sources() const
{
    std::vector<zero_source> out;
    for (const auto& f : phi.factors) {
        bool seen = false;
        for (const auto& s : out)
            seen = seen || s.label() == f.source.label();
        if (!seen)
            out.push_back(f.source);
    }
    return out;
}

CNPreset make_preset(const std::string& name, std::size_t N)
{
    if (N < 1)
        throw std::invalid_argument("make_preset: table length must be positive");
    if (name == "mu")
        return mu_preset(N);
    if (name == "epstein")
        return epstein_preset(N);
    if (name == "delta")
        return delta_preset(N);
    if (name.rfind("dedekind:", 0) == 0)
        return dedekind_preset(parse_parameter(name, "dedekind:"), N);
    if (name.rfind("sigma:", 0) == 0)
        return sigma_preset(parse_parameter(name, "sigma:"), N);
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names()
{
    return {"mu", "epstein", "dedekind:D", "sigma:r", "delta"};
}

cplx phi_eval(const CNPreset& p, cplx s) { return phi_eval(p.phi, s); }

cplx phi_prime(const CNPreset& p, cplx s) { return phi_prime(p.phi, s); }

double functional_equation_residual(const CNPreset& p, cplx s)
{
    const auto& fe = p.params();
    const double lc = std::log(fe.c);
    const cplx t = fe.delta - s;
    cplx left = std::exp(s * lc + log_gamma(fe.A * s + fe.B)) * phi_eval(p, s);
    cplx right = fe.nu * std::exp(t * lc + log_gamma(fe.A * t + fe.B)) * phi_eval(p, t);
    return std::abs(left - right) / std::abs(left);
}

}
