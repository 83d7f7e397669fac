#include "cnl/phi.hpp"

#include "cnl/arith.hpp"
#include "cnl/cusp.hpp"
#include "cnl/zeta.hpp"

#include <stdexcept>

namespace cnl {

std::string zero_source::label() const
{
    switch (kind) {
    case source_kind::zeta:
        return "zeta";
    case source_kind::dirichlet:
        return D == -4 ? std::string("beta") : "chi_" + std::to_string(D);
    case source_kind::delta:
        return "delta";
    }
    return "?";
}

cplx zero_source::value(cplx s) const
{
    switch (kind) {
    case source_kind::zeta:
        return riemann_zeta(s);
    case source_kind::dirichlet:
        return dirichlet_l_quadratic(D, s);
    case source_kind::delta:
        return delta_l_function::instance().value(s);
    }
    return 0.0;
}

cplx zero_source::derivative(cplx s) const
{
    switch (kind) {
    case source_kind::zeta:
        return zeta_prime(s);
    case source_kind::dirichlet:
        return dirichlet_l_quadratic_prime(D, s);
    case source_kind::delta:
        return delta_l_function::instance().derivative(s);
    }
    return 0.0;
}

double zero_source::c() const
{
    switch (kind) {
    case source_kind::zeta:
        return 1.0 / std::sqrt(pi);
    case source_kind::dirichlet:
        return std::sqrt(std::labs(D) / pi);
    case source_kind::delta:
        return 1.0 / two_pi;
    }
    return 1.0;
}

double zero_source::A() const { return kind == source_kind::delta ? 1.0 : 0.5; }

double zero_source::B() const
{
    switch (kind) {
    case source_kind::zeta:
        return 0.0;
    case source_kind::dirichlet:
        return D < 0 ? 0.5 : 0.0;
    case source_kind::delta:
        return 5.5;
    }
    return 0.0;
}

zero_source zeta_source() { return {source_kind::zeta, 1}; }

zero_source dirichlet_source(long D)
{
    if (D == 1 || !arith::is_fundamental_discriminant(D))
        throw std::invalid_argument("dirichlet_source: need a nontrivial fundamental discriminant");
    return {source_kind::dirichlet, D};
}

zero_source delta_source() { return {source_kind::delta, 1}; }

zero_source source_from_label(const std::string& label)
{
    if (label == "zeta")
        return zeta_source();
    if (label == "beta")
        return dirichlet_source(-4);
    if (label == "delta")
        return delta_source();
    if (label.rfind("chi_", 0) == 0)
        return dirichlet_source(std::stol(label.substr(4)));
    throw std::invalid_argument("unknown zero source label '" + label + "'");
}

cplx phi_eval(const phi_spec& phi, cplx s)
{
    cplx v = phi.scale;
    for (const auto& f : phi.factors)
        v *= f.source.value(s - f.shift);
    return v;
}

cplx phi_prime(const phi_spec& phi, cplx s)
{
    const std::size_t m = phi.factors.size();
    std::vector<cplx> val(m), der(m);
    for (std::size_t i = 0; i < m; ++i) {
        val[i] = phi.factors[i].source.value(s - phi.factors[i].shift);
        der[i] = phi.factors[i].source.derivative(s - phi.factors[i].shift);
    }
    cplx total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        cplx term = phi.scale * der[j];
        for (std::size_t i = 0; i < m; ++i)
            if (i != j)
                term *= val[i];
        total += term;
    }
    return total;
}

cplx phi_prime_at_factor_zero(const phi_spec& phi, std::size_t j, cplx s0, cplx factor_derivative)
{
    cplx v = phi.scale * factor_derivative;
    for (std::size_t i = 0; i < phi.factors.size(); ++i) {
        if (i == j)
            continue;
        cplx other = phi.factors[i].source.value(s0 - phi.factors[i].shift);
        if (std::abs(other) < 1e-9)
            throw domain_error("phi_prime: coincident zeros of two factors violate simplicity");
        v *= other;
    }
    return v;
}

}
