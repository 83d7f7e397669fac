#pragma once

#include "cnl/arith.hpp"
#include "cnl/phi.hpp"
#include "cnl/zeros.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cnl {

// c^s Gamma(A s + B) phi(s) = nu c^(delta - s) Gamma(A(delta - s) + B) psi(delta - s)
struct FunctionalEquationParams {
    double A = 1.0;
    double B = 0.0;
    double c = 1.0;
    double delta = 1.0;
    cplx nu = 1.0;

    double k_min() const { return delta + B / A; }
};

enum class rt_rule { none, sigma_r, cusp };
enum class hyper_form { subtracted, bare };
enum class lhs_form { natural, regularized };

// |a_inv(n)| <= C n^g d(n), used for truncation estimates
struct coefficient_growth {
    double C = 1.0;
    double g = 0.0;
};

struct CNPreset {
    std::string name;
    std::optional<FunctionalEquationParams> fe;  // absent for sigma_r with even r
    std::shared_ptr<const arith::CoefficientTable> a_table;
    std::shared_ptr<const arith::CoefficientTable> b_table;
    // exact integer table behind a normalized one (tau behind tau_0), else null
    std::shared_ptr<const arith::CoefficientTable> integer_table;
    phi_spec phi;
    rt_rule rt = rt_rule::none;
    int r = 0;           // sigma_r
    double omega = 0.0;  // cusp weight
    bool edge_inverse_vanishes = false;
    hyper_form default_hyper = hyper_form::subtracted;
    coefficient_growth growth;
    double abscissa = 1.0;         // absolute convergence of phi and 1/phi
    double mertens_exponent = 0.5;
    int default_zero_pairs = 50;

    std::size_t table_length() const { return a_table ? a_table->N : 0; }
    const FunctionalEquationParams& params() const;  // throws when absent
    // distinct zero sources of phi, in factor order
    std::vector<zero_source> zero_sources() const;
};

// "mu", "epstein", "dedekind:D", "sigma:r", "delta"; tables hold n <= N.
// Tables are cached per (name, N) and shared between presets.
CNPreset make_preset(const std::string& name, std::size_t N);
std::vector<std::string> preset_names();

cplx phi_eval(const CNPreset& p, cplx s);
cplx phi_prime(const CNPreset& p, cplx s);

// |c^s G(As+B) phi(s) - nu c^(delta-s) G(A(delta-s)+B) phi(delta-s)| relative
// to the left side; phi is self-dual for every shipped preset
double functional_equation_residual(const CNPreset& p, cplx s);

// sum_{n <= N} inv(n) n^-k exp(-x / n^ell); the regularized form sums
// inv(n) n^-k expm1(-x / n^ell) and adds 1/phi(k)
struct smoothed_sum {
    double value = 0.0;
    double magnitude = 0.0;  // sum of |terms|
};
smoothed_sum smoothed_inverse_sum(const CNPreset& p, const arith::real_sequence& inv, double k, double ell, double x,
                                  std::size_t N, lhs_form form);

// 1/phi(k), zero at the edge when the inverse series sums to zero there
double inverse_phi_at(const CNPreset& p, double k);

struct truncations {
    std::size_t N_lhs = 200;
    std::size_t N_rhs = 200000;
    int zero_pairs = 50;
};

class insufficient_zeros : public precision_loss {
public:
    using precision_loss::precision_loss;
};

double eval_lhs(const CNPreset& p, double k, double x, std::size_t N_lhs, lhs_form form = lhs_form::natural);
double eval_hyper_term(const CNPreset& p, double k, double x, std::size_t N_rhs, hyper_form form);
// prefactor c^(-(A delta + 2B)/A) Gamma(Ak + B) / (nu x^(Ak + B) Gamma(A delta + 2B))
double hyper_prefactor(const CNPreset& p, double k, double x);
// first-order size of the n-th subtracted hyper term, for truncation reports
double hyper_term_estimate(const CNPreset& p, double k, double x, std::size_t n);
// true residue from the trivial zeros; the identity adds -R_t
double eval_rt(const CNPreset& p, double k, double x);

struct zero_sum_result {
    double value = 0.0;
    double tail_bound = 0.0;  // size of the last included pair, summed over factors
    double scale = 0.0;       // sum of |pair terms|
    int pairs = 0;
};
zero_sum_result eval_zero_sum(const CNPreset& p, double k, double x, int zero_pairs, zero_cache& zeros);

struct identity_options {
    std::optional<hyper_form> hyper;  // preset default when empty
    lhs_form lhs = lhs_form::natural;
};

struct IdentityReport {
    std::string preset;
    double k = 0.0;
    double x = 0.0;
    truncations trunc;
    double lhs = 0.0;
    double rhs_hyper = 0.0;
    double rhs_rt = 0.0;
    double rhs_zero_sum = 0.0;
    double rhs_total = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double zero_tail = 0.0;
    hyper_form hyper = hyper_form::subtracted;
    lhs_form lhs_mode = lhs_form::natural;
    std::vector<std::string> warnings;

    static std::string csv_header();
    std::string csv_row() const;
};

IdentityReport verify_identity(const CNPreset& p, double k, double x, const truncations& t, zero_cache& zeros,
                               const identity_options& opt = {});

struct AlphaBetaReport {
    std::string preset;
    double alpha = 0.0;
    double beta = 0.0;
    double k = 0.0;
    double lhs_alpha = 0.0;  // conj(sqrt nu) alpha^p S_b(alpha)
    double lhs_beta = 0.0;   // sqrt nu beta^p S_a(beta)
    double lhs = 0.0;
    double rhs_constant = 0.0;
    double rhs_rt = 0.0;
    double rhs_zero_sum = 0.0;
    double rhs = 0.0;
    double diff = 0.0;
    double zero_tail = 0.0;
};

// symmetric form at k = k_min with alpha beta = c^(-2/A)
AlphaBetaReport alpha_beta(const CNPreset& p, double alpha, const truncations& t, zero_cache& zeros,
                           lhs_form form = lhs_form::natural);

double symmetric_alpha(const CNPreset& p);

}
