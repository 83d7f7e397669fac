#pragma once

#include "cnl/identity.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cnl {

struct p_value {
    double value = 0.0;
    double tail = 0.0;   // bound on the omitted n > N terms
    double floor = 0.0;  // rounding floor of the compensated sum
    lhs_form form = lhs_form::natural;

    double error() const { return tail + floor; }
};

// P(x) = sum_{n <= N} inv(n) n^-k exp(-x / n^ell)
p_value p_kfl(const CNPreset& p, double k, double ell, double x, std::size_t N, lhs_form form);
// whichever form has the smaller error budget at this x
p_value p_kfl(const CNPreset& p, double k, double ell, double x, std::size_t N);

// sum_n inv(n) n^-k |w(n)| for n > N, w the natural or regularized weight,
// with |inv(n)| <= C n^g d(n) and d(n) replaced by its average order
double p_tail_bound(const CNPreset& p, double k, double ell, double x, std::size_t N, lhs_form form);

// predicted envelope exponent -k/ell + (1 + 2g)/(2 ell), g the growth exponent
double predicted_exponent(const CNPreset& p, double k, double ell);

struct DecayFitReport {
    std::string preset;
    double k = 0.0;
    double ell = 0.0;
    std::vector<double> grid;
    std::vector<double> values;    // |P(x)|
    std::vector<double> envelope;  // running max over the trailing half decade
    std::vector<double> error;     // truncation plus rounding estimate
    std::vector<bool> usable;
    double fitted_slope = 0.0;
    double predicted_exponent = 0.0;
    double residual = 0.0;  // rms of the log fit
    int used = 0;

    std::string csv() const;  // x,value,envelope,ratio
};

class insufficient_signal : public precision_loss {
public:
    using precision_loss::precision_loss;
};

// Least-squares slope of log envelope against log x over points whose
// envelope exceeds 10 times their error.
struct envelope_fit {
    std::vector<double> envelope;
    std::vector<bool> usable;
    double slope = 0.0;
    double residual = 0.0;
    int used = 0;
};
envelope_fit fit_envelope(const std::vector<double>& grid, const std::vector<double>& values,
                          const std::vector<double>& error);

DecayFitReport decay_fit(const CNPreset& p, double k, double ell, double x_min, double x_max, int points,
                         std::size_t N);

// log-spaced grid with `points` nodes
std::vector<double> log_grid(double x_min, double x_max, int points);

struct MellinReport {
    cplx numeric = 0.0;
    cplx closed_form = 0.0;
    double quadrature_error = 0.0;
    double tail_bound = 0.0;
    double x_cut = 0.0;
    double rel_diff = 0.0;
    int subtracted_terms = 0;  // Taylor terms of P removed for Re s > 0
};

// int_0^inf x^(-s-1) P(x) dx against Gamma(-s) / phi(ell s + k)
MellinReport mellin_check(const CNPreset& p, double k, double ell, cplx s, std::size_t N, double rel_tol = 1e-9);

struct MertensRow {
    double x = 0.0;
    arith::rational value;
    double value_real = 0.0;
    double envelope = 0.0;  // running max of |M|
    double ratio = 0.0;     // |M| / x^(exponent + 0.1)
};

struct MertensReport {
    std::string preset;
    double exponent = 0.0;
    std::vector<MertensRow> rows;

    std::string csv() const;  // x,value,envelope,ratio
};

// checkpoints 1, 2, 5 times powers of ten, and x_max
MertensReport mertens_check(const CNPreset& p, std::size_t x_max);

}
