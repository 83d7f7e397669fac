#include "cnl/criteria.hpp"

#include "cnl/quadrature.hpp"
#include "cnl/special.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cnl {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

std::string fmt15(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

const arith::real_sequence& inverse_table(const CNPreset& p, std::size_t N)
{
    if (!p.a_table || p.a_table->N < N)
        throw std::invalid_argument("preset " + p.name + ": coefficient table shorter than " + std::to_string(N));
    return p.a_table->a_inv_real;
}

// P(x) for many x over one table.  Terms with x n^-ell > 745 underflow in
// the natural form and are replaced by block prefix sums in the regularized
// one; terms with x n^-ell < 1e-3 are summed through stored Taylor moments.
class p_evaluator {
public:
    static constexpr int moments = 7;  // j = 0..6
    static constexpr std::size_t block = 64;

    p_evaluator(const CNPreset& p, double k, double ell, std::size_t N) : p_(p), k_(k), ell_(ell), N_(N)
    {
        const auto& inv = inverse_table(p, N);
        w_.assign(N + 1, 0.0);
        e_.assign(N + 1, 0.0);
        for (std::size_t n = 1; n <= N; ++n) {
            double ln = std::log(static_cast<double>(n));
            w_[n] = inv[n] * std::exp(-k * ln);
            e_[n] = std::exp(-ell * ln);
        }
        const std::size_t nb = N / block + 2;
        prefix_.assign(nb, 0.0);
        prefix_abs_.assign(nb, 0.0);
        compensated_sum acc;
        for (std::size_t b = 1; b < nb; ++b) {
            for (std::size_t n = (b - 1) * block + 1; n <= std::min(N, b * block); ++n)
                acc.add(w_[n]);
            prefix_[b] = acc.value();
            prefix_abs_[b] = acc.magnitude();
        }
        suffix_.assign(nb, {});
        suffix_abs_.assign(nb, 0.0);
        std::array<compensated_sum, moments> s;
        for (std::size_t b = nb; b-- > 0;) {
            for (std::size_t n = b * block + 1; n <= std::min(N, (b + 1) * block); ++n) {
                double t = w_[n];
                for (int j = 0; j < moments; ++j) {
                    s[j].add(t);
                    t *= e_[n];
                }
            }
            for (int j = 0; j < moments; ++j)
                suffix_[b][j] = s[j].value();
            suffix_abs_[b] = s[0].magnitude();
        }
        inv_phi_ = inverse_phi_at(p, k);
    }

    p_value operator()(double x, lhs_form form) const
    {
        // n0: first n with x e_n <= 745, n1: last n with x e_n >= 1e-3
        std::size_t n0 = clamp_index(std::ceil(std::pow(x / 745.0, 1.0 / ell_)));
        while (n0 > 1 && x * e_[n0 - 1] <= 745.0)
            --n0;
        while (n0 <= N_ && x * e_[n0] > 745.0)
            ++n0;
        std::size_t n1 = std::min(N_, clamp_index(std::floor(std::pow(1000.0 * x, 1.0 / ell_))));
        while (n1 < N_ && x * e_[n1 + 1] >= 1e-3)
            ++n1;
        while (n1 >= 1 && x * e_[n1] < 1e-3)
            --n1;
        n1 = std::max(n1, n0 - 1);

        compensated_sum sum;
        double mag = 0.0;
        if (form == lhs_form::regularized) {
            double pre = 0.0, pre_abs = 0.0;
            prefix(n0 - 1, pre, pre_abs);
            sum.add(inv_phi_);
            sum.add(-pre);
            mag += std::abs(inv_phi_) + pre_abs;
        }
        for (std::size_t n = n0; n <= n1 && n <= N_; ++n) {
            double u = -x * e_[n];
            double t = w_[n] * (form == lhs_form::natural ? std::exp(u) : std::expm1(u));
            sum.add(t);
            mag += std::abs(t);
        }
        std::array<double, moments> m{};
        double m_abs = 0.0;
        suffix(n1, m, m_abs);
        double c = 1.0;
        for (int j = 0; j < moments; ++j) {
            if (j > 0)
                c *= -x / j;
            if (j == 0 && form == lhs_form::regularized)
                continue;
            sum.add(c * m[j]);
        }
        mag += m_abs;
        p_value out;
        out.value = sum.value();
        out.form = form;
        out.floor = 4.0 * eps * mag;
        out.tail = p_tail_bound(p_, k_, ell_, x, N_, form);
        return out;
    }

    p_value best(double x) const
    {
        p_value a = (*this)(x, lhs_form::natural);
        p_value b = (*this)(x, lhs_form::regularized);
        return b.error() < a.error() ? b : a;
    }

private:
    std::size_t clamp_index(double v) const
    {
        if (!(v >= 1.0))
            return 1;
        if (v > static_cast<double>(N_))
            return N_ + 1;
        return static_cast<std::size_t>(v);
    }

    void prefix(std::size_t n, double& v, double& abs) const
    {
        std::size_t b = n / block;
        compensated_sum s;
        s.add(prefix_[b]);
        double a = prefix_abs_[b];
        for (std::size_t m = b * block + 1; m <= n; ++m) {
            s.add(w_[m]);
            a += std::abs(w_[m]);
        }
        v = s.value();
        abs = a;
    }

    void suffix(std::size_t n, std::array<double, moments>& m, double& abs) const
    {
        // sum over index > n
        std::size_t b = (n + block - 1) / block;
        std::array<compensated_sum, moments> s;
        double a = 0.0;
        for (std::size_t i = n + 1; i <= std::min(N_, b * block); ++i) {
            double t = w_[i];
            a += std::abs(t);
            for (int j = 0; j < moments; ++j) {
                s[j].add(t);
                t *= e_[i];
            }
        }
        if (b * block < N_) {
            for (int j = 0; j < moments; ++j)
                s[j].add(suffix_[b][j]);
            a += suffix_abs_[b];
        }
        for (int j = 0; j < moments; ++j)
            m[j] = s[j].value();
        abs = a;
    }

    const CNPreset& p_;
    double k_, ell_;
    std::size_t N_;
    std::vector<double> w_, e_;
    std::vector<double> prefix_, prefix_abs_;
    std::vector<std::array<double, moments>> suffix_;  // sums over n > block * b
    std::vector<double> suffix_abs_;
    double inv_phi_ = 0.0;
};

}

double p_tail_bound(const CNPreset& p, double k, double ell, double x, std::size_t N, lhs_form form)
{
    const double C = p.growth.C, g = p.growth.g;
    const double decay = form == lhs_form::natural ? g - k : g - k - ell;
    if (!(decay < -1.0))
        return std::numeric_limits<double>::infinity();
    // blocks [a, q a] bounded by their largest integrand value
    const double q = 1.25;
    double a = static_cast<double>(N), total = 0.0;
    for (int i = 0; i < 20000; ++i) {
        double b = q * a;
        double w = form == lhs_form::natural ? std::exp(-x * std::pow(b, -ell))
                                             : std::min(1.0, x * std::pow(a, -ell));
        double piece = C * std::pow(a, g - k) * (std::log(b) + 1.0) * w * (b - a);
        total += piece;
        bool past_peak = form == lhs_form::regularized || x * std::pow(b, -ell) < 1.0;
        if (past_peak && piece <= 1e-20 * total)
            break;
        a = b;
    }
    return total;
}

p_value p_kfl(const CNPreset& p, double k, double ell, double x, std::size_t N, lhs_form form)
{
    const auto& inv = inverse_table(p, N);
    if (!(ell > 0.0))
        throw std::invalid_argument("p_kfl: ell must be positive");
    if (x < 0.0)
        throw std::invalid_argument("p_kfl: x must be nonnegative");
    auto s = smoothed_inverse_sum(p, inv, k, ell, x, N, form);
    p_value out;
    out.value = s.value;
    out.form = form;
    out.floor = 4.0 * eps * s.magnitude;
    out.tail = p_tail_bound(p, k, ell, x, N, form);
    return out;
}

p_value p_kfl(const CNPreset& p, double k, double ell, double x, std::size_t N)
{
    p_value a = p_kfl(p, k, ell, x, N, lhs_form::natural);
    p_value b = p_kfl(p, k, ell, x, N, lhs_form::regularized);
    return b.error() < a.error() ? b : a;
}

double predicted_exponent(const CNPreset& p, double k, double ell)
{
    return -k / ell + (1.0 + 2.0 * p.growth.g) / (2.0 * ell);
}

std::vector<double> log_grid(double x_min, double x_max, int points)
{
    if (points < 2 || !(x_min > 0.0) || !(x_max > x_min))
        throw std::invalid_argument("log_grid: need 0 < x_min < x_max and two points");
    std::vector<double> g(points);
    const double h = std::log(x_max / x_min) / (points - 1);
    for (int i = 0; i < points; ++i)
        g[i] = x_min * std::exp(i * h);
    g.back() = x_max;
    return g;
}

envelope_fit fit_envelope(const std::vector<double>& grid, const std::vector<double>& values,
                          const std::vector<double>& error)
{
    if (grid.size() != values.size() || grid.size() != error.size())
        throw std::invalid_argument("fit_envelope: length mismatch");
    const double half_decade = std::sqrt(10.0);
    const std::size_t n = grid.size();
    envelope_fit out;
    out.envelope.assign(n, 0.0);
    out.usable.assign(n, false);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = grid[i] / half_decade;
        double env = 0.0, err = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            if (grid[j] < lo * (1.0 - 1e-12))
                continue;
            env = std::max(env, std::abs(values[j]));
            err = std::max(err, error[j]);
        }
        out.envelope[i] = env;
        bool full_window = grid.front() <= lo * (1.0 + 1e-12);
        if (full_window && env > 10.0 * err && env > 0.0) {
            out.usable[i] = true;
            lx.push_back(std::log(grid[i]));
            ly.push_back(std::log(env));
        }
    }
    out.used = static_cast<int>(lx.size());
    if (out.used < 5)
        throw insufficient_signal("decay fit: only " + std::to_string(out.used) +
                                  " grid points rise above ten times their error estimate");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= lx.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    out.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double r = ly[i] - (my + out.slope * (lx[i] - mx));
        rss += r * r;
    }
    out.residual = std::sqrt(rss / lx.size());
    return out;
}

DecayFitReport decay_fit(const CNPreset& p, double k, double ell, double x_min, double x_max, int points,
                         std::size_t N)
{
    if (!(x_min >= 1.0) || !(x_max > x_min))
        throw std::invalid_argument("decay_fit: need 1 <= x_min < x_max");
    if (points < 8)
        throw std::invalid_argument("decay_fit: need at least 8 grid points");
    const double h = std::log(x_max / x_min) / (points - 1);
    const int ext = static_cast<int>(std::ceil(0.5 * std::log(10.0) / h - 1e-9));

    DecayFitReport rep;
    rep.preset = p.name;
    rep.k = k;
    rep.ell = ell;
    rep.predicted_exponent = predicted_exponent(p, k, ell);
    for (int i = -ext; i < points; ++i)
        rep.grid.push_back(i == points - 1 ? x_max : x_min * std::exp(i * h));

    p_evaluator eval(p, k, ell, N);
    for (double x : rep.grid) {
        p_value v = eval.best(x);
        rep.values.push_back(std::abs(v.value));
        rep.error.push_back(v.error());
    }
    auto fit = fit_envelope(rep.grid, rep.values, rep.error);
    rep.envelope = fit.envelope;
    rep.usable = fit.usable;
    rep.fitted_slope = fit.slope;
    rep.residual = fit.residual;
    rep.used = fit.used;
    return rep;
}

std::string DecayFitReport::csv() const
{
    std::ostringstream os;
    os << "x,value,envelope,ratio\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << fmt15(grid[i]) << ',' << fmt15(values[i]) << ',' << fmt15(envelope[i]) << ','
           << fmt15(envelope[i] / std::pow(grid[i], predicted_exponent)) << '\n';
    return os.str();
}

MellinReport mellin_check(const CNPreset& p, double k, double ell, cplx s, std::size_t N, double rel_tol)
{
    if (!(ell > 0.0))
        throw std::invalid_argument("mellin_check: ell must be positive");
    double nearest = std::max(0.0, std::round(s.real()));
    if (std::abs(s - nearest) <= 0.05)
        throw domain_error("mellin_check: s lies within 0.05 of the pole of Gamma(-s) at " + fmt15(nearest));
    const cplx arg = ell * s + k;
    if (!(arg.real() > p.abscissa))
        throw domain_error("mellin_check: Re(ell s + k) = " + fmt15(arg.real()) +
                           " is outside the region of absolute convergence (> " + fmt15(p.abscissa) + ")");
    if (!(s.real() > (p.abscissa - k) / ell))
        throw domain_error("mellin_check: need Re s > (abscissa - k) / ell");

    MellinReport rep;
    rep.closed_form = gamma(-s) / phi_eval(p, arg);

    // P minus its first m0 Taylor terms keeps the integral convergent at 0
    const int m0 = s.real() > 0.0 ? static_cast<int>(std::floor(s.real())) + 1 : 0;
    rep.subtracted_terms = m0;
    const int taylor_terms = m0 + 24;
    std::vector<double> coef(taylor_terms);  // (-1)^m / (m! phi(k + ell m))
    double fact = 1.0;
    for (int m = 0; m < taylor_terms; ++m) {
        if (m > 0)
            fact *= m;
        coef[m] = (m % 2 ? -1.0 : 1.0) / fact * inverse_phi_at(p, k + ell * m);
    }

    p_evaluator eval(p, k, ell, N);
    auto integrand = [&](double u) -> cplx {
        double x = std::exp(u);
        double v = eval(x, lhs_form::regularized).value;
        double t = 0.0, xm = 1.0;
        for (int m = 0; m < m0; ++m, xm *= x)
            t += coef[m] * xm;
        return std::exp(-s * u) * (v - t);
    };

    // [0, x_lo] from the Taylor series of P
    const double x_lo = 1e-3;
    cplx head = 0.0;
    for (int m = m0; m < taylor_terms; ++m)
        head += coef[m] * std::pow(x_lo, static_cast<double>(m) - s) / (static_cast<double>(m) - s);

    const double q = std::max(1e-3, s.real() - predicted_exponent(p, k, ell));
    const double x_cap = std::min(1e12, std::pow(static_cast<double>(N), ell) / 100.0);
    compensated_csum body;
    double err = 0.0;
    double scale = std::abs(rep.closed_form);
    double x = x_lo;
    double tail = std::numeric_limits<double>::infinity();
    while (x < x_cap) {
        double next = std::min(10.0 * x, x_cap);
        auto r = tanh_sinh(integrand, std::log(x), std::log(next), rel_tol, 12, 0.05 * rel_tol * scale);
        body.add(r.value);
        err += r.error;
        x = next;
        if (x < 10.0)
            continue;
        // tail estimate from the largest |P| over the last decade
        double env = 0.0;
        for (int i = 0; i <= 8; ++i)
            env = std::max(env, std::abs(eval(x * std::pow(10.0, -i / 8.0), lhs_form::regularized).value));
        tail = env * std::pow(x, -s.real()) / q;
        if (tail <= rel_tol * scale)
            break;
    }
    // analytic continuation of the subtracted Taylor part beyond x
    cplx far = 0.0;
    for (int m = 0; m < m0; ++m)
        far += coef[m] * std::pow(x, static_cast<double>(m) - s) / (static_cast<double>(m) - s);

    rep.numeric = head + body.value() + far;
    rep.quadrature_error = err;
    rep.tail_bound = tail;
    rep.x_cut = x;
    rep.rel_diff = std::abs(rep.numeric - rep.closed_form) / std::abs(rep.closed_form);
    return rep;
}

MertensReport mertens_check(const CNPreset& p, std::size_t x_max)
{
    if (x_max < 1)
        throw std::invalid_argument("mertens_check: x_max must be at least 1");
    if (!p.a_table || p.a_table->N < x_max)
        throw std::invalid_argument("mertens_check: coefficient table shorter than x_max");
    const auto& t = *p.a_table;
    std::vector<std::size_t> checkpoints;
    for (std::size_t dec = 1; dec <= x_max; dec *= 10) {
        for (std::size_t m : {1, 2, 5})
            if (m * dec <= x_max)
                checkpoints.push_back(m * dec);
        if (dec > x_max / 10)
            break;
    }
    if (checkpoints.empty() || checkpoints.back() != x_max)
        checkpoints.push_back(x_max);

    MertensReport rep;
    rep.preset = p.name;
    rep.exponent = p.mertens_exponent;
    arith::rational exact = 0;
    compensated_sum real;
    double envelope = 0.0;
    std::size_t next = 0;
    for (std::size_t n = 1; n <= x_max; ++n) {
        if (t.exact)
            exact += t.a_inv[n];
        real.add(t.a_inv_real[n]);
        double v = t.exact ? exact.convert_to<double>() : real.value();
        envelope = std::max(envelope, std::abs(v));
        if (n == checkpoints[next]) {
            MertensRow row;
            row.x = static_cast<double>(n);
            row.value = exact;
            row.value_real = v;
            row.envelope = envelope;
            row.ratio = std::abs(v) / std::pow(row.x, rep.exponent + 0.1);
            rep.rows.push_back(row);
            ++next;
        }
    }
    return rep;
}

std::string MertensReport::csv() const
{
    std::ostringstream os;
    os << "x,value,envelope,ratio\n";
    for (const auto& r : rows)
        os << fmt15(r.x) << ',' << fmt15(r.value_real) << ',' << fmt15(r.envelope) << ',' << fmt15(r.ratio) << '\n';
    return os.str();
}

}
