#pragma once

#include "cnl/numeric.hpp"

#include <array>
#include <functional>

namespace cnl {

namespace detail {

inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at nodes 1, 3, 5, 7
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t M, class F>
void gk_panel(F& f, double a, double b, std::array<cplx, M>& k, double& err)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<cplx, M> g{};
    k.fill(0.0);
    for (std::size_t i = 0; i < 8; ++i) {
        double x = gk_nodes[i] * h;
        std::array<cplx, M> f1 = f(c - x);
        std::array<cplx, M> f2 = i == 7 ? std::array<cplx, M>{} : f(c + x);
        for (std::size_t m = 0; m < M; ++m) {
            cplx s = f1[m] + f2[m];
            k[m] += gk_weights[i] * s;
            if (i % 2 == 1)
                g[m] += g7_weights[i / 2] * s;
        }
    }
    err = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        k[m] *= h;
        err = std::max(err, std::abs(k[m] - g[m] * h));
    }
}

template <std::size_t M, class F>
void gk_adapt(F& f, double a, double b, double tol, int depth, std::array<cplx, M>& acc, int& evals)
{
    std::array<cplx, M> k;
    double err;
    gk_panel<M>(f, a, b, k, err);
    evals += 15;
    double kmax = 0.0;
    for (const auto& v : k)
        kmax = std::max(kmax, std::abs(v));
    // stop at the tolerance, at the rounding floor of the panel, or at depth
    if (err <= tol || err <= 1e-14 * kmax || depth <= 0) {
        for (std::size_t m = 0; m < M; ++m)
            acc[m] += k[m];
        return;
    }
    double c = 0.5 * (a + b);
    gk_adapt<M>(f, a, c, 0.5 * tol, depth - 1, acc, evals);
    gk_adapt<M>(f, c, b, 0.5 * tol, depth - 1, acc, evals);
}

}

// Adaptive Gauss-Kronrod (7/15) for vector-valued complex integrands on
// [a, b], split first into `panels` equal pieces.
template <std::size_t M, class F>
std::array<cplx, M> integrate_gk(F&& f, double a, double b, double abs_tol, int panels = 1, int max_depth = 30)
{
    std::array<cplx, M> acc{};
    int evals = 0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        detail::gk_adapt<M>(f, a + p * h, a + (p + 1) * h, abs_tol / panels, max_depth, acc, evals);
    return acc;
}

struct quadrature_result {
    cplx value;
    double error;
    int levels;
};

// Double-exponential (tanh-sinh) rule on a finite interval; refines by
// halving the step until successive levels agree to rel_tol, or to abs_tol.
quadrature_result tanh_sinh(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                            int max_levels = 12, double abs_tol = 0.0);

}
