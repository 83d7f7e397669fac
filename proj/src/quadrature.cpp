#include "cnl/quadrature.hpp"

namespace cnl {

quadrature_result tanh_sinh(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                            int max_levels, double abs_tol)
{
    const double half = 0.5 * (b - a);
    const double t_max = 4.0;  // nodes reach within e^-85 of the endpoints
    auto node = [&](double t, double& w) {
        double u = 0.5 * pi * std::sinh(t);
        double ch = std::cosh(u);
        w = half * 0.5 * pi * std::cosh(t) / (ch * ch);
        // distance to the nearer endpoint without cancellation
        double d = (b - a) / (1.0 + std::exp(2.0 * std::abs(u)));
        return t >= 0 ? b - d : a + d;
    };

    double h = 1.0;
    compensated_csum sum;
    {
        double w;
        double x = node(0.0, w);
        sum.add(w * f(x));
        for (int j = 1; j * h <= t_max; ++j) {
            double xp = node(j * h, w);
            sum.add(w * f(xp));
            double xm = node(-j * h, w);
            sum.add(w * f(xm));
        }
    }
    cplx prev = h * sum.value();
    double err = std::abs(prev);
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        // new nodes are the odd multiples of h
        for (int j = 1; j * h <= t_max; j += 2) {
            double w;
            double xp = node(j * h, w);
            sum.add(w * f(xp));
            double xm = node(-j * h, w);
            sum.add(w * f(xm));
        }
        cplx cur = h * sum.value();
        err = std::abs(cur - prev);
        if (level >= 3 && err <= std::max(rel_tol * std::abs(cur), abs_tol))
            return {cur, err, level};
        prev = cur;
    }
    return {prev, err, max_levels};
}

}
