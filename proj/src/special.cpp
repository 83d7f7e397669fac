#include "cnl/special.hpp"

#include <array>
#include <limits>

namespace cnl {

namespace {

// B_2j / (2j (2j-1)), j = 1..10
constexpr std::array<double, 10> stirling_coef = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// B_2j / (2j), j = 1..10
constexpr std::array<double, 10> digamma_coef = {
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174611.0 / 6600.0,
};

constexpr double stirling_radius = 12.0;

cplx log_sin_pi(cplx z)
{
    double y = z.imag();
    const cplx i(0.0, 1.0);
    if (std::abs(y) < 15.0)
        return std::log(std::sin(pi * z));
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i) for y > 0, mirror for y < 0
    if (y > 0)
        return -i * pi * z + std::log((std::exp(2.0 * i * pi * z) - 1.0) / (2.0 * i));
    return i * pi * z + std::log((1.0 - std::exp(-2.0 * i * pi * z)) / (2.0 * i));
}

}

cplx log_gamma(cplx z)
{
    if (is_nonpositive_integer(z))
        throw domain_error("log_gamma: pole at nonpositive integer");
    if (z.real() < 0.5)
        return std::log(pi) - log_sin_pi(z) - log_gamma(1.0 - z);
    cplx shift = 0.0;
    if (std::abs(z) < stirling_radius) {
        int m = static_cast<int>(std::ceil(stirling_radius - z.real()));
        for (int k = 0; k < m; ++k)
            shift += std::log(z + static_cast<double>(k));
        z += static_cast<double>(m);
    }
    cplx w = 1.0 / z, w2 = w * w, series = 0.0, p = w;
    for (double c : stirling_coef) {
        series += c * p;
        p *= w2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * log_two_pi + series - shift;
}

cplx gamma(cplx z)
{
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0)
        return std::tgamma(z.real());
    return std::exp(log_gamma(z));
}

double rgamma(double x)
{
    if (x <= 0.0 && x == std::floor(x))
        return 0.0;
    if (x > 171.0)
        return 0.0;
    return 1.0 / std::tgamma(x);
}

cplx digamma(cplx z)
{
    if (is_nonpositive_integer(z))
        throw domain_error("digamma: pole at nonpositive integer");
    if (z.real() < 0.5)
        return digamma(1.0 - z) - pi / std::tan(pi * z);
    cplx shift = 0.0;
    if (std::abs(z) < stirling_radius) {
        int m = static_cast<int>(std::ceil(stirling_radius - z.real()));
        for (int k = 0; k < m; ++k)
            shift += 1.0 / (z + static_cast<double>(k));
        z += static_cast<double>(m);
    }
    cplx w2 = 1.0 / (z * z), series = 0.0, p = w2;
    for (double c : digamma_coef) {
        series += c * p;
        p *= w2;
    }
    return std::log(z) - 0.5 / z - series - shift;
}

namespace {

// sum_j (alpha)_j / (b)_j y^j / j!, y >= 0
double kummer_positive_series(double alpha, double b, double y)
{
    compensated_sum s;
    double term = 1.0;
    s.add(term);
    for (int j = 0; j < 5000; ++j) {
        term *= (alpha + j) / (b + j) * y / (j + 1.0);
        s.add(term);
        if (term == 0.0)
            break;
        if (j > y && std::abs(term) < 1e-17 * std::abs(s.value()))
            break;
    }
    double v = s.value();
    // a terminating series (alpha a nonpositive integer) is a polynomial with
    // real roots; near them the error stays eps * magnitude in absolute terms
    const bool terminates = alpha <= 0.0 && alpha == std::floor(alpha);
    if (!terminates && s.magnitude() > 1e6 * std::abs(v))
        throw precision_loss("kummer_1f1: cancellation in transformed series");
    return v;
}

}

kummer_expansion kummer_1f1_asymptotic(double a, double b, double z)
{
    if (b <= 0.0 && b == std::floor(b))
        throw domain_error("kummer_1f1: b is a nonpositive integer");
    if (z >= 0.0)
        throw domain_error("kummer_1f1_asymptotic: needs z < 0");
    const double y = -z;

    auto nonpositive_integer = [](double v) { return v <= 0.0 && v == std::floor(v); };
    // sum_s c_s, truncated before the smallest term unless it terminates;
    // err is the first omitted term
    auto truncated = [](auto next_ratio, bool terminates, double& err) {
        compensated_sum s;
        double term = 1.0, prev = std::numeric_limits<double>::infinity();
        err = 0.0;
        for (int j = 0; j < 400; ++j) {
            if (!terminates && std::abs(term) > prev) {
                err = prev;
                return s.value();
            }
            s.add(term);
            prev = std::abs(term);
            if (term == 0.0)
                return s.value();
            term *= next_ratio(j);
        }
        err = prev;
        return s.value();
    };

    double part1 = 0.0, err1 = 0.0;
    double r1 = rgamma(b - a);
    if (r1 != 0.0) {
        double s1 = truncated([&](int j) { return (a + j) * (a - b + 1 + j) / ((j + 1.0) * y); },
                              nonpositive_integer(a) || nonpositive_integer(a - b + 1), err1);
        double scale = std::tgamma(b) * r1 * std::pow(y, -a);
        part1 = scale * s1;
        err1 *= std::abs(scale);
    }
    double part2 = 0.0, err2 = 0.0;
    double r2 = rgamma(a);
    if (r2 != 0.0) {
        double s2 = truncated([&](int j) { return -(1 - a + j) * (b - a + j) / ((j + 1.0) * y); },
                              nonpositive_integer(1 - a) || nonpositive_integer(b - a), err2);
        double scale = std::tgamma(b) * r2 * std::exp(-y) * std::pow(y, a - b) * std::cos(pi * (a - b));
        part2 = scale * s2;
        err2 *= std::abs(scale);
    }
    return {part1 + part2, err1 + err2};
}

double kummer_1f1(double a, double b, double z)
{
    if (b <= 0.0 && b == std::floor(b))
        throw domain_error("kummer_1f1: b is a nonpositive integer");
    if (z > 0.0)
        throw domain_error("kummer_1f1: implemented for z <= 0");
    if (z == 0.0)
        return 1.0;
    const double y = -z;
    if (y <= 30.0)
        return kummer_1f1_transformed(a, b, z);
    auto asym = kummer_1f1_asymptotic(a, b, z);
    if (!(asym.error <= 1e-10 * std::abs(asym.value)))
        throw precision_loss("kummer_1f1: asymptotic expansion does not converge at z = " + std::to_string(z) +
                             " (a - b too large)");
    return asym.value;
}

double kummer_1f1_transformed(double a, double b, double z)
{
    if (b <= 0.0 && b == std::floor(b))
        throw domain_error("kummer_1f1: b is a nonpositive integer");
    if (z > 0.0)
        throw domain_error("kummer_1f1: implemented for z <= 0");
    return std::exp(z) * kummer_positive_series(b - a, b, -z);
}

double kummer_1f1_minus_one(double a, double b, double z)
{
    if (b <= 0.0 && b == std::floor(b))
        throw domain_error("kummer_1f1: b is a nonpositive integer");
    if (z < -0.5 || z > 0.0)
        return kummer_1f1(a, b, z) - 1.0;
    // direct series from j = 1; |z| small keeps it free of cancellation
    compensated_sum sum;
    double term = 1.0;
    for (int j = 0; j < 200; ++j) {
        term *= (a + j) / (b + j) * z / (j + 1.0);
        sum.add(term);
        if (std::abs(term) <= 1e-17 * std::abs(sum.value()))
            break;
    }
    return sum.value();
}

cplx upper_incomplete_gamma(cplx s, double x)
{
    if (!(x > 0.0))
        throw domain_error("upper_incomplete_gamma: x must be positive");
    const double eps = 1e-16;
    if (x > std::abs(s) + 1.0 || is_nonpositive_integer(s)) {
        // Legendre continued fraction, modified Lentz
        const double tiny = 1e-300;
        cplx b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
        for (int i = 1; i < 100000; ++i) {
            cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < tiny)
                d = tiny;
            c = b + an / c;
            if (std::abs(c) < tiny)
                c = tiny;
            d = 1.0 / d;
            cplx del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < eps)
                return std::exp(-x + s * std::log(x)) * h;
        }
        throw precision_loss("upper_incomplete_gamma: continued fraction did not converge");
    }
    // lower gamma by its series, then the complement
    compensated_csum sum;
    cplx term = 1.0 / s;
    sum.add(term);
    for (int j = 1; j < 100000; ++j) {
        term *= x / (s + static_cast<double>(j));
        sum.add(term);
        if (std::abs(term) < eps * std::abs(sum.value()))
            break;
    }
    cplx lower = std::exp(-x + s * std::log(x)) * sum.value();
    return gamma(s) - lower;
}

}
