#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace cnl {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 6.283185307179586476925286766559005768;
inline constexpr double euler_e = 2.718281828459045235360287471352662498;
inline constexpr double log_two_pi = 1.837877066409345483560659472811235279;

// Raised when a routine cannot meet its accuracy contract in binary64.
class precision_loss : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised at poles and other points outside a function's domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Neumaier's variant of Kahan summation.
class compensated_sum {
public:
    void add(double v)
    {
        double t = s_ + v;
        if (std::abs(s_) >= std::abs(v))
            c_ += (s_ - t) + v;
        else
            c_ += (v - t) + s_;
        s_ = t;
        abs_ += std::abs(v);
    }
    compensated_sum& operator+=(double v)
    {
        add(v);
        return *this;
    }
    double value() const { return s_ + c_; }
    // sum of |terms|, used for cancellation diagnostics
    double magnitude() const { return abs_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
    double abs_ = 0.0;
};

class compensated_csum {
public:
    void add(cplx v)
    {
        re_.add(v.real());
        im_.add(v.imag());
    }
    compensated_csum& operator+=(cplx v)
    {
        add(v);
        return *this;
    }
    cplx value() const { return {re_.value(), im_.value()}; }
    double magnitude() const { return std::hypot(re_.magnitude(), im_.magnitude()); }

private:
    compensated_sum re_;
    compensated_sum im_;
};

// Cast to real after checking the imaginary residue.
inline double real_checked(cplx v, double tol, const char* what)
{
    double scale = std::max(1.0, std::abs(v.real()));
    if (!(std::abs(v.imag()) <= tol * scale))
        throw precision_loss(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
    return v.real();
}

inline bool is_nonpositive_integer(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}
