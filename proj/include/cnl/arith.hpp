#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cnl::arith {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// Arithmetic functions are stored 1-based: element 0 is unused and kept at 0,
// so a sequence for n <= N has size N+1.
using sequence = std::vector<rational>;
using real_sequence = std::vector<double>;

struct CoefficientTable {
    std::string label;
    std::size_t N = 0;
    sequence a;            // empty when !exact
    sequence a_inv;        // empty when !exact
    real_sequence a_real;  // always filled
    real_sequence a_inv_real;
    bool exact = false;
};

inline std::size_t length(const sequence& a) { return a.empty() ? 0 : a.size() - 1; }

sequence dirichlet_inverse(const sequence& a, std::size_t N);
real_sequence dirichlet_inverse(const real_sequence& a, std::size_t N);
sequence dirichlet_convolve(const sequence& a, const sequence& b, std::size_t N);
real_sequence dirichlet_convolve(const real_sequence& a, const real_sequence& b, std::size_t N);

sequence ones(std::size_t N);
sequence identity_element(std::size_t N);
sequence power_sequence(unsigned r, std::size_t N);  // n -> n^r
sequence pointwise(const sequence& a, const sequence& b);
sequence mobius(std::size_t N);
sequence sigma_r(unsigned r, std::size_t N);
sequence r2_sequence(std::size_t N);

enum class tau_method { automatic, pentagonal, jacobi_cube };
// tau(n) for n <= N; exact integers
sequence ramanujan_tau(std::size_t N, tau_method method = tau_method::automatic);
// tau(n) n^(-11/2)
real_sequence tau_normalized(const sequence& tau);

// Hecke-normalized coefficients grown from values at primes with
// lambda(p^(k+1)) = lambda(p) lambda(p^k) - lambda(p^(k-1)).
real_sequence hecke_coefficients(const std::function<double(std::uint64_t)>& at_prime, std::size_t N);
// Accepts a full expansion after checking lambda(1) = 1.
real_sequence hecke_coefficients(const real_sequence& expansion);

bool is_fundamental_discriminant(long D);
int kronecker_symbol(long a, long n);
// (D|n) for a fundamental discriminant D
int kronecker_chi(long D, long n);
sequence dedekind_coefficients(long D, std::size_t N);

rational summatory(const sequence& a, double x);
double summatory(const real_sequence& a, double x);

std::vector<std::uint32_t> primes_up_to(std::size_t N);
std::vector<std::uint32_t> smallest_prime_factor(std::size_t N);

real_sequence to_real(const sequence& a);
std::string to_string(const rational& q);

CoefficientTable make_table(std::string label, sequence a);
CoefficientTable make_real_table(std::string label, real_sequence a, real_sequence a_inv);

// CSV with header n,a,a_inv
std::string to_csv(const CoefficientTable& t);

}
