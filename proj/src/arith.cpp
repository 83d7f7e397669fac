#include "cnl/arith.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cnl::arith {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

bool all_integers(const sequence& a, std::size_t N)
{
    for (std::size_t n = 1; n <= N; ++n)
        if (denominator(a[n]) != 1)
            return false;
    return true;
}

// inverse of an integer sequence with a[1] = +-1; stays in integers
std::vector<bigint> integer_inverse(const std::vector<bigint>& a, std::size_t N)
{
    const bigint& a1 = a[1];
    std::vector<bigint> acc(N + 1), inv(N + 1);
    for (std::size_t d = 1; d <= N; ++d) {
        inv[d] = d == 1 ? a1 : bigint(-acc[d] * a1);
        acc[d] = 0;
        if (inv[d] == 0)
            continue;
        for (std::size_t m = 2, n = 2 * d; n <= N; ++m, n += d)
            if (a[m] != 0)
                acc[n] += a[m] * inv[d];
    }
    return inv;
}

}

sequence dirichlet_inverse(const sequence& a, std::size_t N)
{
    if (length(a) < N)
        throw std::invalid_argument("dirichlet_inverse: sequence shorter than N");
    if (N == 0)
        return sequence(1);
    if (a[1] == 0)
        throw std::invalid_argument("dirichlet_inverse: a(1) = 0 has no inverse");

    if (all_integers(a, N)) {
        const bigint a1 = numerator(a[1]);
        bool divisible = true;
        for (std::size_t n = 2; n <= N && divisible; ++n)
            divisible = numerator(a[n]) % a1 == 0;
        if (divisible) {
            // a = a1 * b with b integral and b(1) = 1, so a^-1 = b^-1 / a1
            std::vector<bigint> b(N + 1);
            for (std::size_t n = 1; n <= N; ++n)
                b[n] = numerator(a[n]) / a1;
            auto inv = integer_inverse(b, N);
            sequence out(N + 1);
            for (std::size_t n = 1; n <= N; ++n)
                out[n] = a1 == 1 ? rational(inv[n]) : rational(inv[n], a1);
            return out;
        }
    }

    const rational a1_inv = 1 / a[1];
    sequence acc(N + 1), inv(N + 1);
    for (std::size_t d = 1; d <= N; ++d) {
        inv[d] = d == 1 ? a1_inv : rational(-acc[d] * a1_inv);
        acc[d] = 0;
        if (inv[d] == 0)
            continue;
        for (std::size_t m = 2, n = 2 * d; n <= N; ++m, n += d)
            if (a[m] != 0)
                acc[n] += a[m] * inv[d];
    }
    return inv;
}

real_sequence dirichlet_inverse(const real_sequence& a, std::size_t N)
{
    if (a.size() < N + 1)
        throw std::invalid_argument("dirichlet_inverse: sequence shorter than N");
    if (N == 0)
        return real_sequence(1, 0.0);
    if (a[1] == 0.0)
        throw std::invalid_argument("dirichlet_inverse: a(1) = 0 has no inverse");
    real_sequence acc(N + 1, 0.0), inv(N + 1, 0.0);
    for (std::size_t d = 1; d <= N; ++d) {
        inv[d] = d == 1 ? 1.0 / a[1] : -acc[d] / a[1];
        if (inv[d] == 0.0)
            continue;
        for (std::size_t m = 2, n = 2 * d; n <= N; ++m, n += d)
            acc[n] += a[m] * inv[d];
    }
    return inv;
}

sequence dirichlet_convolve(const sequence& a, const sequence& b, std::size_t N)
{
    if (length(a) < N || length(b) < N)
        throw std::invalid_argument("dirichlet_convolve: sequence shorter than N");
    sequence c(N + 1);
    for (std::size_t d = 1; d <= N; ++d) {
        if (a[d] == 0)
            continue;
        for (std::size_t m = 1, n = d; n <= N; ++m, n += d)
            if (b[m] != 0)
                c[n] += a[d] * b[m];
    }
    return c;
}

real_sequence dirichlet_convolve(const real_sequence& a, const real_sequence& b, std::size_t N)
{
    if (a.size() < N + 1 || b.size() < N + 1)
        throw std::invalid_argument("dirichlet_convolve: sequence shorter than N");
    real_sequence c(N + 1, 0.0);
    for (std::size_t d = 1; d <= N; ++d)
        for (std::size_t m = 1, n = d; n <= N; ++m, n += d)
            c[n] += a[d] * b[m];
    return c;
}

sequence ones(std::size_t N)
{
    sequence a(N + 1, rational(1));
    a[0] = 0;
    return a;
}

sequence identity_element(std::size_t N)
{
    sequence e(N + 1);
    if (N >= 1)
        e[1] = 1;
    return e;
}

sequence power_sequence(unsigned r, std::size_t N)
{
    sequence a(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        a[n] = boost::multiprecision::pow(bigint(n), r);
    return a;
}

sequence pointwise(const sequence& a, const sequence& b)
{
    std::size_t N = std::min(length(a), length(b));
    sequence c(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        c[n] = a[n] * b[n];
    return c;
}

std::vector<std::uint32_t> smallest_prime_factor(std::size_t N)
{
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (std::size_t i = 2; i <= N; ++i) {
        if (spf[i] != 0)
            continue;
        for (std::size_t j = i; j <= N; j += i)
            if (spf[j] == 0)
                spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

std::vector<std::uint32_t> primes_up_to(std::size_t N)
{
    auto spf = smallest_prime_factor(N);
    std::vector<std::uint32_t> p;
    for (std::size_t i = 2; i <= N; ++i)
        if (spf[i] == i)
            p.push_back(static_cast<std::uint32_t>(i));
    return p;
}

sequence mobius(std::size_t N)
{
    auto spf = smallest_prime_factor(N);
    sequence mu(N + 1);
    if (N >= 1)
        mu[1] = 1;
    std::vector<int> m(N + 1, 0);
    if (N >= 1)
        m[1] = 1;
    for (std::size_t n = 2; n <= N; ++n) {
        std::size_t p = spf[n], q = n / p;
        m[n] = (q % p == 0) ? 0 : -m[q];
        mu[n] = m[n];
    }
    return mu;
}

sequence sigma_r(unsigned r, std::size_t N)
{
    std::vector<bigint> s(N + 1);
    for (std::size_t d = 1; d <= N; ++d) {
        bigint dr = boost::multiprecision::pow(bigint(d), r);
        for (std::size_t n = d; n <= N; n += d)
            s[n] += dr;
    }
    sequence out(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        out[n] = s[n];
    return out;
}

sequence r2_sequence(std::size_t N)
{
    // r2(n) = 4 * sum_{d | n} chi_{-4}(d)
    std::vector<long> c(N + 1, 0);
    for (std::size_t d = 1; d <= N; d += 2) {
        int chi = (d % 4 == 1) ? 1 : -1;
        for (std::size_t n = d; n <= N; n += d)
            c[n] += chi;
    }
    sequence out(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        out[n] = 4 * c[n];
    return out;
}

namespace {

__int128 checked_mul_add(__int128 acc, __int128 x, __int128 y)
{
    __int128 p, s;
    if (__builtin_mul_overflow(x, y, &p) || __builtin_add_overflow(acc, p, &s))
        throw std::overflow_error("ramanujan_tau: 128-bit overflow");
    return s;
}

}

sequence ramanujan_tau(std::size_t N, tau_method method)
{
    // q prod (1-q^n)^24 as repeated sparse-times-dense products: either 23
    // factors of the pentagonal-number series of prod (1-q^n), or 7 factors
    // of Jacobi's series for its cube.  Exponents must be increasing.
    const std::size_t M = N;  // coefficients q^0 .. q^(N-1)
    if (method == tau_method::automatic)
        method = N <= 4000 ? tau_method::pentagonal : tau_method::jacobi_cube;
    std::vector<std::pair<std::size_t, long>> sparse;
    std::size_t power;
    if (method == tau_method::pentagonal) {
        sparse.emplace_back(0, 1);
        for (std::size_t k = 1;; ++k) {
            long sign = (k % 2 == 0) ? 1 : -1;
            std::size_t e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
            if (e1 >= M)
                break;
            sparse.emplace_back(e1, sign);
            if (e2 < M)
                sparse.emplace_back(e2, sign);
        }
        power = 24;
    } else {
        for (std::size_t k = 0;; ++k) {
            std::size_t e = k * (k + 1) / 2;
            if (e >= M)
                break;
            sparse.emplace_back(e, (k % 2 == 0 ? 1L : -1L) * static_cast<long>(2 * k + 1));
        }
        power = 8;
    }
    std::vector<__int128> cur(M, 0), next(M, 0);
    for (auto& [e, c] : sparse)
        cur[e] += c;
    for (std::size_t step = 1; step < power; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t i = 0; i < M; ++i) {
            if (cur[i] == 0)
                continue;
            for (auto& [e, c] : sparse) {
                if (i + e >= M)
                    break;
                next[i + e] = checked_mul_add(next[i + e], cur[i], c);
            }
        }
        std::swap(cur, next);
    }
    sequence tau(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        __int128 v = cur[n - 1];
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        bigint b = static_cast<std::uint64_t>(u >> 64);
        b <<= 64;
        b += static_cast<std::uint64_t>(u);
        tau[n] = neg ? rational(-b) : rational(b);
    }
    return tau;
}

real_sequence tau_normalized(const sequence& tau)
{
    real_sequence t(tau.size(), 0.0);
    for (std::size_t n = 1; n < tau.size(); ++n)
        t[n] = tau[n].convert_to<double>() * std::pow(static_cast<double>(n), -5.5);
    return t;
}

real_sequence hecke_coefficients(const std::function<double(std::uint64_t)>& at_prime, std::size_t N)
{
    auto spf = smallest_prime_factor(N);
    real_sequence lam(N + 1, 0.0);
    if (N >= 1)
        lam[1] = 1.0;
    for (std::size_t n = 2; n <= N; ++n) {
        std::size_t p = spf[n], m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m > 1) {
            lam[n] = lam[pk] * lam[m];
            continue;
        }
        if (pk == p)
            lam[n] = at_prime(p);
        else
            lam[n] = lam[p] * lam[pk / p] - lam[pk / (p * p)];
    }
    return lam;
}

real_sequence hecke_coefficients(const real_sequence& expansion)
{
    if (expansion.size() < 2 || std::abs(expansion[1] - 1.0) > 1e-15)
        throw std::invalid_argument("hecke_coefficients: lambda(1) != 1");
    return expansion;
}

namespace {

bool squarefree(long m)
{
    m = std::labs(m);
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0)
            return false;
    return true;
}

long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

}

bool is_fundamental_discriminant(long D)
{
    if (D == 1)
        return true;
    if (D == 0)
        return false;
    if (mod(D, 4) == 1)
        return squarefree(D);
    if (mod(D, 4) == 0) {
        long m = D / 4;
        long r = mod(m, 4);
        return (r == 2 || r == 3) && squarefree(m);
    }
    return false;
}

int kronecker_symbol(long a, long n)
{
    if (n <= 0)
        throw std::invalid_argument("kronecker_symbol: n must be positive");
    int k = 1;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0)
            return 0;
        long r = mod(a, 8);
        if ((v & 1) && (r == 3 || r == 5))
            k = -k;
    }
    // Jacobi symbol (a | n), n odd
    long b = mod(a, n);
    while (b != 0) {
        while (b % 2 == 0) {
            b /= 2;
            long r = n % 8;
            if (r == 3 || r == 5)
                k = -k;
        }
        std::swap(b, n);
        if (b % 4 == 3 && n % 4 == 3)
            k = -k;
        b %= n;
    }
    return n == 1 ? k : 0;
}

int kronecker_chi(long D, long n)
{
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("kronecker_chi: " + std::to_string(D) + " is not a fundamental discriminant");
    return kronecker_symbol(D, n);
}

sequence dedekind_coefficients(long D, std::size_t N)
{
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("dedekind_coefficients: need a negative fundamental discriminant");
    std::vector<long> c(N + 1, 0);
    for (std::size_t d = 1; d <= N; ++d) {
        int chi = kronecker_symbol(D, static_cast<long>(d));
        if (chi == 0)
            continue;
        for (std::size_t n = d; n <= N; n += d)
            c[n] += chi;
    }
    sequence out(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        out[n] = c[n];
    return out;
}

rational summatory(const sequence& a, double x)
{
    if (x < 1.0)
        return rational(0);
    auto top = static_cast<std::size_t>(std::floor(x));
    if (top > length(a))
        throw std::out_of_range("summatory: x beyond table length");
    rational s = 0;
    for (std::size_t n = 1; n <= top; ++n)
        s += a[n];
    return s;
}

double summatory(const real_sequence& a, double x)
{
    if (x < 1.0)
        return 0.0;
    auto top = static_cast<std::size_t>(std::floor(x));
    if (top + 1 > a.size())
        throw std::out_of_range("summatory: x beyond table length");
    double s = 0.0, c = 0.0;
    for (std::size_t n = 1; n <= top; ++n) {
        double y = a[n] - c, t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

real_sequence to_real(const sequence& a)
{
    real_sequence r(a.size(), 0.0);
    for (std::size_t n = 1; n < a.size(); ++n)
        r[n] = a[n].convert_to<double>();
    return r;
}

std::string to_string(const rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

CoefficientTable make_table(std::string label, sequence a)
{
    CoefficientTable t;
    t.label = std::move(label);
    t.N = length(a);
    t.a_inv = dirichlet_inverse(a, t.N);
    t.a = std::move(a);
    t.a_real = to_real(t.a);
    t.a_inv_real = to_real(t.a_inv);
    t.exact = true;
    return t;
}

CoefficientTable make_real_table(std::string label, real_sequence a, real_sequence a_inv)
{
    if (a.size() != a_inv.size() || a.size() < 2)
        throw std::invalid_argument("make_real_table: length mismatch");
    CoefficientTable t;
    t.label = std::move(label);
    t.N = a.size() - 1;
    t.a_real = std::move(a);
    t.a_inv_real = std::move(a_inv);
    t.exact = false;
    return t;
}

std::string to_csv(const CoefficientTable& t)
{
    std::ostringstream os;
    os << "n,a,a_inv\n";
    os.precision(17);
    for (std::size_t n = 1; n <= t.N; ++n) {
        os << n << ',';
        if (t.exact)
            os << to_string(t.a[n]) << ',' << to_string(t.a_inv[n]) << '\n';
        else
            os << t.a_real[n] << ',' << t.a_inv_real[n] << '\n';
    }
    return os.str();
}

}
