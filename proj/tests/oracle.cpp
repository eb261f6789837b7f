#include "oracle.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {
namespace {

using real_t = boost::multiprecision::cpp_bin_float_100;

struct mpc {
    real_t re, im;
};

mpc operator+(const mpc& a, const mpc& b) { return {a.re + b.re, a.im + b.im}; }
mpc operator-(const mpc& a, const mpc& b) { return {a.re - b.re, a.im - b.im}; }
mpc operator*(const mpc& a, const mpc& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
mpc operator*(const real_t& s, const mpc& a) { return {s * a.re, s * a.im}; }
mpc operator/(const mpc& a, const real_t& s) { return {a.re / s, a.im / s}; }

real_t abs2(const mpc& a) { return a.re * a.re + a.im * a.im; }
real_t mag(const mpc& a) { return sqrt(abs2(a)); }

mpc log_principal(const mpc& a) { return {real_t(0.5) * log(abs2(a)), atan2(a.im, a.re)}; }

const real_t& pi_v() {
    static const real_t v = boost::math::constants::pi<real_t>();
    return v;
}
const real_t& euler_v() {
    static const real_t v = boost::math::constants::euler<real_t>();
    return v;
}

real_t factorial(int n) {
    real_t f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// digamma at positive integers: psi(m) = -gamma + H_{m-1}
real_t psi_int(int m) {
    real_t s = -euler_v();
    for (int k = 1; k < m; ++k) s += real_t(1) / k;
    return s;
}

mpc j_series(int n, const mpc& z) {
    const mpc half = real_t(0.5) * z;
    mpc pref{1, 0};
    for (int k = 1; k <= n; ++k) pref = pref * half / real_t(k);
    const mpc w = real_t(-1) * (half * half);
    mpc term = pref, sum = pref;
    const real_t tol("1e-115");
    real_t biggest = mag(pref);
    for (int k = 1; k < 2000; ++k) {
        term = term * w / (real_t(k) * real_t(k + n));
        sum = sum + term;
        if (mag(term) > biggest) biggest = mag(term);
        if (mag(term) < tol * biggest) break;
    }
    return sum;
}

// A&S 9.1.11
mpc y_series(int n, const mpc& z) {
    const mpc half = real_t(0.5) * z;
    const mpc w = half * half;
    const mpc lg = log_principal(half);
    mpc sum = (real_t(2) / pi_v()) * (lg * j_series(n, z));
    // finite sum
    mpc hp{1, 0};
    for (int k = 0; k < n; ++k) hp = hp * half; // half^n later divided down
    // (z/2)^{2k-n} built as half^{-n} * w^k; compute half^{-n} via division
    mpc half_neg_n{1, 0};
    {
        const real_t d = abs2(half);
        mpc inv{half.re / d, -half.im / d};
        for (int k = 0; k < n; ++k) half_neg_n = half_neg_n * inv;
    }
    mpc wk{1, 0};
    for (int k = 0; k <= n - 1; ++k) {
        const real_t coef = factorial(n - k - 1) / factorial(k);
        sum = sum - (coef / pi_v()) * (half_neg_n * wk);
        wk = wk * w;
    }
    // infinite sum
    mpc half_n{1, 0};
    for (int k = 0; k < n; ++k) half_n = half_n * half;
    mpc t = half_n / factorial(n);
    mpc inf{0, 0};
    const real_t tol("1e-115");
    real_t biggest = 0;
    for (int k = 0; k < 2000; ++k) {
        const real_t ps = psi_int(k + 1) + psi_int(n + k + 1);
        const real_t sg = (k % 2 == 0) ? 1 : -1;
        const mpc add = (sg * ps) * t;
        inf = inf + add;
        if (mag(add) > biggest) biggest = mag(add);
        if (k > 2 && mag(t) * 20 < tol * biggest) break;
        t = t * w / (real_t(k + 1) * real_t(n + k + 1));
    }
    sum = sum - (real_t(1) / pi_v()) * inf;
    return sum;
}

real_t i_series(int n, const real_t& x) {
    const real_t half = x / 2;
    real_t pref = 1;
    for (int k = 1; k <= n; ++k) pref *= half / k;
    const real_t w = half * half;
    real_t term = pref, sum = pref;
    const real_t tol("1e-112");
    for (int k = 1; k < 4000; ++k) {
        term *= w / (real_t(k) * real_t(k + n));
        sum += term;
        if (term < tol * sum) break;
    }
    return sum;
}

// A&S 9.6.11
real_t k_series(int n, const real_t& x) {
    const real_t half = x / 2;
    const real_t w = half * half;
    const real_t lg = log(half);
    real_t sum = 0;
    // finite sum: (1/2)(z/2)^{-n} sum_{k=0}^{n-1} ((n-k-1)!/k!)(-w)^k
    real_t half_neg_n = 1;
    for (int k = 0; k < n; ++k) half_neg_n /= half;
    real_t wk = 1;
    for (int k = 0; k <= n - 1; ++k) {
        sum += real_t(0.5) * half_neg_n * (factorial(n - k - 1) / factorial(k)) * wk;
        wk *= -w;
    }
    const real_t sgn = (n % 2 == 0) ? 1 : -1;
    sum += -sgn * lg * i_series(n, x);
    real_t half_n = 1;
    for (int k = 0; k < n; ++k) half_n *= half;
    real_t t = half_n / factorial(n), inf = 0;
    const real_t tol("1e-112");
    real_t biggest = 0;
    for (int k = 0; k < 4000; ++k) {
        const real_t add = t * (psi_int(k + 1) + psi_int(n + k + 1));
        inf += add;
        if (abs(add) > biggest) biggest = abs(add);
        if (k > 2 && abs(t) * 20 < tol * biggest) break;
        t *= w / (real_t(k + 1) * real_t(n + k + 1));
    }
    sum += sgn * real_t(0.5) * inf;
    return sum;
}

cplx to_d(const mpc& a) { return {static_cast<double>(a.re), static_cast<double>(a.im)}; }

} // namespace

cplx bessel_j(int n, cplx z) {
    return to_d(j_series(n, mpc{real_t(z.real()), real_t(z.imag())}));
}

cplx bessel_y(int n, cplx z) {
    return to_d(y_series(n, mpc{real_t(z.real()), real_t(z.imag())}));
}

cplx hankel1(int n, cplx z) {
    const mpc arg{real_t(z.real()), real_t(z.imag())};
    const mpc j = j_series(n, arg), y = y_series(n, arg);
    return to_d(mpc{j.re - y.im, j.im + y.re});
}

cplx hankel2(int n, cplx z) {
    const mpc arg{real_t(z.real()), real_t(z.imag())};
    const mpc j = j_series(n, arg), y = y_series(n, arg);
    return to_d(mpc{j.re + y.im, j.im - y.re});
}

double bessel_i(int n, double x) { return static_cast<double>(i_series(n, real_t(x))); }

double bessel_k(int n, double x) { return static_cast<double>(k_series(n, real_t(x))); }

double bessel_j_zero(int n, int k) {
    auto f = [n](const real_t& x) { return j_series(n, mpc{x, 0}).re; };
    real_t a = std::max(1e-3, double(n));
    real_t fa = f(a);
    int found = 0;
    for (int it = 0; it < 20000; ++it) {
        real_t b = a + real_t(1) / 4;
        real_t fb = f(b);
        if (fa * fb < 0) {
            ++found;
            if (found == k) {
                for (int i = 0; i < 150; ++i) {
                    real_t m = (a + b) / 2;
                    real_t fm = f(m);
                    if (fa * fm <= 0) b = m; else { a = m; fa = fm; }
                }
                return static_cast<double>((a + b) / 2);
            }
        }
        a = b;
        fa = fb;
    }
    throw std::runtime_error("oracle::bessel_j_zero: not found");
}

} // namespace oracle
