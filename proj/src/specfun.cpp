#include "diracshell/specfun.hpp"
#include "diracshell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace diracshell::specfun {
namespace {

using cld = std::complex<long double>;

constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr long double kEuler = 0.577215664901532860606512090082402431L;
constexpr long double kEps = 1e-21L;

// Regime thresholds: series below, Hankel asymptotics above (right half
// plane only), Miller backward recurrence with a Jacobi-Anger
// normalization in between.
constexpr double kSeriesCut = 12.0;
constexpr double kAsympCut = 30.0;

cld to_ld(cplx z) { return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())}; }

cplx to_d(cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

void check_overflow(cplx z) {
    if (std::abs(z.imag()) > 690.0)
        throw range_error("specfun: |Im z| gives e^{|Im z|} beyond double range");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("specfun: non-finite argument");
}

// Power series for J_n, adequate for |z| <= ~12 at n <= ~60.
cld j_series(int n, cld z) {
    cld half = 0.5L * z;
    cld pref = 1.0L;
    for (int k = 1; k <= n; ++k) pref *= half / static_cast<long double>(k);
    cld w = -half * half;
    cld term = pref, sum = pref;
    long double biggest = std::abs(pref);
    for (int k = 1; k < 400; ++k) {
        term *= w / static_cast<long double>(k) / static_cast<long double>(k + n);
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        if (std::abs(term) < kEps * (std::abs(sum) + biggest * 1e-4L)) break;
    }
    return sum;
}

// Backward (Miller) recurrence for J_0..J_top. Normalized with the
// Jacobi-Anger sum e^{-+iz} = J_0 + 2 sum (-+i)^n J_n, the sign chosen so the
// target has magnitude e^{|Im z|} and the sum never cancels deeply.
void jn_miller(int top, cld z, std::vector<cld>& J) {
    const double az = std::abs(to_d(z));
    int M = top + static_cast<int>(1.3 * az) + 45;
    std::vector<cld> f(static_cast<size_t>(M) + 2);
    f[M + 1] = 0.0L;
    f[M] = 1e-280L;
    for (int n = M; n >= 1; --n) {
        f[n - 1] = (2.0L * n / z) * f[n] - f[n + 1];
        if (std::abs(f[n - 1]) > 1e4600L) {
            const long double s = 1e-600L;
            for (int k = n - 1; k <= M + 1; ++k) f[k] *= s;
        }
    }
    const cld iu(0.0L, 1.0L);
    const cld lam = (z.imag() >= 0.0L) ? -iu : iu; // (-+i)^n weights
    cld pw = lam, sum = f[0];
    for (int n = 1; n <= M; ++n) {
        sum += 2.0L * pw * f[n];
        pw *= lam;
    }
    const cld target = std::exp((z.imag() >= 0.0L ? -iu : iu) * z);
    const cld scale = target / sum;
    J.resize(static_cast<size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) J[n] = f[n] * scale;
}

// Hankel asymptotic P/Q series for order nu in {0,1}; |z| >= ~30, Re z >= 0.
void jy_asymptotic(int nu, cld z, cld& jn, cld& yn) {
    const long double mu = 4.0L * nu * nu;
    cld c = 1.0L, P = 1.0L, Q = 0.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int k = 1; k <= 40; ++k) {
        const long double num = mu - static_cast<long double>(2 * k - 1) * (2 * k - 1);
        c *= num / (8.0L * static_cast<long double>(k)) / z;
        const long double mag = std::abs(c);
        if (mag > prev) break; // divergent tail reached
        prev = mag;
        if (k % 2 == 1)
            Q += ((k / 2) % 2 == 0 ? c : -c);
        else
            P += ((k / 2) % 2 == 1 ? -c : c);
        if (mag < kEps) break;
    }
    const cld omega = z - (0.5L * nu + 0.25L) * kPi;
    const cld amp = std::sqrt(2.0L / (kPi * z));
    const cld cw = std::cos(omega), sw = std::sin(omega);
    jn = amp * (cw * P - sw * Q);
    yn = amp * (sw * P + cw * Q);
}

// J_0..J_top at z, any z != 0 in the cut plane.
void jn_array(int top, cld z, std::vector<cld>& J) {
    const double az = std::abs(to_d(z));
    if (az == 0.0) {
        J.assign(static_cast<size_t>(top) + 1, 0.0L);
        J[0] = 1.0L;
        return;
    }
    if (az >= kAsympCut && z.real() >= 0.0L) {
        J.resize(static_cast<size_t>(top) + 1);
        cld y0, y1;
        jy_asymptotic(0, z, J[0], y0);
        if (top >= 1) jy_asymptotic(1, z, J[1], y1);
        for (int n = 1; n < top; ++n) J[n + 1] = (2.0L * n / z) * J[n] - J[n - 1];
        return;
    }
    if (az <= kSeriesCut) {
        J.resize(static_cast<size_t>(top) + 1);
        for (int n = 0; n <= top; ++n) J[n] = j_series(n, z);
        return;
    }
    jn_miller(top, z, J);
}

// Y_0 and Y_1 from the Neumann-type series
//   Y_0 = (2/pi)(ln(z/2)+gamma) J_0 + (4/pi) sum (-1)^{k+1} J_{2k}/k,
// and Y_1 = -Y_0' using J_n' = (J_{n-1} - J_{n+1})/2.
void y01_neumann(cld z, cld& y0, cld& y1) {
    const double az = std::abs(to_d(z));
    const int kmax = std::max(12, static_cast<int>(az / 2) + 20);
    std::vector<cld> J;
    jn_array(2 * kmax + 1, z, J);
    cld s0 = 0.0L, s1 = 0.0L;
    for (int k = kmax; k >= 1; --k) {
        const long double sg = (k % 2 == 1) ? 1.0L : -1.0L;
        s0 += sg * J[2 * k] / static_cast<long double>(k);
        s1 += sg * 0.5L * (J[2 * k - 1] - J[2 * k + 1]) / static_cast<long double>(k);
    }
    const cld lg = std::log(0.5L * z) + kEuler;
    y0 = (2.0L / kPi) * lg * J[0] + (4.0L / kPi) * s0;
    const cld dy0 = (2.0L / kPi) * (J[0] / z - lg * J[1]) + (4.0L / kPi) * s1;
    y1 = -dy0;
}

void jy_arrays(int top, cld z, std::vector<cld>& J, std::vector<cld>& Y) {
    const double az = std::abs(to_d(z));
    Y.resize(static_cast<size_t>(top) + 1);
    if (az >= kAsympCut && z.real() >= 0.0L) {
        J.resize(static_cast<size_t>(top) + 1);
        cld j1, y1;
        jy_asymptotic(0, z, J[0], Y[0]);
        jy_asymptotic(1, z, j1, y1);
        if (top >= 1) { J[1] = j1; Y[1] = y1; }
        for (int n = 1; n < top; ++n) {
            J[n + 1] = (2.0L * n / z) * J[n] - J[n - 1];
            Y[n + 1] = (2.0L * n / z) * Y[n] - Y[n - 1];
        }
        return;
    }
    jn_array(top, z, J);
    cld y0, y1;
    y01_neumann(z, y0, y1);
    Y[0] = y0;
    if (top >= 1) Y[1] = y1;
    for (int n = 1; n < top; ++n) Y[n + 1] = (2.0L * n / z) * Y[n] - Y[n - 1];
}

long double i_series(int n, long double x) {
    const long double half = 0.5L * x;
    long double pref = 1.0L;
    for (int k = 1; k <= n; ++k) pref *= half / k;
    const long double w = half * half;
    long double term = pref, sum = pref;
    for (int k = 1; k < 500; ++k) {
        term *= w / k / (k + n);
        sum += term;
        if (term < kEps * sum) break;
    }
    return sum;
}

// K_0, K_1 for x <= ~7 via the classical log series.
void k01_series(long double x, long double& k0, long double& k1) {
    const long double lg = std::log(0.5L * x) + kEuler;
    const long double w = 0.25L * x * x;
    // K_0 = -(ln(x/2)+gamma) I_0 + sum_{k>=1} H_k w^k/(k!)^2
    long double term = 1.0L, sum0 = 0.0L, H = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= w / k / k;
        H += 1.0L / k;
        sum0 += term * H;
        if (term * H < kEps * std::max(sum0, 1.0L)) break;
    }
    k0 = -lg * i_series(0, x) + sum0;
    // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum (psi(k+1)+psi(k+2)) w^k/(k!(k+1)!)
    long double t = 1.0L, sum1 = 0.0L;
    long double psi_a = -kEuler, psi_b = -kEuler + 1.0L;
    for (int k = 0; k < 200; ++k) {
        const long double add = t * (psi_a + psi_b);
        sum1 += add;
        if (std::fabs(add) < kEps * std::max(std::fabs(sum1), 1.0L) && k > 2) break;
        t *= w / (k + 1) / (k + 2);
        psi_a += 1.0L / (k + 1);
        psi_b += 1.0L / (k + 2);
    }
    k1 = 1.0L / x + std::log(0.5L * x) * i_series(1, x) - 0.25L * x * sum1;
}

// K_0, K_1 for x > ~7 via trapezoidal quadrature of
// K_n(x) = int_0^inf e^{-x cosh t} cosh(n t) dt (doubly exponential decay).
void k01_integral(long double x, long double& k0, long double& k1) {
    const long double T = std::acosh(1.0L + 52.0L / x);
    const long double h = std::min(1.0L / 16.0L, 0.28L / std::sqrt(x));
    k0 = 0.5L * std::exp(-x); // t = 0 endpoint, cosh 0 = 1
    k1 = k0;
    for (long double t = h; t <= T; t += h) {
        const long double e = std::exp(-x * std::cosh(t));
        k0 += e;
        k1 += e * std::cosh(t);
    }
    k0 *= h;
    k1 *= h;
}

void ik_arrays(int top, long double x, std::vector<long double>& I, std::vector<long double>& K) {
    I.resize(static_cast<size_t>(top) + 1);
    K.resize(static_cast<size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) I[n] = i_series(n, x);
    long double k0, k1;
    if (x <= 7.0L)
        k01_series(x, k0, k1);
    else
        k01_integral(x, k0, k1);
    K[0] = k0;
    if (top >= 1) K[1] = k1;
    for (int n = 1; n < top; ++n) K[n + 1] = K[n - 1] + (2.0L * n / x) * K[n];
}

double j_real(int l, double x) {
    std::vector<cld> J;
    jn_array(l, cld(x, 0.0L), J);
    return static_cast<double>(J[l].real());
}

} // namespace

cplx bessel_j(int l, cplx z) {
    if (l < 0) throw domain_error("bessel_j: order must be >= 0");
    check_overflow(z);
    std::vector<cld> J;
    jn_array(l, to_ld(z), J);
    return to_d(J[l]);
}

cplx bessel_y(int l, cplx z) {
    if (l < 0) throw domain_error("bessel_y: order must be >= 0");
    check_overflow(z);
    if (z == cplx(0.0, 0.0)) throw domain_error("bessel_y: z = 0 is singular");
    std::vector<cld> J, Y;
    jy_arrays(l, to_ld(z), J, Y);
    return to_d(Y[l]);
}

cplx hankel(int kind, int l, cplx z) {
    if (kind != 1 && kind != 2) throw domain_error("hankel: kind must be 1 or 2");
    const cplx j = bessel_j(l, z);
    const cplx y = bessel_y(l, z);
    return kind == 1 ? j + cplx(0, 1) * y : j - cplx(0, 1) * y;
}

double bessel_i(int l, double x) {
    if (l < 0) throw domain_error("bessel_i: order must be >= 0");
    if (x <= 0.0) throw domain_error("bessel_i: x must be positive");
    if (x > 690.0) throw range_error("bessel_i: argument overflows double range");
    return static_cast<double>(i_series(l, static_cast<long double>(x)));
}

double bessel_k(int l, double x) {
    if (l < 0) throw domain_error("bessel_k: order must be >= 0");
    if (x <= 0.0) throw domain_error("bessel_k: x must be positive");
    std::vector<long double> I, K;
    ik_arrays(l, static_cast<long double>(x), I, K);
    return static_cast<double>(K[l]);
}

void bessel_jy(int lmax, cplx z, std::vector<cplx>& j, std::vector<cplx>& y) {
    if (lmax < 0) throw domain_error("bessel_jy: lmax must be >= 0");
    check_overflow(z);
    if (z == cplx(0.0, 0.0)) throw domain_error("bessel_jy: z = 0 is singular");
    std::vector<cld> J, Y;
    jy_arrays(lmax, to_ld(z), J, Y);
    j.resize(J.size());
    y.resize(Y.size());
    for (size_t n = 0; n < J.size(); ++n) { j[n] = to_d(J[n]); y[n] = to_d(Y[n]); }
}

void bessel_ik(int lmax, double x, std::vector<double>& iv, std::vector<double>& kv) {
    if (lmax < 0) throw domain_error("bessel_ik: lmax must be >= 0");
    if (x <= 0.0) throw domain_error("bessel_ik: x must be positive");
    std::vector<long double> I, K;
    ik_arrays(lmax, static_cast<long double>(x), I, K);
    iv.resize(I.size());
    kv.resize(K.size());
    for (size_t n = 0; n < I.size(); ++n) { iv[n] = static_cast<double>(I[n]); kv[n] = static_cast<double>(K[n]); }
}

double bessel_j_zero(int l, int k) {
    if (l < 0 || k < 1) throw domain_error("bessel_j_zero: need l >= 0, k >= 1");
    // March outward from the turning point; zeros of J_l are ~pi apart.
    double x = std::max(1e-3, static_cast<double>(l));
    double fx = j_real(l, x);
    while (fx == 0.0) { x += 1e-6; fx = j_real(l, x); }
    const double step = 0.25;
    int found = 0;
    for (int it = 0; it < 100000; ++it) {
        const double x2 = x + step;
        const double f2 = j_real(l, x2);
        if (fx * f2 < 0.0) {
            ++found;
            if (found == k) {
                double a = x, b = x2, fa = fx;
                for (int i = 0; i < 200; ++i) {
                    const double m = 0.5 * (a + b);
                    const double fm = j_real(l, m);
                    if (fa * fm <= 0.0) b = m; else { a = m; fa = fm; }
                    if (b - a < 1e-13 * std::max(1.0, b)) break;
                }
                return 0.5 * (a + b);
            }
        }
        x = x2;
        fx = f2;
    }
    throw convergence_error("bessel_j_zero: zero not located");
}

} // namespace diracshell::specfun
