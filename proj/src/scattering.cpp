#include "diracshell/scattering.hpp"

#include "diracshell/errors.hpp"
#include "diracshell/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace diracshell {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Numerator N and denominator D of tan(delta_l), plus their dE-derivatives:
//   N = p(a-d) J_{l+1} J_l - b(E-m) J_{l+1}^2 + c(m+E) J_l^2
//   D = J_l [a p Y_{l+1} + c(m+E) Y_l] - J_{l+1} [b(E-m) Y_{l+1} + d p Y_l]
// with every Bessel function evaluated at pR, p = sqrt(E^2 - m^2).
struct Secular {
    double N, D, dN, dD;
};

Secular secular_parts(double E, const PhysicalParams& par,
                      const LambdaParams& lam, bool derivatives) {
    const double m = par.m, R = par.R;
    const int l = par.l;
    const double p = std::sqrt((E - m) * (E + m));
    const double z = p * R;

    std::vector<std::complex<double>> jv, yv;
    specfun::bessel_jy(l + 1, z, jv, yv);
    const double Jl = jv[l].real(), Jl1 = jv[l + 1].real();
    const double Yl = yv[l].real(), Yl1 = yv[l + 1].real();

    const double a = lam.a, b = lam.b, c = lam.c, d = lam.d;
    Secular s{};
    s.N = p * (a - d) * Jl1 * Jl - b * (E - m) * Jl1 * Jl1 + c * (m + E) * Jl * Jl;
    s.D = Jl * (a * p * Yl1 + c * (m + E) * Yl) -
          Jl1 * (b * (E - m) * Yl1 + d * p * Yl);
    if (!derivatives) return s;

    // dZ_n(pR)/dE = [Z_{n-1}(z) - (n/z) Z_n(z)] * R * E/p.
    const double dpdE = E / p;
    const double Jlm1 = (l == 0) ? -jv[1].real() : jv[l - 1].real();
    const double Ylm1 = (l == 0) ? -yv[1].real() : yv[l - 1].real();
    const double fac = R * dpdE;
    const double dJl = (Jlm1 - (l / z) * Jl) * fac;
    const double dJl1 = (Jl - ((l + 1) / z) * Jl1) * fac;
    const double dYl = (Ylm1 - (l / z) * Yl) * fac;
    const double dYl1 = (Yl - ((l + 1) / z) * Yl1) * fac;

    s.dN = dpdE * (a - d) * Jl1 * Jl + p * (a - d) * (dJl1 * Jl + Jl1 * dJl) -
           b * (Jl1 * Jl1 + (E - m) * 2.0 * Jl1 * dJl1) +
           c * (Jl * Jl + (m + E) * 2.0 * Jl * dJl);
    s.dD = dJl * (a * p * Yl1 + c * (m + E) * Yl) +
           Jl * (a * dpdE * Yl1 + a * p * dYl1 + c * Yl + c * (m + E) * dYl) -
           dJl1 * (b * (E - m) * Yl1 + d * p * Yl) -
           Jl1 * (b * Yl1 + b * (E - m) * dYl1 + d * dpdE * Yl + d * p * dYl);
    return s;
}

void require_scattering(double E, const PhysicalParams& par, const char* who) {
    if (!(std::fabs(E) > par.m))
        throw domain_error(std::string(who) + ": need |E| > m");
}

// Phase angle mod pi, tracked continuously through tan-poles via atan2.
double phase_angle(double E, const PhysicalParams& par, const LambdaParams& lam) {
    const Secular s = secular_parts(E, par, lam, false);
    return std::atan2(s.N, s.D);
}

double wrap_mod_pi(double x) {
    x = std::fmod(x, kPi);
    if (x > 0.5 * kPi) x -= kPi;
    if (x <= -0.5 * kPi) x += kPi;
    return x;
}

} // namespace

double tan_phase_shift(double E, const PhysicalParams& par,
                       const LambdaParams& lam) {
    require_scattering(E, par, "tan_phase_shift");
    const Secular s = secular_parts(E, par, lam, false);
    if (s.D == 0.0)
        return std::copysign(std::numeric_limits<double>::infinity(), s.N);
    return s.N / s.D;
}

double wigner_time_delay(double E, const PhysicalParams& par,
                         const LambdaParams& lam, TauMethod method) {
    require_scattering(E, par, "wigner_time_delay");
    if (method == TauMethod::analytic) {
        const Secular s = secular_parts(E, par, lam, true);
        return 2.0 * (s.dN * s.D - s.N * s.dD) / (s.N * s.N + s.D * s.D);
    }
    const double h = 1e-5 * std::max(1.0, std::fabs(E));
    auto slope = [&](double step) {
        const double dth = wrap_mod_pi(phase_angle(E + step, par, lam) -
                                       phase_angle(E - step, par, lam));
        return dth / (2.0 * step);
    };
    const double d1 = slope(h), d2 = slope(0.5 * h);
    return 2.0 * (4.0 * d2 - d1) / 3.0;
}

std::vector<ScanPoint> phase_shift_scan(const PhysicalParams& par,
                                        const LambdaParams& lam,
                                        const std::vector<double>& grid) {
    std::vector<ScanPoint> out;
    if (grid.empty()) return out;
    for (double E : grid) require_scattering(E, par, "phase_shift_scan");

    // Anchor at the low-|E| end: scan from smaller |E| to larger.
    std::vector<double> g = grid;
    const bool reversed = std::fabs(g.front()) > std::fabs(g.back());
    if (reversed) std::reverse(g.begin(), g.end());

    auto make_point = [&](double E, double delta) {
        ScanPoint pt;
        pt.E = E;
        const Secular s = secular_parts(E, par, lam, true);
        pt.tan_delta = (s.D == 0.0)
            ? std::copysign(std::numeric_limits<double>::infinity(), s.N)
            : s.N / s.D;
        pt.delta = delta;
        pt.tau = 2.0 * (s.dN * s.D - s.N * s.dD) / (s.N * s.N + s.D * s.D);
        return pt;
    };

    double delta = wrap_mod_pi(phase_angle(g.front(), par, lam));
    out.push_back(make_point(g.front(), delta));

    // Advance delta across [E0, E1], splitting until each sub-step is both
    // alias-free (midpoint consistency) and below pi/2.
    const int kMaxDepth = 24;
    std::function<void(double, double, double, double, int)> advance =
        [&](double E0, double th0, double E1, double th1, int depth) {
            const double whole = wrap_mod_pi(th1 - th0);
            if (depth < kMaxDepth) {
                const double Em = 0.5 * (E0 + E1);
                const double thm = phase_angle(Em, par, lam);
                const double h1 = wrap_mod_pi(thm - th0);
                const double h2 = wrap_mod_pi(th1 - thm);
                const bool aliased = std::fabs(h1 + h2 - whole) > 1e-9;
                const bool steep = std::fabs(h1) > 0.45 * kPi ||
                                   std::fabs(h2) > 0.45 * kPi ||
                                   std::fabs(whole) > 0.45 * kPi;
                if (aliased || steep) {
                    advance(E0, th0, Em, thm, depth + 1);
                    out.push_back(make_point(Em, delta));
                    advance(Em, thm, E1, th1, depth + 1);
                    return;
                }
            }
            delta += whole;
        };

    for (size_t i = 1; i < g.size(); ++i) {
        const double th0 = phase_angle(g[i - 1], par, lam);
        const double th1 = phase_angle(g[i], par, lam);
        advance(g[i - 1], th0, g[i], th1, 0);
        out.push_back(make_point(g[i], delta));
    }
    if (reversed) std::reverse(out.begin(), out.end());
    return out;
}

} // namespace diracshell
