#include "diracshell/spectrum.hpp"

#include "diracshell/errors.hpp"
#include "diracshell/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace diracshell {
namespace {

using cplx = std::complex<double>;

constexpr double kThresholdFrac = 1e-6; // guard band around |E| = m, relative to m

double threshold_guard(const PhysicalParams& par) { return kThresholdFrac * par.m; }

// Secular residual as a function of q in (0, m*sqrt(2 - eps)) with E recovered
// from q is avoided: callers pass E directly.
double secular_residual_raw(double E, const PhysicalParams& par,
                            const LambdaParams& lam) {
    const double q = std::sqrt((par.m - E) * (par.m + E));
    const double x = q * par.R;
    std::vector<double> iv, kv;
    specfun::bessel_ik(par.l + 1, x, iv, kv);
    const double il = iv[par.l], il1 = iv[par.l + 1];
    const double kl = kv[par.l], kl1 = kv[par.l + 1];
    return il * (lam.a * q * kl1 + lam.c * (par.m + E) * kl) +
           il1 * (lam.b * (par.m - E) * kl1 + lam.d * q * kl);
}

} // namespace

Kinematics make_kinematics(std::complex<double> E, double m) {
    Kinematics kin;
    kin.E = E;
    kin.p = std::sqrt(E - m) * std::sqrt(E + m);
    kin.q = cplx(0.0, -1.0) * kin.p;
    return kin;
}

SpinorValue radial_spinor(const Kinematics& kin, const PhysicalParams& par,
                          Region region, Basis basis, double r) {
    if (!(r > 0.0)) throw domain_error("radial_spinor: r must be positive");
    const int l = par.l;
    const double m = par.m;
    SpinorValue out;
    switch (basis) {
        case Basis::critical:
            if (region == Region::inner) {
                out.phi1 = std::pow(r, l);
                out.phi2 = 0.0;
            } else {
                out.phi1 = std::pow(r, -l);
                out.phi2 = (l / m) * std::pow(r, -(l + 1));
            }
            return out;
        case Basis::supercritical:
            if (region == Region::inner) {
                out.phi1 = -((l + 1) / m) * std::pow(r, l);
                out.phi2 = std::pow(r, l + 1);
            } else {
                out.phi1 = 0.0;
                out.phi2 = std::pow(r, -(l + 1));
            }
            return out;
        case Basis::J:
        case Basis::H1:
        case Basis::H2:
            break;
    }
    if (region == Region::inner && basis != Basis::J)
        throw domain_error("radial_spinor: inner region admits J, critical or "
                           "supercritical basis only");
    if (std::abs(kin.E + m) < 1e-300)
        throw domain_error("radial_spinor: E = -m is degenerate for the J/H "
                           "bases; use the supercritical basis");
    const cplx z = kin.p * r;
    const cplx ratio = kin.p / (kin.E + m);
    if (basis == Basis::J) {
        out.phi1 = specfun::bessel_j(l, z);
        out.phi2 = ratio * specfun::bessel_j(l + 1, z);
    } else {
        const int kind = (basis == Basis::H1) ? 1 : 2;
        out.phi1 = specfun::hankel(kind, l, z);
        out.phi2 = ratio * specfun::hankel(kind, l + 1, z);
    }
    return out;
}

double radial_current(const SpinorValue& phi) {
    return -2.0 * std::imag(std::conj(phi.phi1) * phi.phi2);
}

double secular_bound_residual(double E, const PhysicalParams& par,
                              const LambdaParams& lam) {
    const double eps = threshold_guard(par);
    if (std::fabs(E) >= par.m - eps)
        throw near_threshold_error(
            "secular_bound_residual: |E| within the threshold guard band; use "
            "critical_residual / supercritical_residual");
    return secular_residual_raw(E, par, lam);
}

std::vector<BoundState> bound_states(const PhysicalParams& par,
                                     const LambdaParams& lam,
                                     int grid_points, double tol) {
    std::vector<BoundState> out;
    if (grid_points < 2) grid_points = 2;
    const double eps = threshold_guard(par);
    const double Em = par.m - eps;
    // Quadratic clustering near the thresholds: E(s) = Em * s(2 - |s|).
    auto energy_at = [&](double s) { return Em * s * (2.0 - std::fabs(s)); };
    auto f = [&](double E) { return secular_residual_raw(E, par, lam); };

    double sPrev = -1.0;
    double ePrev = energy_at(sPrev);
    double fPrev = f(ePrev);
    for (int k = 1; k < grid_points; ++k) {
        const double s = -1.0 + 2.0 * k / (grid_points - 1);
        const double e = energy_at(s);
        const double fe = f(e);
        if ((fPrev < 0.0) != (fe < 0.0) && std::isfinite(fPrev) && std::isfinite(fe)) {
            double lo = ePrev, hi = e, flo = fPrev;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((flo < 0.0) == (fm < 0.0)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            const double root = 0.5 * (lo + hi);
            BoundState bs;
            bs.E = root;
            bs.residual = f(root);
            // Verify the matching condition with the inner coefficient = 1.
            const Kinematics kin = make_kinematics(root, par.m);
            const SpinorValue inner =
                radial_spinor(kin, par, Region::inner, Basis::J, par.R);
            const SpinorValue outer =
                radial_spinor(kin, par, Region::outer, Basis::H1, par.R);
            const SpinorValue matched = match_spinor(lam, inner);
            const cplx coeff = (std::abs(outer.phi1) >= std::abs(outer.phi2))
                                   ? matched.phi1 / outer.phi1
                                   : matched.phi2 / outer.phi2;
            const double scale =
                std::max({std::abs(matched.phi1), std::abs(matched.phi2), 1e-300});
            bs.outer_coeff = coeff;
            bs.match_error =
                std::max(std::abs(matched.phi1 - coeff * outer.phi1),
                         std::abs(matched.phi2 - coeff * outer.phi2)) / scale;
            out.push_back(bs);
        }
        sPrev = s;
        ePrev = e;
        fPrev = fe;
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState& x, const BoundState& y) { return x.E < y.E; });
    return out;
}

double critical_residual(const PhysicalParams& par, const LambdaParams& lam) {
    return lam.c + lam.a * par.l / (par.m * par.R);
}

double supercritical_residual(const PhysicalParams& par, const LambdaParams& lam) {
    return lam.b + lam.a * (par.l + 1) / (par.m * par.R);
}

std::vector<double> scalar_critical_strengths(const PhysicalParams& par) {
    const double mR = par.m * par.R;
    const int l = par.l;
    if (l == 0 || l > mR) return {};
    const double disc = std::sqrt(mR * mR - double(l) * l);
    return {-(2.0 / l) * (mR - disc), -(2.0 / l) * (mR + disc)};
}

std::vector<double> scalar_supercritical_strengths(const PhysicalParams& par) {
    PhysicalParams shifted = par;
    shifted.l = par.l + 1;
    return scalar_critical_strengths(shifted);
}

std::vector<double> electro_critical_strengths(const PhysicalParams& par) {
    const double mR = par.m * par.R;
    const int l = par.l;
    if (l == 0) return {};
    const double root = std::sqrt(1.0 + double(l) * l / (mR * mR));
    return {(2.0 * mR / l) * (1.0 + root), (2.0 * mR / l) * (1.0 - root)};
}

std::vector<double> electro_supercritical_strengths(const PhysicalParams& par) {
    const double mR = par.m * par.R;
    const int n = par.l + 1;
    const double root = std::sqrt(1.0 + double(n) * n / (mR * mR));
    return {-(2.0 * mR / n) * (1.0 - root), -(2.0 * mR / n) * (1.0 + root)};
}

double delta_strength_for_bound(double E, const PhysicalParams& par) {
    if (std::fabs(E) >= par.m)
        throw domain_error("delta_strength_for_bound: need |E| < m");
    const double q = std::sqrt((par.m - E) * (par.m + E));
    return -1.0 / (2.0 * par.R * (E + par.m) * specfun::bessel_i(par.l, q * par.R) *
                   specfun::bessel_k(par.l, q * par.R));
}

double deltaprime_strength_for_bound(double E, const PhysicalParams& par) {
    if (std::fabs(E) >= par.m)
        throw domain_error("deltaprime_strength_for_bound: need |E| < m");
    const double q = std::sqrt((par.m - E) * (par.m + E));
    return 1.0 / (2.0 * par.R * (par.m - E) *
                  specfun::bessel_i(par.l + 1, q * par.R) *
                  specfun::bessel_k(par.l + 1, q * par.R));
}

std::vector<double> confined_spectrum(const BoundaryCondition& bc,
                                      const PhysicalParams& par,
                                      double E_max, Branch branch) {
    if (!(E_max > par.m))
        throw domain_error("confined_spectrum: E_max must exceed m");
    const double alpha = bc.inner[0], beta = bc.inner[1];
    const double m = par.m, R = par.R;
    const int l = par.l;
    const double sign = (branch == Branch::particle) ? 1.0 : -1.0;
    const double norm = std::hypot(alpha, beta);

    std::vector<double> out;
    // Threshold membership from the threshold solutions at r = R:
    // critical inner is (R^l, 0), supercritical inner is (-(l+1)/m R^l, R^{l+1}).
    if (branch == Branch::particle) {
        if (std::fabs(alpha) * std::pow(R, l) <= 1e-12 * norm) out.push_back(m);
    } else {
        const double v = -alpha * (l + 1) / m * std::pow(R, l) +
                         beta * std::pow(R, l + 1);
        if (std::fabs(v) <= 1e-12 * norm * std::pow(R, l + 1)) out.push_back(-m);
    }

    // Boundary condition applied to the J-basis spinor, as a function of the
    // radial momentum p (zeros are pi/R-spaced in p at large p).
    auto g = [&](double p) {
        // E + m without cancellation on the antiparticle branch:
        // -sqrt(m^2+p^2) + m = -p^2 / (m + sqrt(m^2+p^2)).
        const double root = std::sqrt(m * m + p * p);
        const double Epm = (branch == Branch::particle)
                               ? m + root
                               : -p * p / (m + root);
        return alpha * specfun::bessel_j(l, p * R).real() +
               beta * (p / Epm) * specfun::bessel_j(l + 1, p * R).real();
    };
    const double p_max = std::sqrt(E_max * E_max - m * m);
    const int n = std::max(400, int(16.0 * p_max * R / 3.141592653589793) + 100);
    double pPrev = p_max * 1e-9;
    double gPrev = g(pPrev);
    for (int k = 1; k <= n; ++k) {
        const double p = p_max * k / n;
        const double gp = g(p);
        if ((gPrev < 0.0) != (gp < 0.0)) {
            double lo = pPrev, hi = p, glo = gPrev;
            while (hi - lo > 1e-13 * p_max) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if ((glo < 0.0) == (gm < 0.0)) { lo = mid; glo = gm; }
                else hi = mid;
            }
            const double p0 = 0.5 * (lo + hi);
            out.push_back(sign * std::sqrt(m * m + p0 * p0));
        }
        pPrev = p;
        gPrev = gp;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace diracshell
