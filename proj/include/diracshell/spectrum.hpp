#pragma once

#include "diracshell/interaction.hpp"

#include <complex>
#include <vector>

namespace diracshell {

/// Shell geometry and particle data: mass m, shell radius R, orbital index l
/// (total angular momentum j = l + 1/2).
struct PhysicalParams {
    double m = 1.0;
    double R = 1.0;
    int l = 0;
};

/// Momenta attached to a (possibly complex) energy: p = sqrt(E-m)*sqrt(E+m)
/// with principal square roots, q = -i*p (real positive for real |E| < m).
struct Kinematics {
    std::complex<double> E;
    std::complex<double> p;
    std::complex<double> q;
};

Kinematics make_kinematics(std::complex<double> E, double m);

enum class Region { inner, outer };
enum class Basis { J, H1, H2, critical, supercritical };

/// Radial spinor value Phi = (phi1, i*phi2)^T of the chosen fundamental
/// solution at radius r. Inner region admits only J, critical and
/// supercritical bases (boundedness at the origin).
SpinorValue radial_spinor(const Kinematics& kin, const PhysicalParams& par,
                          Region region, Basis basis, double r);

/// Radial component of the stationary Dirac current, j^r = -2 Im(phi1* phi2).
double radial_current(const SpinorValue& phi);

/// Bound state located by the secular equation.
struct BoundState {
    double E = 0.0;
    std::complex<double> outer_coeff{1.0, 0.0}; // with inner coefficient fixed to 1
    double residual = 0.0;
    double match_error = 0.0; // componentwise matching defect at r = R
};

/// Left-hand side of the bound-state secular equation at real energy E,
///   I_l(qR)[a q K_{l+1}(qR) + c (m+E) K_l(qR)]
/// + I_{l+1}(qR)[b (m-E) K_{l+1}(qR) + d q K_l(qR)],
/// zero exactly at bound-state energies. Throws near_threshold_error when
/// |E| is within 1e-6*m of m (use the threshold residuals there).
double secular_bound_residual(double E, const PhysicalParams& par,
                              const LambdaParams& lam);

/// All bound states in (-m, m): sign-change bracketing on a grid clustered
/// quadratically near the thresholds, then bisection to |dE| <= tol.
std::vector<BoundState> bound_states(const PhysicalParams& par,
                                     const LambdaParams& lam,
                                     int grid_points = 2000,
                                     double tol = 1e-11);

/// Threshold conditions: zero iff a state exists exactly at E = +m
/// (critical, c + a l/(mR)) or E = -m (supercritical, b + a(l+1)/(mR)).
double critical_residual(const PhysicalParams& par, const LambdaParams& lam);
double supercritical_residual(const PhysicalParams& par, const LambdaParams& lam);

/// Scalar-shell strengths B carrying a state at E = +m:
/// B = -(2/l)(mR -+ sqrt(m^2R^2 - l^2)); empty unless 0 < l <= mR.
std::vector<double> scalar_critical_strengths(const PhysicalParams& par);
/// Same with E = -m (the l -> l+1 substitution).
std::vector<double> scalar_supercritical_strengths(const PhysicalParams& par);

/// Electrostatic-shell threshold strengths:
/// critical (l > 0): A0 = (2mR/l)(1 ± sqrt(1 + l^2/(mR)^2));
/// supercritical (l >= 0): A0 = -(2mR/(l+1))(1 ± sqrt(1 + (l+1)^2/(mR)^2)).
std::vector<double> electro_critical_strengths(const PhysicalParams& par);
std::vector<double> electro_supercritical_strengths(const PhysicalParams& par);

/// Unique delta-shell strength placing a bound state at E:
/// A0 = -1 / (2R (E+m) I_l(qR) K_l(qR)); always negative.
double delta_strength_for_bound(double E, const PhysicalParams& par);

/// Unique delta-prime-shell strength placing a bound state at E:
/// A0 = 1 / (2R (m-E) I_{l+1}(qR) K_{l+1}(qR)); always positive.
double deltaprime_strength_for_bound(double E, const PhysicalParams& par);

enum class Branch { particle, antiparticle };

/// Discrete energies |E| >= m of a particle (E > 0) or antiparticle (E < 0)
/// confined inside an impermeable wall, up to |E| <= E_max. Includes the
/// threshold E = +-m when the corresponding threshold solution satisfies the
/// inner boundary condition.
std::vector<double> confined_spectrum(const BoundaryCondition& bc,
                                      const PhysicalParams& par,
                                      double E_max, Branch branch);

} // namespace diracshell
