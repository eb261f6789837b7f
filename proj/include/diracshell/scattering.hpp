#pragma once

#include "diracshell/interaction.hpp"
#include "diracshell/spectrum.hpp"

#include <vector>

namespace diracshell {

/// One energy sample of a phase-shift scan: tan(delta) to 1e-9 modulo the
/// pi branch, delta the continuous unwrapped phase (radians), tau the Wigner
/// time delay (hbar = 1).
struct ScanPoint {
    double E = 0.0;
    double tan_delta = 0.0;
    double delta = 0.0;
    double tau = 0.0;
};

/// tan(delta_l) at scattering energy |E| > m. Poles of the tangent (delta
/// crossing pi/2) are reported as signed infinities.
double tan_phase_shift(double E, const PhysicalParams& par,
                       const LambdaParams& lam);

enum class TauMethod { analytic, finite_difference };

/// Wigner time delay tau_l = 2 d(delta_l)/dE, finite and smooth through
/// tan-poles. The analytic method differentiates the secular numerator and
/// denominator with Bessel identities; the finite-difference method applies
/// Richardson-extrapolated central differences to the phase angle.
double wigner_time_delay(double E, const PhysicalParams& par,
                         const LambdaParams& lam,
                         TauMethod method = TauMethod::analytic);

/// Scan over a monotone energy grid lying entirely in (m, inf) or (-inf, -m).
/// delta is continuous: the branch is anchored to its principal value at the
/// low-|E| end, and the grid is refined (extra output rows inserted) until
/// adjacent points differ in delta by less than pi/2.
std::vector<ScanPoint> phase_shift_scan(const PhysicalParams& par,
                                        const LambdaParams& lam,
                                        const std::vector<double>& grid);

} // namespace diracshell
