#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace diracshell {

/// Physical strengths of the four singular potentials supported on r = R:
/// scalar B, electrostatic A0, radial vector Ar, azimuthal vector Atheta.
struct Strengths {
    double B = 0.0;
    double A0 = 0.0;
    double Ar = 0.0;
    double Atheta = 0.0;
};

/// Matching matrix Lambda = e^{i phi} [[a, ib], [-ic, d]], ad - bc = 1,
/// phi in [0, pi).
struct LambdaParams {
    double phi = 0.0;
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    double det() const { return a * d - b * c; }
};

/// Lateral boundary conditions of an impermeable wall:
/// alpha*phi1 + beta*phi2 = 0 on each side of r = R.
struct BoundaryCondition {
    std::array<double, 2> inner{0.0, 1.0};
    std::array<double, 2> outer{1.0, 0.0};
};

class impermeable_error : public std::domain_error {
public:
    impermeable_error(std::string msg, BoundaryCondition bc)
        : std::domain_error(std::move(msg)), bc(bc) {}
    BoundaryCondition bc;
};

enum class ShellCase { scalar, electrostatic, magnetic, delta, delta_prime };

/// True iff the contact interaction transmits across r = R:
/// Ar != 0 or B^2 - 4 - A0^2 + Atheta^2 != 0 (tolerance 1e-12).
bool permeability(const Strengths& s);

/// Unique (phi, a, b, c, d) for permeable strengths; throws
/// impermeable_error (carrying the wall's boundary conditions) otherwise.
LambdaParams lambda_from_strengths(const Strengths& s);

/// Spinor value Phi = (phi1, i*phi2)^T stored by its components.
struct SpinorValue {
    std::complex<double> phi1;
    std::complex<double> phi2;
};

/// Phi(R+) = Lambda Phi(R-).
SpinorValue match_spinor(const LambdaParams& lam, const SpinorValue& inner);

/// Boundary conditions of an impermeable wall (permeability(s) must be false).
BoundaryCondition boundary_conditions_impermeable(const Strengths& s);

/// Boundary conditions of the delta-shell |A0| -> infinity limit,
/// which no finite Strengths value reaches: phi1 = 0 on both sides.
BoundaryCondition delta_shell_limit_boundary();

/// Preset strengths for the five special shells. For magnetic, g2 is Atheta
/// and g is Ar; other cases ignore g2.
Strengths canonical_case(ShellCase kind, double g, double g2 = 0.0);

} // namespace diracshell
