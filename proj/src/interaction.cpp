#include "diracshell/interaction.hpp"
#include "diracshell/errors.hpp"

#include <cmath>

namespace diracshell {
namespace {

constexpr double kPermTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

// Entries of the bracket matrix in the strength form of Lambda:
// Lambda = e^{i arg(D2 + 4i Ar)} / denom * [[n11, i n12], [i n21, n22]].
struct BracketMatrix {
    double n11, n12, n21, n22, denom, d2; // d2 = B^2 - 4 - A0^2 + Ar^2 + Atheta^2
};

BracketMatrix bracket(const Strengths& s) {
    BracketMatrix m{};
    m.n11 = s.A0 * s.A0 - s.Ar * s.Ar - s.B * s.B - (s.Atheta + 2.0) * (s.Atheta + 2.0);
    m.n22 = s.A0 * s.A0 - s.Ar * s.Ar - s.B * s.B - (s.Atheta - 2.0) * (s.Atheta - 2.0);
    m.n12 = 4.0 * (s.A0 - s.B);
    m.n21 = 4.0 * (s.A0 + s.B);
    m.d2 = s.B * s.B - 4.0 - s.A0 * s.A0 + s.Ar * s.Ar + s.Atheta * s.Atheta;
    m.denom = std::hypot(m.d2, 4.0 * s.Ar);
    return m;
}

} // namespace

bool permeability(const Strengths& s) {
    if (s.Ar != 0.0) return true;
    return std::fabs(s.B * s.B - 4.0 - s.A0 * s.A0 + s.Atheta * s.Atheta) >= kPermTol;
}

LambdaParams lambda_from_strengths(const Strengths& s) {
    if (!permeability(s))
        throw impermeable_error("lambda_from_strengths: impermeable strengths",
                                boundary_conditions_impermeable(s));
    const BracketMatrix m = bracket(s);
    double phi = std::atan2(4.0 * s.Ar, m.d2);
    double sign = 1.0;
    if (phi < 0.0) { phi += kPi; sign = -1.0; }
    if (phi >= kPi) { phi -= kPi; sign = -sign; }
    LambdaParams lam;
    lam.phi = phi;
    lam.a = sign * m.n11 / m.denom;
    lam.b = sign * m.n12 / m.denom;
    lam.c = -sign * m.n21 / m.denom;
    lam.d = sign * m.n22 / m.denom;
    return lam;
}

SpinorValue match_spinor(const LambdaParams& lam, const SpinorValue& inner) {
    // On the stored components (phi1, phi2), Lambda acts as the real map
    // phi1 -> a phi1 - b phi2, phi2 -> d phi2 - c phi1, times e^{i phi}.
    const std::complex<double> phase = std::polar(1.0, lam.phi);
    SpinorValue out;
    out.phi1 = phase * (lam.a * inner.phi1 - lam.b * inner.phi2);
    out.phi2 = phase * (lam.d * inner.phi2 - lam.c * inner.phi1);
    return out;
}

BoundaryCondition boundary_conditions_impermeable(const Strengths& s) {
    if (permeability(s))
        throw domain_error("boundary_conditions_impermeable: strengths are permeable");
    const BracketMatrix m = bracket(s);
    // At an impermeable point the bracket matrix is singular: Lambda Phi_i
    // stays finite only on its null space, and Phi_o lies in its column
    // space. In the (phi1, phi2) representation rows of the real map are
    // (n11, -n12) and (-n21, n22); the image direction is (n11, -n21)
    // or (-n12, n22).
    BoundaryCondition bc;
    const double r1 = std::hypot(m.n11, m.n12);
    const double r2 = std::hypot(m.n21, m.n22);
    if (r1 >= r2)
        bc.inner = {m.n11, -m.n12};
    else
        bc.inner = {m.n21, m.n22};
    const double c1 = std::hypot(m.n11, m.n21);
    const double c2 = std::hypot(m.n12, m.n22);
    double d1, d2;
    if (c1 >= c2) { d1 = m.n11; d2 = m.n21; }
    else { d1 = -m.n12; d2 = m.n22; }
    bc.outer = {d2, -d1};
    // Normalize for readability (largest coefficient -> +-1).
    for (auto* p : {&bc.inner, &bc.outer}) {
        const double mx = std::max(std::fabs((*p)[0]), std::fabs((*p)[1]));
        if (mx > 0.0) { (*p)[0] /= mx; (*p)[1] /= mx; }
    }
    return bc;
}

BoundaryCondition delta_shell_limit_boundary() {
    BoundaryCondition bc;
    bc.inner = {1.0, 0.0};
    bc.outer = {1.0, 0.0};
    return bc;
}

Strengths canonical_case(ShellCase kind, double g, double g2) {
    switch (kind) {
        case ShellCase::scalar: return {g, 0.0, 0.0, 0.0};
        case ShellCase::electrostatic: return {0.0, g, 0.0, 0.0};
        case ShellCase::magnetic:
            if (g == 0.0 && g2 == 0.0)
                throw domain_error("canonical_case: magnetic needs Ar, Atheta not both zero");
            return {0.0, 0.0, g, g2};
        case ShellCase::delta: return {g, g, 0.0, 0.0};
        case ShellCase::delta_prime: return {-g, g, 0.0, 0.0};
    }
    throw domain_error("canonical_case: unknown case");
}

} // namespace diracshell
