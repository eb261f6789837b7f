#pragma once

#include "diracshell/interaction.hpp"
#include "diracshell/spectrum.hpp"

#include <complex>
#include <vector>

namespace diracshell {

/// Rectangle in the complex energy plane.
struct ComplexBox {
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;
};

/// Polyline branches of a strength-independent locus in the complex plane.
struct LocusCurve {
    std::vector<std::vector<std::complex<double>>> branches;

    std::size_t total_points() const {
        std::size_t n = 0;
        for (const auto& b : branches) n += b.size();
        return n;
    }
};

enum class RootClass { resonance, bound, critical, supercritical };

struct Root {
    std::complex<double> E;
    RootClass cls = RootClass::resonance;
    double residual = 0.0;
};

/// Analytic continuation of the bound-state secular residual to complex E
/// with p = sqrt(E-m)*sqrt(E+m) (principal branches, real axis approached
/// from below): (pi i / 2) [a p J_l H1_{l+1} + c(m+E) J_l H1_l
/// + b(m-E) J_{l+1} H1_{l+1} - d p J_{l+1} H1_l], all at pR.
/// Purely-outgoing states (resonances) and bound states are its zeros.
std::complex<double> outgoing_residual(std::complex<double> E,
                                       const PhysicalParams& par,
                                       const LambdaParams& lam);

/// Splitting of the secular condition for the five special shells into a
/// strength-independent complex function f(E) and a real strength side g:
/// roots satisfy f(E) = g on one component while the other component of f
/// vanishes on a strength-independent locus.
class ResonanceFamily {
public:
    ResonanceFamily(ShellCase kind, const PhysicalParams& par);

    std::complex<double> f(std::complex<double> E) const;

    /// The real number matched by the strength-carrying component of f.
    /// For the magnetic family the strength argument is the Lambda
    /// parameter a; otherwise it is B or A0 of the canonical case.
    double g(double strength) const;

    /// True: the locus is Im f = 0 and g is matched by Re f
    /// (scalar, magnetic). False: the locus is Re f = 0 and g is matched by
    /// Im f (electrostatic, delta, delta-prime, whose g is purely imaginary).
    bool locus_on_imag() const;

    /// Matching matrix at the given strength.
    LambdaParams lambda_for(double strength) const;

    ShellCase kind() const { return kind_; }
    const PhysicalParams& params() const { return par_; }

private:
    ShellCase kind_;
    PhysicalParams par_;
};

/// Marching-squares contour of the family's locus component over the box,
/// with every crossing refined until |component of f| <= 1e-8. Branches are
/// ordered polylines. The top edge is clamped slightly below the real axis.
LocusCurve trace_locus(const ResonanceFamily& family, const ComplexBox& box,
                       int nx = 240, int ny = 120);

/// Family-mode root search: 1D matching of g(strength) along the traced
/// locus, Newton-polished on f(E) - g; real bound states and near-threshold
/// roots are included. Roots are deflated (min distance 1e-6), classified
/// (|Im E| <= 1e-9: bound / critical / supercritical) and sorted by
/// (Re E, Im E).
std::vector<Root> find_resonances(const ResonanceFamily& family,
                                  double strength, const ComplexBox& box,
                                  int nx = 240, int ny = 120);

/// General-Lambda root search: damped Newton on outgoing_residual from a
/// seed grid over the box; non-convergent seeds are skipped.
std::vector<Root> find_resonances(const PhysicalParams& par,
                                  const LambdaParams& lam,
                                  const ComplexBox& box,
                                  int nx = 24, int ny = 12);

/// Bound-state capture from / emission into the continuum at E = +-m while
/// the strength is swept.
struct CaptureEvent {
    double strength = 0.0;
    double E = 0.0; // +m (critical) or -m (supercritical)
    bool capture = false; // true: bound state appears; false: it is emitted
};

struct Trajectory {
    std::vector<std::pair<double, Root>> points; // (strength, root)
    bool merged = false; // came within deflation distance of another root
};

struct ContinuationResult {
    std::vector<Trajectory> trajectories;
    std::vector<CaptureEvent> events;
};

/// Track every root of the family across a monotone strength sweep
/// (nearest-neighbor matching between consecutive strengths) and report
/// threshold crossings, located to ~1e-10 in strength from the closed
/// critical/supercritical conditions.
ContinuationResult continuation(const ResonanceFamily& family, double s0,
                                double s1, int steps, const ComplexBox& box,
                                int nx = 240, int ny = 120);

} // namespace diracshell
