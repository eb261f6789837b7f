#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracshell/resonance.hpp"
#include "diracshell/spectrum.hpp"

#include <cmath>
#include <complex>

using namespace diracshell;
using std::complex;

TEST_CASE("outgoing residual extends the bound-state residual") {
    const PhysicalParams par{2.0, 1.0, 2};
    const LambdaParams lam =
        lambda_from_strengths(canonical_case(ShellCase::delta, -1.0));
    // On the gap the real part continues the I/K secular residual; the
    // imaginary part picks up the growing-solution admixture of the
    // principal-branch Hankel function and need not vanish.
    for (double E : {-1.7, -0.9, 0.0, 0.4, 1.3, 1.9}) {
        const complex<double> r = outgoing_residual({E, 0.0}, par, lam);
        CHECK(std::fabs(r.real() - secular_bound_residual(E, par, lam)) < 1e-12);
    }
    // Free shell: no zeros anywhere, residual 1/R on the gap.
    CHECK(std::abs(outgoing_residual({0.5, 0.0}, par, LambdaParams{}) - 1.0) <
          1e-12);
}

TEST_CASE("family splitting reproduces the full residual at its roots") {
    const PhysicalParams par{2.0, 1.0, 2};
    const ComplexBox box{-6.0, 6.0, -2.0, 0.0};

    for (ShellCase kind : {ShellCase::scalar, ShellCase::electrostatic,
                           ShellCase::delta, ShellCase::delta_prime}) {
        const ResonanceFamily fam(kind, par);
        const double g = (kind == ShellCase::scalar) ? -1.5 : -0.9;
        const double s = (kind == ShellCase::electrostatic) ? 2.0 : g;
        const auto roots = find_resonances(fam, s, box);
        for (const auto& r : roots) {
            if (r.cls == RootClass::resonance && std::fabs(r.E.imag()) > 1e-6) {
                // Proper resonance: the full analytic residual vanishes and
                // f sits on the locus with its matching component equal to g.
                const complex<double> res =
                    outgoing_residual(r.E, par, fam.lambda_for(s));
                CHECK(std::abs(res) < 1e-7);
                const complex<double> fv = fam.f(r.E);
                const double match =
                    fam.locus_on_imag() ? fv.real() : fv.imag();
                const double other =
                    fam.locus_on_imag() ? fv.imag() : fv.real();
                CHECK(std::fabs(match - fam.g(s)) <
                      1e-6 * std::max(1.0, std::fabs(fam.g(s))));
                CHECK(std::fabs(other) < 1e-6);
            } else if (r.cls == RootClass::bound &&
                       std::fabs(r.E.real()) < par.m * (1.0 - 1e-5)) {
                CHECK(std::fabs(secular_bound_residual(
                          r.E.real(), par, fam.lambda_for(s))) < 1e-8);
            }
        }
    }
}

TEST_CASE("locus tracing stays on the locus") {
    const PhysicalParams par{2.0, 1.0, 1};
    const ComplexBox box{-6.0, 6.0, -2.0, 0.0};
    const ResonanceFamily fam(ShellCase::scalar, par);
    const LocusCurve locus = trace_locus(fam, box);
    REQUIRE(!locus.branches.empty());
    CHECK(locus.total_points() > 50);
    for (const auto& branch : locus.branches)
        for (const auto& E : branch) {
            const complex<double> fv = fam.f(E);
            CHECK(std::fabs(fv.imag()) <= 1e-8); // scalar locus: Im f = 0
            CHECK(E.real() >= box.re_min - 1e-12);
            CHECK(E.real() <= box.re_max + 1e-12);
            CHECK(E.imag() <= 0.0);
            CHECK(E.imag() >= box.im_min - 1e-12);
        }

    const ResonanceFamily fe(ShellCase::electrostatic, par);
    const LocusCurve le = trace_locus(fe, box);
    REQUIRE(!le.branches.empty());
    for (const auto& branch : le.branches)
        for (const auto& E : branch)
            CHECK(std::fabs(fe.f(E).real()) <= 1e-8);
}

TEST_CASE("real roots coincide with the bound-state solver") {
    const PhysicalParams par{2.0, 1.0, 2};
    const ComplexBox box{-6.0, 6.0, -2.0, 0.0};
    const ResonanceFamily fam(ShellCase::delta, par);
    const double A0 = -1.0;
    const auto roots = find_resonances(fam, A0, box);
    const auto bound = bound_states(par, fam.lambda_for(A0));
    REQUIRE(bound.size() == 1);
    int nbound = 0;
    for (const auto& r : roots)
        if (r.cls == RootClass::bound) {
            ++nbound;
            CHECK(r.E.real() == doctest::Approx(bound[0].E).epsilon(1e-9));
            CHECK(std::fabs(r.E.imag()) <= 1e-9);
        }
    CHECK(nbound == 1);
    // There are also proper resonances below the real axis in this box.
    int nres = 0;
    for (const auto& r : roots)
        if (r.cls == RootClass::resonance && r.E.imag() < -1e-6) ++nres;
    CHECK(nres >= 1);
}

TEST_CASE("family mode and general mode find the same roots") {
    const PhysicalParams par{2.0, 1.0, 2};
    const ComplexBox box{2.0, 6.0, -1.5, 0.0};
    const ResonanceFamily fam(ShellCase::delta, par);
    const double A0 = -1.0;
    const auto rf = find_resonances(fam, A0, box);
    const auto rg = find_resonances(par, fam.lambda_for(A0), box);
    for (const auto& a : rf) {
        if (a.cls != RootClass::resonance) continue;
        double best = 1e9;
        for (const auto& b : rg) best = std::min(best, std::abs(a.E - b.E));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("roots exactly at threshold are classified") {
    const PhysicalParams par{2.0, 1.0, 2};
    const ComplexBox box{-6.0, 6.0, -2.0, 0.0};
    const ResonanceFamily fam(ShellCase::delta, par);
    // A0 = -l/(2mR) places a state exactly at E = +m.
    const auto roots = find_resonances(fam, -0.5, box);
    bool critical = false;
    for (const auto& r : roots)
        if (r.cls == RootClass::critical) {
            critical = true;
            CHECK(r.E.real() == doctest::Approx(2.0).epsilon(1e-12));
        }
    CHECK(critical);

    const PhysicalParams pe{2.0, 1.0, 2};
    const ResonanceFamily fe(ShellCase::electrostatic, pe);
    const auto re = find_resonances(fe, 4.82842712474619, box);
    bool crit_e = false;
    for (const auto& r : re)
        if (r.cls == RootClass::critical) crit_e = true;
    CHECK(crit_e);
}

TEST_CASE("continuation reports captures and emissions") {
    const ComplexBox box{-6.0, 6.0, -2.0, 0.0};

    // Electrostatic l = 2: supercritical capture, then critical emission.
    const ResonanceFamily fe(ShellCase::electrostatic, {2.0, 1.0, 2});
    const auto ce = continuation(fe, 0.75, 5.25, 40, box);
    REQUIRE(ce.events.size() >= 2);
    bool capture = false, emission = false;
    for (const auto& ev : ce.events) {
        if (ev.capture && ev.E < 0.0 &&
            std::fabs(ev.strength - 1.07036751697599) < 1e-6)
            capture = true;
        if (!ev.capture && ev.E > 0.0 &&
            std::fabs(ev.strength - 4.82842712474619) < 1e-6)
            emission = true;
    }
    CHECK(capture);
    CHECK(emission);
    REQUIRE(!ce.trajectories.empty());
    for (const auto& tr : ce.trajectories) {
        REQUIRE(!tr.points.empty());
        for (size_t i = 1; i < tr.points.size(); ++i)
            CHECK(tr.points[i].first > tr.points[i - 1].first);
    }

    // Scalar l = 1: sweeping B upward through the critical strength emits
    // the bound state at E = +m.
    const ResonanceFamily fs(ShellCase::scalar, {2.0, 1.0, 1});
    const auto cs = continuation(fs, -2.0, -0.01, 30, box);
    bool scalar_emit = false;
    for (const auto& ev : cs.events)
        if (!ev.capture && ev.E > 0.0 &&
            std::fabs(ev.strength - (-0.535898384862246)) < 1e-6)
            scalar_emit = true;
    CHECK(scalar_emit);

    // Magnetic shells never cross a threshold.
    const ResonanceFamily fm(ShellCase::magnetic, {2.0, 1.0, 1});
    const auto cm = continuation(fm, 0.2, 3.0, 15, box);
    CHECK(cm.events.empty());
}
