#include "diracshell/resonance.hpp"

#include "diracshell/errors.hpp"
#include "diracshell/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>

namespace diracshell {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDeflation = 1e-6;   // minimum pairwise root distance
constexpr double kAxisTol = 1e-9;     // |Im E| below this counts as real

// Approach the real axis from below (decay convention): principal square
// roots of E -+ m then pick up the lower-branch value on the cuts.
cplx nudge_below(cplx E) {
    if (E.imag() == 0.0) return cplx(E.real(), -0.0);
    return E;
}

struct Quartet { // J_l, J_{l+1}, H1_l, H1_{l+1} at z = pR
    cplx jl, jl1, hl, hl1;
    cplx p;
};

Quartet quartet(cplx E, const PhysicalParams& par) {
    E = nudge_below(E);
    Quartet q;
    q.p = std::sqrt(E - par.m) * std::sqrt(E + par.m);
    const cplx z = q.p * par.R;
    std::vector<cplx> jv, yv;
    specfun::bessel_jy(par.l + 1, z, jv, yv);
    q.jl = jv[par.l];
    q.jl1 = jv[par.l + 1];
    q.hl = jv[par.l] + cplx(0.0, 1.0) * yv[par.l];
    q.hl1 = jv[par.l + 1] + cplx(0.0, 1.0) * yv[par.l + 1];
    return q;
}

// Unnormalized threshold residuals, proportional to critical_residual /
// supercritical_residual but continuous through impermeable strengths
// (where the normalized Lambda entries flip sign and diverge).
double critical_raw(const Strengths& s, const PhysicalParams& par) {
    const double n11 = s.A0 * s.A0 - s.Ar * s.Ar - s.B * s.B -
                       (s.Atheta + 2.0) * (s.Atheta + 2.0);
    const double n21 = 4.0 * (s.A0 + s.B);
    return -n21 + n11 * par.l / (par.m * par.R);
}

double supercritical_raw(const Strengths& s, const PhysicalParams& par) {
    const double n11 = s.A0 * s.A0 - s.Ar * s.Ar - s.B * s.B -
                       (s.Atheta + 2.0) * (s.Atheta + 2.0);
    const double n12 = 4.0 * (s.A0 - s.B);
    return n12 + n11 * (par.l + 1) / (par.m * par.R);
}

} // namespace

cplx outgoing_residual(cplx E, const PhysicalParams& par,
                       const LambdaParams& lam) {
    E = nudge_below(E);
    const Quartet q = quartet(E, par);
    const double m = par.m;
    return cplx(0.0, 0.5 * kPi) *
           (lam.a * q.p * q.jl * q.hl1 + lam.c * (m + E) * q.jl * q.hl +
            lam.b * (m - E) * q.jl1 * q.hl1 - lam.d * q.p * q.jl1 * q.hl);
}

ResonanceFamily::ResonanceFamily(ShellCase kind, const PhysicalParams& par)
    : kind_(kind), par_(par) {}

cplx ResonanceFamily::f(cplx E) const {
    const Quartet q = quartet(E, par_);
    const double m = par_.m, R = par_.R;
    switch (kind_) {
        case ShellCase::scalar:
            return cplx(0.0, 0.5 * kPi * R) *
                   ((E - m) * q.jl1 * q.hl1 - (E + m) * q.jl * q.hl);
        case ShellCase::electrostatic:
            return (E + m) * q.jl * q.hl + (E - m) * q.jl1 * q.hl1;
        case ShellCase::delta:
            return (E + m) * q.jl * q.hl;
        case ShellCase::delta_prime:
            return (E - m) * q.jl1 * q.hl1;
        case ShellCase::magnetic:
            return q.jl1 * q.hl / (q.jl * q.hl1);
    }
    throw domain_error("ResonanceFamily::f: unknown case");
}

double ResonanceFamily::g(double strength) const {
    const double R = par_.R;
    switch (kind_) {
        case ShellCase::scalar:
            if (strength == 0.0)
                throw domain_error("ResonanceFamily::g: scalar strength B = 0");
            return (4.0 + strength * strength) / (4.0 * strength);
        case ShellCase::electrostatic:
            if (strength == 0.0)
                throw domain_error("ResonanceFamily::g: A0 = 0");
            return (4.0 - strength * strength) / (2.0 * kPi * R * strength);
        case ShellCase::delta:
        case ShellCase::delta_prime:
            if (strength == 0.0)
                throw domain_error("ResonanceFamily::g: A0 = 0");
            return 1.0 / (kPi * R * strength);
        case ShellCase::magnetic:
            return strength * strength;
    }
    throw domain_error("ResonanceFamily::g: unknown case");
}

bool ResonanceFamily::locus_on_imag() const {
    return kind_ == ShellCase::scalar || kind_ == ShellCase::magnetic;
}

LambdaParams ResonanceFamily::lambda_for(double strength) const {
    if (kind_ == ShellCase::magnetic) {
        if (!(strength > 0.0))
            throw domain_error("ResonanceFamily::lambda_for: magnetic "
                               "parameter a must be positive");
        LambdaParams lam;
        lam.a = strength;
        lam.d = 1.0 / strength;
        return lam;
    }
    return lambda_from_strengths(canonical_case(kind_, strength));
}

namespace {

double locus_component(const ResonanceFamily& fam, cplx E) {
    const cplx v = fam.f(E);
    return fam.locus_on_imag() ? v.imag() : v.real();
}

double match_component(const ResonanceFamily& fam, cplx fval) {
    return fam.locus_on_imag() ? fval.real() : fval.imag();
}

// ---- marching squares -----------------------------------------------------

struct EdgeId {
    int orient; // 0 horizontal, 1 vertical
    int i, j;
    bool operator<(const EdgeId& o) const {
        if (orient != o.orient) return orient < o.orient;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

cplx refine_crossing(const ResonanceFamily& fam, cplx a, cplx b, double ha) {
    for (int it = 0; it < 48; ++it) {
        const cplx mid = 0.5 * (a + b);
        const double hm = locus_component(fam, mid);
        if (hm == 0.0) return mid;
        if ((ha < 0.0) == (hm < 0.0)) { a = mid; ha = hm; }
        else b = mid;
    }
    return 0.5 * (a + b);
}

LocusCurve march(const ResonanceFamily& fam, const ComplexBox& box, int nx,
                 int ny) {
    LocusCurve curve;
    if (nx < 2 || ny < 2) return curve;
    const double imTop = std::min(box.im_max, -1e-9); // keep off the real axis
    const double dx = (box.re_max - box.re_min) / nx;
    const double dy = (imTop - box.im_min) / ny;
    if (!(dx > 0.0) || !(dy > 0.0)) return curve;

    auto node = [&](int i, int j) {
        return cplx(box.re_min + dx * i, box.im_min + dy * j);
    };
    std::vector<double> h((nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            h[j * (nx + 1) + i] = locus_component(fam, node(i, j));
    auto hv = [&](int i, int j) { return h[j * (nx + 1) + i]; };

    std::map<EdgeId, cplx> points;
    auto crossing = [&](EdgeId id) -> std::optional<EdgeId> {
        const cplx a = node(id.i, id.j);
        const cplx b = id.orient == 0 ? node(id.i + 1, id.j) : node(id.i, id.j + 1);
        const double ha = id.orient == 0 ? hv(id.i, id.j) : hv(id.i, id.j);
        const double hb =
            id.orient == 0 ? hv(id.i + 1, id.j) : hv(id.i, id.j + 1);
        if (!std::isfinite(ha) || !std::isfinite(hb)) return std::nullopt;
        if ((ha < 0.0) == (hb < 0.0)) return std::nullopt;
        if (points.find(id) == points.end())
            points[id] = refine_crossing(fam, a, b, ha);
        return id;
    };

    std::vector<std::pair<EdgeId, EdgeId>> segments;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            std::vector<EdgeId> hit;
            for (EdgeId id : {EdgeId{0, i, j}, EdgeId{1, i + 1, j},
                              EdgeId{0, i, j + 1}, EdgeId{1, i, j}})
                if (crossing(id)) hit.push_back(id);
            if (hit.size() == 2) {
                segments.emplace_back(hit[0], hit[1]);
            } else if (hit.size() == 4) {
                // Saddle cell: disambiguate with the center sample.
                const double hc =
                    locus_component(fam, node(i, j) + cplx(0.5 * dx, 0.5 * dy));
                const bool centerLikeB0 = (hc < 0.0) == (hv(i, j) < 0.0);
                // hit order: bottom, right, top, left.
                if (centerLikeB0) {
                    segments.emplace_back(hit[0], hit[1]); // bottom-right
                    segments.emplace_back(hit[2], hit[3]); // top-left
                } else {
                    segments.emplace_back(hit[0], hit[3]); // bottom-left
                    segments.emplace_back(hit[1], hit[2]); // right-top
                }
            }
        }
    }

    // Chain segments into polylines.
    std::multimap<EdgeId, size_t> byEdge;
    for (size_t k = 0; k < segments.size(); ++k) {
        byEdge.emplace(segments[k].first, k);
        byEdge.emplace(segments[k].second, k);
    }
    std::vector<bool> used(segments.size(), false);
    for (size_t start = 0; start < segments.size(); ++start) {
        if (used[start]) continue;
        std::vector<EdgeId> chain{segments[start].first, segments[start].second};
        used[start] = true;
        for (int dir = 0; dir < 2; ++dir) {
            while (true) {
                const EdgeId tip = dir == 0 ? chain.back() : chain.front();
                auto range = byEdge.equal_range(tip);
                size_t next = segments.size();
                for (auto it = range.first; it != range.second; ++it)
                    if (!used[it->second]) { next = it->second; break; }
                if (next == segments.size()) break;
                used[next] = true;
                const EdgeId other = (segments[next].first < tip || tip < segments[next].first)
                                         ? segments[next].first
                                         : segments[next].second;
                if (dir == 0) chain.push_back(other);
                else chain.insert(chain.begin(), other);
            }
        }
        std::vector<cplx> poly;
        poly.reserve(chain.size());
        for (const EdgeId& id : chain) poly.push_back(points[id]);
        if (poly.size() >= 2) curve.branches.push_back(std::move(poly));
    }
    return curve;
}

// ---- Newton polishing ------------------------------------------------------

bool newton_complex(const std::function<cplx(cplx)>& resRaw, cplx& E,
                    double scale) {
    // The residual is continued from below the real axis; iterates that
    // stray above it would land on the wrong branch, so project them back.
    auto clamp = [](cplx z) {
        return z.imag() > 0.0 ? cplx(z.real(), -0.0) : z;
    };
    // Runaway iterates can leave the cylinder functions' exponent range;
    // report those evaluations as non-finite so the damping logic rejects
    // the step instead of unwinding the whole search.
    auto res = [&](cplx z) -> cplx {
        try {
            return resRaw(z);
        } catch (const std::exception&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return cplx(nan, nan);
        }
    };
    E = clamp(E);
    cplx r = res(E);
    for (int it = 0; it < 200; ++it) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
        const double hstep = 1e-7 * std::max(1.0, std::abs(E));
        const cplx dr = (res(E + hstep) - res(E - hstep)) / (2.0 * hstep);
        if (std::abs(dr) == 0.0) return false;
        cplx step = -r / dr;
        double lambda = 1.0;
        cplx En = clamp(E + step);
        cplx rn = res(En);
        int halvings = 0;
        while ((!std::isfinite(rn.real()) || !std::isfinite(rn.imag()) ||
                std::abs(rn) > std::abs(r)) &&
               halvings < 30) {
            lambda *= 0.5;
            En = clamp(E + lambda * step);
            rn = res(En);
            ++halvings;
        }
        if (halvings == 30) return std::abs(r) <= 1e-9 * scale;
        E = En;
        r = rn;
        if (std::abs(lambda * step) <= 1e-14 * std::max(1.0, std::abs(E)) &&
            std::abs(r) <= 1e-9 * scale)
            return true;
    }
    return std::abs(r) <= 1e-9 * scale;
}

RootClass classify(cplx E, double m) {
    if (std::abs(E.imag()) <= kAxisTol) {
        if (std::abs(E.real() - m) <= kAxisTol) return RootClass::critical;
        if (std::abs(E.real() + m) <= kAxisTol) return RootClass::supercritical;
        if (std::abs(E.real()) < m) return RootClass::bound;
    }
    return RootClass::resonance;
}

void add_root(std::vector<Root>& roots, Root r) {
    for (const Root& q : roots)
        if (std::abs(q.E - r.E) < kDeflation) return;
    roots.push_back(r);
}

std::vector<Root> roots_with_locus(const ResonanceFamily& fam, double strength,
                                   const LocusCurve& locus,
                                   const ComplexBox& box) {
    const PhysicalParams& par = fam.params();
    const double gval = fam.g(strength);
    const double scale = std::max(1.0, std::fabs(gval));
    // Complete complex root condition: f = g where the locus is Im f = 0,
    // f = i g where the locus is Re f = 0.
    const cplx target = fam.locus_on_imag() ? cplx(gval, 0.0) : cplx(0.0, gval);
    auto residual = [&](cplx E) { return fam.f(E) - target; };

    std::vector<Root> roots;

    // Real bound states first (the locus grid is clamped off the real axis).
    try {
        const LambdaParams lam = fam.lambda_for(strength);
        for (const BoundState& bs : bound_states(par, lam)) {
            Root r;
            r.E = cplx(bs.E, 0.0);
            r.cls = RootClass::bound;
            r.residual = std::abs(residual(r.E));
            add_root(roots, r);
        }
    } catch (const impermeable_error&) {
        // impermeable strength: no transmission, no family bound problem
    }

    auto polish_from = [&](cplx seed) {
        cplx E = seed;
        if (!newton_complex(residual, E, scale)) return;
        if (E.imag() > kAxisTol) return;
        if (E.real() < box.re_min - 1e-9 || E.real() > box.re_max + 1e-9)
            return;
        if (E.imag() < box.im_min - 1e-9) return;
        if (std::abs(E.imag()) <= kAxisTol) E = cplx(E.real(), 0.0);
        Root r;
        r.E = E;
        r.cls = classify(E, par.m);
        r.residual = std::abs(residual(E));
        if (r.residual <= 1e-9 * scale) add_root(roots, r);
    };

    for (const auto& branch : locus.branches) {
        double uPrev = 0.0;
        bool have = false;
        for (size_t i = 0; i < branch.size(); ++i) {
            const double u = match_component(fam, fam.f(branch[i])) - gval;
            if (have && std::isfinite(u) && std::isfinite(uPrev) &&
                (u < 0.0) != (uPrev < 0.0))
                polish_from(0.5 * (branch[i - 1] + branch[i]));
            uPrev = u;
            have = std::isfinite(u);
        }
    }

    // Roots hiding in the threshold guard bands, where bound_states cannot
    // look (its I/K residual is singular at |E| = m): the restriction of
    // f - gval to the real axis is smooth there, so bracket it on a
    // log-spaced ladder of distances from the threshold.
    const double guard = 1e-6 * par.m;
    auto u_of = [&](double E) {
        return match_component(fam, fam.f(cplx(E, 0.0))) - gval;
    };
    for (int side : {1, -1}) {
        const double Eth = side * par.m;
        if (Eth < box.re_min - 1e-9 || Eth > box.re_max + 1e-9) continue;
        const int K = 26;
        double dPrev = par.m * 1e-12;
        double uPrev = u_of(Eth - side * dPrev);
        for (int k = 1; k <= K; ++k) {
            const double d =
                par.m * std::pow(10.0, -12.0 + 6.5 * k / K); // up to ~3e-6 m
            const double u = u_of(Eth - side * d);
            if (std::isfinite(u) && std::isfinite(uPrev) &&
                (u < 0.0) != (uPrev < 0.0)) {
                double lo = dPrev, hi = d, ulo = uPrev;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double um = u_of(Eth - side * mid);
                    if ((ulo < 0.0) == (um < 0.0)) { lo = mid; ulo = um; }
                    else hi = mid;
                }
                Root r;
                r.E = cplx(Eth - side * 0.5 * (lo + hi), 0.0);
                r.cls = classify(r.E, par.m);
                r.residual = std::abs(residual(r.E));
                add_root(roots, r);
            }
            dPrev = d;
            uPrev = u;
        }
        (void)guard;
    }

    // Roots sitting exactly on a threshold: the closed critical /
    // supercritical conditions decide membership without evaluating f at
    // the branch point.
    if (fam.kind() != ShellCase::magnetic) {
        const Strengths st = canonical_case(fam.kind(), strength);
        const double mR = par.m * par.R;
        const double cScale =
            1.0 + std::fabs(4.0 * (st.A0 + st.B)) + std::fabs(par.l / mR);
        const double sScale =
            1.0 + std::fabs(4.0 * (st.A0 - st.B)) + std::fabs((par.l + 1) / mR);
        if (std::fabs(critical_raw(st, par)) <= 1e-9 * cScale &&
            par.m >= box.re_min && par.m <= box.re_max) {
            Root r;
            r.E = cplx(par.m, 0.0);
            r.cls = RootClass::critical;
            add_root(roots, r);
        }
        if (std::fabs(supercritical_raw(st, par)) <= 1e-9 * sScale &&
            -par.m >= box.re_min && -par.m <= box.re_max) {
            Root r;
            r.E = cplx(-par.m, 0.0);
            r.cls = RootClass::supercritical;
            add_root(roots, r);
        }
    }

    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
        if (x.E.real() != y.E.real()) return x.E.real() < y.E.real();
        return x.E.imag() < y.E.imag();
    });
    return roots;
}

} // namespace

LocusCurve trace_locus(const ResonanceFamily& family, const ComplexBox& box,
                       int nx, int ny) {
    return march(family, box, nx, ny);
}

std::vector<Root> find_resonances(const ResonanceFamily& family,
                                  double strength, const ComplexBox& box,
                                  int nx, int ny) {
    const LocusCurve locus = trace_locus(family, box, nx, ny);
    return roots_with_locus(family, strength, locus, box);
}

std::vector<Root> find_resonances(const PhysicalParams& par,
                                  const LambdaParams& lam,
                                  const ComplexBox& box, int nx, int ny) {
    auto residual = [&](cplx E) { return outgoing_residual(E, par, lam); };
    std::vector<Root> roots;
    const double imTop = std::min(box.im_max, -1e-9);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            cplx E(box.re_min + (box.re_max - box.re_min) * (i + 0.5) / nx,
                   box.im_min + (imTop - box.im_min) * (j + 0.5) / ny);
            if (!newton_complex(residual, E, 1.0)) continue;
            if (E.imag() > kAxisTol) continue;
            if (E.real() < box.re_min - 1e-9 || E.real() > box.re_max + 1e-9 ||
                E.imag() < box.im_min - 1e-9)
                continue;
            if (std::abs(E.imag()) <= kAxisTol) E = cplx(E.real(), 0.0);
            Root r;
            r.E = E;
            r.cls = classify(E, par.m);
            r.residual = std::abs(residual(E));
            if (r.residual <= 1e-9) add_root(roots, r);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
        if (x.E.real() != y.E.real()) return x.E.real() < y.E.real();
        return x.E.imag() < y.E.imag();
    });
    return roots;
}

ContinuationResult continuation(const ResonanceFamily& family, double s0,
                                double s1, int steps, const ComplexBox& box,
                                int nx, int ny) {
    if (steps < 1) throw domain_error("continuation: need steps >= 1");
    ContinuationResult result;
    const PhysicalParams& par = family.params();
    const LocusCurve locus = trace_locus(family, box, nx, ny);

    // Track roots across the sweep by nearest-neighbor matching.
    const double matchRadius =
        0.25 * std::hypot(box.re_max - box.re_min, box.im_max - box.im_min);
    std::vector<int> lastTraj; // trajectory index of each root at step k-1
    std::vector<Root> lastRoots;
    for (int k = 0; k <= steps; ++k) {
        const double s = s0 + (s1 - s0) * k / steps;
        std::vector<Root> roots;
        try {
            roots = roots_with_locus(family, s, locus, box);
        } catch (const domain_error&) {
            roots.clear(); // strength outside the family domain (e.g. 0)
        }
        std::vector<int> traj(roots.size(), -1);
        std::vector<bool> taken(lastRoots.size(), false);
        // Greedy nearest-pair linking.
        while (true) {
            double best = matchRadius;
            size_t bi = roots.size(), bj = lastRoots.size();
            for (size_t i = 0; i < roots.size(); ++i) {
                if (traj[i] >= 0) continue;
                for (size_t j = 0; j < lastRoots.size(); ++j) {
                    if (taken[j]) continue;
                    const double d = std::abs(roots[i].E - lastRoots[j].E);
                    if (d < best) { best = d; bi = i; bj = j; }
                }
            }
            if (bi == roots.size()) break;
            traj[bi] = lastTraj[bj];
            taken[bj] = true;
        }
        for (size_t i = 0; i < roots.size(); ++i) {
            if (traj[i] < 0) {
                traj[i] = int(result.trajectories.size());
                result.trajectories.emplace_back();
            }
            result.trajectories[traj[i]].points.emplace_back(s, roots[i]);
            for (size_t j = 0; j < roots.size(); ++j)
                if (j != i && std::abs(roots[i].E - roots[j].E) < 10 * kDeflation)
                    result.trajectories[traj[i]].merged = true;
        }
        lastRoots = std::move(roots);
        lastTraj = std::move(traj);
    }

    // Threshold crossings from the closed critical/supercritical conditions
    // (evaluated in their unnormalized, sign-continuous form).
    if (family.kind() != ShellCase::magnetic) {
        auto strengths_at = [&](double s) {
            return canonical_case(family.kind(), s);
        };
        for (int which = 0; which < 2; ++which) {
            auto raw = [&](double s) {
                const Strengths st = strengths_at(s);
                return which == 0 ? critical_raw(st, par)
                                  : supercritical_raw(st, par);
            };
            double sPrev = s0, fPrev = raw(s0);
            for (int k = 1; k <= steps; ++k) {
                const double s = s0 + (s1 - s0) * k / steps;
                const double fs = raw(s);
                if ((fPrev < 0.0) != (fs < 0.0)) {
                    double lo = sPrev, hi = s, flo = fPrev;
                    for (int it = 0; it < 100; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = raw(mid);
                        if ((flo < 0.0) == (fm < 0.0)) { lo = mid; flo = fm; }
                        else hi = mid;
                    }
                    CaptureEvent ev;
                    ev.strength = 0.5 * (lo + hi);
                    ev.E = which == 0 ? par.m : -par.m;
                    // Direction: does a bound state exist after the crossing?
                    const double ds = (s1 - s0) / steps;
                    auto count = [&](double sv) -> int {
                        try {
                            return int(bound_states(par, family.lambda_for(sv))
                                           .size());
                        } catch (const std::exception&) { return -1; }
                        };
                    const int before = count(ev.strength - ds);
                    const int after = count(ev.strength + ds);
                    ev.capture = after > before;
                    result.events.push_back(ev);
                }
                sPrev = s;
                fPrev = fs;
            }
        }
        std::sort(result.events.begin(), result.events.end(),
                  [&](const CaptureEvent& x, const CaptureEvent& y) {
                      return (s1 >= s0) ? x.strength < y.strength
                                        : x.strength > y.strength;
                  });
    }
    return result;
}

} // namespace diracshell
