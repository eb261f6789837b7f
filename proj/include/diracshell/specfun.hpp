#pragma once

#include <complex>
#include <vector>

namespace diracshell::specfun {

using cplx = std::complex<double>;

// Cylinder functions of integer order l >= 0, principal branch (cut on the
// negative real axis). Internals run in extended precision so the double
// results stay at ~1e-14 relative error over the working range |z| <= 50,
// l <= 14. Exponentially subdominant combinations (H^(1) deep in the upper
// half-plane) degrade like e^{2|Im z|} * 1e-19; callers stay within
// |Im z| ~ m*R where this is negligible.

cplx bessel_j(int l, cplx z);
cplx bessel_y(int l, cplx z);
cplx hankel(int kind, int l, cplx z);

double bessel_i(int l, double x);
double bessel_k(int l, double x);

/// k-th positive zero j_{l,k} of J_l, absolute error <= 1e-10.
double bessel_j_zero(int l, int k);

/// J_0..J_lmax and Y_0..Y_lmax at z in one pass (shared recurrences).
void bessel_jy(int lmax, cplx z, std::vector<cplx>& j, std::vector<cplx>& y);

/// I_0..I_lmax and K_0..K_lmax at x > 0.
void bessel_ik(int lmax, double x, std::vector<double>& iv, std::vector<double>& kv);

} // namespace diracshell::specfun
