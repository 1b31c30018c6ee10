#ifndef EISLAB_TEST_ORACLES_HPP
#define EISLAB_TEST_ORACLES_HPP

#include <complex>
#include <functional>
#include <vector>

#include "eislab/complexnum.hpp"
#include "eislab/real.hpp"

// Independent reference implementations used only by the test suites.
// Each deliberately takes a different algorithmic route than the library:
//  - zeta via Borwein's accelerated alternating series (library: Euler-Maclaurin)
//  - K-Bessel via a genuine tanh-sinh substitution (library: plain trapezoid)
//  - Eisenstein values via the coprime lattice sum (library: Fourier expansion)
//  - Hardy theta via its large-t asymptotic series (library: log-Gamma)

namespace eislab::oracles {

// Borwein's algorithm; valid for Re s > 0, s != 1.  n terms give roughly
// n*log2(3+sqrt 8) - |Im s| * pi/(2 ln 2) correct bits.
Cplx zeta_borwein(const Cplx& s, int n_terms, long work_bits);

// int_0^inf e^{-x cosh u} cos(tau u) du * e^{pi tau / 2} by tanh-sinh
// quadrature at the given level (h = 2^-level), truncated where the
// integrand underflows the target.
Real bessel_k_scaled_tanh_sinh(double tau, double x, long work_bits, int level);

// Hardy theta(t) by the Stirling asymptotic; error ~ 1e-7 near t = 14.
double hardy_theta_asymptotic(double t);

// E(z, s) for real s > 1 by the coprime lattice sum over |c|,|d| <= radius.
double eisenstein_lattice_sum(std::complex<double> z, double s, long radius);

// Exact-ish zero-crossing count of a trigonometric polynomial
//   f(y) = c0 + sum_k a_k cos(2 pi k y) + b_k sin(2 pi k y)
// on [lo, hi] by Lipschitz-pruned bisection; coefficients index from k=1.
struct TrigPoly {
    double c0 = 0;
    std::vector<double> a, b;  // same length
    double operator()(double y) const;
    double derivative_bound() const;
};
int trig_zero_crossings(const TrigPoly& f, double lo, double hi);

}  // namespace eislab::oracles

#endif
