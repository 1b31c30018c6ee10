#ifndef EISLAB_SPECIAL_HPP
#define EISLAB_SPECIAL_HPP

#include <span>
#include <vector>

#include "eislab/complexnum.hpp"
#include "eislab/precision.hpp"

namespace eislab {

// ---------------------------------------------------------------------------
// Gamma and zeta for complex argument.
// ---------------------------------------------------------------------------

// Gamma(s) by Stirling's series after shifting Re(s) up; relative error
// <= 2^-(base_bits-8).  Throws PoleError at non-positive integers.
Cplx gamma_complex(const Cplx& s, const PrecisionPolicy& prec);

// log Gamma(s) up to an integer multiple of 2*pi*i.  Re part (log |Gamma|)
// is exact to working accuracy; only exp() or Re() of the result are
// meaningful to callers.
Cplx log_gamma_mod2pi(const Cplx& s, const PrecisionPolicy& prec);

// zeta(s) by Euler-Maclaurin with N ~ |Im s| + bits and Bernoulli tail
// control; relative error <= 2^-(base_bits-8).  Declared range:
// Re s >= -6, |Im s| <= 1e5.  Throws PoleError at s = 1.
Cplx zeta_complex(const Cplx& s, const PrecisionPolicy& prec);

// ---------------------------------------------------------------------------
// Scaled K-Bessel of imaginary order.
// ---------------------------------------------------------------------------

// Khat_{i tau}(x) = e^{pi tau/2} K_{i tau}(x), which is O(1) in the
// oscillatory range x < tau.  K_{i tau}(x) itself is real for tau, x real.
struct ScaledBesselValue {
    double tau = 0;
    double x = 0;
    Real value;
    double abs_error = 0;
};

ScaledBesselValue bessel_k_scaled(double tau, double x, const PrecisionPolicy& prec);

// Weighted sums Sum_n w_n Khat_{i tau}(n * x1), evaluated under a single
// quadrature grid: one exp per node serves every n via powering, which is
// what makes Fourier-expansion evaluation affordable.  x1 > 0 exact as Real.
struct BesselSum {
    Real value;
    double abs_error = 0;
};
BesselSum bessel_k_scaled_sum(double tau, const Real& x1, std::span<const Real> weights,
                              const PrecisionPolicy& prec);

// Individual values Khat_{i tau}(n * x1) for n = 1..count, same shared grid.
struct BesselVector {
    std::vector<Real> values;
    double abs_error = 0;  // uniform bound valid for every entry
};
BesselVector bessel_k_scaled_vector(double tau, const Real& x1, int count,
                                    const PrecisionPolicy& prec);

// Real (non-negative) order variants, used by the real-s Eisenstein
// cross-check path: K_nu(x) = int_0^inf e^{-x cosh u} cosh(nu u) du.
// No e-scaling is involved (values are unscaled).
Real bessel_k_real_order(double nu, double x, const PrecisionPolicy& prec, double* abs_error = nullptr);
BesselSum bessel_k_real_order_sum(double nu, const Real& x1, std::span<const Real> weights,
                                  const PrecisionPolicy& prec);

// Monotone decreasing upper bound for |Khat_{i tau}(x)|, valid for all
// x > 0:  |K_{i tau}(x)| <= K_0(x) <= sqrt(pi/(2x)) e^{-x}  (from
// cosh u - 1 >= u^2/2).  Returned as log to keep huge scales exact.
double log_kbessel_scaled_bound(double tau, double x);

// Same for real order: K_nu(x) <= sqrt(2 pi / x) e^{-x + nu^2/(2x)}.
double log_kbessel_real_bound(double nu, double x);

// ---------------------------------------------------------------------------
// Bernoulli helpers (shared by zeta and gamma).
// ---------------------------------------------------------------------------

// B_{2k} / (2k)!  at the current working precision.
Real bernoulli_over_factorial(int k);

// B_{2k} / ((2k)(2k-1))  at the current working precision.
Real bernoulli_stirling_coeff(int k);

}  // namespace eislab

#endif
