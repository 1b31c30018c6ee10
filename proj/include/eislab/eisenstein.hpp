#ifndef EISLAB_EISENSTEIN_HPP
#define EISLAB_EISENSTEIN_HPP

#include <memory>
#include <vector>

#include "eislab/geodesic.hpp"
#include "eislab/special.hpp"

namespace eislab {

// Spectral point on the critical line: s = 1/2 + it, eigenvalue 1/4 + t^2.
struct SpectralPoint {
    double t = 0;
    Cplx s() const { return Cplx(0.5, t); }
    double eigenvalue() const { return 0.25 + t * t; }
};

// theta(s) = pi^{-s} Gamma(s) zeta(2s); poles at s = 1/2 and at the Gamma
// poles.  theta_factor_scaled returns e^{pi t/2} theta(1/2 + it), the form
// every critical-line computation uses (it is O(1) instead of O(e^{-pi t/2})).
Cplx theta_factor(const Cplx& s, const PrecisionPolicy& prec);
Cplx theta_factor_scaled(double t, const PrecisionPolicy& prec);

// phi(s) = theta(1-s)/theta(s), computed as Lambda(2s-1)/Lambda(2s) with
// Lambda the completed zeta, which stays finite where Gamma(1-s) alone
// would blow up.  |phi| = 1 on the critical line.
Cplx scattering_phi(const Cplx& s, const PrecisionPolicy& prec);

// eta_{it}(n) = sum_{ab=n} (a/b)^{it} (real), and the real-exponent variant
// used for real s > 1.  Values at the current working precision.
Real divisor_eta(double t, long n);
Real divisor_eta_real(double nu, long n);
std::vector<Real> divisor_eta_sieve(double t, long n_max);
std::vector<Real> divisor_eta_sieve_real(double nu, long n_max);

struct TruncationReport {
    long n_terms = 0;
    double tail_bound = 0;
};

struct EisensteinEval {
    Real value;        // real: the critical-line series is phase-normalized
    double abs_error = 0;
};

// Frozen evaluator of E(., s) at a fixed spectral point (s = 1/2 + it) or
// at fixed real s > 1 (oracle cross-check path).  Immutable after
// construction: theta, phi and the divisor coefficients down to y_floor are
// precomputed, so evaluations may run concurrently.
//
// On the critical line values carry the unimodular normalization
// e^{i arg theta(s)} E(z, s), which makes the Fourier series manifestly
// real:  2 sqrt(y) cos(arg theta + t log y)
//        + (4 sqrt(y)/|theta_scaled|) sum eta_{it}(n) Khat_{it}(2 pi n y) cos(2 pi n x).
// Sign counts, norm ratios and certificates are all phase-invariant.
class EisensteinContext {
public:
    static EisensteinContext critical_line(double t, const PrecisionPolicy& prec, double tol,
                                           double y_floor = 0.05);
    static EisensteinContext real_axis(double real_s, const PrecisionPolicy& prec, double tol,
                                       double y_floor = 0.05);

    bool on_critical_line() const { return critical_; }
    double t() const { return t_; }
    double real_s() const { return real_s_; }
    double tol() const { return tol_; }
    double y_floor() const { return y_floor_; }
    long n_max() const { return static_cast<long>(eta_.size()); }
    const PrecisionPolicy& precision() const { return prec_; }
    const Cplx& theta_scaled() const { return theta_scaled_; }
    const Cplx& phi_value() const { return phi_; }
    const Real& eta(long n) const { return eta_[static_cast<size_t>(n - 1)]; }
    const Real& theta_arg() const { return alpha_; }
    const Real& theta_mag() const { return abs_theta_; }

    TruncationReport truncation_length(double y_min) const;

    EisensteinEval eval(double x, double y) const;
    // f(y) = y^{-1/2} E(x0 + iy) restricted to a segment.
    EisensteinEval restricted(const GeodesicSegment& seg, double y) const;

private:
    EisensteinContext() = default;
    void finish_setup();

    bool critical_ = true;
    double t_ = 0;
    double real_s_ = 0;
    PrecisionPolicy prec_;
    double tol_ = 1e-10;
    double y_floor_ = 0.05;
    long n_cap_ = 200000;
    double log_theta_mag_ = 0;  // log |theta_scaled| (or log theta(s), real case)
    Real alpha_;                // arg theta_scaled (0 in the real case)
    Real abs_theta_;            // |theta_scaled|
    Cplx theta_scaled_;
    Cplx phi_;
    std::vector<Real> eta_;
    long work_bits_ = 128;
};

}  // namespace eislab

#endif
