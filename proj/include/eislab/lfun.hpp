#ifndef EISLAB_LFUN_HPP
#define EISLAB_LFUN_HPP

#include <complex>
#include <string>
#include <vector>

#include "eislab/maass.hpp"
#include "eislab/special.hpp"

namespace eislab {

// Point nu = 1/2 + ir on the critical line of the Mellin variable.
struct CriticalPoint {
    double r = 0;
    Cplx nu() const { return Cplx(0.5, r); }
};

// L(t, nu) = sum eta_{it}(n)/n^nu = zeta(nu + it) zeta(nu - it).
Cplx eisenstein_l(double t, const Cplx& nu, const PrecisionPolicy& prec);

// gamma(nu, t) = Gamma((nu+it)/2) Gamma((nu-it)/2) pi^{-nu} / theta(1/2+it),
// carried as scaled * e^{ledger} with the analytic e-scale
//   ledger = -pi|t+r|/4 - pi|r-t|/4 + pi t/2     (nu = sigma + ir)
// split off, so the stored number stays polynomially bounded.  At t = 0 the
// theta pole forces gamma = 0 (the limiting value); ledger is 0 there.
struct GammaFactor {
    Cplx scaled;
    double ledger = 0;  // natural log of the split-off scale
};
GammaFactor gamma_factor(const Cplx& nu, double t, const PrecisionPolicy& prec);

// I(eta, y; nu) = int_0^eta (y+v)^{-nu} dv, closed form with the removable
// singularity at nu = 1 handled by the log series.
std::complex<double> i_kernel(double eta, double y, std::complex<double> nu);

// Pointwise profile of |I * gamma * L|^2 along nu = 1/2 + ir, the integrand
// of the J upper-bound chain.  Exponent ledgers are combined in log space,
// so the output never overflows for t <= 200.
struct ProfilePoint {
    double r = 0;
    double value = 0;   // |I gamma L|^2
    int region = 0;     // 0: r < 1/eta, 1: 1/eta <= r <= t, 2: r > t
};
std::vector<ProfilePoint> j_integrand_profile(double t, double eta,
                                              const std::vector<double>& r_grid, double y,
                                              const PrecisionPolicy& prec);

// Moment scans of |zeta(1/2+it)|^{2k} on [0, T], normalized by T.
// Composite Simpson at the requested resolution; the error estimate is the
// disagreement with the half-resolution rule on the shared grid.
struct MomentValue {
    double value = 0;
    double quad_error = 0;
};
MomentValue zeta_moment(double T, int k, double resolution, const PrecisionPolicy& prec);

struct MomentScan {
    int k = 1;
    std::vector<double> T_grid;
    std::vector<double> values;
    std::vector<double> quad_errors;
};
// One pass over [0, max T] serves every grid entry; T/resolution must be an
// even integer for each T.
MomentScan zeta_moment_scan(const std::vector<double>& T_grid, int k, double resolution,
                            const PrecisionPolicy& prec);
std::string moment_scan_csv(const MomentScan& scan);

// (1/T) int_T^{2T} |L_phi^{trunc}(1/2+it)|^2 dt from the raw truncated
// Dirichlet series.  Exploratory only: without the approximate functional
// equation the truncation is uncontrolled on the critical line, which the
// caveat string records.
struct MaassMoment {
    double value = 0;
    std::string caveat;
};
MaassMoment maass_l_second_moment(const MaassFormRecord& rec, double T, long n_terms,
                                  double resolution = 0.05);

}  // namespace eislab

#endif
