#include <algorithm>
#include <cmath>

#include "eislab/eisenstein.hpp"

namespace eislab {

namespace {

void check_theta_poles(const Cplx& s) {
    if (s.im.is_zero()) {
        if (s.re == Real(0.5)) throw PoleError("theta_factor: pole at s = 1/2 (zeta(1))");
        if (s.re.is_integer() && s.re.sign() <= 0)
            throw PoleError("theta_factor: Gamma pole at non-positive integer");
    }
}

// Completed zeta Lambda(w) = pi^{-w/2} Gamma(w/2) zeta(w) = Lambda(1-w).
Cplx lambda_completed(const Cplx& w, const PrecisionPolicy& prec) {
    Cplx half_w(ldexp2(w.re, -1), ldexp2(w.im, -1));
    return pow_positive(Real::pi(), -half_w) * gamma_complex(half_w, prec)
           * zeta_complex(w, prec);
}

}  // namespace

Cplx theta_factor(const Cplx& s, const PrecisionPolicy& prec) {
    check_theta_poles(s);
    PrecisionScope scope(prec.base_bits + 32);
    Cplx two_s = s + s;
    return pow_positive(Real::pi(), -s) * gamma_complex(s, prec) * zeta_complex(two_s, prec);
}

Cplx theta_factor_scaled(double t, const PrecisionPolicy& prec) {
    if (t == 0) throw PoleError("theta_factor_scaled: pole at t = 0 (zeta(1))");
    PrecisionScope scope(prec.base_bits + 48);
    Cplx s(0.5, t);
    Cplx lg = log_gamma_mod2pi(s, prec);
    Real lpi = log(Real::pi());
    // exp(log Gamma(s) - s log pi + pi t/2); the e^{pi t/2} cancels the
    // exponential smallness of |Gamma(1/2+it)| in log space.
    Cplx expo(lg.re - s.re * lpi + ldexp2(Real::pi() * Real(t), -1), lg.im - s.im * lpi);
    return exp(expo) * zeta_complex(Cplx(Real(1), Real(2 * t)), prec);
}

Cplx scattering_phi(const Cplx& s, const PrecisionPolicy& prec) {
    if (s.im.is_zero() && s.re == Real(0.5)) return Cplx(Real(-1));  // Lambda-ratio limit
    if (s.im.is_zero() && s.re == Real(1)) throw PoleError("scattering_phi: pole at s = 1");
    PrecisionScope scope(prec.base_bits + 32);
    if (s.re == Real(0.5)) {
        // theta(1-s) = conj(theta(s)) on the critical line
        Cplx th = theta_factor_scaled(s.im.to_double(), prec);
        return th.conj() / th;
    }
    Cplx w = s + s;
    Cplx num = lambda_completed(w - Cplx(Real(1)), prec);
    Cplx den = lambda_completed(w, prec);
    if (den.re.is_zero() && den.im.is_zero())
        throw PoleError("scattering_phi: theta(s) vanishes at working precision");
    return num / den;
}

Real divisor_eta(double t, long n) {
    if (n < 1) throw RangeError("divisor_eta: n must be >= 1");
    Real acc;
    Real rt(t), ln = log(Real(n));
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (d * d == n) {
            acc += Real(1);  // a = b: (a/b)^{it} = 1
        } else {
            // d and n/d give conjugate phases: 2 cos(t log(n/d^2))
            Real angle = rt * (ln - ldexp2(log(Real(d)), 1));
            acc += ldexp2(cos(angle), 1);
        }
    }
    return acc;
}

Real divisor_eta_real(double nu, long n) {
    if (n < 1) throw RangeError("divisor_eta_real: n must be >= 1");
    Real acc(0);
    Real rnu(nu), ln = log(Real(n));
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (d * d == n) {
            acc += Real(1);
        } else {
            Real e = rnu * (ln - ldexp2(log(Real(d)), 1));
            acc += exp(e) + exp(-e);
        }
    }
    return acc;
}

namespace {

template <class Fn>
std::vector<Real> sieve_eta(long n_max, Fn weight_of_log_ratio) {
    std::vector<Real> logs(static_cast<size_t>(n_max) + 1);
    for (long n = 1; n <= n_max; ++n) logs[static_cast<size_t>(n)] = log(Real(n));
    std::vector<Real> eta(static_cast<size_t>(n_max));
    for (long d = 1; d <= n_max; ++d) {
        Real two_log_d = ldexp2(logs[static_cast<size_t>(d)], 1);
        for (long m = d; m <= n_max; m += d)
            eta[static_cast<size_t>(m - 1)] +=
                weight_of_log_ratio(two_log_d - logs[static_cast<size_t>(m)]);
    }
    return eta;
}

}  // namespace

std::vector<Real> divisor_eta_sieve(double t, long n_max) {
    Real rt(t);
    return sieve_eta(n_max, [&](const Real& lr) { return cos(rt * lr); });
}

std::vector<Real> divisor_eta_sieve_real(double nu, long n_max) {
    Real rnu(nu);
    return sieve_eta(n_max, [&](const Real& lr) { return exp(rnu * lr); });
}

EisensteinContext EisensteinContext::critical_line(double t, const PrecisionPolicy& prec,
                                                   double tol, double y_floor) {
    if (!(t > 0)) throw PoleError("EisensteinContext: t must be > 0 (E(z,1/2) degenerates)");
    if (t > 500) throw RangeError("EisensteinContext: t above declared range 500");
    if (!(tol > 0)) throw ValidationError("EisensteinContext: tol must be > 0");
    if (!(y_floor >= 0.001)) throw ValidationError("EisensteinContext: y_floor below 0.001");
    EisensteinContext c;
    c.critical_ = true;
    c.t_ = t;
    c.prec_ = prec;
    c.tol_ = tol;
    c.y_floor_ = y_floor;
    c.work_bits_ = prec.effective_bits(t) + 32;
    c.finish_setup();
    return c;
}

EisensteinContext EisensteinContext::real_axis(double real_s, const PrecisionPolicy& prec,
                                               double tol, double y_floor) {
    if (!(real_s > 1)) throw RangeError("EisensteinContext: real s must be > 1");
    if (!(tol > 0)) throw ValidationError("EisensteinContext: tol must be > 0");
    if (!(y_floor >= 0.001)) throw ValidationError("EisensteinContext: y_floor below 0.001");
    EisensteinContext c;
    c.critical_ = false;
    c.real_s_ = real_s;
    c.prec_ = prec;
    c.tol_ = tol;
    c.y_floor_ = y_floor;
    c.work_bits_ = prec.base_bits + 32;
    c.finish_setup();
    return c;
}

void EisensteinContext::finish_setup() {
    PrecisionScope scope(work_bits_);
    if (critical_) {
        theta_scaled_ = theta_factor_scaled(t_, prec_);
        phi_ = theta_scaled_.conj() / theta_scaled_;
    } else {
        theta_scaled_ = theta_factor(Cplx(real_s_), prec_);
        phi_ = scattering_phi(Cplx(real_s_), prec_);
    }
    alpha_ = arg(theta_scaled_);
    abs_theta_ = abs(theta_scaled_);
    log_theta_mag_ = log(abs_theta_).to_double();
    TruncationReport tr = truncation_length(y_floor_);
    long n = std::max(tr.n_terms, 1L);
    eta_ = critical_ ? divisor_eta_sieve(t_, n) : divisor_eta_sieve_real(real_s_ - 0.5, n);
}

TruncationReport EisensteinContext::truncation_length(double y_min) const {
    if (!(y_min > 0)) throw RangeError("truncation_length: y_min must be > 0");
    const double logq = -2.0 * M_PI * y_min;
    const double q = std::exp(logq);
    const double log_tol = std::log(tol_);
    // Tail of sum_{n>N} d(n) (4 sqrt y/|theta|) Khat(2 pi n y): bound
    // d(n) <= n and the Bessel factor by its monotone envelope; for real
    // order additionally eta_nu(n) <= d(n) n^nu.
    const double nu = critical_ ? 0.0 : real_s_ - 0.5;
    for (long n_terms = 0; n_terms <= n_cap_; ++n_terms) {
        double np1 = static_cast<double>(n_terms) + 1;
        double x_next = 2.0 * M_PI * np1 * y_min;
        double log_front = std::log(4.0) + 0.5 * std::log(y_min) - log_theta_mag_;
        double log_bessel_env = critical_ ? log_kbessel_scaled_bound(t_, x_next) + x_next
                                          : log_kbessel_real_bound(nu, x_next) + x_next;
        // log sum_{n>N} n^{1+nu} q^n, via n^{1+nu} <= (N+1)^{1+nu} e^{(1+nu)(n-N-1)/(N+1)}
        double bump = (1.0 + nu) / np1;
        if (logq + bump >= -1e-9) continue;  // geometric majorant not yet contracting
        double log_geo = (1.0 + nu) * std::log(np1) + np1 * logq - std::log1p(-q * std::exp(bump));
        double log_tail = log_front + log_bessel_env + log_geo;
        if (log_tail < log_tol) {
            TruncationReport r;
            r.n_terms = n_terms;
            r.tail_bound = std::exp(log_tail);
            return r;
        }
    }
    throw TruncationError("truncation_length: no N below cap meets the tail bound");
}

namespace {

// Shared series assembly; x is exact at working precision.
EisensteinEval eval_impl(const EisensteinContext& c, const Real& x, double y) {
    const PrecisionPolicy& prec = c.precision();
    TruncationReport tr = c.truncation_length(y);
    long n = std::min(std::max(tr.n_terms, 1L), c.n_max());
    Real ry(y);
    Real sqrt_y = sqrt(ry);
    Real x1 = ldexp2(Real::pi(), 1) * ry;  // 2 pi y
    std::vector<Real> w(static_cast<size_t>(n));
    Real theta_x = ldexp2(Real::pi(), 1) * x;
    for (long k = 1; k <= n; ++k) {
        Real ang;
        mpfr_mul_si(ang.raw(), theta_x.raw(), k, MPFR_RNDN);
        w[static_cast<size_t>(k - 1)] = c.eta(k) * cos(ang);
    }
    EisensteinEval out;
    if (c.on_critical_line()) {
        Real t(c.t());
        Real main = ldexp2(sqrt_y, 1) * cos(c.theta_arg() + t * log(ry));
        BesselSum s = bessel_k_scaled_sum(c.t(), x1, w, prec);
        Real coeff = ldexp2(sqrt_y, 2) / c.theta_mag();
        out.value = main + coeff * s.value;
        out.abs_error = tr.tail_bound + coeff.to_double() * s.abs_error
                        + std::ldexp(std::abs(out.value.to_double()) + 2.0,
                                     -static_cast<int>(prec.base_bits - 8));
    } else {
        Real s_r(c.real_s());
        Real main = pow(ry, s_r) + c.phi_value().re * pow(ry, Real(1) - s_r);
        BesselSum s = bessel_k_real_order_sum(c.real_s() - 0.5, x1, w, prec);
        Real coeff = ldexp2(sqrt_y, 2) / c.theta_scaled().re;
        out.value = main + coeff * s.value;
        out.abs_error = tr.tail_bound + std::abs(coeff.to_double()) * s.abs_error
                        + std::ldexp(std::abs(out.value.to_double()) + 2.0,
                                     -static_cast<int>(prec.base_bits - 8));
    }
    return out;
}

}  // namespace

EisensteinEval EisensteinContext::eval(double x, double y) const {
    if (!(y >= y_floor_)) throw RangeError("eisenstein_eval: y below the context y_floor");
    PrecisionScope scope(work_bits_);
    return eval_impl(*this, Real(x), y);
}

EisensteinEval EisensteinContext::restricted(const GeodesicSegment& seg, double y) const {
    if (!(y >= y_floor_)) throw RangeError("restricted_eval: y below the context y_floor");
    if (y < seg.a - 1e-12 || y > seg.y_top() + 1e-12)
        throw RangeError("restricted_eval: y outside segment and margin");
    PrecisionScope scope(work_bits_);
    Real x = Real(seg.x0_num) / Real(seg.x0_den);
    EisensteinEval e = eval_impl(*this, x, y);
    Real inv_sqrt_y = rec_sqrt(Real(y));
    e.value *= inv_sqrt_y;
    e.abs_error *= inv_sqrt_y.to_double();
    return e;
}

}  // namespace eislab
