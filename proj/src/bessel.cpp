#include <algorithm>
#include <cmath>
#include <string>

#include "eislab/errors.hpp"
#include "eislab/special.hpp"

namespace eislab {

// K_{i tau}(x) = int_0^inf e^{-x cosh u} cos(tau u) du by the trapezoid
// rule on [0, u_max].  The integrand decays doubly exponentially, so the
// rule converges like e^{-(2 pi/h - tau) d} for a strip offset d < pi/2;
// the step must also resolve cos(tau u) with >= 8 samples per period.
// The integrand is O(1) while the integral is O(e^{-pi tau/2}): exactly
// ceil(pi tau/(2 ln 2)) leading bits cancel, which is the spectral-scaling
// precision surcharge.
//
// Sums over arguments n*x1 (Fourier expansions) share one grid: per node a
// single q = exp(-x1 cosh u) serves every n through its powers q^n.

namespace {

constexpr double kStrip = 1.0;  // error-model contour offset, < pi/2

struct Plan {
    double h = 0;
    long nodes = 0;
    long work = 0;       // working mantissa bits
    long quad_bits = 0;  // absolute target of the raw integral: 2^-quad_bits
    double u_max = 0;
    double log2_scale = 0;         // log2 of the output scaling e^{pi tau/2}
    double kernel_log_growth = 0;  // nats of kernel growth at u_max (real order)
};

void finish_plan(Plan& p) {
    p.nodes = static_cast<long>(std::ceil(p.u_max / p.h)) + 2;
    long guard = 32 + 2 * static_cast<long>(std::ceil(std::log2(static_cast<double>(p.nodes) + 4)));
    p.work = p.quad_bits + guard;
}

Plan plan_imag(double tau, double x1_lo, double sum_abs_w, long cancel_bits, long base_bits) {
    Plan p;
    p.quad_bits = cancel_bits + base_bits + 16;
    double bnats = static_cast<double>(p.quad_bits) * M_LN2;
    p.h = 2.0 * M_PI / (tau + bnats / kStrip);
    if (tau > 0) p.h = std::min(p.h, M_PI / (4.0 * tau));
    p.u_max = std::acosh(1.0 + (bnats + std::log1p(sum_abs_w) + 10.0) / x1_lo);
    p.log2_scale = M_PI * tau / 2.0 / M_LN2;
    finish_plan(p);
    return p;
}

Plan plan_real(double nu, double x1_lo, double sum_abs_w, long base_bits) {
    Plan p;
    p.quad_bits = base_bits + 16;
    double bnats = static_cast<double>(p.quad_bits) * M_LN2;
    double need = bnats + std::log1p(sum_abs_w) + 10.0;
    double u = std::acosh(1.0 + need / x1_lo);
    while (x1_lo * (std::cosh(u) - 1.0) - nu * u < need) u += 0.125;
    p.u_max = u;
    p.h = 2.0 * M_PI * kStrip / bnats;
    p.kernel_log_growth = nu * u;
    finish_plan(p);
    return p;
}

// Accumulates sum_n w_n q^n into acc, weighted by the kernel value kw.
// All temporaries preallocated; raw mpfr calls keep the loop alloc-free.
struct SumSink {
    std::span<const Real> w;
    Real acc, p, r, tmp;
    void add(const Real& q, const Real& kw, long thr) {
        mpfr_set(p.raw(), q.raw(), MPFR_RNDN);
        mpfr_set_zero(r.raw(), 1);
        for (const Real& wn : w) {
            mpfr_fma(r.raw(), wn.raw(), p.raw(), r.raw(), MPFR_RNDN);
            mpfr_mul(p.raw(), p.raw(), q.raw(), MPFR_RNDN);
            if (p.exp2() < thr) break;
        }
        mpfr_fma(acc.raw(), kw.raw(), r.raw(), acc.raw(), MPFR_RNDN);
    }
    void finish(const Real& f) { acc *= f; }
};

// Accumulates kw * q^n separately for each n.
struct VectorSink {
    std::vector<Real> accs;
    Real p;
    explicit VectorSink(int count) : accs(static_cast<size_t>(count)) {}
    void add(const Real& q, const Real& kw, long thr) {
        mpfr_set(p.raw(), q.raw(), MPFR_RNDN);
        for (Real& a : accs) {
            mpfr_fma(a.raw(), kw.raw(), p.raw(), a.raw(), MPFR_RNDN);
            mpfr_mul(p.raw(), p.raw(), q.raw(), MPFR_RNDN);
            if (p.exp2() < thr) break;
        }
    }
    void finish(const Real& f) {
        for (Real& a : accs) a *= f;
    }
};

// Kernel values at u = k h follow r_{k+1} = 2 r_1 r_k - r_{k-1}; the same
// recurrence produces cosh(k h) for the argument and cos(tau k h) or
// cosh(nu k h) for the kernel.  cosh is the dominant solution (stable);
// for cos the error grows ~ k^2 ulp, absorbed by the guard bits.
template <class Sink>
Real node_loop(const Plan& plan, const Real& x1, const Real& kernel_first, Sink& sink,
               double max_abs_w) {
    Real ch_k(1), ch_next = cosh(Real(plan.h));
    Real ch_mult = ldexp2(ch_next, 1);
    Real kw_k(1), kw_next = kernel_first;
    Real kw_mult = ldexp2(kernel_first, 1);
    long thr = -(plan.quad_bits + 16)
               - static_cast<long>(std::log2(1.0 + max_abs_w) + plan.kernel_log_growth / M_LN2);
    Real mass, q, tmp, half;
    for (long k = 0; k <= plan.nodes; ++k) {
        mpfr_mul(tmp.raw(), x1.raw(), ch_k.raw(), MPFR_RNDN);
        mpfr_neg(tmp.raw(), tmp.raw(), MPFR_RNDN);
        mpfr_exp(q.raw(), tmp.raw(), MPFR_RNDN);
        if (q.exp2() < thr && k > 0) break;
        if (k == 0) {
            half = ldexp2(kw_k, -1);  // trapezoid endpoint weight
            sink.add(q, half, thr);
            mpfr_fma(mass.raw(), half.raw(), q.raw(), mass.raw(), MPFR_RNDN);
        } else {
            sink.add(q, kw_k, thr);
            mpfr_abs(tmp.raw(), kw_k.raw(), MPFR_RNDN);
            mpfr_fma(mass.raw(), tmp.raw(), q.raw(), mass.raw(), MPFR_RNDN);
        }
        // advance both recurrences to k+1
        Real ch_nn = fma(ch_mult, ch_next, -ch_k);
        ch_k = std::move(ch_next);
        ch_next = std::move(ch_nn);
        Real kw_nn = fma(kw_mult, kw_next, -kw_k);
        kw_k = std::move(kw_next);
        kw_next = std::move(kw_nn);
    }
    return mass;
}

double error_bound(const Plan& plan, double osc_tau, double x1_lo, const Real& mass,
                   double sum_abs_w, double value_mag, long base_bits) {
    // mass ~ sum_k |kernel_k| q_k at n = 1, and sum_n |w_n| q^n <= sum|w| q.
    double log2_mass = (mass.is_zero() ? -4000.0 : static_cast<double>(mass.exp2()))
                       + std::log2(1.0 + sum_abs_w) + std::log2(plan.h) + plan.log2_scale + 2;
    double disc = log2_mass + (osc_tau - 2.0 * M_PI / plan.h) * kStrip / M_LN2 + 6;
    double tail = log2_mass - x1_lo * (std::cosh(plan.u_max) - 1.0) / M_LN2
                  + plan.kernel_log_growth / M_LN2 + 6;
    double round = log2_mass + std::log2(static_cast<double>(plan.nodes) * 64.0 + 64.0)
                   - static_cast<double>(plan.work) + 6;
    double extra = std::exp2(disc) + std::exp2(tail) + std::exp2(round);
    return extra + std::ldexp(std::max(1.0, value_mag), -static_cast<int>(base_bits - 6));
}

void check_contract(double abs_error, double value_mag, long base_bits, const char* who) {
    double cap = std::ldexp(std::max(1.0, value_mag), -static_cast<int>(base_bits / 2));
    if (!(abs_error <= cap))
        throw PrecisionError(std::string(who) + ": cannot meet the error contract; raise base_bits");
}

long imag_cancel_bits(double tau, const PrecisionPolicy& prec, const char* who) {
    long cancel = PrecisionPolicy::spectral_bits(tau);
    if (!prec.spectral_scaling && cancel > prec.base_bits / 2)
        throw PrecisionError(std::string(who) +
                             ": spectral_scaling off; e^{-pi tau/2} cancellation exceeds the bit budget");
    return cancel;
}

void check_imag_range(double tau, double x1_lo, const char* who) {
    if (tau < 0) throw RangeError(std::string(who) + ": tau must be >= 0");
    if (tau > 500) throw RangeError(std::string(who) + ": tau above declared range (500)");
    if (!(x1_lo > 0)) throw RangeError(std::string(who) + ": argument must be positive");
}

double weight_sums(std::span<const Real> weights, double& max_abs_w) {
    double s = 0;
    max_abs_w = 0;
    for (const Real& w : weights) {
        double a = std::abs(w.to_double());
        s += a;
        max_abs_w = std::max(max_abs_w, a);
    }
    return s;
}

Real scale_factor(double tau) { return exp(ldexp2(Real::pi() * Real(tau), -1)); }

}  // namespace

BesselSum bessel_k_scaled_sum(double tau, const Real& x1, std::span<const Real> weights,
                              const PrecisionPolicy& prec) {
    const char* who = "bessel_k_scaled_sum";
    double x1_lo = x1.to_double() * (1 - 1e-13);
    check_imag_range(tau, x1_lo, who);
    double max_abs_w = 0;
    double sum_abs_w = weight_sums(weights, max_abs_w);
    Plan plan = plan_imag(tau, x1_lo, sum_abs_w, imag_cancel_bits(tau, prec, who), prec.base_bits);
    PrecisionScope scope(plan.work);
    SumSink sink{weights, Real(), Real(), Real(), Real()};
    Real mass = node_loop(plan, x1, cos(Real(tau) * Real(plan.h)), sink, max_abs_w);
    sink.finish(Real(plan.h) * scale_factor(tau));
    BesselSum out;
    out.value = std::move(sink.acc);
    out.abs_error = error_bound(plan, tau, x1_lo, mass, sum_abs_w,
                                std::abs(out.value.to_double()), prec.base_bits);
    check_contract(out.abs_error, std::abs(out.value.to_double()), prec.base_bits, who);
    return out;
}

BesselVector bessel_k_scaled_vector(double tau, const Real& x1, int count,
                                    const PrecisionPolicy& prec) {
    const char* who = "bessel_k_scaled_vector";
    double x1_lo = x1.to_double() * (1 - 1e-13);
    check_imag_range(tau, x1_lo, who);
    Plan plan = plan_imag(tau, x1_lo, 1.0, imag_cancel_bits(tau, prec, who), prec.base_bits);
    PrecisionScope scope(plan.work);
    VectorSink sink(count);
    Real mass = node_loop(plan, x1, cos(Real(tau) * Real(plan.h)), sink, 1.0);
    sink.finish(Real(plan.h) * scale_factor(tau));
    BesselVector out;
    out.values = std::move(sink.accs);
    double vmag = out.values.empty() ? 1.0 : std::abs(out.values[0].to_double());
    out.abs_error = error_bound(plan, tau, x1_lo, mass, 1.0, vmag, prec.base_bits);
    check_contract(out.abs_error, vmag, prec.base_bits, who);
    return out;
}

ScaledBesselValue bessel_k_scaled(double tau, double x, const PrecisionPolicy& prec) {
    const Real unit[1] = {Real(1.0)};
    BesselSum s = bessel_k_scaled_sum(tau, Real(x), unit, prec);
    ScaledBesselValue v;
    v.tau = tau;
    v.x = x;
    v.value = std::move(s.value);
    v.abs_error = s.abs_error;
    return v;
}

BesselSum bessel_k_real_order_sum(double nu, const Real& x1, std::span<const Real> weights,
                                  const PrecisionPolicy& prec) {
    const char* who = "bessel_k_real_order_sum";
    double x1_lo = x1.to_double() * (1 - 1e-13);
    if (nu < 0) throw RangeError(std::string(who) + ": nu must be >= 0");
    if (!(x1_lo > 0)) throw RangeError(std::string(who) + ": argument must be positive");
    double max_abs_w = 0;
    double sum_abs_w = weight_sums(weights, max_abs_w);
    Plan plan = plan_real(nu, x1_lo, sum_abs_w, prec.base_bits);
    PrecisionScope scope(plan.work);
    SumSink sink{weights, Real(), Real(), Real(), Real()};
    Real mass = node_loop(plan, x1, cosh(Real(nu) * Real(plan.h)), sink, max_abs_w);
    sink.finish(Real(plan.h));
    BesselSum out;
    out.value = std::move(sink.acc);
    out.abs_error = error_bound(plan, 0.0, x1_lo, mass, sum_abs_w,
                                std::abs(out.value.to_double()), prec.base_bits);
    check_contract(out.abs_error, std::abs(out.value.to_double()), prec.base_bits, who);
    return out;
}

Real bessel_k_real_order(double nu, double x, const PrecisionPolicy& prec, double* abs_error) {
    const Real unit[1] = {Real(1.0)};
    BesselSum s = bessel_k_real_order_sum(nu, Real(x), unit, prec);
    if (abs_error) *abs_error = s.abs_error;
    return std::move(s.value);
}

double log_kbessel_scaled_bound(double tau, double x) {
    // |K_{i tau}(x)| <= K_0(x) <= sqrt(pi/(2x)) e^{-x}, from cosh u - 1 >= u^2/2.
    return M_PI * tau / 2.0 + 0.5 * std::log(M_PI / (2.0 * x)) - x;
}

double log_kbessel_real_bound(double nu, double x) {
    // K_nu(x) <= sqrt(2 pi/x) e^{-x + nu^2/(2x)}: complete the square under
    // cosh(nu u) <= e^{nu u} and cosh u - 1 >= u^2/2.
    return 0.5 * std::log(2.0 * M_PI / x) - x + nu * nu / (2.0 * x);
}

}  // namespace eislab
