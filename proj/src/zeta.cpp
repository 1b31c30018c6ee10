#include <algorithm>
#include <cmath>
#include <vector>

#include "eislab/errors.hpp"
#include "eislab/special.hpp"

namespace eislab {

namespace {

struct LogCache {
    long prec = 0;
    std::vector<Real> logs;  // logs[i] = log(i+2)
};
thread_local LogCache t_logs;

const Real& log_n(long n) {
    LogCache& c = t_logs;
    long wp = working_precision();
    if (c.prec < wp) {
        c.prec = wp;
        c.logs.clear();
    }
    while (static_cast<long>(c.logs.size()) < n - 1) {
        PrecisionScope scope(c.prec);
        c.logs.push_back(log(Real(static_cast<long>(c.logs.size()) + 2)));
    }
    return c.logs[static_cast<size_t>(n - 2)];
}

long cexp2(const Cplx& z) { return std::max(z.re.exp2(), z.im.exp2()); }

enum class SigmaKind { Half, SmallInt, General };

SigmaKind classify_sigma(const Real& sigma, long& as_int) {
    if (sigma == Real(0.5)) return SigmaKind::Half;
    if (sigma.is_integer() && abs(sigma) <= Real(8.0)) {
        as_int = sigma.to_long();
        return SigmaKind::SmallInt;
    }
    return SigmaKind::General;
}

// n^{-sigma} using the cheapest applicable route.
Real pow_neg_sigma(long n, const Real& sigma, SigmaKind kind, long sig_int) {
    switch (kind) {
        case SigmaKind::Half:
            return rec_sqrt(Real(n));
        case SigmaKind::SmallInt:
            return pow(Real(n), -sig_int);
        default:
            return exp(-(sigma * log_n(n)));
    }
}

struct EmResult {
    Cplx value;
    Real abs_bound;  // rounding + remainder, absolute
};

EmResult euler_maclaurin_pass(const Cplx& s, long n_len, long prec_bits) {
    PrecisionScope scope(prec_bits);
    Real sigma = s.re;
    Real t = s.im;
    long sig_int = 0;
    SigmaKind kind = classify_sigma(sigma, sig_int);
    bool t_zero = t.is_zero();

    Cplx acc;
    Real absacc;
    for (long n = 1; n < n_len; ++n) {
        Real pref = n == 1 ? Real(1) : pow_neg_sigma(n, sigma, kind, sig_int);
        if (t_zero) {
            acc.re += pref;
        } else if (n == 1) {
            acc.re += pref;
        } else {
            Real si, co;
            sin_cos(si, co, t * log_n(n));
            acc.re = fma(pref, co, acc.re);
            acc.im = fma(pref, -si, acc.im);
        }
        absacc += pref;
    }

    // Tail: N^{1-s}/(s-1) + N^{-s}/2 + Bernoulli corrections.
    Real rN(n_len);
    Cplx n_pow_ms = pow_positive(rN, -s);                       // N^{-s}
    Cplx tail = (n_pow_ms * rN) / (s - Cplx(Real(1)));          // N^{1-s}/(s-1)
    tail += Cplx(ldexp2(n_pow_ms.re, -1), ldexp2(n_pow_ms.im, -1));
    acc += tail;
    absacc += abs(tail) + Real(1);

    Real inv_n2 = Real(1) / (rN * rN);
    Cplx rising = s;                     // s(s+1)...(s+2k-2), 2k-1 factors
    Cplx npw = n_pow_ms / rN;            // N^{-s-2k+1}
    long scale = std::max(cexp2(acc), absacc.exp2());
    long target = scale - (prec_bits - 10);
    Real rem_bound;
    bool converged = false;
    long prev = 0x7fffffff;
    for (int k = 1; k <= 400; ++k) {
        Cplx term = bernoulli_over_factorial(k) * rising * npw;
        long te = cexp2(term);
        if (te > prev + 2) break;  // series turned; bail to the remainder check
        prev = te;
        acc += term;
        if (te < target) {
            // Remainder bound |T_{k+1}| |s+2k+1| / (sigma+2k+1), doubled.
            Cplx nxt_rising = rising * (s + Cplx(Real(2 * k - 1))) * (s + Cplx(Real(2 * k)));
            Cplx nxt = bernoulli_over_factorial(k + 1) * nxt_rising * (npw * inv_n2);
            Real denom = sigma + Real(2 * k + 1);
            if (denom > Real(1)) {
                rem_bound = ldexp2(abs(nxt) * abs(s + Cplx(Real(2 * k + 1))) / denom, 1);
                converged = true;
            }
            break;
        }
        rising = rising * (s + Cplx(Real(2 * k - 1))) * (s + Cplx(Real(2 * k)));
        npw = npw * inv_n2;
    }
    if (!converged) return {acc, Real()};  // signals the caller to retry

    Real round_bound = ldexp2(absacc * Real(static_cast<long>(n_len) + 64), -(prec_bits - 4));
    EmResult r;
    r.value = acc;
    r.abs_bound = rem_bound + round_bound;
    return r;
}

}  // namespace

Cplx zeta_complex(const Cplx& s, const PrecisionPolicy& prec) {
    if (s.im.is_zero() && s.re == Real(1)) throw PoleError("zeta_complex: pole at s = 1");
    double sigma_d = s.re.to_double();
    double t_d = std::abs(s.im.to_double());
    if (t_d > 1e5) throw RangeError("zeta_complex: |Im s| above declared range 1e5");
    if (sigma_d < -6.0) throw RangeError("zeta_complex: Re s below declared range -6");

    long base = prec.base_bits;
    // Absolutely convergent region: plain truncated Dirichlet series when
    // that is cheaper than the Euler-Maclaurin length.
    if (sigma_d >= 1.5) {
        double direct = std::pow(2.0, static_cast<double>(base + 20) / sigma_d) + 2.0;
        if (direct < t_d + static_cast<double>(base)) {
            long n_len = static_cast<long>(direct) + 1;
            long work = base + 24;
            PrecisionScope scope(work);
            Real sigma = s.re;
            long sig_int = 0;
            SigmaKind kind = classify_sigma(sigma, sig_int);
            bool t_zero = s.im.is_zero();
            Cplx acc(Real(1));
            for (long n = 2; n <= n_len; ++n) {
                Real pref = pow_neg_sigma(n, sigma, kind, sig_int);
                if (t_zero) {
                    acc.re += pref;
                } else {
                    Real si, co;
                    sin_cos(si, co, s.im * log_n(n));
                    acc.re = fma(pref, co, acc.re);
                    acc.im = fma(pref, -si, acc.im);
                }
            }
            return acc;
        }
    }

    long cancel = static_cast<long>(std::max(0.0, (1.0 - sigma_d))
                                    * std::log2(t_d + static_cast<double>(base) + 16.0)) + 8;
    long n_len = static_cast<long>(std::ceil(t_d)) + base + 16;
    for (int attempt = 0; attempt < 4; ++attempt) {
        long work = base + 24 + cancel + 64L * attempt;
        EmResult r = euler_maclaurin_pass(s, n_len, work);
        if (!r.abs_bound.is_zero() || (r.value.re.is_zero() && r.value.im.is_zero())) {
            PrecisionScope scope(work);
            Real mag = abs(r.value);
            if (!r.abs_bound.is_zero() && r.abs_bound <= ldexp2(mag, -(base - 8))) return r.value;
        }
        n_len += n_len / 2;
    }
    throw PrecisionError("zeta_complex: could not certify requested relative accuracy");
}

}  // namespace eislab
