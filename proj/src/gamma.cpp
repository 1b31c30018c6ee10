#include <algorithm>
#include <cmath>

#include "eislab/errors.hpp"
#include "eislab/special.hpp"

namespace eislab {

namespace {

// Magnitude proxy: max base-2 exponent of the two parts.
long cexp2(const Cplx& z) { return std::max(z.re.exp2(), z.im.exp2()); }

// Stirling series for log Gamma(w), valid for Re w >= 1 and |w| >= radius
// sized so the minimum term ~ e^{-2 pi |w|} undershoots the target.  The
// remainder after J terms is bounded by |term_{J+1}| * sec(arg(w)/2)^{2J+2},
// and Re w > 0 keeps sec(arg/2) <= sqrt(2); we fold that into the stop rule.
Cplx stirling_log_gamma(const Cplx& w, long prec_bits) {
    Cplx lw = log(w);
    Cplx acc = (w - Cplx(Real(0.5))) * lw - w;
    Real half_log_2pi = Real(0.5) * log(ldexp2(Real::pi(), 1));
    acc.re += half_log_2pi;

    // Remainder after term j is |term_{j+1}| sec(arg(w)/2)^{2j+2}; Re w > 0
    // keeps the sec factor below sqrt 2.
    double theta = std::abs(std::atan2(w.im.to_double(), w.re.to_double()));
    double margin = -2.0 * std::log2(std::cos(theta / 2.0));
    Cplx w2inv = Cplx(Real(1)) / (w * w);
    Cplx pw = Cplx(Real(1)) / w;
    long scale = std::max(cexp2(acc), 0L);
    long prev = 0x7fffffff;
    for (int j = 1; j < 1000; ++j) {
        Cplx term = bernoulli_stirling_coeff(j) * pw;
        long te = cexp2(term) + static_cast<long>(margin * (j + 1)) + 1;
        if (te >= prev) break;  // asymptotic series turned; stop adding
        acc += term;
        prev = te;
        if (te < scale - prec_bits) return acc;
        pw = pw * w2inv;
    }
    throw PrecisionError("stirling_log_gamma: series did not reach target accuracy");
}

// Shift count so that Re(s+m) >= 1 and |s+m| >= r0.
long shift_for(const Cplx& s, double r0) {
    double re = s.re.to_double(), im = s.im.to_double();
    double need = 1.0;
    if (std::abs(im) < r0) need = std::max(need, std::sqrt(r0 * r0 - im * im));
    double m = std::ceil(need - re);
    return m > 0 ? static_cast<long>(m) : 0;
}

void check_pole(const Cplx& s) {
    if (s.im.is_zero() && s.re.is_integer() && s.re.sign() <= 0)
        throw PoleError("gamma_complex: pole at non-positive integer");
}

}  // namespace

Cplx log_gamma_mod2pi(const Cplx& s, const PrecisionPolicy& prec) {
    check_pole(s);
    long work = prec.base_bits + 32;
    PrecisionScope scope(work);
    double r0 = 0.125 * static_cast<double>(work) + 8.0;
    long m = shift_for(s, r0);
    Cplx sw(s.re, s.im);  // round into working precision
    Cplx lg = stirling_log_gamma(Cplx(sw.re + Real(m), sw.im), prec.base_bits + 16);
    if (m > 0) {
        // Gamma(s) = Gamma(s+m) / prod_{k<m} (s+k); subtract log of the
        // product.  Branch of the log is irrelevant mod 2 pi i.
        Cplx prod(Real(1));
        for (long k = 0; k < m; ++k) {
            Cplx f(sw.re + Real(k), sw.im);
            prod = prod * f;
            // Renormalize occasionally so the product exponent stays tame.
            if (cexp2(prod) > (1L << 28)) break;  // unreachable at desk scale
        }
        lg = lg - log(prod);
    }
    return lg;
}

Cplx gamma_complex(const Cplx& s, const PrecisionPolicy& prec) {
    check_pole(s);
    long work = prec.base_bits + 32;
    PrecisionScope scope(work);
    double r0 = 0.125 * static_cast<double>(work) + 8.0;
    long m = shift_for(s, r0);
    Cplx sw(s.re, s.im);
    Cplx g = exp(stirling_log_gamma(Cplx(sw.re + Real(m), sw.im), prec.base_bits + 16));
    for (long k = 0; k < m; ++k) g = g / Cplx(sw.re + Real(k), sw.im);
    return g;
}

}  // namespace eislab
