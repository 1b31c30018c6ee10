#include <vector>

#include "eislab/special.hpp"

namespace eislab {

// Both Bernoulli-derived coefficient families come from
//   B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k},
// evaluated with mpfr_zeta_ui, so no big-rational arithmetic is needed.
// Caches are per-thread and rebuilt whenever a higher working precision
// shows up.

namespace {

struct Cache {
    long prec = 0;
    std::vector<Real> over_factorial;   // B_{2k}/(2k)!,        index k-1
    std::vector<Real> stirling_coeff;   // B_{2k}/((2k)(2k-1)), index k-1
};

thread_local Cache t_cache;

void extend(Cache& c, int upto) {
    long wp = working_precision();
    if (c.prec < wp) {
        c.prec = wp;
        c.over_factorial.clear();
        c.stirling_coeff.clear();
    }
    int have = static_cast<int>(c.over_factorial.size());
    if (have >= upto) return;
    PrecisionScope scope(c.prec);
    Real two_pi = ldexp2(Real::pi(), 1);
    Real inv_tp2 = Real(1) / (two_pi * two_pi);
    Real p = pow(inv_tp2, static_cast<long>(have + 1));  // (2pi)^{-2k} for k = have+1
    for (int k = have + 1; k <= upto; ++k) {
        Real z;
        mpfr_zeta_ui(z.raw(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
        Real base = ldexp2(z * p, 1);  // 2 zeta(2k) / (2pi)^{2k}
        if (k % 2 == 0) base = -base;
        c.over_factorial.push_back(base);
        Real fac;
        mpfr_fac_ui(fac.raw(), static_cast<unsigned long>(2 * k - 2), MPFR_RNDN);
        c.stirling_coeff.push_back(base * fac);
        p *= inv_tp2;
    }
}

}  // namespace

Real bernoulli_over_factorial(int k) {
    extend(t_cache, k);
    return t_cache.over_factorial[static_cast<size_t>(k - 1)];
}

Real bernoulli_stirling_coeff(int k) {
    extend(t_cache, k);
    return t_cache.stirling_coeff[static_cast<size_t>(k - 1)];
}

}  // namespace eislab
