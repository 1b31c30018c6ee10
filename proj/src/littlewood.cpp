#include <cmath>
#include <cstdio>

#include "eislab/littlewood.hpp"

namespace eislab {

LittlewoodCertificate certify(const Evaluator1D& ev, double a, double b, long n_subdivisions,
                              CPolicy policy, double eps_c, double oversample) {
    if (n_subdivisions < 2) throw ValidationError("certify: N must be >= 2");
    if (!(b > a)) throw ValidationError("certify: need a < b");
    if (!(eps_c > 0 && eps_c < 1)) throw ValidationError("certify: eps_c must lie in (0,1)");
    double eta = (b - a) / static_cast<double>(n_subdivisions);
    auto dom = ev.domain();
    if (a < dom.first - 1e-12 || b + eta > dom.second + 1e-12)
        throw RangeError("certify: evaluator not defined on [a, b + |I|/N]");

    NormReport m1 = m_p_norm(ev, a, b, 1, Measure::Lebesgue, oversample);
    NormReport m2 = m_p_norm(ev, a, b, 2, Measure::Lebesgue, oversample);
    if (!(m2.value > m2.quad_error))
        throw QuadratureError("certify: M2 indistinguishable from zero (degenerate input)");

    JReport j = j_functional(ev, a, b, eta, oversample);

    LittlewoodCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.n_subdivisions = n_subdivisions;
    cert.eta = eta;
    cert.m1 = m1.value;
    cert.m2 = m2.value;
    cert.m1_error = m1.quad_error;
    cert.m2_error = m2.quad_error;
    cert.j_value = j.value;
    cert.j_error = j.quad_error;

    // Deflated ratio: M1_true >= c (M2_true) holds for every value inside
    // the error bounds.  The clamp keeps c inside (0,1) for constant-|f|
    // inputs, where the raw ratio reaches 1.
    double c_raw = (m1.value - m1.quad_error) / (m2.value + m2.quad_error);
    cert.c = c_raw;
    if (policy == CPolicy::RatioClamped && c_raw > 1.0 - eps_c) {
        cert.c = 1.0 - eps_c;
        cert.clamp_applied = true;
    }
    cert.threshold = cert.c * cert.c * cert.c * eta * m2.value / 16.0;
    double threshold_deflated = cert.c * cert.c * cert.c * eta * (m2.value - m2.quad_error) / 16.0;
    bool c_ok = cert.c > 0 && cert.c < 1;
    cert.hypotheses_hold = c_ok && (j.value + j.quad_error < threshold_deflated);
    cert.lower_bound = cert.hypotheses_hold
                           ? static_cast<long>(std::ceil(cert.c * cert.c
                                                         * static_cast<double>(n_subdivisions) / 8.0))
                           : 0;
    return cert;
}

std::string certificate_csv_header() {
    return "a,b,N,eta,M1,M2,c,J,threshold,hypotheses_hold,lower_bound\n";
}

std::string certificate_to_csv(const LittlewoodCertificate& c) {
    char line[512];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%ld\n",
                  c.a, c.b, c.n_subdivisions, c.eta, c.m1, c.m2, c.c, c.j_value, c.threshold,
                  c.hypotheses_hold ? 1 : 0, c.lower_bound);
    return line;
}

ExponentBudget exponent_budget(double epsilon, double p, double kappa, Regime regime) {
    if (!(epsilon > 0)) throw RangeError("exponent_budget: epsilon must be > 0");
    if (!(p > 2)) throw RangeError("exponent_budget: p must be > 2");
    double kappa_floor = regime == Regime::Eisenstein ? 8.0 : 9.0;
    if (!(kappa > kappa_floor))
        throw RangeError("exponent_budget: kappa must exceed the regime bound");
    ExponentBudget out;
    out.epsilon = epsilon;
    out.p = p;
    out.kappa = kappa;
    out.regime = regime;
    out.delta_min_eisenstein = 6.0 * p * epsilon / (p - 2.0);
    out.delta_min_cusp = (7.0 * p - 2.0) * epsilon / (p - 2.0);
    out.delta_min = regime == Regime::Eisenstein ? out.delta_min_eisenstein : out.delta_min_cusp;
    out.final_exponent = 1.0 - kappa * epsilon * p / (p - 2.0);
    return out;
}

}  // namespace eislab
