#include <algorithm>
#include <cmath>
#include <cstdio>

#include "eislab/eisenstein.hpp"
#include "eislab/lfun.hpp"
#include "eislab/parallel.hpp"

namespace eislab {

Cplx eisenstein_l(double t, const Cplx& nu, const PrecisionPolicy& prec) {
    PrecisionScope scope(prec.base_bits + 16);
    Cplx it(Real(0), Real(t));
    Cplx a = nu + it, b = nu - it;
    if (a.im.is_zero() && a.re == Real(1))
        throw PoleError("eisenstein_l: nu + it hits the zeta pole");
    if (b.im.is_zero() && b.re == Real(1))
        throw PoleError("eisenstein_l: nu - it hits the zeta pole");
    return zeta_complex(a, prec) * zeta_complex(b, prec);
}

GammaFactor gamma_factor(const Cplx& nu, double t, const PrecisionPolicy& prec) {
    double r = nu.im.to_double();
    GammaFactor out;
    if (t == 0) {
        // theta(1/2 + i0) has the zeta(1) pole: gamma vanishes in the limit
        out.scaled = Cplx(Real(0));
        out.ledger = 0;
        return out;
    }
    out.ledger = -M_PI * std::abs(t + r) / 4.0 - M_PI * std::abs(r - t) / 4.0 + M_PI * t / 2.0;
    PrecisionScope scope(prec.base_bits + 48);
    Cplx it_half(Real(0), ldexp2(Real(t), -1));
    Cplx half_nu(ldexp2(nu.re, -1), ldexp2(nu.im, -1));
    Cplx lg1 = log_gamma_mod2pi(half_nu + it_half, prec);
    Cplx lg2 = log_gamma_mod2pi(half_nu - it_half, prec);
    Cplx log_theta_scaled = log(theta_factor_scaled(t, prec));
    // log gamma = lg1 + lg2 - log theta - nu log pi, with
    // log theta = log theta_scaled - pi t/2; subtract the ledger in-place.
    Real lpi = log(Real::pi());
    Cplx expo = lg1 + lg2 - log_theta_scaled - Cplx(nu.re * lpi, nu.im * lpi);
    expo.re += ldexp2(Real::pi() * Real(t), -1) - Real(out.ledger);
    out.scaled = exp(expo);
    return out;
}

std::complex<double> i_kernel(double eta, double y, std::complex<double> nu) {
    if (!(eta > 0)) throw RangeError("i_kernel: eta must be > 0");
    if (!(y > 0)) throw RangeError("i_kernel: y must be > 0");
    std::complex<double> one_minus(1.0 - nu.real(), -nu.imag());
    double lr = std::log1p(eta / y);
    std::complex<double> w = one_minus * lr;
    if (std::abs(w) < 0.5) {
        // I = y^{1-nu} log((y+eta)/y) (e^w - 1)/w, series for the last factor
        std::complex<double> series(1.0, 0.0), term(1.0, 0.0);
        for (int j = 2; j <= 24; ++j) {
            term *= w / static_cast<double>(j);
            series += term;
            if (std::abs(term) < 1e-20) break;
        }
        return std::pow(std::complex<double>(y, 0.0), one_minus) * lr * series;
    }
    return (std::pow(std::complex<double>(y + eta, 0.0), one_minus)
            - std::pow(std::complex<double>(y, 0.0), one_minus))
           / one_minus;
}

std::vector<ProfilePoint> j_integrand_profile(double t, double eta,
                                              const std::vector<double>& r_grid, double y,
                                              const PrecisionPolicy& prec) {
    if (!(eta > 2.0 / t && eta < 1.0))
        throw RangeError("j_integrand_profile: need 2/t < eta < 1");
    if (!(y > 0)) throw RangeError("j_integrand_profile: y must be > 0");
    std::vector<ProfilePoint> out(r_grid.size());
    parallel_for(static_cast<long>(r_grid.size()), [&](long i) {
        double r = r_grid[static_cast<size_t>(i)];
        Cplx nu(0.5, r);
        GammaFactor g = gamma_factor(nu, t, prec);
        std::complex<double> ik = i_kernel(eta, y, {0.5, r});
        PrecisionScope scope(prec.base_bits + 16);
        Real l_abs2 = abs2(eisenstein_l(t, nu, prec));
        // |I g L|^2 in log space: 2(log|I| + log|g_s| + ledger) + log|L|^2
        double log_val = 2.0 * std::log(std::abs(ik) + 1e-300)
                         + std::log(abs2(g.scaled).to_double() + 1e-300) + 2.0 * g.ledger
                         + std::log(l_abs2.to_double() + 1e-300);
        ProfilePoint p;
        p.r = r;
        p.value = std::exp(log_val);
        double ar = std::abs(r);
        p.region = ar < 1.0 / eta ? 0 : (ar <= t ? 1 : 2);
        out[static_cast<size_t>(i)] = p;
    });
    return out;
}

namespace {

void check_moment_args(double T, int k, double resolution) {
    if (!(T > 0)) throw RangeError("zeta_moment: T must be > 0");
    if (k != 1 && k != 2) throw RangeError("zeta_moment: k must be 1 or 2");
    if (!(resolution > 0 && resolution <= 0.25))
        throw RangeError("zeta_moment: resolution must lie in (0, 0.25]");
    double steps = T / resolution;
    if (std::abs(steps - std::llround(steps)) > 1e-9 || std::llround(steps) % 2 != 0)
        throw ValidationError("zeta_moment: T/resolution must be an even integer");
}

double simpson_prefix(const std::vector<double>& v, size_t upto, size_t stride, double h) {
    // composite Simpson over v[0..upto] (upto/stride even) sampled at stride
    double acc = v[0] + v[upto];
    size_t count = upto / stride;
    for (size_t j = 1; j < count; ++j) acc += v[j * stride] * (j % 2 ? 4.0 : 2.0);
    return acc * (h * static_cast<double>(stride)) / 3.0;
}

}  // namespace

MomentScan zeta_moment_scan(const std::vector<double>& T_grid, int k, double resolution,
                            const PrecisionPolicy& prec) {
    if (T_grid.empty()) throw ValidationError("zeta_moment_scan: empty T grid");
    for (double T : T_grid) check_moment_args(T, k, resolution);
    double t_max = *std::max_element(T_grid.begin(), T_grid.end());
    if (t_max > 5000) throw RangeError("zeta_moment_scan: T above desk-scale cap 5000");
    double h = resolution / 2.0;
    size_t n_nodes = static_cast<size_t>(std::llround(t_max / h)) + 1;
    std::vector<double> pow2(n_nodes);  // |zeta(1/2 + i j h)|^2
    parallel_for(static_cast<long>(n_nodes), [&](long j) {
        Cplx z = zeta_complex(Cplx(Real(0.5), Real(h) * Real(j)), prec);
        PrecisionScope scope(prec.base_bits);
        pow2[static_cast<size_t>(j)] = abs2(z).to_double();
    });
    std::vector<double> integrand(n_nodes);
    for (size_t j = 0; j < n_nodes; ++j)
        integrand[j] = k == 1 ? pow2[j] : pow2[j] * pow2[j];

    MomentScan scan;
    scan.k = k;
    scan.T_grid = T_grid;
    for (double T : T_grid) {
        size_t upto = static_cast<size_t>(std::llround(T / h));
        double fine = simpson_prefix(integrand, upto, 1, h);
        double coarse = simpson_prefix(integrand, upto, 2, h);
        scan.values.push_back(fine / T);
        scan.quad_errors.push_back(std::abs(fine - coarse) / T);
    }
    return scan;
}

MomentValue zeta_moment(double T, int k, double resolution, const PrecisionPolicy& prec) {
    MomentScan s = zeta_moment_scan({T}, k, resolution, prec);
    return {s.values[0], s.quad_errors[0]};
}

std::string moment_scan_csv(const MomentScan& scan) {
    std::string out = "T,k,value,quad_error\n";
    char line[160];
    for (size_t i = 0; i < scan.T_grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%d,%.17g,%.17g\n", scan.T_grid[i], scan.k,
                      scan.values[i], scan.quad_errors[i]);
        out += line;
    }
    return out;
}

MaassMoment maass_l_second_moment(const MaassFormRecord& rec, double T, long n_terms,
                                  double resolution) {
    if (!(T > 0)) throw RangeError("maass_l_second_moment: T must be > 0");
    if (n_terms < 1 || n_terms > rec.n_max())
        throw RangeError("maass_l_second_moment: n_terms must be in [1, n_max]");
    if (!(resolution > 0 && resolution <= 0.25))
        throw RangeError("maass_l_second_moment: resolution must lie in (0, 0.25]");
    size_t steps = static_cast<size_t>(std::ceil(T / resolution));
    steps += steps % 2;  // Simpson parity
    double h = T / static_cast<double>(steps);
    std::vector<double> vals(steps + 1);
    parallel_for(static_cast<long>(steps + 1), [&](long j) {
        double t = T + h * static_cast<double>(j);
        std::complex<double> L = l_phi_truncated(rec, {0.5, t}, n_terms).value;
        vals[static_cast<size_t>(j)] = std::norm(L);
    });
    double acc = vals[0] + vals[steps];
    for (size_t j = 1; j < steps; ++j) acc += vals[j] * (j % 2 ? 4.0 : 2.0);
    MaassMoment out;
    out.value = acc * h / 3.0 / T;
    out.caveat = "exploratory: raw Dirichlet truncation at n_terms="
                 + std::to_string(n_terms)
                 + ", no approximate functional equation; not a Conjecture-level quantity";
    return out;
}

}  // namespace eislab
