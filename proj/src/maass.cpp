#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "eislab/maass.hpp"

namespace eislab {

namespace {

long divisor_count(long n) {
    long d = 0;
    for (long k = 1; k * k <= n; ++k) {
        if (n % k) continue;
        d += (k * k == n) ? 1 : 2;
    }
    return d;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

constexpr long kCoeffBits = 256;  // parse precision for file coefficients

}  // namespace

void validate_maass_record(const MaassFormRecord& rec) {
    long n_max = rec.n_max();
    if (n_max < 10) throw RangeError("maass record: n_max must be >= 10");
    if (!(rec.t_phi > 0)) throw ValidationError("maass record: t_phi must be > 0");
    if (!(rec.coeff_tol >= 0)) throw ValidationError("maass record: coeff_tol must be >= 0");
    if (std::abs(rec.lambda_d(1) - 1.0) > rec.coeff_tol + 1e-15)
        throw ValidationError("maass record: lambda(1) must equal 1 under first-coefficient normalization");
    // Hecke relations over the budgeted window.
    for (long m = 2; m <= 20; ++m) {
        for (long n = m; n <= 20; ++n) {
            if (m * n > n_max) continue;
            double lhs = rec.lambda_d(m) * rec.lambda_d(n);
            double rhs = 0;
            long g = std::gcd(m, n);
            long terms = 0;
            for (long d = 1; d <= g; ++d) {
                if (g % d) continue;
                rhs += rec.lambda_d(m * n / (d * d));
                ++terms;
            }
            double slack = 2.0 * rec.coeff_tol
                               * (std::abs(rec.lambda_d(m)) + std::abs(rec.lambda_d(n))
                                  + static_cast<double>(terms))
                           + 1e-12;
            if (std::abs(lhs - rhs) > slack) {
                std::ostringstream msg;
                msg << "maass record: Hecke relation violated at (m,n) = (" << m << "," << n
                    << "): lambda(m)lambda(n) = " << lhs << " vs divisor sum " << rhs;
                throw ValidationError(msg.str());
            }
        }
    }
}

MaassFormRecord load_maass_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_maass_record: cannot open " + path);
    MaassFormRecord rec;
    rec.source_id = path;
    bool have_t = false, have_parity = false, have_tol = false;
    long n_max = -1;
    long next_n = 1;
    PrecisionScope scope(kCoeffBits);
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq != std::string::npos && !std::isdigit(static_cast<unsigned char>(line[0]))) {
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key == "t_phi") {
                rec.t_phi = std::stod(val);
                have_t = true;
            } else if (key == "parity") {
                if (val != "even")
                    throw ValidationError("load_maass_record: only even forms are supported "
                                          "(odd forms vanish on the x0 = 0 geodesic)");
                have_parity = true;
            } else if (key == "coeff_tol") {
                rec.coeff_tol = std::stod(val);
                have_tol = true;
            } else if (key == "n_max") {
                n_max = std::stol(val);
            } else {
                throw ParseError("load_maass_record: unknown header key '" + key + "'");
            }
            continue;
        }
        std::istringstream row(line);
        long n;
        std::string lam;
        if (!(row >> n >> lam))
            throw ParseError("load_maass_record: malformed coefficient line " + std::to_string(line_no));
        if (n != next_n)
            throw ParseError("load_maass_record: coefficient index " + std::to_string(n)
                             + " out of order (expected " + std::to_string(next_n) + ")");
        rec.lambda.emplace_back(lam);
        if (!rec.lambda.back().is_finite())
            throw ParseError("load_maass_record: unparsable coefficient at n = " + std::to_string(n));
        ++next_n;
    }
    if (!have_t || !have_parity || !have_tol || n_max < 0)
        throw ParseError("load_maass_record: missing header (need t_phi, parity, coeff_tol, n_max)");
    if (rec.n_max() != n_max)
        throw ParseError("load_maass_record: expected " + std::to_string(n_max) + " coefficients, got "
                         + std::to_string(rec.n_max()));
    validate_maass_record(rec);
    return rec;
}

long MaassEvaluator::truncation_terms(double y) const {
    const double logq = -2.0 * M_PI * y;
    const double q = std::exp(logq);
    const double log_tol = std::log(tol_);
    // tail: 2 sum_{n>N} d(n) sqrt(n) Khat_env(2 pi n y), with d(n) sqrt(n) <= n^2
    for (long n = 1; n <= rec_.n_max(); ++n) {
        double np1 = static_cast<double>(n) + 1;
        double x_next = 2.0 * M_PI * np1 * y;
        double log_env = log_kbessel_scaled_bound(rec_.t_phi, x_next) + x_next;
        double bump = 2.0 / np1;
        if (logq + bump >= -1e-9) continue;
        double log_geo = 2.0 * std::log(np1) + np1 * logq - std::log1p(-q * std::exp(bump));
        if (std::log(2.0) + log_env + log_geo < log_tol) return n;
    }
    throw TruncationError("maass_eval: required truncation exceeds the record's n_max");
}

MaassEval MaassEvaluator::eval(const GeodesicSegment& seg, double y) const {
    if (y < seg.a - 1e-12 || y > seg.y_top() + 1e-12)
        throw RangeError("maass_eval: y outside segment and margin");
    long n = truncation_terms(y);
    PrecisionScope scope(prec_.effective_bits(rec_.t_phi) + 32);
    Real theta_x = ldexp2(Real::pi(), 1) * (Real(seg.x0_num) / Real(seg.x0_den));
    std::vector<Real> w(static_cast<size_t>(n));
    for (long k = 1; k <= n; ++k) {
        Real ang;
        mpfr_mul_si(ang.raw(), theta_x.raw(), k, MPFR_RNDN);
        w[static_cast<size_t>(k - 1)] = ldexp2(rec_.lambda[static_cast<size_t>(k - 1)] * cos(ang), 1);
    }
    BesselSum s = bessel_k_scaled_sum(rec_.t_phi, ldexp2(Real::pi(), 1) * Real(y), w, prec_);
    MaassEval out;
    out.value = s.value.to_double();
    out.abs_error = tol_ + s.abs_error
                    + std::ldexp(std::abs(out.value) + 1.0, -static_cast<int>(prec_.base_bits - 8));
    return out;
}

LPhiValue l_phi_truncated(const MaassFormRecord& rec, std::complex<double> s, long n_terms) {
    if (n_terms < 1 || n_terms > rec.n_max())
        throw RangeError("l_phi_truncated: n_terms must be in [1, n_max]");
    LPhiValue out;
    std::complex<double> acc(0, 0);
    for (long n = 1; n <= n_terms; ++n) {
        double ln = std::log(static_cast<double>(n));
        acc += rec.lambda_d(n) * std::exp(-s.real() * ln)
               * std::complex<double>(std::cos(s.imag() * ln), -std::sin(s.imag() * ln));
    }
    out.value = acc;
    for (long n = n_terms + 1; n <= rec.n_max(); ++n)
        out.tail_note += std::abs(rec.lambda_d(n)) * std::pow(static_cast<double>(n), -s.real());
    return out;
}

}  // namespace eislab
