#ifndef EISLAB_MAASS_HPP
#define EISLAB_MAASS_HPP

#include <complex>
#include <string>
#include <vector>

#include "eislab/restriction.hpp"

namespace eislab {

// Hecke-Maass cusp-form data ingested from a coefficient file.  Only even
// forms are supported (odd forms vanish identically on the x0 = 0
// geodesic).  Normalization is first-coefficient: rho(1) := 1, so lambda(n)
// doubles as the Fourier coefficient; sign counts, norm ratios and the
// certificate chain are invariant under the positive rescaling that
// separates this from the L^2 normalization.
struct MaassFormRecord {
    double t_phi = 0;
    std::vector<Real> lambda;  // lambda[n-1] = lambda(n), n = 1..n_max
    double coeff_tol = 0;
    std::string source_id;

    long n_max() const { return static_cast<long>(lambda.size()); }
    double lambda_d(long n) const { return lambda[static_cast<size_t>(n - 1)].to_double(); }
};

// Parses the line-oriented coefficient format:
//   # comment
//   t_phi = <decimal>
//   parity = even
//   coeff_tol = <decimal>
//   n_max = <integer>
//   <n> <lambda_n>          (n = 1..n_max, in order, no gaps)
// Validates lambda(1) = 1 and the Hecke relations
//   lambda(m) lambda(n) = sum_{d | gcd(m,n)} lambda(m n / d^2)
// exhaustively over m, n <= 20 with m n <= n_max.
MaassFormRecord load_maass_record(const std::string& path);

// Validation entry point shared by the loader (exposed for synthetic data).
void validate_maass_record(const MaassFormRecord& rec);

struct MaassEval {
    double value = 0;
    double abs_error = 0;
};

class MaassEvaluator {
public:
    MaassEvaluator(MaassFormRecord rec, const PrecisionPolicy& prec, double tol)
        : rec_(std::move(rec)), prec_(prec), tol_(tol) {
        if (!(rec_.t_phi > 0)) throw ValidationError("MaassEvaluator: t_phi must be > 0");
        if (!(tol > 0)) throw ValidationError("MaassEvaluator: tol must be > 0");
    }

    const MaassFormRecord& record() const { return rec_; }
    double t_phi() const { return rec_.t_phi; }

    // f(y) = y^{-1/2} phi(x0 + iy) = 2 sum_n lambda(n) Khat_{i t_phi}(2 pi n y) cos(2 pi n x0).
    // Throws TruncationError when the tail bound needs more coefficients
    // than the record carries.
    MaassEval eval(const GeodesicSegment& seg, double y) const;

    // Smallest N with a proved tail bound below tol at height y, using the
    // trivial |lambda(n)| <= d(n) sqrt(n) envelope.
    long truncation_terms(double y) const;

private:
    MaassFormRecord rec_;
    PrecisionPolicy prec_;
    double tol_;
};

class MaassRestrictedEvaluator : public Evaluator1D {
public:
    MaassRestrictedEvaluator(const MaassEvaluator& ev, GeodesicSegment seg)
        : ev_(ev), seg_(seg) {}
    Point eval(double y) const override {
        MaassEval e = ev_.eval(seg_, y);
        return {e.value, e.abs_error + 1e-300};
    }
    std::pair<double, double> domain() const override { return {seg_.a, seg_.y_top()}; }
    double oscillation_rate() const override {
        return std::max(6.0, ev_.t_phi() / seg_.a + 2.0 * M_PI / seg_.a);
    }

private:
    const MaassEvaluator& ev_;
    GeodesicSegment seg_;
};

struct LPhiValue {
    std::complex<double> value;
    double tail_note = 0;  // sum_{n_terms < n <= n_max} |lambda(n)| n^{-Re s}; heuristic
};

// Partial sum of L_phi(s) = sum lambda(n) n^{-s}.
LPhiValue l_phi_truncated(const MaassFormRecord& rec, std::complex<double> s, long n_terms);

}  // namespace eislab

#endif
