#ifndef EISLAB_RESTRICTION_HPP
#define EISLAB_RESTRICTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "eislab/eisenstein.hpp"
#include "eislab/geodesic.hpp"

namespace eislab {

// A real-valued function of y on a segment, reported with a certified
// absolute error per point.  Implementations must be safe to call from
// multiple threads.
class Evaluator1D {
public:
    struct Point {
        double value = 0;
        double abs_error = 0;
        bool sign_certified() const { return std::abs(value) > abs_error; }
        int sign() const { return value < 0 ? -1 : 1; }
    };
    virtual ~Evaluator1D() = default;
    virtual Point eval(double y) const = 0;
    // inclusive domain of validity [lo, hi]
    virtual std::pair<double, double> domain() const = 0;
    // rough maximum phase rate (radians per unit y); drives grid densities
    virtual double oscillation_rate() const { return 6.0; }
};

// Wraps a closed-form function; abs_error is a fixed bound (0 for exact).
class FunctionEvaluator : public Evaluator1D {
public:
    FunctionEvaluator(std::function<double(double)> f, double lo, double hi, double rate,
                      double abs_error = 0.0)
        : f_(std::move(f)), lo_(lo), hi_(hi), rate_(rate), err_(abs_error) {}
    Point eval(double y) const override { return {f_(y), err_}; }
    std::pair<double, double> domain() const override { return {lo_, hi_}; }
    double oscillation_rate() const override { return rate_; }

private:
    std::function<double(double)> f_;
    double lo_, hi_, rate_, err_;
};

// f_t(y) = y^{-1/2} E_t(x0 + i y) along a geodesic segment.
class EisensteinRestrictedEvaluator : public Evaluator1D {
public:
    EisensteinRestrictedEvaluator(const EisensteinContext& ctx, GeodesicSegment seg)
        : ctx_(ctx), seg_(seg) {}
    Point eval(double y) const override {
        EisensteinEval e = ctx_.restricted(seg_, y);
        return {e.value.to_double(), e.abs_error + 1e-300};
    }
    std::pair<double, double> domain() const override { return {seg_.a, seg_.y_top()}; }
    double oscillation_rate() const override {
        double t = ctx_.on_critical_line() ? ctx_.t() : 1.0;
        return std::max(6.0, t / seg_.a + 2.0 * M_PI / seg_.a);
    }
    const GeodesicSegment& segment() const { return seg_; }

private:
    const EisensteinContext& ctx_;
    GeodesicSegment seg_;
};

enum class Measure { Lebesgue, Hyperbolic };  // dy vs dy/y

struct RestrictionSamples {
    GeodesicSegment segment;
    std::vector<double> ys;
    std::vector<double> values;
    std::vector<double> errors;
    Measure measure = Measure::Lebesgue;
};

enum class Spacing { UniformY, UniformLogY };

RestrictionSamples sample_segment(const Evaluator1D& ev, const GeodesicSegment& seg,
                                  long n_points, Spacing spacing,
                                  Measure measure = Measure::Lebesgue);

std::string samples_to_csv(const RestrictionSamples& s);

struct SignBracket {
    double y_lo = 0, y_hi = 0;
    int sign_lo = 0, sign_hi = 0;
};

// Certified lower bound for the sign-change count: every bracket pins one
// alternation between points whose sign is certified (|value| > error).
// Grid pairs with an uncertified endpoint are bisected up to max_depth;
// regions still uncertified are reported, never counted.
struct SignChangeCertificate {
    long count = 0;
    std::vector<SignBracket> brackets;
    double min_gap = 0;
    long undecided = 0;
};

SignChangeCertificate count_sign_changes(const Evaluator1D& ev, double a, double b,
                                         long base_grid, int max_depth);
SignChangeCertificate count_sign_changes(const Evaluator1D& ev, const GeodesicSegment& seg,
                                         long base_grid, int max_depth);

struct NormReport {
    double p = 2;
    double value = 0;
    double quad_error = 0;
    Measure measure = Measure::Lebesgue;
};

// M_p(f) = ((1/|I|) int_I |f|^p dmu)^{1/p}, composite Gauss-Legendre with
// panels split at certified sign-change brackets (|f|^p loses smoothness at
// zeros) and a two-resolution error estimate.
NormReport m_p_norm(const Evaluator1D& ev, double a, double b, double p, Measure measure,
                    double oversample = 1.0);
NormReport m_p_norm(const Evaluator1D& ev, const GeodesicSegment& seg, double p, Measure measure,
                    double oversample = 1.0);
NormReport m_p_norm(const RestrictionSamples& samples, double p);

struct JReport {
    double eta = 0;
    double value = 0;
    double quad_error = 0;
};

// J(f, eta) = (1/|I|) int_I |int_0^eta f(y+v) dv| dy, nested composite
// Simpson on an aligned grid (inner nodes are outer nodes), with a
// two-resolution error estimate.  Lebesgue measure, per the certificate's
// own convention.
JReport j_functional(const Evaluator1D& ev, double a, double b, double eta,
                     double oversample = 1.0);

}  // namespace eislab

#endif
