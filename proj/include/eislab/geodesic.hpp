#ifndef EISLAB_GEODESIC_HPP
#define EISLAB_GEODESIC_HPP

#include <numeric>

#include "eislab/errors.hpp"

namespace eislab {

// Vertical cuspidal geodesic segment x0 + i[a,b] with rational x0 = p/q,
// plus the evaluation margin above b required by the smoothing functional J.
struct GeodesicSegment {
    long x0_num = 0;
    long x0_den = 1;
    double a = 1.0;
    double b = 2.0;
    double eval_margin = 0.0;

    GeodesicSegment() = default;
    GeodesicSegment(long num, long den, double a_, double b_, double margin = 0.0)
        : x0_num(num), x0_den(den), a(a_), b(b_), eval_margin(margin) {
        if (den <= 0) throw ValidationError("GeodesicSegment: denominator must be positive");
        long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { x0_num /= g; x0_den /= g; }
        if (x0_num < 0 || x0_num >= x0_den)
            throw ValidationError("GeodesicSegment: x0 must satisfy 0 <= p/q < 1");
        if (!(0 < a && a < b)) throw ValidationError("GeodesicSegment: need 0 < a < b");
        if (eval_margin < 0) throw ValidationError("GeodesicSegment: eval_margin must be >= 0");
    }

    double x0() const { return static_cast<double>(x0_num) / static_cast<double>(x0_den); }
    double y_top() const { return b + eval_margin; }

    // The standard segments delta_1 (imaginary axis) and delta_2 (x = 1/2).
    static GeodesicSegment delta1(double a, double b, double margin = 0.0) {
        return {0, 1, a, b, margin};
    }
    static GeodesicSegment delta2(double a, double b, double margin = 0.0) {
        return {1, 2, a, b, margin};
    }
};

}  // namespace eislab

#endif
