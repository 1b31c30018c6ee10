#ifndef EISLAB_PRECISION_HPP
#define EISLAB_PRECISION_HPP

#include <cmath>

#include "eislab/errors.hpp"

namespace eislab {

// Precision policy shared by all special-function evaluation.
//
// base_bits is the requested working mantissa size.  With spectral_scaling
// on, effective precision grows by ceil(pi*t / (2 ln 2)) bits at spectral
// parameter t: the kernel integral for K_{it} is O(1) while its value is
// O(e^{-pi t/2}), so exactly that many leading bits cancel.
struct PrecisionPolicy {
    long base_bits = 128;
    bool spectral_scaling = true;

    PrecisionPolicy() = default;
    PrecisionPolicy(long bits, bool scaling) : base_bits(bits), spectral_scaling(scaling) {
        if (base_bits < 64) throw RangeError("PrecisionPolicy: base_bits must be >= 64");
    }

    static long spectral_bits(double t) {
        if (t <= 0) return 0;
        return static_cast<long>(std::ceil(M_PI * t / (2.0 * std::log(2.0))));
    }

    long effective_bits(double t) const {
        return base_bits + (spectral_scaling ? spectral_bits(t) : 0);
    }
};

}  // namespace eislab

#endif
