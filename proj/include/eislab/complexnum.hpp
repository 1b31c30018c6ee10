#ifndef EISLAB_COMPLEXNUM_HPP
#define EISLAB_COMPLEXNUM_HPP

#include <complex>

#include "eislab/real.hpp"

namespace eislab {

// Rectangular complex number over Real.  Division uses the plain
// conjugate formula; MPFR's exponent range makes it safe without scaling.
struct Cplx {
    Real re, im;

    Cplx() = default;
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cplx(const Real& r) : re(r), im() {}
    explicit Cplx(double r, double i = 0.0) : re(r), im(i) {}
    explicit Cplx(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    Cplx conj() const { return {re, -im}; }

    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator*(const Real& s, const Cplx& a) { return a * s; }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
};

inline Real abs2(const Cplx& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Cplx& z) { return sqrt(abs2(z)); }
inline Real arg(const Cplx& z) { return atan2(z.im, z.re); }

inline Cplx exp(const Cplx& z) {
    Real s, c;
    sin_cos(s, c, z.im);
    Real m = exp(z.re);
    return {m * c, m * s};
}

// Principal branch.
inline Cplx log(const Cplx& z) { return {Real(0.5) * log(abs2(z)), arg(z)}; }

inline Cplx sin(const Cplx& z) {
    Real s, c;
    sin_cos(s, c, z.re);
    return {s * cosh(z.im), c * sinh(z.im)};
}

// exp(w log z), principal branch of log.
inline Cplx pow(const Cplx& z, const Cplx& w) { return exp(w * log(z)); }

// x^w for real x > 0: exact magnitude/phase split, no atan2.
inline Cplx pow_positive(const Real& x, const Cplx& w) {
    Real lx = log(x);
    Real s, c;
    sin_cos(s, c, w.im * lx);
    Real m = exp(w.re * lx);
    return {m * c, m * s};
}

}  // namespace eislab

#endif
