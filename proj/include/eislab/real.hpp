#ifndef EISLAB_REAL_HPP
#define EISLAB_REAL_HPP

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace eislab {

// Thread-local working precision (mantissa bits) used for the results of
// all Real arithmetic.  Each thread carries its own value, so parallel
// scans at different precisions cannot interfere.
long working_precision() noexcept;
void set_working_precision(long bits) noexcept;

// RAII guard: set working precision for a scope, restore on exit.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits) noexcept
        : saved_(working_precision()) { set_working_precision(bits); }
    ~PrecisionScope() { set_working_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    long saved_;
};

// Arbitrary-precision real number backed by mpfr_t.  A value keeps the
// precision it was created with; arithmetic results are rounded to the
// thread's working precision (round-to-nearest).
class Real {
public:
    Real() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }
    explicit Real(double x) { mpfr_init2(v_, working_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }
    explicit Real(long x) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
    explicit Real(int x) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
    explicit Real(unsigned long x) { mpfr_init2(v_, working_precision()); mpfr_set_ui(v_, x, MPFR_RNDN); }
    explicit Real(const std::string& s) {
        mpfr_init2(v_, working_precision());
        mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    // Base-2 exponent e with 0.5 <= |v| / 2^e < 1.  Acts as a magnitude
    // proxy: an exact zero reports -2^40 (vanishingly small), inf/nan
    // report +2^40 so they can never be mistaken for converged terms.
    long exp2() const {
        if (is_zero()) return -(1L << 40);
        if (!is_finite()) return 1L << 40;
        return static_cast<long>(mpfr_get_exp(v_));
    }

    std::string str(int digits = 20) const;

#define EISLAB_REAL_COMPOUND(op, fn)                         \
    Real& operator op(const Real& o) {                       \
        fn(v_, v_, o.v_, MPFR_RNDN);                         \
        return *this;                                        \
    }
    EISLAB_REAL_COMPOUND(+=, mpfr_add)
    EISLAB_REAL_COMPOUND(-=, mpfr_sub)
    EISLAB_REAL_COMPOUND(*=, mpfr_mul)
    EISLAB_REAL_COMPOUND(/=, mpfr_div)
#undef EISLAB_REAL_COMPOUND
    Real& operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator+=(double x) { mpfr_add_d(v_, v_, x, MPFR_RNDN); return *this; }

    friend Real operator-(const Real& a) { Real r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

#define EISLAB_REAL_BINOP(op, fn)                            \
    friend Real operator op(const Real& a, const Real& b) {  \
        Real r;                                              \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                     \
        return r;                                            \
    }
    EISLAB_REAL_BINOP(+, mpfr_add)
    EISLAB_REAL_BINOP(-, mpfr_sub)
    EISLAB_REAL_BINOP(*, mpfr_mul)
    EISLAB_REAL_BINOP(/, mpfr_div)
#undef EISLAB_REAL_BINOP
    friend Real operator*(const Real& a, double b) { Real r; mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator*(double a, const Real& b) { return b * a; }
    friend Real operator+(const Real& a, double b) { Real r; mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, double b) { Real r; mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, double b) { Real r; mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator/(double a, const Real& b) { Real r; mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

#define EISLAB_REAL_UNARY(name, fn)                          \
    friend Real name(const Real& a) {                        \
        Real r;                                              \
        fn(r.v_, a.v_, MPFR_RNDN);                           \
        return r;                                            \
    }
    EISLAB_REAL_UNARY(sqrt, mpfr_sqrt)
    EISLAB_REAL_UNARY(rec_sqrt, mpfr_rec_sqrt)
    EISLAB_REAL_UNARY(exp, mpfr_exp)
    EISLAB_REAL_UNARY(expm1, mpfr_expm1)
    EISLAB_REAL_UNARY(log, mpfr_log)
    EISLAB_REAL_UNARY(log1p, mpfr_log1p)
    EISLAB_REAL_UNARY(sin, mpfr_sin)
    EISLAB_REAL_UNARY(cos, mpfr_cos)
    EISLAB_REAL_UNARY(cosh, mpfr_cosh)
    EISLAB_REAL_UNARY(sinh, mpfr_sinh)
    EISLAB_REAL_UNARY(atan, mpfr_atan)
    EISLAB_REAL_UNARY(abs, mpfr_abs)
#undef EISLAB_REAL_UNARY
    friend Real floor(const Real& a) { Real r; mpfr_rint(r.v_, a.v_, MPFR_RNDD); return r; }
    friend Real ceil(const Real& a) { Real r; mpfr_rint(r.v_, a.v_, MPFR_RNDU); return r; }

    friend void sin_cos(Real& s, Real& c, const Real& a) { mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN); }
    friend Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN); return r; }
    friend Real pow(const Real& a, const Real& b) { Real r; mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real pow(const Real& a, long n) { Real r; mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN); return r; }
    friend Real fma(const Real& a, const Real& b, const Real& c) {
        Real r; mpfr_fma(r.v_, a.v_, b.v_, c.v_, MPFR_RNDN); return r;
    }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

    // a * 2^k, exact.
    friend Real ldexp2(const Real& a, long k) { Real r; mpfr_mul_2si(r.v_, a.v_, k, MPFR_RNDN); return r; }

    static Real pi() { Real r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
    static Real euler_gamma() { Real r; mpfr_const_euler(r.raw(), MPFR_RNDN); return r; }
    static Real two_pow(long k) { Real r; mpfr_set_ui_2exp(r.raw(), 1, k, MPFR_RNDN); return r; }

private:
    mpfr_t v_;
};

}  // namespace eislab

#endif
