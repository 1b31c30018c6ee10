#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eislab/errors.hpp"
#include "eislab/special.hpp"
#include "support/oracles.hpp"

using namespace eislab;

namespace {

double rel_diff(const Real& a, const Real& b) {
    double bb = std::abs(b.to_double());
    return std::abs((a - b).to_double()) / (bb > 0 ? bb : 1.0);
}

double rel_diff(const Cplx& a, const Cplx& b) {
    PrecisionScope scope(256);
    return (abs(a - b) / abs(b)).to_double();
}

}  // namespace

TEST_CASE("gamma_complex closed forms") {
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(160);
    CHECK(rel_diff(gamma_complex(Cplx(1.0), prec), Cplx(Real(1))) < 1e-35);
    CHECK(rel_diff(gamma_complex(Cplx(0.5), prec), Cplx(sqrt(Real::pi()))) < 1e-35);
    // Gamma(5) = 24
    CHECK(rel_diff(gamma_complex(Cplx(5.0), prec), Cplx(Real(24))) < 1e-35);
}

TEST_CASE("gamma_complex modulus on the critical line") {
    // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
    PrecisionPolicy prec(192, true);
    PrecisionScope scope(256);
    for (double t : {1.0, 14.0, 60.0}) {
        Cplx g = gamma_complex(Cplx(0.5, t), prec);
        Real lhs = abs2(g);
        Real rhs = Real::pi() / cosh(Real::pi() * Real(t));
        CHECK(rel_diff(lhs, rhs) < 1e-50);
    }
}

TEST_CASE("gamma_complex duplication and conjugation") {
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(192);
    Real spi = sqrt(Real::pi());
    for (double re : {0.3, 1.7, -2.3}) {
        for (double im : {0.2, 5.0, 23.0}) {
            Cplx z(re, im);
            Cplx lhs = gamma_complex(z, prec) * gamma_complex(z + Cplx(0.5), prec);
            Cplx two_z = z + z;
            Cplx rhs = pow_positive(Real(2), Cplx(Real(1)) - two_z) * spi * gamma_complex(two_z, prec);
            CHECK(rel_diff(lhs, rhs) < 1e-30);
            Cplx gc = gamma_complex(z.conj(), prec);
            CHECK(rel_diff(gc, gamma_complex(z, prec).conj()) < 1e-34);
        }
    }
}

TEST_CASE("gamma_complex pole error") {
    PrecisionPolicy prec(64, true);
    CHECK_THROWS_AS(gamma_complex(Cplx(0.0), prec), PoleError);
    CHECK_THROWS_AS(gamma_complex(Cplx(-3.0), prec), PoleError);
}

TEST_CASE("zeta_complex closed forms") {
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(160);
    Real pi2_6 = Real::pi() * Real::pi() / Real(6);
    CHECK(rel_diff(zeta_complex(Cplx(2.0), prec), Cplx(pi2_6)) < 1e-35);
    CHECK(rel_diff(zeta_complex(Cplx(0.0), prec), Cplx(-0.5)) < 1e-35);
    CHECK_THROWS_AS(zeta_complex(Cplx(1.0), prec), PoleError);
    CHECK_THROWS_AS(zeta_complex(Cplx(0.5, 2e5), prec), RangeError);
}

TEST_CASE("zeta_complex agrees with the Borwein oracle on the critical line") {
    PrecisionPolicy prec(128, true);
    for (double t : {0.0, 3.3, 14.0, 25.7, 49.9}) {
        Cplx s(0.5, t);
        Cplx z = zeta_complex(s, prec);
        Cplx ref = oracles::zeta_borwein(s, 140, 320);
        CHECK(rel_diff(z, ref) < 1e-30);
    }
    // and off the line, both half-planes
    for (double sig : {0.25, 1.5, 3.0}) {
        Cplx s(sig, 7.7);
        CHECK(rel_diff(zeta_complex(s, prec), oracles::zeta_borwein(s, 140, 320)) < 1e-28);
    }
}

TEST_CASE("zeta_complex first critical zero bracketed by the Hardy Z oracle") {
    // Z(t) = e^{i theta(t)} zeta(1/2 + it) is real; bracket its sign change
    // with oracle-only machinery, then freeze the spec's assertion.
    auto zsign = [](double t) {
        Cplx z = oracles::zeta_borwein(Cplx(0.5, t), 120, 256);
        double th = oracles::hardy_theta_asymptotic(t);
        PrecisionScope scope(256);
        Real re = z.re * cos(Real(th)) - z.im * sin(Real(th));
        return re.to_double() < 0 ? -1 : 1;
    };
    double lo = 14.10, hi = 14.17;
    REQUIRE(zsign(lo) != zsign(hi));
    for (int i = 0; i < 40; ++i) {
        double mid = 0.5 * (lo + hi);
        (zsign(mid) == zsign(lo) ? lo : hi) = mid;
    }
    // the bracket pins the zero to 14.13472...; 14.1347 is within 1e-3 of it
    CHECK(lo > 14.1340);
    CHECK(hi < 14.1355);
    CHECK(std::abs(lo - 14.1347) < 1e-3);
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(160);
    CHECK(abs(zeta_complex(Cplx(0.5, 14.1347), prec)).to_double() < 1e-3);
}

TEST_CASE("zeta_complex conjugate symmetry") {
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(160);
    for (double t : {1.0, 11.5, 37.0}) {
        Cplx a = zeta_complex(Cplx(0.7, -t), prec);
        Cplx b = zeta_complex(Cplx(0.7, t), prec).conj();
        CHECK(rel_diff(a, b) < 1e-34);
    }
}

TEST_CASE("zeta_complex reflection functional equation") {
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) to 1e-10
    // relative on a grid Re s in [-2, 3], |Im s| <= 50.
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(192);
    Real pi = Real::pi();
    for (double sig : {-2.0, -0.75, 0.25, 1.5, 3.0}) {
        for (double t : {0.5, 9.0, 27.0, 50.0}) {
            Cplx s(sig, t);
            Cplx lhs = zeta_complex(s, prec);
            Cplx one_minus_s = Cplx(Real(1)) - s;
            Cplx rhs = pow_positive(Real(2), s) * pow_positive(pi, s - Cplx(Real(1)))
                       * sin(Cplx(ldexp2(pi, -1)) * s) * gamma_complex(one_minus_s, prec)
                       * zeta_complex(one_minus_s, prec);
            CHECK(rel_diff(lhs, rhs) < 1e-10);
        }
    }
}

TEST_CASE("bessel_k_scaled at tau = 0 matches the tanh-sinh oracle") {
    PrecisionPolicy prec(128, true);
    // K_0(1) = 0.4210244382... (leading digits frozen from the oracle)
    ScaledBesselValue v = bessel_k_scaled(0.0, 1.0, prec);
    CHECK(v.value.to_double() == doctest::Approx(0.4210244382).epsilon(1e-9));
    for (double x : {0.5, 1.0, 5.0}) {
        Real ref = oracles::bessel_k_scaled_tanh_sinh(0.0, x, 220, 7);
        Real ref2 = oracles::bessel_k_scaled_tanh_sinh(0.0, x, 220, 8);
        REQUIRE(rel_diff(ref, ref2) < 1e-40);  // oracle self-consistency first
        CHECK(rel_diff(bessel_k_scaled(0.0, x, prec).value, ref) < 1e-10);
    }
}

TEST_CASE("bessel_k_scaled imaginary order vs oracle") {
    // oracle precision >= pi tau/(2 ln 2) + 128 bits
    PrecisionPolicy prec(128, true);
    struct Case { double tau, x; };
    for (Case c : {Case{14.0, 10.0}, Case{14.0, 2.0}, Case{45.0, 8.0}, Case{3.0, 0.4}}) {
        long obits = PrecisionPolicy::spectral_bits(c.tau) + 192;
        Real ref = oracles::bessel_k_scaled_tanh_sinh(c.tau, c.x, obits, 7);
        Real ref2 = oracles::bessel_k_scaled_tanh_sinh(c.tau, c.x, obits, 8);
        REQUIRE(rel_diff(ref, ref2) < 1e-30);
        ScaledBesselValue v = bessel_k_scaled(c.tau, c.x, prec);
        CHECK(rel_diff(v.value, ref) < 1e-10);
        CHECK(std::abs((v.value - ref).to_double()) <= v.abs_error);
    }
}

TEST_CASE("bessel_k_scaled scaling consistency and error contract") {
    // Khat * e^{-pi tau/2} equals the unscaled oracle value; tau <= 30.
    double tau = 20.0, x = 3.0;
    PrecisionPolicy prec(128, true);
    ScaledBesselValue v = bessel_k_scaled(tau, x, prec);
    PrecisionScope scope(500);
    Real unscaled = v.value * exp(-ldexp2(Real::pi() * Real(tau), -1));
    Real ref = oracles::bessel_k_scaled_tanh_sinh(tau, x, 500, 8)
               * exp(-ldexp2(Real::pi() * Real(tau), -1));
    CHECK(rel_diff(unscaled, ref) < 1e-8);
    // contract: abs_error <= 2^{-base/2} max(1, |value|)
    CHECK(v.abs_error <= std::ldexp(std::max(1.0, std::abs(v.value.to_double())), -64));
}

TEST_CASE("bessel_k_scaled monotone error and determinism") {
    for (double tau : {0.0, 9.0, 31.0}) {
        for (double x : {0.7, 4.0}) {
            ScaledBesselValue a64 = bessel_k_scaled(tau, x, PrecisionPolicy(64, true));
            ScaledBesselValue a128 = bessel_k_scaled(tau, x, PrecisionPolicy(128, true));
            CHECK(a128.abs_error <= a64.abs_error);
            ScaledBesselValue again = bessel_k_scaled(tau, x, PrecisionPolicy(64, true));
            CHECK(mpfr_cmp(again.value.raw(), a64.value.raw()) == 0);  // bit-for-bit
        }
    }
}

TEST_CASE("bessel_k_scaled precision failure paths") {
    // spectral_scaling off with large tau cannot meet the contract
    CHECK_THROWS_AS(bessel_k_scaled(120.0, 1.0, PrecisionPolicy(64, false)), PrecisionError);
    CHECK_THROWS_AS(bessel_k_scaled(-1.0, 1.0, PrecisionPolicy(64, true)), RangeError);
    CHECK_THROWS_AS(bessel_k_scaled(9.0, 0.0, PrecisionPolicy(64, true)), RangeError);
    CHECK_THROWS_AS(bessel_k_scaled(501.0, 1.0, PrecisionPolicy(64, true)), RangeError);
}

TEST_CASE("bessel sum and vector variants agree with single evaluations") {
    PrecisionPolicy prec(96, true);
    double tau = 11.0;
    Real x1(0.875);  // n * x1 stays exact in binary64 for n <= 8
    std::vector<Real> w;
    for (int n = 1; n <= 8; ++n) w.push_back(Real(n % 3 == 0 ? -0.7 : 1.3));
    BesselSum s = bessel_k_scaled_sum(tau, x1, w, prec);
    BesselVector vec = bessel_k_scaled_vector(tau, x1, 8, prec);
    PrecisionScope scope(256);
    Real direct;
    for (int n = 1; n <= 8; ++n) {
        Real single = bessel_k_scaled(tau, 0.875 * n, prec).value;
        CHECK(std::abs((vec.values[static_cast<size_t>(n - 1)] - single).to_double()) < 1e-20);
        direct += w[static_cast<size_t>(n - 1)] * single;
    }
    CHECK(std::abs((s.value - direct).to_double()) < 1e-18);
}

TEST_CASE("bessel real order: half-integer closed form") {
    // K_{3/2}(x) = sqrt(pi/(2x)) e^{-x} (1 + 1/x)
    PrecisionPolicy prec(128, true);
    PrecisionScope scope(192);
    for (double x : {0.8, 2.0, 7.5}) {
        Real v = bessel_k_real_order(1.5, x, prec);
        Real ref = sqrt(Real::pi() / (Real(2) * Real(x))) * exp(Real(-x)) * (Real(1) + Real(1) / Real(x));
        CHECK(rel_diff(v, ref) < 1e-25);
    }
}

TEST_CASE("kbessel upper bound envelopes") {
    PrecisionPolicy prec(96, true);
    PrecisionScope scope(128);
    for (double tau : {0.0, 7.0, 22.0}) {
        for (double x : {0.5, 3.0, 20.0}) {
            double lv = std::log(std::abs(bessel_k_scaled(tau, x, prec).value.to_double()) + 1e-300);
            CHECK(lv <= log_kbessel_scaled_bound(tau, x) + 1e-9);
        }
    }
    for (double nu : {0.5, 1.5, 3.0}) {
        for (double x : {1.0, 6.0}) {
            double lv = std::log(std::abs(bessel_k_real_order(nu, x, prec).to_double()) + 1e-300);
            CHECK(lv <= log_kbessel_real_bound(nu, x) + 1e-9);
        }
    }
}
