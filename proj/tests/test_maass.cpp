#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "eislab/maass.hpp"
#include "support/hecke_synth.hpp"

using namespace eislab;
using namespace eislab::test_support;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

MaassFormRecord synthetic_record(unsigned seed, long n_max, double t_phi = 13.78) {
    std::string p = tmp_path("eislab_maass_" + std::to_string(seed) + ".txt");
    write_maass_file(p, t_phi, hecke_sequence(random_tempered_lambda_p(seed), n_max), 1e-12);
    return load_maass_record(p);
}

}  // namespace

TEST_CASE("synthetic Hecke-consistent records load cleanly") {
    for (unsigned seed : {1u, 2u, 3u}) {
        MaassFormRecord rec = synthetic_record(seed, 400);
        CHECK(rec.n_max() == 400);
        CHECK(rec.lambda_d(1) == 1.0);
        CHECK(rec.t_phi == doctest::Approx(13.78));
    }
}

TEST_CASE("loader rejects non-Hecke and malformed data") {
    // lambda(n) = 1 for all n: lambda(2)^2 = 1 but lambda(4) + 1 = 2
    std::vector<double> ones(41, 1.0);
    std::string p1 = write_maass_file(tmp_path("eislab_ones.txt"), 10.0, ones, 1e-10);
    CHECK_THROWS_WITH_AS(load_maass_record(p1),
                         doctest::Contains("Hecke relation violated at (m,n) = (2,2)"),
                         ValidationError);

    // lambda(1) = 0.5
    std::vector<double> lam = hecke_sequence(random_tempered_lambda_p(9), 40);
    lam[1] = 0.5;
    std::string p2 = write_maass_file(tmp_path("eislab_l1.txt"), 10.0, lam, 1e-10);
    CHECK_THROWS_AS(load_maass_record(p2), ValidationError);

    // a single perturbed coefficient beyond tolerance
    lam = hecke_sequence(random_tempered_lambda_p(9), 40);
    lam[6] += 1e-3;
    std::string p3 = write_maass_file(tmp_path("eislab_pert.txt"), 10.0, lam, 1e-10);
    CHECK_THROWS_AS(load_maass_record(p3), ValidationError);

    // n_max below 10
    std::vector<double> shorty(8, 1.0);
    shorty[1] = 1.0;
    std::string p4 = write_maass_file(tmp_path("eislab_short.txt"), 10.0, shorty, 1e-10);
    CHECK_THROWS_AS(load_maass_record(p4), RangeError);

    // odd parity
    {
        FILE* f = std::fopen(tmp_path("eislab_odd.txt").c_str(), "w");
        std::fputs("t_phi = 9.5\nparity = odd\ncoeff_tol = 1e-8\nn_max = 12\n", f);
        for (int n = 1; n <= 12; ++n) std::fprintf(f, "%d 0.0\n", n);
        std::fclose(f);
        CHECK_THROWS_AS(load_maass_record(tmp_path("eislab_odd.txt")), ValidationError);
    }
    // gap in the index sequence
    {
        FILE* f = std::fopen(tmp_path("eislab_gap.txt").c_str(), "w");
        std::fputs("t_phi = 9.5\nparity = even\ncoeff_tol = 1e-8\nn_max = 12\n1 1.0\n3 0.5\n", f);
        std::fclose(f);
        CHECK_THROWS_AS(load_maass_record(tmp_path("eislab_gap.txt")), ParseError);
    }
    CHECK_THROWS_AS(load_maass_record(tmp_path("eislab_missing_file.txt")), ParseError);
}

TEST_CASE("maass_eval single-term regime matches the bare Bessel factor") {
    MaassFormRecord rec = synthetic_record(5, 64);
    PrecisionPolicy prec(96, true);
    MaassEvaluator ev(rec, prec, 1e-9);
    GeodesicSegment seg = GeodesicSegment::delta1(3.0, 6.0);
    double y = 5.0;  // 2 pi y ~ 31 >> t_phi: one term suffices
    CHECK(ev.truncation_terms(y) == 1);
    MaassEval v = ev.eval(seg, y);
    Real khat = bessel_k_scaled(rec.t_phi, 2.0 * M_PI * y, prec).value;
    CHECK(v.value == doctest::Approx(2.0 * khat.to_double()).epsilon(1e-8));
}

TEST_CASE("maass_eval linearity in the coefficient vector") {
    MaassFormRecord a = synthetic_record(11, 80);
    MaassFormRecord b = synthetic_record(12, 80, a.t_phi);
    MaassFormRecord sum = a;
    PrecisionScope scope(256);
    for (size_t i = 0; i < sum.lambda.size(); ++i) sum.lambda[i] = a.lambda[i] + b.lambda[i];
    PrecisionPolicy prec(96, true);
    MaassEvaluator ea(a, prec, 1e-10), eb(b, prec, 1e-10), es(sum, prec, 1e-10);
    GeodesicSegment seg = GeodesicSegment::delta1(1.0, 2.0);
    for (double y : {1.0, 1.4, 2.0}) {
        double lhs = es.eval(seg, y).value;
        double rhs = ea.eval(seg, y).value + eb.eval(seg, y).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    }
}

TEST_CASE("sign counts invariant under positive rescaling of the coefficients") {
    MaassFormRecord rec = synthetic_record(21, 200);
    MaassFormRecord scaled = rec;
    PrecisionScope scope(256);
    for (Real& l : scaled.lambda) l *= 37.5;
    PrecisionPolicy prec(96, true);
    MaassEvaluator ev(rec, prec, 1e-10), evs(scaled, prec, 3.75e-9);
    GeodesicSegment seg = GeodesicSegment::delta1(0.8, 1.6);
    MaassRestrictedEvaluator r(ev, seg), rs(evs, seg);
    SignChangeCertificate c = count_sign_changes(r, seg, 64, 20);
    SignChangeCertificate cs = count_sign_changes(rs, seg, 64, 20);
    CHECK(c.count == cs.count);
    CHECK(c.count >= 1);  // a nontrivial case, not vacuous
    CHECK(c.undecided == cs.undecided);
}

TEST_CASE("maass_eval determinism and truncation failure") {
    MaassFormRecord rec = synthetic_record(31, 60);
    PrecisionPolicy prec(96, true);
    MaassEvaluator ev(rec, prec, 1e-10);
    GeodesicSegment seg = GeodesicSegment::delta1(1.0, 2.0);
    MaassEval v1 = ev.eval(seg, 1.3);
    MaassEvaluator ev2(rec, prec, 1e-10);
    MaassEval v2 = ev2.eval(seg, 1.3);
    CHECK(v1.value == v2.value);  // bit-for-bit at fixed policy

    // y small enough that N > n_max is required
    GeodesicSegment low = GeodesicSegment::delta1(0.05, 2.0);
    CHECK_THROWS_AS(ev.eval(low, 0.05), TruncationError);
}

TEST_CASE("l_phi_truncated basics") {
    MaassFormRecord rec = synthetic_record(41, 512);
    LPhiValue one = l_phi_truncated(rec, {3.0, 0.0}, 1);
    CHECK(one.value.real() == doctest::Approx(1.0));
    CHECK(one.value.imag() == 0.0);
    CHECK(one.tail_note > 0);

    // Cauchy convergence at s = 3: successive differences shrink like n^-3 d(n)
    std::complex<double> prev = l_phi_truncated(rec, {3.0, 0.0}, 64).value;
    double d64 = std::abs(l_phi_truncated(rec, {3.0, 0.0}, 128).value - prev);
    double d128 = std::abs(l_phi_truncated(rec, {3.0, 0.0}, 256).value
                           - l_phi_truncated(rec, {3.0, 0.0}, 128).value);
    CHECK(d64 < 64.0 * std::pow(64.0, -3.0) * 16);
    CHECK(d128 < d64);

    // conjugate symmetry for real coefficients
    std::complex<double> s(1.7, 4.2);
    LPhiValue a = l_phi_truncated(rec, s, 100);
    LPhiValue b = l_phi_truncated(rec, std::conj(s), 100);
    CHECK(a.value.real() == doctest::Approx(b.value.real()).epsilon(1e-14));
    CHECK(a.value.imag() == doctest::Approx(-b.value.imag()).epsilon(1e-14));

    CHECK_THROWS_AS(l_phi_truncated(rec, s, 0), RangeError);
    CHECK_THROWS_AS(l_phi_truncated(rec, s, 1000), RangeError);
}
