#ifndef EISLAB_LITTLEWOOD_HPP
#define EISLAB_LITTLEWOOD_HPP

#include <string>

#include "eislab/restriction.hpp"

namespace eislab {

// Executable form of the Littlewood sign-change criterion: if there is a
// c in (0,1) with M_1(f) >= c M_2(f) and J(f, eta) < c^3 eta M_2(f)/16
// for eta = |I|/N, then f has at least c^2 N / 8 sign changes on I.
// Hypotheses are tested conservatively: a certificate is issued only if it
// would hold for every value consistent with the quadrature error bounds.
struct LittlewoodCertificate {
    double a = 0, b = 0;
    long n_subdivisions = 0;  // N
    double eta = 0;           // (b-a)/N
    double m1 = 0, m2 = 0;
    double m1_error = 0, m2_error = 0;
    double c = 0;
    double j_value = 0;
    double j_error = 0;
    double threshold = 0;  // c^3 eta M2 / 16
    bool hypotheses_hold = false;
    long lower_bound = 0;  // ceil(c^2 N / 8) when issued, else 0
    bool clamp_applied = false;
};

enum class CPolicy { Ratio, RatioClamped };

LittlewoodCertificate certify(const Evaluator1D& ev, double a, double b, long n_subdivisions,
                              CPolicy policy = CPolicy::RatioClamped, double eps_c = 1e-3,
                              double oversample = 1.0);

std::string certificate_csv_header();
std::string certificate_to_csv(const LittlewoodCertificate& c);

// Exponent bookkeeping for the two regimes: the L^p hypothesis with
// exponent eps admits any window exponent delta above
//   6 p eps/(p-2)        (Eisenstein)
//   (7p-2) eps/(p-2)     (cusp forms)
// and yields sign-change growth t^{1 - kappa eps p/(p-2)} for kappa > 8
// resp. kappa > 9.
enum class Regime { Eisenstein, Cusp };

struct ExponentBudget {
    double epsilon = 0;
    double p = 0;
    double kappa = 0;
    Regime regime = Regime::Eisenstein;
    double delta_min_eisenstein = 0;
    double delta_min_cusp = 0;
    double delta_min = 0;        // threshold for the requested regime
    double final_exponent = 0;   // 1 - kappa eps p/(p-2)
};

ExponentBudget exponent_budget(double epsilon, double p, double kappa, Regime regime);

}  // namespace eislab

#endif
