// eislab: evaluation, scans, sign-change certification and moment benches
// for the modular-surface Eisenstein series and ingested Maass forms.
//
// Exit codes: 0 success; 1 certificate hypotheses failed (certify only);
// 2 input/config error; 3 numerical-precision failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "eislab/eisenstein.hpp"
#include "eislab/lfun.hpp"
#include "eislab/littlewood.hpp"
#include "eislab/maass.hpp"
#include "eislab/restriction.hpp"
#include "eislab/runconfig.hpp"

using namespace eislab;

namespace {

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output path " + cfg.out_path);
    out << payload;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GeodesicSegment segment_of(const RunConfig& cfg, double extra_margin = 0.0) {
    return {cfg.x0_num, cfg.x0_den, cfg.a, cfg.b, std::max(cfg.margin, extra_margin)};
}

long auto_grid(const RunConfig& cfg, double t) {
    return cfg.grid_base > 0 ? cfg.grid_base : 16L * static_cast<long>(std::ceil(t));
}

// Owns whichever form backs the restricted evaluator.
struct FormSource {
    std::unique_ptr<EisensteinContext> ctx;
    std::unique_ptr<MaassFormRecord> record;
    std::unique_ptr<MaassEvaluator> maass;
    std::unique_ptr<Evaluator1D> restricted;
    double spectral_t = 0;

    static FormSource make(const RunConfig& cfg, double t, const std::string& maass_file,
                           const GeodesicSegment& seg) {
        FormSource src;
        PrecisionPolicy prec(cfg.base_bits, true);
        if (!maass_file.empty()) {
            src.record = std::make_unique<MaassFormRecord>(load_maass_record(maass_file));
            src.maass = std::make_unique<MaassEvaluator>(*src.record, prec, cfg.tol);
            src.spectral_t = src.record->t_phi;
            src.restricted = std::make_unique<MaassRestrictedEvaluator>(*src.maass, seg);
        } else {
            if (!(t > 0)) throw ValidationError("need --t > 0 or --maass-file");
            src.ctx = std::make_unique<EisensteinContext>(
                EisensteinContext::critical_line(t, prec, cfg.tol, std::min(0.05, seg.a)));
            src.spectral_t = t;
            src.restricted = std::make_unique<EisensteinRestrictedEvaluator>(*src.ctx, seg);
        }
        return src;
    }
};

Measure parse_measure(const std::string& m) {
    if (m == "lebesgue") return Measure::Lebesgue;
    if (m == "hyperbolic") return Measure::Hyperbolic;
    throw ValidationError("measure must be lebesgue or hyperbolic");
}

std::string signs_csv(const SignChangeCertificate& cert) {
    std::string out = "row_type,count,undecided,min_gap,y_lo,y_hi,sign_lo,sign_hi\n";
    out += "summary," + std::to_string(cert.count) + "," + std::to_string(cert.undecided) + ","
           + fmt(cert.min_gap) + ",,,,\n";
    for (const SignBracket& b : cert.brackets)
        out += "bracket,,,," + fmt(b.y_lo) + "," + fmt(b.y_hi) + ","
               + std::to_string(b.sign_lo) + "," + std::to_string(b.sign_hi) + "\n";
    return out;
}

int cmd_eval(const RunConfig& cfg, double t, double x, double y) {
    if (!(y > 0)) throw ValidationError("eval: y must be > 0");
    PrecisionPolicy prec(cfg.base_bits, true);
    EisensteinContext ctx =
        EisensteinContext::critical_line(t, prec, cfg.tol, std::min(0.05, std::max(y, 0.001)));
    EisensteinEval e = ctx.eval(x, y);
    emit(cfg, "value,abs_error\n" + fmt(e.value.to_double()) + "," + fmt(e.abs_error) + "\n");
    return 0;
}

int cmd_grid(const RunConfig& cfg, double t, double x_min, double x_max, double y_min,
             double y_max, long nx, long ny) {
    if (nx < 1 || ny < 1) throw ValidationError("grid: nx and ny must be >= 1");
    if (!(y_min > 0) || y_max < y_min || x_max < x_min)
        throw ValidationError("grid: malformed ranges");
    PrecisionPolicy prec(cfg.base_bits, true);
    EisensteinContext ctx =
        EisensteinContext::critical_line(t, prec, cfg.tol, std::min(0.05, y_min));
    std::string out = "x,y,sign,value\n";
    PrecisionScope scope(prec.effective_bits(t) + 32);
    for (long iy = 0; iy < ny; ++iy) {
        double y = ny == 1 ? y_min : y_min + (y_max - y_min) * iy / static_cast<double>(ny - 1);
        TruncationReport tr = ctx.truncation_length(y);
        long n = std::max(tr.n_terms, 1L);
        BesselVector kv = bessel_k_scaled_vector(t, ldexp2(Real::pi(), 1) * Real(y),
                                                 static_cast<int>(n), prec);
        Real coeff = ldexp2(sqrt(Real(y)), 2) / ctx.theta_mag();
        std::vector<double> cn(static_cast<size_t>(n));
        double abs_sum = 0;
        for (long k = 1; k <= n; ++k) {
            cn[static_cast<size_t>(k - 1)] =
                (coeff * ctx.eta(k) * kv.values[static_cast<size_t>(k - 1)]).to_double();
            abs_sum += std::abs(cn[static_cast<size_t>(k - 1)]);
        }
        double main = (ldexp2(sqrt(Real(y)), 1) * cos(ctx.theta_arg() + Real(t) * log(Real(y))))
                          .to_double();
        double abs_err = tr.tail_bound + coeff.to_double() * n * kv.abs_error
                         + 1e-14 * (std::abs(main) + abs_sum + 1.0);
        for (long ix = 0; ix < nx; ++ix) {
            double x = nx == 1 ? x_min : x_min + (x_max - x_min) * ix / static_cast<double>(nx - 1);
            double v = main;
            for (long k = 1; k <= n; ++k)
                v += cn[static_cast<size_t>(k - 1)] * std::cos(2.0 * M_PI * k * x);
            int sign = std::abs(v) <= abs_err ? 0 : (v < 0 ? -1 : 1);
            out += fmt(x) + "," + fmt(y) + "," + std::to_string(sign) + "," + fmt(v) + "\n";
        }
    }
    emit(cfg, out);
    return 0;
}

int cmd_signs(const RunConfig& cfg, double t, const std::string& maass_file) {
    GeodesicSegment seg = segment_of(cfg);
    FormSource src = FormSource::make(cfg, t, maass_file, seg);
    SignChangeCertificate cert = count_sign_changes(*src.restricted, seg.a, seg.b,
                                                    auto_grid(cfg, src.spectral_t), cfg.grid_depth);
    emit(cfg, signs_csv(cert));
    return 0;
}

int cmd_norms(const RunConfig& cfg, double t, const std::string& maass_file, double p,
              const std::string& measure) {
    Measure m = parse_measure(measure);
    GeodesicSegment seg = segment_of(cfg);
    FormSource src = FormSource::make(cfg, t, maass_file, seg);
    NormReport r = m_p_norm(*src.restricted, seg.a, seg.b, p, m);
    emit(cfg, "p,measure,value,quad_error\n" + fmt(p) + "," + measure + "," + fmt(r.value) + ","
                  + fmt(r.quad_error) + "\n");
    return 0;
}

int cmd_jfun(const RunConfig& cfg, double t, const std::string& maass_file, double eta) {
    if (!(eta > 0)) throw ValidationError("jfun: eta must be > 0");
    GeodesicSegment seg = segment_of(cfg, eta);
    FormSource src = FormSource::make(cfg, t, maass_file, seg);
    JReport r = j_functional(*src.restricted, seg.a, seg.b, eta);
    emit(cfg, "eta,value,quad_error\n" + fmt(eta) + "," + fmt(r.value) + "," + fmt(r.quad_error)
                  + "\n");
    return 0;
}

int cmd_certify(const RunConfig& cfg, double t, const std::string& maass_file, long n_sub) {
    GeodesicSegment seg = segment_of(cfg, (cfg.b - cfg.a) / static_cast<double>(std::max(n_sub, 2L)));
    FormSource src = FormSource::make(cfg, t, maass_file, seg);
    LittlewoodCertificate cert = certify(*src.restricted, seg.a, seg.b, n_sub);
    emit(cfg, certificate_csv_header() + certificate_to_csv(cert));
    return cert.hypotheses_hold ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg, const std::string& measure) {
    Measure m = parse_measure(measure);
    std::string out = "t,K,M1,M2,J\n";
    for (double t = cfg.t_min; t <= cfg.t_max + 1e-9; t += cfg.t_step) {
        double eta = (cfg.b - cfg.a) / std::floor(t);
        GeodesicSegment seg = segment_of(cfg, eta);
        FormSource src = FormSource::make(cfg, t, "", seg);
        SignChangeCertificate cert =
            count_sign_changes(*src.restricted, seg.a, seg.b, auto_grid(cfg, t), cfg.grid_depth);
        NormReport m1 = m_p_norm(*src.restricted, seg.a, seg.b, 1, m);
        NormReport m2 = m_p_norm(*src.restricted, seg.a, seg.b, 2, m);
        JReport j = j_functional(*src.restricted, seg.a, seg.b, eta);
        out += fmt(t) + "," + std::to_string(cert.count) + "," + fmt(m1.value) + ","
               + fmt(m2.value) + "," + fmt(j.value) + "\n";
    }
    emit(cfg, out);
    return 0;
}

int cmd_moments(const RunConfig& cfg) {
    PrecisionPolicy prec(cfg.base_bits, true);
    MomentScan scan = zeta_moment_scan(cfg.t_grid, cfg.moments_k, cfg.resolution, prec);
    emit(cfg, moment_scan_csv(scan));
    return 0;
}

int cmd_budget(const RunConfig& cfg, double epsilon, double p, double kappa,
               const std::string& regime) {
    Regime r;
    if (regime == "eisenstein") r = Regime::Eisenstein;
    else if (regime == "cusp") r = Regime::Cusp;
    else throw ValidationError("budget: regime must be eisenstein or cusp");
    ExponentBudget b = exponent_budget(epsilon, p, kappa, r);
    char line[200];
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n", b.epsilon, b.p, b.kappa,
                  b.delta_min, b.final_exponent);
    emit(cfg, std::string("epsilon,p,kappa,delta_min,final_exponent\n") + line);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eislab: Eisenstein/Maass restriction laboratory"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, maass_file, measure = "lebesgue", scan_measure = "hyperbolic";
    std::string regime = "eisenstein";
    double t = 0, x = 0, y = 1.0, p = 2.0, eta = 0.05, epsilon = 0.01, kappa = 8.5;
    double x_min = -0.5, x_max = 0.5, y_min = 0.8, y_max = 2.5;
    long nx = 200, ny = 200, n_sub = 25;

    // file config is applied first, flags override; validation precedes work
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--out", cfg.out_path, "output CSV path (default stdout)");
        sub->add_option("--base-bits", cfg.base_bits, "working mantissa bits (>= 64)");
        sub->add_option("--tol", cfg.tol, "target absolute accuracy");
    };
    auto add_segment = [&](CLI::App* sub) {
        sub->add_option("--x0-num", cfg.x0_num, "segment x0 numerator");
        sub->add_option("--x0-den", cfg.x0_den, "segment x0 denominator");
        sub->add_option("--a", cfg.a, "segment lower endpoint");
        sub->add_option("--b", cfg.b, "segment upper endpoint");
        sub->add_option("--margin", cfg.margin, "evaluation margin above b");
        sub->add_option("--grid-base", cfg.grid_base, "base grid points (0 = 16 ceil t)");
        sub->add_option("--depth", cfg.grid_depth, "max bisection depth");
        sub->add_option("--maass-file", maass_file, "Maass coefficient file (else Eisenstein --t)");
    };

    CLI::App* c_eval = app.add_subcommand("eval", "E_t at one point; prints value,abs_error");
    add_common(c_eval);
    c_eval->add_option("--t", t, "spectral parameter")->required();
    c_eval->add_option("--x", x, "Re z");
    c_eval->add_option("--y", y, "Im z")->required();

    CLI::App* c_grid = app.add_subcommand("grid", "sign/value grid over a rectangle");
    add_common(c_grid);
    c_grid->add_option("--t", t, "spectral parameter")->required();
    c_grid->add_option("--x-min", x_min);
    c_grid->add_option("--x-max", x_max);
    c_grid->add_option("--y-min", y_min);
    c_grid->add_option("--y-max", y_max);
    c_grid->add_option("--nx", nx);
    c_grid->add_option("--ny", ny);

    CLI::App* c_signs = app.add_subcommand("signs", "certified sign-change count on a segment");
    add_common(c_signs);
    add_segment(c_signs);
    c_signs->add_option("--t", t, "spectral parameter (Eisenstein)");

    CLI::App* c_norms = app.add_subcommand("norms", "restricted M_p norm");
    add_common(c_norms);
    add_segment(c_norms);
    c_norms->add_option("--t", t, "spectral parameter (Eisenstein)");
    c_norms->add_option("--p", p, "norm exponent (>= 1)");
    c_norms->add_option("--measure", measure, "lebesgue | hyperbolic");

    CLI::App* c_jfun = app.add_subcommand("jfun", "smoothing functional J(f, eta)");
    add_common(c_jfun);
    add_segment(c_jfun);
    c_jfun->add_option("--t", t, "spectral parameter (Eisenstein)");
    c_jfun->add_option("--eta", eta, "window width")->required();

    CLI::App* c_cert = app.add_subcommand("certify", "Littlewood certificate; exit 1 if hypotheses fail");
    add_common(c_cert);
    add_segment(c_cert);
    c_cert->add_option("--t", t, "spectral parameter (Eisenstein)");
    c_cert->add_option("--N", n_sub, "number of eta-windows")->required();

    CLI::App* c_scan = app.add_subcommand("scan", "t-scan: K, M1, M2, J per spectral point");
    add_common(c_scan);
    add_segment(c_scan);
    c_scan->add_option("--t-min", cfg.t_min);
    c_scan->add_option("--t-max", cfg.t_max);
    c_scan->add_option("--t-step", cfg.t_step);
    c_scan->add_option("--measure", scan_measure, "measure for M1/M2 (default hyperbolic)");

    CLI::App* c_mom = app.add_subcommand("moments", "critical-line zeta moment scan");
    add_common(c_mom);
    c_mom->add_option("--k", cfg.moments_k, "moment order 2k: k in {1,2}");
    c_mom->add_option("--T-grid", cfg.t_grid, "upper limits")->delimiter(',');
    c_mom->add_option("--resolution", cfg.resolution, "quadrature step (<= 0.25)");

    CLI::App* c_bud = app.add_subcommand("budget", "exponent bookkeeping for the two regimes");
    add_common(c_bud);
    c_bud->add_option("--epsilon", epsilon)->required();
    c_bud->add_option("--p", p)->required();
    c_bud->add_option("--kappa", kappa)->required();
    c_bud->add_option("--regime", regime, "eisenstein | cusp");

    // Parse twice so a --config file loads first and explicit flags win.
    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            RunConfig file_cfg;
            load_config_file(file_cfg, config_path);
            std::string out_flag = cfg.out_path;
            cfg = file_cfg;
            cfg.out_path = out_flag.empty() ? cfg.out_path : out_flag;
            for (auto* sub : app.get_subcommands()) sub->clear();
            app.clear();
            app.parse(argc, argv);
        }
        validate_config(cfg);
        if (c_eval->parsed()) return cmd_eval(cfg, t, x, y);
        if (c_grid->parsed()) return cmd_grid(cfg, t, x_min, x_max, y_min, y_max, nx, ny);
        if (c_signs->parsed()) return cmd_signs(cfg, t, maass_file);
        if (c_norms->parsed()) return cmd_norms(cfg, t, maass_file, p, measure);
        if (c_jfun->parsed()) return cmd_jfun(cfg, t, maass_file, eta);
        if (c_cert->parsed()) return cmd_certify(cfg, t, maass_file, n_sub);
        if (c_scan->parsed()) return cmd_scan(cfg, scan_measure);
        if (c_mom->parsed()) return cmd_moments(cfg);
        if (c_bud->parsed()) return cmd_budget(cfg, epsilon, p, kappa, regime);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
