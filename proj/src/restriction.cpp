#include <algorithm>
#include <cmath>
#include <cstdio>

#include "eislab/parallel.hpp"
#include "eislab/restriction.hpp"

namespace eislab {

namespace {

struct Node {
    double y = 0;
    Evaluator1D::Point p;
};

std::vector<Node> eval_grid(const Evaluator1D& ev, const std::vector<double>& ys) {
    std::vector<Node> out(ys.size());
    parallel_for(static_cast<long>(ys.size()), [&](long i) {
        out[static_cast<size_t>(i)] = {ys[static_cast<size_t>(i)], ev.eval(ys[static_cast<size_t>(i)])};
    });
    return out;
}

// 16-point Gauss-Legendre nodes/weights on [-1,1], by Newton iteration.
struct GaussLegendre {
    static constexpr int n = 16;
    double x[n], w[n];
    GaussLegendre() {
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 64; ++it) {
                double p0 = 1, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    double pk = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                double dp = n * (xi * p1 - p0) / (xi * xi - 1);
                double step = p1 / dp;
                xi -= step;
                if (std::abs(step) < 1e-16) break;
            }
            double p0 = 1, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            double dp = n * (xi * p1 - p0) / (xi * xi - 1);
            x[i] = xi;
            w[i] = 2.0 / ((1 - xi * xi) * dp * dp);
        }
    }
};
const GaussLegendre& gl16() {
    static const GaussLegendre g;
    return g;
}

}  // namespace

RestrictionSamples sample_segment(const Evaluator1D& ev, const GeodesicSegment& seg,
                                  long n_points, Spacing spacing, Measure measure) {
    if (n_points < 2) throw ValidationError("sample_segment: n_points must be >= 2");
    double lo = seg.a, hi = seg.y_top();
    RestrictionSamples s;
    s.segment = seg;
    s.measure = measure;
    s.ys.resize(static_cast<size_t>(n_points));
    for (long i = 0; i < n_points; ++i) {
        double f = static_cast<double>(i) / static_cast<double>(n_points - 1);
        s.ys[static_cast<size_t>(i)] = spacing == Spacing::UniformY
                                           ? lo + (hi - lo) * f
                                           : lo * std::exp(f * std::log(hi / lo));
    }
    s.ys.front() = lo;
    s.ys.back() = hi;
    s.values.resize(s.ys.size());
    s.errors.resize(s.ys.size());
    parallel_for(n_points, [&](long i) {
        Evaluator1D::Point p = ev.eval(s.ys[static_cast<size_t>(i)]);
        s.values[static_cast<size_t>(i)] = p.value;
        s.errors[static_cast<size_t>(i)] = p.abs_error;
    });
    return s;
}

std::string samples_to_csv(const RestrictionSamples& s) {
    std::string out = "y,value,abs_error\n";
    char line[128];
    for (size_t i = 0; i < s.ys.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.ys[i], s.values[i], s.errors[i]);
        out += line;
    }
    return out;
}

namespace {

void refine_pair(const Evaluator1D& ev, const Node& a, const Node& b, int depth,
                 std::vector<Node>& out) {
    if (a.p.sign_certified() && b.p.sign_certified()) return;
    if (depth <= 0) return;
    Node mid{0.5 * (a.y + b.y), {}};
    if (mid.y <= a.y || mid.y >= b.y) return;  // double resolution exhausted
    mid.p = ev.eval(mid.y);
    refine_pair(ev, a, mid, depth - 1, out);
    out.push_back(mid);
    refine_pair(ev, mid, b, depth - 1, out);
}

}  // namespace

SignChangeCertificate count_sign_changes(const Evaluator1D& ev, const GeodesicSegment& seg,
                                         long base_grid, int max_depth) {
    return count_sign_changes(ev, seg.a, seg.b, base_grid, max_depth);
}

SignChangeCertificate count_sign_changes(const Evaluator1D& ev, double a, double b,
                                         long base_grid, int max_depth) {
    if (base_grid < 8) throw ValidationError("count_sign_changes: base_grid must be >= 8");
    if (max_depth < 0) throw ValidationError("count_sign_changes: max_depth must be >= 0");
    if (!(b > a)) throw ValidationError("count_sign_changes: need a < b");
    std::vector<double> ys(static_cast<size_t>(base_grid));
    for (long i = 0; i < base_grid; ++i)
        ys[static_cast<size_t>(i)] =
            a + (b - a) * static_cast<double>(i) / static_cast<double>(base_grid - 1);
    std::vector<Node> grid = eval_grid(ev, ys);

    // Assemble the refined, ordered point sequence: certified-opposite pairs
    // stand as brackets; pairs with an uncertified endpoint get bisected.
    std::vector<Node> seq;
    seq.reserve(grid.size() * 2);
    seq.push_back(grid[0]);
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        refine_pair(ev, grid[i], grid[i + 1], max_depth, seq);
        seq.push_back(grid[i + 1]);
    }

    SignChangeCertificate cert;
    cert.min_gap = 0;
    const Node* last_cert = nullptr;
    bool in_undecided_run = false;
    for (const Node& n : seq) {
        if (!n.p.sign_certified()) {
            if (!in_undecided_run) {
                ++cert.undecided;
                in_undecided_run = true;
            }
            continue;
        }
        in_undecided_run = false;
        if (last_cert && last_cert->p.sign() != n.p.sign()) {
            SignBracket b;
            b.y_lo = last_cert->y;
            b.y_hi = n.y;
            b.sign_lo = last_cert->p.sign();
            b.sign_hi = n.p.sign();
            double gap = b.y_hi - b.y_lo;
            cert.min_gap = cert.brackets.empty() ? gap : std::min(cert.min_gap, gap);
            cert.brackets.push_back(b);
        }
        last_cert = &n;
    }
    cert.count = static_cast<long>(cert.brackets.size());
    return cert;
}

namespace {

double measure_weight(Measure m, double y) { return m == Measure::Lebesgue ? 1.0 : 1.0 / y; }

double interval_mass(Measure m, double a, double b) {
    return m == Measure::Lebesgue ? b - a : std::log(b / a);
}

struct PanelIntegral {
    double value = 0;
    double prop_error = 0;  // propagated evaluator error
};

// integral of |f|^p dmu over the panels, GL16 per panel; all node
// evaluations run in parallel, the reduction order is fixed.
PanelIntegral integrate_abs_pow(const Evaluator1D& ev, const std::vector<double>& bounds,
                                double p, Measure measure) {
    const GaussLegendre& g = gl16();
    size_t panels = bounds.size() - 1;
    std::vector<double> ys(panels * GaussLegendre::n);
    for (size_t k = 0; k < panels; ++k) {
        double c = 0.5 * (bounds[k] + bounds[k + 1]);
        double h = 0.5 * (bounds[k + 1] - bounds[k]);
        for (int i = 0; i < GaussLegendre::n; ++i)
            ys[k * GaussLegendre::n + static_cast<size_t>(i)] = c + h * g.x[i];
    }
    std::vector<Evaluator1D::Point> pts(ys.size());
    parallel_for(static_cast<long>(ys.size()),
                 [&](long i) { pts[static_cast<size_t>(i)] = ev.eval(ys[static_cast<size_t>(i)]); });
    PanelIntegral out;
    for (size_t k = 0; k < panels; ++k) {
        double h = 0.5 * (bounds[k + 1] - bounds[k]);
        for (int i = 0; i < GaussLegendre::n; ++i) {
            size_t idx = k * GaussLegendre::n + static_cast<size_t>(i);
            double wmu = measure_weight(measure, ys[idx]) * h * g.w[i];
            double av = std::abs(pts[idx].value);
            out.value += wmu * std::pow(av, p);
            double base = std::max(av, pts[idx].abs_error);
            out.prop_error += wmu * p * std::pow(base, p - 1) * pts[idx].abs_error;
        }
    }
    return out;
}

std::vector<double> split_bounds(const std::vector<double>& bounds, int parts) {
    std::vector<double> out;
    for (size_t k = 0; k + 1 < bounds.size(); ++k) {
        for (int j = 0; j < parts; ++j)
            out.push_back(bounds[k] + (bounds[k + 1] - bounds[k]) * j / parts);
    }
    out.push_back(bounds.back());
    return out;
}

}  // namespace

NormReport m_p_norm(const Evaluator1D& ev, const GeodesicSegment& seg, double p, Measure measure,
                    double oversample) {
    return m_p_norm(ev, seg.a, seg.b, p, measure, oversample);
}

NormReport m_p_norm(const Evaluator1D& ev, double a, double b, double p, Measure measure,
                    double oversample) {
    if (p < 1) throw ValidationError("m_p_norm: p must be >= 1");
    if (!(b > a)) throw ValidationError("m_p_norm: need a < b");
    double rate = ev.oscillation_rate();
    long base_panels =
        std::max(6L, static_cast<long>(std::ceil((b - a) * rate / M_PI * oversample)));

    // |f|^p is not smooth at zeros: pin certified brackets (thin) as panels.
    long locate_grid = std::max(32L, 4 * base_panels);
    SignChangeCertificate brackets = count_sign_changes(ev, a, b, locate_grid, 20);
    std::vector<double> bounds{a, b};
    for (const SignBracket& br : brackets.brackets) {
        if (br.y_lo > a && br.y_lo < b) bounds.push_back(br.y_lo);
        if (br.y_hi > a && br.y_hi < b) bounds.push_back(br.y_hi);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    // subdivide long stretches toward the target panel length
    std::vector<double> final_bounds;
    double target = (b - a) / static_cast<double>(base_panels);
    for (size_t k = 0; k + 1 < bounds.size(); ++k) {
        int parts = std::max(1, static_cast<int>(std::ceil((bounds[k + 1] - bounds[k]) / target)));
        for (int j = 0; j < parts; ++j)
            final_bounds.push_back(bounds[k] + (bounds[k + 1] - bounds[k]) * j / parts);
    }
    final_bounds.push_back(b);

    PanelIntegral coarse = integrate_abs_pow(ev, final_bounds, p, measure);
    PanelIntegral fine = integrate_abs_pow(ev, split_bounds(final_bounds, 2), p, measure);
    double mass = interval_mass(measure, a, b);
    double integral = fine.value / mass;
    double diff = std::abs(fine.value - coarse.value) / mass;
    if (!(diff <= 0.05 * std::abs(integral) + 1e-280))
        throw QuadratureError("m_p_norm: two quadrature resolutions disagree; raise oversample");
    NormReport r;
    r.p = p;
    r.measure = measure;
    r.value = std::pow(integral, 1.0 / p);
    double dI = diff + fine.prop_error / mass;
    r.quad_error = integral > 0 ? r.value * dI / (p * integral) : dI;
    return r;
}

NormReport m_p_norm(const RestrictionSamples& s, double p) {
    if (p < 1) throw ValidationError("m_p_norm: p must be >= 1");
    if (s.ys.size() < 5) throw QuadratureError("m_p_norm: too few samples");
    auto trap = [&](size_t stride) {
        double acc = 0;
        size_t last = 0;
        for (size_t i = stride; i < s.ys.size(); i += stride) {
            double f0 = std::pow(std::abs(s.values[last]), p) * measure_weight(s.measure, s.ys[last]);
            double f1 = std::pow(std::abs(s.values[i]), p) * measure_weight(s.measure, s.ys[i]);
            acc += 0.5 * (f0 + f1) * (s.ys[i] - s.ys[last]);
            last = i;
        }
        // close any remainder so both strides cover [front, back]
        if (last != s.ys.size() - 1) {
            size_t i = s.ys.size() - 1;
            double f0 = std::pow(std::abs(s.values[last]), p) * measure_weight(s.measure, s.ys[last]);
            double f1 = std::pow(std::abs(s.values[i]), p) * measure_weight(s.measure, s.ys[i]);
            acc += 0.5 * (f0 + f1) * (s.ys[i] - s.ys[last]);
        }
        return acc;
    };
    double mass = interval_mass(s.measure, s.ys.front(), s.ys.back());
    double fine = trap(1) / mass;
    double coarse = trap(2) / mass;
    double prop = 0;
    for (size_t i = 0; i + 1 < s.ys.size(); ++i) {
        double base = std::max(std::abs(s.values[i]), s.errors[i]);
        prop += p * std::pow(base, p - 1) * s.errors[i] * (s.ys[i + 1] - s.ys[i])
                * measure_weight(s.measure, s.ys[i]);
    }
    prop /= mass;
    NormReport r;
    r.p = p;
    r.measure = s.measure;
    r.value = std::pow(fine, 1.0 / p);
    double dI = std::abs(fine - coarse) + prop;
    r.quad_error = fine > 0 ? r.value * dI / (p * fine) : dI;
    return r;
}

namespace {

// Composite Simpson over samples f[0..m] with step d (m even).
double simpson(const std::vector<double>& f, size_t start, size_t m, double d) {
    double acc = f[start] + f[start + m];
    for (size_t j = 1; j < m; ++j) acc += f[start + j] * (j % 2 ? 4.0 : 2.0);
    return acc * d / 3.0;
}

struct JPass {
    double value = 0;      // integral of |g| over [a, a + K*delta]
    double covered = 0;    // K*delta
    double prop_error = 0;
};

JPass j_pass(const std::vector<double>& f, const std::vector<double>& ferr, size_t stride,
             size_t total_pts, double delta, double eta) {
    size_t m = static_cast<size_t>(std::llround(eta / delta));
    size_t last = total_pts - 1;
    size_t K = (last / stride - m / stride);  // in units of stride steps
    size_t mm = m / stride;
    if (K % 2 == 1) --K;
    std::vector<double> g(K + 1), ge(K + 1);
    for (size_t k = 0; k <= K; ++k) {
        double acc = f[k * stride] + f[(k + mm) * stride];
        double eacc = ferr[k * stride] + ferr[(k + mm) * stride];
        for (size_t j = 1; j < mm; ++j) {
            double c = (j % 2) ? 4.0 : 2.0;
            acc += c * f[(k + j) * stride];
            eacc += c * ferr[(k + j) * stride];
        }
        double d = delta * static_cast<double>(stride);
        g[k] = acc * d / 3.0;
        ge[k] = eacc * d / 3.0;
    }
    double d = delta * static_cast<double>(stride);
    JPass out;
    out.covered = d * static_cast<double>(K);
    double acc = std::abs(g[0]) + std::abs(g[K]);
    double eacc = ge[0] + ge[K];
    for (size_t k = 1; k < K; ++k) {
        double c = (k % 2) ? 4.0 : 2.0;
        acc += c * std::abs(g[k]);
        eacc += c * ge[k];
    }
    out.value = acc * d / 3.0;
    out.prop_error = eacc * d / 3.0;
    return out;
}

}  // namespace

JReport j_functional(const Evaluator1D& ev, double a, double b, double eta, double oversample) {
    if (!(eta > 0)) throw ValidationError("j_functional: eta must be > 0");
    if (!(b > a)) throw ValidationError("j_functional: need a < b");
    auto dom = ev.domain();
    if (b + eta > dom.second + 1e-12)
        throw RangeError("j_functional: eta exceeds the evaluator's margin above b");

    double rate = std::max(ev.oscillation_rate(), 1.0);
    double delta_target = std::min(eta / 8.0, 2.0 * M_PI / (8.0 * rate)) / oversample;
    size_t m = static_cast<size_t>(std::ceil(eta / delta_target));
    m = std::max<size_t>(8, m + (m % 2));
    // fine grid: step eta/(2m); coarse pass uses every other point
    size_t m_f = 2 * m;
    double delta_f = eta / static_cast<double>(m_f);
    size_t n_outer = static_cast<size_t>(std::floor((b - a) / delta_f));
    if (n_outer < 4) throw QuadratureError("j_functional: interval too short relative to eta");
    size_t total = n_outer + m_f + 1;
    std::vector<double> f(total), fe(total);
    parallel_for(static_cast<long>(total), [&](long i) {
        Evaluator1D::Point p = ev.eval(a + delta_f * static_cast<double>(i));
        f[static_cast<size_t>(i)] = p.value;
        fe[static_cast<size_t>(i)] = p.abs_error;
    });

    JPass fine = j_pass(f, fe, 1, total, delta_f, eta);
    JPass coarse = j_pass(f, fe, 2, total, delta_f, eta);

    // remainder [a + covered, b] at both resolutions, fresh GL x Simpson
    const GaussLegendre& g = gl16();
    auto tail_piece = [&](double lo, size_t mm) {
        double c = 0.5 * (lo + b), h = 0.5 * (b - lo);
        double acc = 0;
        if (h <= 0) return 0.0;
        for (int i = 0; i < GaussLegendre::n; ++i) {
            double y = c + h * g.x[i];
            double step = eta / static_cast<double>(mm);
            double inner = 0;
            for (size_t j = 0; j <= mm; ++j) {
                double cj = (j == 0 || j == mm) ? 1.0 : (j % 2 ? 4.0 : 2.0);
                inner += cj * ev.eval(y + step * static_cast<double>(j)).value;
            }
            acc += h * g.w[i] * std::abs(inner * step / 3.0);
        }
        return acc;
    };
    double tail_f = tail_piece(a + fine.covered, m_f);
    double tail_c = tail_piece(a + coarse.covered, m);

    double jf = (fine.value + tail_f) / (b - a);
    double jc = (coarse.value + tail_c) / (b - a);
    JReport r;
    r.eta = eta;
    r.value = jf;
    r.quad_error = std::abs(jf - jc) + fine.prop_error / (b - a);
    return r;
}

}  // namespace eislab
