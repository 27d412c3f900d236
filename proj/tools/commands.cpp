#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "io/atomic_file.hpp"
#include "io/csv.hpp"
#include "io/json_out.hpp"
#include "io/svg.hpp"
#include "pseudospec/contour.hpp"
#include "pseudospec/errors.hpp"
#include "pseudospec/kernelbound.hpp"
#include "pseudospec/linalg.hpp"
#include "pseudospec/oscillator.hpp"
#include "pseudospec/pseudospectra.hpp"
#include "pseudospec/rng.hpp"

namespace pseudospec::cli {

namespace {

using io::format_number;
using io::Json;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#393b79", "#637939"};

std::string schema_of(const RunConfig& cfg) { return "pseudospec." + command_name(cfg.command) + ".v1"; }

class Outputs {
public:
    explicit Outputs(const RunConfig& cfg) : cfg_(cfg), echo_(config_echo(cfg)), schema_(schema_of(cfg)) {}

    [[nodiscard]] bool wants(const std::string& format) const {
        return std::find(cfg_.formats.begin(), cfg_.formats.end(), format) != cfg_.formats.end();
    }

    [[nodiscard]] io::CsvDocument csv(std::vector<std::string> header) const {
        io::CsvDocument doc;
        doc.schema = schema_;
        doc.config = echo_.dump();
        doc.header = std::move(header);
        return doc;
    }

    [[nodiscard]] Json json() const { return io::envelope(schema_, echo_); }
    [[nodiscard]] std::string metadata() const { return "schema: " + schema_ + "\nconfig: " + echo_.dump(); }

    void add(const std::string& format, std::string contents) { files_[format] = std::move(contents); }

    void write() const {
        for (const auto& [format, contents] : files_) {
            const std::string path = cfg_.out + "." + format;
            io::write_file_atomic(path, contents);
            std::cerr << "wrote " << path << '\n';
        }
    }

private:
    const RunConfig& cfg_;
    Json echo_;
    std::string schema_;
    std::map<std::string, std::string> files_;
};

std::string num(double v) { return format_number(v); }
std::string flag(bool v) { return v ? "1" : "0"; }

Json complex_json(Complex z) { return Json{{"re", io::number(z.real())}, {"im", io::number(z.imag())}}; }

DiscretizedOperator build_operator(const RunConfig& cfg) {
    return discretize(OscillatorParams(Complex(cfg.c_re, cfg.c_im)), cfg.n, cfg.half_width);
}

io::AxisRange padded(double lo, double hi) {
    if (!(hi > lo)) return {lo - 1.0, hi + 1.0};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

int nearest_exact_index(const OscillatorParams& params, Complex lambda, int limit) {
    int best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= limit; ++n) {
        const double d = std::abs(lambda - exact_eigenvalue(params, n));
        if (d < dist) {
            dist = d;
            best = n;
        }
    }
    return best;
}

int cmd_spectrum(const RunConfig& cfg, Outputs& out) {
    const auto op = build_operator(cfg);
    const auto spectrum = compute_spectrum(op);
    const double ray = std::arg(op.params.c()) / 2.0;
    const int trusted = trusted_index(op.n);

    auto doc = out.csv({"index", "re", "im", "backward_error", "exact_index", "exact_re", "exact_im", "rel_error",
                        "arg_error", "trusted"});
    Json rows = Json::array();
    double max_rel = 0.0;
    double max_arg = 0.0;
    std::vector<io::Point> computed;
    std::vector<io::Point> exact;
    for (int k = 0; k < cfg.count; ++k) {
        const Complex lambda = spectrum.eigenvalues[static_cast<std::size_t>(k)];
        const double be = spectrum.backward_errors[static_cast<std::size_t>(k)];
        const int n = nearest_exact_index(op.params, lambda, 2 * cfg.count + 2);
        const Complex ex = exact_eigenvalue(op.params, n);
        const double rel = std::abs(lambda - ex) / std::abs(ex);
        const double arg_err = std::abs(std::arg(lambda) - ray);
        const bool ok = be <= 1e-8 && k <= trusted;
        max_rel = std::max(max_rel, rel);
        max_arg = std::max(max_arg, arg_err);
        doc.rows.push_back({std::to_string(k), num(lambda.real()), num(lambda.imag()), num(be), std::to_string(n),
                            num(ex.real()), num(ex.imag()), num(rel), num(arg_err), flag(ok)});
        rows.push_back({{"index", k},
                        {"lambda", complex_json(lambda)},
                        {"backward_error", io::number(be)},
                        {"exact_index", n},
                        {"exact", complex_json(ex)},
                        {"rel_error", io::number(rel)},
                        {"arg_error", io::number(arg_err)},
                        {"trusted", ok}});
        computed.emplace_back(lambda.real(), lambda.imag());
    }
    for (int n = 0; n < cfg.count; ++n) {
        const Complex ex = exact_eigenvalue(op.params, n);
        exact.emplace_back(ex.real(), ex.imag());
    }

    if (out.wants("csv")) out.add("csv", io::to_csv(doc));
    if (out.wants("json")) {
        Json j = out.json();
        j["eigenvalues"] = rows;
        j["max_rel_error"] = io::number(max_rel);
        j["max_arg_error"] = io::number(max_arg);
        j["trusted_index"] = trusted;
        j["trust_radius"] = io::number(trust_radius(op));
        out.add("json", io::dump(j));
    }
    if (out.wants("svg")) {
        double re_hi = 0.0;
        double im_hi = 0.0;
        for (const auto& pts : {computed, exact}) {
            for (const auto& [x, y] : pts) {
                re_hi = std::max(re_hi, x);
                im_hi = std::max(im_hi, y);
            }
        }
        io::SvgPlot plot("First " + std::to_string(cfg.count) + " eigenvalues", "Re", "Im", padded(0.0, re_hi),
                         padded(std::min(0.0, im_hi), im_hi));
        const double far = 2.0 * std::hypot(re_hi, im_hi) + 1.0;
        plot.line({{0.0, 0.0}, {far * std::cos(ray), far * std::sin(ray)}}, "#999999", 1.0, false, "4 3");
        plot.markers(exact, "#1f77b4", 4.0);
        plot.markers(computed, "#d62728", 4.0, true);
        plot.legend("arg z = arg(c)/2", "#999999");
        plot.legend("exact c^(1/2)(2n+1)", "#1f77b4", true);
        plot.legend("computed", "#d62728", true);
        plot.set_metadata(out.metadata());
        out.add("svg", plot.render());
    }
    return kOk;
}

int cmd_eigenfunctions(const RunConfig& cfg, Outputs& out) {
    const auto op = build_operator(cfg);
    const auto spectrum = compute_spectrum(op);
    const std::size_t m = op.interior_points.size();

    std::vector<std::string> header{"x"};
    for (int n : cfg.modes) {
        const std::string s = std::to_string(n);
        for (const char* part : {"exact_re_", "exact_im_", "computed_re_", "computed_im_"}) header.push_back(part + s);
    }
    auto doc = out.csv(header);
    std::vector<std::vector<Complex>> exact_cols;
    std::vector<std::vector<Complex>> computed_cols;
    Json modes = Json::array();
    Json warnings = Json::array();

    for (int n : cfg.modes) {
        const Complex lambda = exact_eigenvalue(op.params, n);
        Complex nearest = spectrum.eigenvalues.front();
        for (const Complex& mu : spectrum.eigenvalues) {
            if (std::abs(mu - lambda) < std::abs(nearest - lambda)) nearest = mu;
        }
        std::vector<Complex> psi(m);
        for (std::size_t i = 0; i < m; ++i) psi[i] = exact_eigenfunction(op.params, n, op.interior_points[i]);
        const CVector v = linalg::eigenvector(op.matrix, nearest);
        Complex vh_psi{};
        double vh_v = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            vh_psi += std::conj(v[i]) * psi[i];
            vh_v += std::norm(v[i]);
        }
        const Complex alpha = vh_psi / vh_v;
        std::vector<Complex> aligned(m);
        double diff = 0.0;
        double ref = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            aligned[i] = alpha * v[i];
            diff += std::norm(aligned[i] - psi[i]);
            ref += std::norm(psi[i]);
        }
        const auto res = eigenfunction_residual(op, n);
        if (res.under_resolved) {
            warnings.push_back("mode " + std::to_string(n) + ": residual " + num(res.residual) +
                               " > 1e-2, grid too coarse or domain too short");
        }
        modes.push_back({{"n", n},
                         {"exact_lambda", complex_json(lambda)},
                         {"computed_lambda", complex_json(nearest)},
                         {"residual", io::number(res.residual)},
                         {"under_resolved", res.under_resolved},
                         {"eigenvector_mismatch", io::number(ref > 0.0 ? std::sqrt(diff / ref) : 0.0)}});
        exact_cols.push_back(std::move(psi));
        computed_cols.push_back(std::move(aligned));
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::string> row{num(op.interior_points[i])};
        for (std::size_t k = 0; k < cfg.modes.size(); ++k) {
            row.push_back(num(exact_cols[k][i].real()));
            row.push_back(num(exact_cols[k][i].imag()));
            row.push_back(num(computed_cols[k][i].real()));
            row.push_back(num(computed_cols[k][i].imag()));
        }
        doc.rows.push_back(std::move(row));
    }

    if (out.wants("csv")) out.add("csv", io::to_csv(doc));
    if (out.wants("json")) {
        Json j = out.json();
        j["modes"] = modes;
        j["warnings"] = warnings;
        out.add("json", io::dump(j));
    }
    if (out.wants("svg")) {
        double hi = 0.0;
        for (const auto& col : exact_cols) {
            for (const Complex& z : col) hi = std::max(hi, std::abs(z));
        }
        io::SvgPlot plot("Eigenfunctions |psi_n(x)|", "x", "|psi_n|", {-cfg.half_width, cfg.half_width},
                         padded(0.0, hi));
        for (std::size_t k = 0; k < cfg.modes.size(); ++k) {
            const std::string color = kPalette[k % std::size(kPalette)];
            std::vector<io::Point> line;
            std::vector<io::Point> dots;
            for (std::size_t i = 0; i < m; ++i) {
                line.emplace_back(op.interior_points[i], std::abs(exact_cols[k][i]));
                dots.emplace_back(op.interior_points[i], std::abs(computed_cols[k][i]));
            }
            plot.line(line, color);
            plot.markers(dots, color, 1.5);
            plot.legend("n = " + std::to_string(cfg.modes[k]), color);
        }
        plot.set_metadata(out.metadata());
        out.add("svg", plot.render());
    }
    return kOk;
}

int cmd_pseudospectrum(const RunConfig& cfg, Outputs& out) {
    const auto op = build_operator(cfg);
    const ComplexWindow window{cfg.window[0], cfg.window[1], cfg.window[2], cfg.window[3], cfg.grid[0], cfg.grid[1]};
    const auto field = compute_field(op, window, cfg.workers);
    const auto eig = linalg::eigenvalues(op.matrix).eigenvalues;
    const bool nested = field_levels_nested(field, cfg.levels);
    const double excess = disk_bound_excess(field, eig);
    const bool disk_ok = excess <= 1e-10;
    const auto levels = contours(field, cfg.levels);

    // Smallest sigma_min at least 1 away from the spectrum and beyond 3|lambda_0|.
    Complex lambda0 = eig.front();
    for (const Complex& z : eig) {
        if (std::abs(z) < std::abs(lambda0)) lambda0 = z;
    }
    double far_sigma = std::numeric_limits<double>::infinity();
    Complex far_point{};
    auto doc = out.csv({"re", "im", "sigma_min"});
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int iy = 0; iy < window.ny; ++iy) {
        for (int ix = 0; ix < window.nx; ++ix) {
            const Complex z = window.point(ix, iy);
            const double s = field.at(ix, iy);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            doc.rows.push_back({num(z.real()), num(z.imag()), num(s)});
            if (std::abs(z) < 3.0 * std::abs(lambda0)) continue;
            double dist = std::numeric_limits<double>::infinity();
            for (const Complex& mu : eig) dist = std::min(dist, std::abs(z - mu));
            if (dist >= 1.0 && s < far_sigma) {
                far_sigma = s;
                far_point = z;
            }
        }
    }

    if (out.wants("csv")) out.add("csv", io::to_csv(doc));
    if (out.wants("json")) {
        Json j = out.json();
        j["sigma_min_range"] = {io::number(lo), io::number(hi)};
        j["nested"] = nested;
        j["disk_bound_excess"] = io::number(excess);
        j["disk_bound_holds"] = disk_ok;
        Json far = {{"sigma_min", io::number(far_sigma)}};
        if (std::isfinite(far_sigma)) far["z"] = complex_json(far_point);
        j["far_field_minimum"] = far;
        Json lv = Json::array();
        for (const auto& level : levels) {
            std::size_t points = 0;
            for (const auto& line : level.lines) points += line.points.size();
            lv.push_back({{"eps", io::number(level.eps)}, {"lines", level.lines.size()}, {"points", points}});
        }
        j["levels"] = lv;
        Json inside = Json::array();
        for (const Complex& z : eig) {
            if (z.real() >= window.re_min && z.real() <= window.re_max && z.imag() >= window.im_min &&
                z.imag() <= window.im_max) {
                inside.push_back(complex_json(z));
            }
        }
        j["eigenvalues_in_window"] = inside;
        out.add("json", io::dump(j));
    }
    if (out.wants("svg")) {
        io::SvgPlot plot("Eigenvalues and epsilon-pseudospectra", "Re z", "Im z", {window.re_min, window.re_max},
                         {window.im_min, window.im_max});
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const std::string color = kPalette[k % std::size(kPalette)];
            for (const auto& line : levels[k].lines) {
                std::vector<io::Point> pts;
                pts.reserve(line.points.size());
                for (const Complex& z : line.points) pts.emplace_back(z.real(), z.imag());
                plot.line(pts, color, 1.0, line.closed);
            }
            plot.legend("eps = " + num(levels[k].eps), color);
        }
        std::vector<io::Point> dots;
        for (const Complex& z : eig) dots.emplace_back(z.real(), z.imag());
        plot.markers(dots, "black", 2.5);
        plot.set_metadata(out.metadata());
        out.add("svg", plot.render());
    }
    if (!nested || !disk_ok) {
        std::cerr << "property violation: nested = " << nested << ", disk bound excess = " << num(excess) << '\n';
        return kPropertyViolation;
    }
    return kOk;
}

Json fit_json(const ExponentFit& fit) {
    return {{"slope", io::number(fit.slope)},
            {"intercept", io::number(fit.intercept)},
            {"residual", io::number(fit.residual)},
            {"eta_first", io::number(fit.eta_first)},
            {"eta_last", io::number(fit.eta_last)},
            {"count", fit.count},
            {"stable_count", fit.stable_count}};
}

CurveTrace synthetic_trace() {
    CurveTrace trace;
    trace.b = 1.0;
    trace.p = 1.0;
    trace.c = {0.0, 0.0};
    for (int k = 0; k < 32; ++k) {
        CurveSample s;
        s.eta = std::pow(10.0, 0.125 * k);
        s.z = s.eta;
        s.resolvent_norm = std::pow(s.eta, -1.0 / 3.0);
        s.sigma_min = 1.0 / s.resolvent_norm;
        s.refined_resolvent_norm = s.resolvent_norm;
        s.in_trust_region = true;
        s.stable = true;
        trace.samples.push_back(s);
    }
    return trace;
}

int cmd_curve(const RunConfig& cfg, Outputs& out) {
    CurveTrace trace;
    if (cfg.selftest) {
        trace = synthetic_trace();
    } else {
        const auto op = build_operator(cfg);
        CurveSpec spec;
        spec.b = cfg.b;
        spec.p = cfg.p;
        spec.eta_min = cfg.eta_min;
        spec.eta_max = cfg.eta_max ? *cfg.eta_max : default_eta_max(op, cfg.b, cfg.p);
        if (!cfg.eta_max && spec.eta_max < spec.eta_min) {
            throw InvalidArgument("curve: default eta-max " + num(spec.eta_max) + " is below eta-min");
        }
        spec.samples = cfg.samples;
        spec.spacing = cfg.spacing == "linear" ? Spacing::linear : Spacing::log;
        trace = trace_curve(op, spec, cfg.workers);
    }

    std::optional<ExponentFit> fit;
    std::string fit_error;
    try {
        fit = fit_exponent(trace, cfg.selftest ? 1.0 : cfg.tail_fraction);
    } catch (const InsufficientData& e) {
        fit_error = e.what();
    }

    std::vector<const CurveSample*> stable;
    for (const auto& s : trace.samples) {
        if (s.stable) stable.push_back(&s);
    }
    bool tail_increasing = stable.size() >= 10;
    for (std::size_t k = stable.size() >= 10 ? stable.size() - 9 : 1; k < stable.size(); ++k) {
        tail_increasing = tail_increasing && stable[k]->resolvent_norm > stable[k - 1]->resolvent_norm;
    }
    double max_stable = 0.0;
    for (const auto* s : stable) max_stable = std::max(max_stable, s->resolvent_norm);

    auto doc = out.csv({"eta", "re_z", "im_z", "abs_z", "sigma_min", "resolvent_norm", "refined_resolvent_norm",
                        "in_trust_region", "stable"});
    for (const auto& s : trace.samples) {
        doc.rows.push_back({num(s.eta), num(s.z.real()), num(s.z.imag()), num(std::abs(s.z)), num(s.sigma_min),
                            num(s.resolvent_norm), num(s.refined_resolvent_norm), flag(s.in_trust_region),
                            flag(s.stable)});
    }
    if (out.wants("csv")) out.add("csv", io::to_csv(doc));
    if (out.wants("json")) {
        Json j = out.json();
        j["trust_radius"] = io::number(trace.trust_radius);
        j["samples"] = trace.samples.size();
        j["stable_samples"] = stable.size();
        j["eta_range"] = {io::number(trace.samples.front().eta), io::number(trace.samples.back().eta)};
        j["tail_strictly_increasing"] = tail_increasing;
        j["max_stable_resolvent_norm"] = io::number(max_stable);
        j["warnings"] = trace.warnings;
        if (fit) {
            j["fit"] = fit_json(*fit);
        } else {
            j["fit"] = nullptr;
            j["fit_error"] = fit_error;
        }
        if (cfg.selftest) j["selftest_pass"] = fit && std::abs(fit->slope + 1.0 / 3.0) <= 1e-10;
        out.add("json", io::dump(j));
    }
    if (out.wants("svg")) {
        std::vector<io::Point> good;
        std::vector<io::Point> bad;
        double x_lo = std::numeric_limits<double>::infinity();
        double x_hi = -x_lo;
        double y_lo = x_lo;
        double y_hi = -x_lo;
        for (const auto& s : trace.samples) {
            const io::Point p{std::log10(std::abs(s.z)), std::log10(s.resolvent_norm)};
            if (!std::isfinite(p.first) || !std::isfinite(p.second)) continue;
            (s.stable ? good : bad).push_back(p);
            x_lo = std::min(x_lo, p.first);
            x_hi = std::max(x_hi, p.first);
            y_lo = std::min(y_lo, p.second);
            y_hi = std::max(y_hi, p.second);
        }
        if (!std::isfinite(x_lo)) x_lo = x_hi = y_lo = y_hi = 0.0;
        io::SvgPlot plot("Resolvent norm along z = b eta + c eta^p", "log10 |z|", "log10 ||(H - z)^-1||",
                         padded(x_lo, x_hi), padded(y_lo, y_hi));
        plot.line(good, "#1f77b4");
        plot.markers(good, "#1f77b4", 3.0);
        plot.markers(bad, "#999999", 3.0, true);
        plot.legend("stable", "#1f77b4", true);
        plot.legend("unstable / outside trust radius", "#999999", true);
        if (fit) {
            const double l10 = std::log(10.0);
            auto y_at = [&](double x) { return (fit->slope * x * l10 + fit->intercept) / l10; };
            plot.line({{x_lo, y_at(x_lo)}, {x_hi, y_at(x_hi)}}, "#d62728", 1.0, false, "5 3");
            plot.legend("fit slope " + num(fit->slope), "#d62728");
        }
        plot.set_metadata(out.metadata());
        out.add("svg", plot.render());
    }
    for (const auto& w : trace.warnings) std::cerr << "warning: " << w << '\n';
    if (cfg.selftest && !(fit && std::abs(fit->slope + 1.0 / 3.0) <= 1e-10)) return kPropertyViolation;
    if (!fit) {
        std::cerr << "fit refused: " << fit_error << '\n';
        return kFitRefused;
    }
    return kOk;
}

int cmd_kernel_check(const RunConfig& cfg, Outputs& out) {
    const Complex c(cfg.c_re, cfg.c_im);
    const kernel::SemiclassicalParams base{cfg.h_min, cfg.mu, c, cfg.a, cfg.a0};
    const std::vector<double> hs = cfg.h_list.empty() ? kernel::logspace(cfg.h_min, cfg.h_max, cfg.h_count) : cfg.h_list;
    const auto report = kernel::scaling_fit(hs, base, cfg.workers);

    bool ok = true;
    std::ostringstream failures;
    std::optional<bool> slope_ok;
    if (report.fitted_slope) {
        slope_ok = std::abs(*report.fitted_slope + 2.0 / 3.0) <= 0.05;
        if (!*slope_ok) {
            ok = false;
            failures << "scaling slope " << num(*report.fitted_slope) << " outside -2/3 +- 0.05\n";
        }
    }
    std::optional<double> ratio;
    if (cfg.mu == 0.0) {
        kernel::SemiclassicalParams p = base;
        p.h = 1e-2;
        const double s_h = kernel::schur_bound(p).s1;
        p.h = 1e-2 / 8.0;
        ratio = kernel::schur_bound(p).s1 / s_h;
    }

    const auto lemma1 = kernel::lemma1_sweep(100000, stream_seed(cfg.seed, 0));
    for (const auto& ce : lemma1.counterexamples) {
        ok = false;
        failures << "lemma1 counterexample: s = " << num(ce.s) << " t = " << num(ce.t) << " eps = " << num(ce.eps)
                 << " lhs = " << num(ce.s - ce.t)
                 << " rhs = " << num(ce.eps * (ce.s * ce.s * ce.s - ce.t * ce.t * ce.t) + 1.0 / ce.eps) << '\n';
    }
    const auto thm2 = kernel::theorem2_search(c, kernel::Theorem2Range{}, stream_seed(cfg.seed, 1));
    if (!thm2.found) {
        ok = false;
        for (const auto& cand : thm2.candidates) {
            const auto& v = *cand.first_violation;
            failures << "theorem2 lambda = " << num(cand.lambda_const) << " C = " << num(cand.c_const) << ": "
                     << cand.violations << " violations, first at x = " << num(v.x) << " y = " << num(v.y)
                     << " mu = " << num(v.mu) << " h = " << num(v.h) << '\n';
        }
    }

    const auto i0 = kernel::airy_tail_integral(0.0, 1.0);
    const double gamma43 = std::tgamma(4.0 / 3.0);
    const double i0_rel = std::abs(i0.value - gamma43) / gamma43;
    Json lemma3 = {{"I(0,1)", io::number(i0.value)}, {"gamma_4_3", io::number(gamma43)},
                   {"rel_error", io::number(i0_rel)}};
    if (i0_rel > 1e-6) {
        ok = false;
        failures << "lemma3: I(0,1) = " << num(i0.value) << " vs Gamma(4/3) = " << num(gamma43) << '\n';
    }
    Json positive = Json::array();
    for (double x : {5.0, 10.0, 20.0}) {
        const double v = x * x * kernel::airy_tail_integral(x, 1.0).value;
        positive.push_back({{"x", x}, {"x2_I", io::number(v)}, {"bound", 1.0}, {"holds", v <= 1.0}});
        if (!(v <= 1.0)) {
            ok = false;
            failures << "lemma3: x^2 I(x) = " << num(v) << " > 1 at x = " << num(x) << '\n';
        }
    }
    Json negative = Json::array();
    double at10 = 0.0;
    double at20 = 0.0;
    for (double x : {-5.0, -10.0, -20.0}) {
        const double v = x * x * kernel::airy_tail_integral(x, 1.0).value;
        negative.push_back({{"x", x}, {"x2_I", io::number(v)}});
        if (x == -10.0) at10 = v;
        if (x == -20.0) at20 = v;
    }
    const double neg_ratio = at10 / at20;
    const bool neg_ok = neg_ratio >= 0.5 && neg_ratio <= 2.0;
    if (!neg_ok) {
        ok = false;
        failures << "lemma3: x^2 I(x) ratio between x = -10 and x = -20 is " << num(neg_ratio) << '\n';
    }
    lemma3["positive"] = positive;
    lemma3["negative"] = negative;
    lemma3["negative_ratio_10_20"] = io::number(neg_ratio);

    auto doc = out.csv({"h", "S1", "S2", "S1_argmax", "S2_argmax", "S1_rel_error", "S2_rel_error", "norm_bound"});
    for (const auto& row : report.rows) {
        const auto& b = row.bound;
        doc.rows.push_back({num(row.h), num(b.s1), num(b.s2), num(b.s1_argmax), num(b.s2_argmax),
                            num(b.s1_rel_error), num(b.s2_rel_error), num(b.norm_bound())});
    }
    if (out.wants("csv")) out.add("csv", io::to_csv(doc));
    if (out.wants("json")) {
        Json j = out.json();
        if (report.fitted_slope) {
            j["fit"] = {{"slope", io::number(*report.fitted_slope)},
                        {"intercept", io::number(*report.fitted_intercept)},
                        {"residual", io::number(*report.fit_residual)},
                        {"expected", io::number(-2.0 / 3.0)},
                        {"tolerance", 0.05},
                        {"pass", *slope_ok}};
        } else {
            j["fit"] = nullptr;
        }
        j["two_point_ratio_h_1e-2"] = ratio ? io::number(*ratio) : Json(nullptr);
        j["max_quadrature_rel_error"] = io::number(report.max_rel_error);
        j["warnings"] = report.warnings;
        j["lemma1"] = {{"samples", lemma1.samples}, {"violations", lemma1.violations}};
        Json cands = Json::array();
        for (const auto& cand : thm2.candidates) {
            cands.push_back({{"lambda", io::number(cand.lambda_const)},
                             {"C", io::number(cand.c_const)},
                             {"violations", cand.violations}});
        }
        j["theorem2"] = {{"samples", thm2.range.samples}, {"candidates", cands}};
        if (thm2.found) {
            j["theorem2"]["found"] = {{"lambda", io::number(thm2.found->lambda_const)},
                                      {"C", io::number(thm2.found->c_const)}};
        } else {
            j["theorem2"]["found"] = nullptr;
        }
        j["lemma3"] = lemma3;
        j["all_pass"] = ok;
        out.add("json", io::dump(j));
    }
    if (out.wants("svg")) {
        std::vector<io::Point> pts;
        for (const auto& row : report.rows) {
            if (std::isfinite(row.bound.s1) && row.bound.s1 > 0.0) pts.emplace_back(std::log10(row.h), std::log10(row.bound.s1));
        }
        double x_lo = std::numeric_limits<double>::infinity();
        double x_hi = -x_lo;
        double y_lo = x_lo;
        double y_hi = -x_lo;
        for (const auto& [x, y] : pts) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
        if (pts.empty()) x_lo = x_hi = y_lo = y_hi = 0.0;
        io::SvgPlot plot("Schur bound S1(h)", "log10 h", "log10 S1", padded(x_lo, x_hi), padded(y_lo, y_hi));
        plot.markers(pts, "#1f77b4", 3.5);
        plot.legend("S1", "#1f77b4", true);
        if (!pts.empty()) {
            const auto& [x0, y0] = pts.front();
            auto ref = [&](double x) { return y0 - 2.0 / 3.0 * (x - x0); };
            plot.line({{x_lo, ref(x_lo)}, {x_hi, ref(x_hi)}}, "#999999", 1.0, false, "4 3");
            plot.legend("slope -2/3", "#999999");
        }
        if (report.fitted_slope) {
            const double l10 = std::log(10.0);
            auto fit = [&](double x) { return (*report.fitted_slope * x * l10 + *report.fitted_intercept) / l10; };
            plot.line({{x_lo, fit(x_lo)}, {x_hi, fit(x_hi)}}, "#d62728");
            plot.legend("fit slope " + num(*report.fitted_slope), "#d62728");
        }
        plot.set_metadata(out.metadata());
        out.add("svg", plot.render());
    }
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    if (!ok) {
        std::cerr << failures.str();
        return kPropertyViolation;
    }
    return kOk;
}

int cmd_perturb(const RunConfig& cfg, Outputs& out) {
    const auto op = build_operator(cfg);
    const auto report = perturbation_check(op.matrix, cfg.eps, cfg.trials, cfg.seed, cfg.workers);

    auto doc = out.csv({"trial", "index", "re", "im"});
    for (std::size_t t = 0; t < report.perturbed.size(); ++t) {
        for (std::size_t k = 0; k < report.perturbed[t].size(); ++k) {
            const Complex z = report.perturbed[t][k];
            doc.rows.push_back({std::to_string(t), std::to_string(k), num(z.real()), num(z.imag())});
        }
    }
    if (out.wants("csv")) out.add("csv", io::to_csv(doc));
    if (out.wants("json")) {
        Json j = out.json();
        j["trials"] = report.trials;
        j["eps"] = io::number(report.eps);
        j["seed"] = report.seed;
        j["max_ratio"] = io::number(report.max_ratio);
        j["tolerance"] = io::number(1.0 + kContainmentSlack);
        j["passed"] = report.passed;
        Json per = Json::array();
        for (double r : report.trial_max_ratio) per.push_back(io::number(r));
        j["trial_max_ratio"] = per;
        out.add("json", io::dump(j));
    }
    if (!report.passed) {
        std::cerr << "containment violated: max sigma_min/eps = " << num(report.max_ratio) << '\n';
        return kPropertyViolation;
    }
    return kOk;
}

}  // namespace

int run(const RunConfig& cfg) {
    Outputs out(cfg);
    int code = kOk;
    switch (cfg.command) {
        case Command::spectrum: code = cmd_spectrum(cfg, out); break;
        case Command::eigenfunctions: code = cmd_eigenfunctions(cfg, out); break;
        case Command::pseudospectrum: code = cmd_pseudospectrum(cfg, out); break;
        case Command::curve: code = cmd_curve(cfg, out); break;
        case Command::kernel_check: code = cmd_kernel_check(cfg, out); break;
        case Command::perturb: code = cmd_perturb(cfg, out); break;
    }
    out.write();
    return code;
}

}  // namespace pseudospec::cli
