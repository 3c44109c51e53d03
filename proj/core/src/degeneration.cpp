#include "hyplab/degeneration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "detail.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/parallel.hpp"

namespace hyplab {

using namespace detail;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool reciprocal_integer(double d) {
    if (!(d > 0.0) || d > 1.0) return false;
    double n = 1.0 / d;
    return std::abs(n - std::round(n)) < 1e-9 * n;
}

long floor_div(double rho, double delta) { return static_cast<long>(std::floor(rho / delta + 1e-12)); }

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

ConvergenceRecord skipped_record(double delta, const std::string& why) {
    ConvergenceRecord r;
    r.delta = delta;
    r.lhs = r.rhs = cplx(kNaN, kNaN);
    r.abs_err = r.rel_err = kNaN;
    r.skipped = true;
    r.note = why;
    return r;
}

// Number of extra alpha units after which |J| ~ e^{2 pi rate |alpha|} drops below tol.
double tail_extent(double rate, double tol) { return std::log(1.0 / tol) / (kTwoPi * rate) + 1.0; }

}  // namespace

// ---------------------------------------------------------------- regime

void ComplexRegime::validate() const {
    require(reciprocal_integer(delta), "delta must satisfy 1/delta in Z_{>0}");
    require(u.imag() > -1.0 && u.imag() < 0.0, "Im u must lie in (-1, 0)");
    require(M >= 1, "M must be a positive integer");
    require(rho.has_value() == sigma.has_value(), "rho and sigma go together");
    if (rho) {
        require(*rho != 0.0, "conical regime needs rho != 0");
        require(std::abs(*sigma) <= 0.5, "conical regime needs |sigma| <= 1/2");
    }
}

ComplexRegime ComplexRegime::with_delta(double d) const {
    ComplexRegime r = *this;
    r.delta = d;
    return r;
}

double ComplexRegime::sqrt_w1w2() const { return std::sqrt(1.0 + delta * delta); }
cplx ComplexRegime::g() const { return kI * sqrt_w1w2() * (static_cast<double>(m) + u * delta); }
cplx ComplexRegime::lambda() const { return kI * sqrt_w1w2() * (static_cast<double>(k) + v * delta); }
cplx ComplexRegime::g_star() const { return omega().sum() / 2.0 - g(); }
long ComplexRegime::K() const { return rho ? floor_div(*rho, delta) : 0; }
cplx ComplexRegime::x() const { return kI * sqrt_w1w2() * (static_cast<double>(K()) + sigma.value_or(0.0)); }
cplx ComplexRegime::epsilon() const { return epsilon_of_delta(delta); }

cplx epsilon_of_delta(double delta) {
    // 1 - 1/sqrt(1 + d^2) without cancellation
    double s = std::sqrt(1.0 + delta * delta);
    return kI * (delta / (s * (1.0 + s)));
}

// ---------------------------------------------------------------- reports

ConvergenceRecord make_record(double delta, cplx lhs, cplx rhs, long evals, double runtime_ms) {
    ConvergenceRecord r;
    r.delta = delta;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max(std::abs(rhs), 1e-300);
    r.evals = evals;
    r.runtime_ms = runtime_ms;
    return r;
}

bool monotone_with_slack(const std::vector<double>& values, double slack) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] <= values[i - 1] * (1.0 + slack))) return false;
    return true;
}

LimitReport finalize_report(std::vector<ConvergenceRecord> records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const ConvergenceRecord& a, const ConvergenceRecord& b) { return a.delta > b.delta; });
    LimitReport rep;
    rep.records = std::move(records);
    std::vector<double> errs, lx, ly;
    bool any_skipped = false;
    for (const auto& r : rep.records) {
        if (r.skipped) {
            any_skipped = true;
            continue;
        }
        errs.push_back(r.rel_err);
        if (r.rel_err > 0.0) {
            lx.push_back(std::log(r.delta));
            ly.push_back(std::log(r.rel_err));
        }
    }
    rep.monotone = !any_skipped && !errs.empty() && monotone_with_slack(errs);
    if (lx.size() >= 2) {
        double n = static_cast<double>(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        double den = n * sxx - sx * sx;
        rep.fitted_rate = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    }
    return rep;
}

// ---------------------------------------------------------------- integrands

cplx beta_integrand(cplx z, const ComplexRegime& r) {
    PeriodPair w = r.omega();
    cplx gs = r.g_star();
    return std::exp(kTwoPi * kI * r.lambda() * z / w.product() + log_hg(z + gs, w) + log_hg(-z + gs, w));
}

cplx conical_integrand_regime(cplx z, const ComplexRegime& r) {
    PeriodPair w = r.omega();
    cplx gs = r.g_star(), x = r.x();
    return std::exp(kTwoPi * kI * r.lambda() * z / w.product() + log_hg(z + gs, w) + log_hg(-z + gs, w) +
                    log_hg(z - x + gs, w) + log_hg(-z + x + gs, w));
}

cplx beta_limit_integrand(double alpha, double beta, int m, cplx u, int k, double v) {
    DoubleExponent A = DoubleExponent::from_mu(-2 * m, -2.0 * u);
    return std::exp(-kTwoPi * kI * (alpha * v + beta * k) + dpow_of_log(log_2sh(cplx(alpha, beta)), A));
}

cplx conical_limit_integrand(double alpha, double beta, int m, cplx u, int k, double v, double rho, double sigma) {
    ComplexConicalParams p{rho, sigma, u, m, v, k};
    return complex_conical_integrand(alpha, beta, p);
}

cplx beta_closed_form(int m, int k, cplx u, double v) {
    double s = m + k, d = m - k;
    DoubleExponent a((s + kI * (u + v)) / 2.0, (-s + kI * (u + v)) / 2.0);
    DoubleExponent b((d + kI * (u - v)) / 2.0, (-d + kI * (u - v)) / 2.0);
    double sign = ((m + k) % 2 == 0) ? 1.0 : -1.0;
    return sign / (4.0 * kPi) * complex_beta_closed_form(a, b);
}

QuadratureResult beta_cylinder_integral_window(int m, int k, cplx u, double v, double alpha_min, double alpha_max,
                                               double tol) {
    require(u.imag() > -1.0 && u.imag() < 0.0, "Im u must lie in (-1, 0)");
    CylinderDomain dom;
    dom.alpha_min = alpha_min;
    dom.alpha_max = alpha_max;
    dom.singular = {{0.0, 0.0, 2.0 * u.imag()}};
    return integrate_cylinder([&](double a, double b) { return beta_limit_integrand(a, b, m, u, k, v); }, dom, tol);
}

QuadratureResult beta_cylinder_integral(int m, int k, cplx u, double v, double tol) {
    double ext = tail_extent(-u.imag(), tol);
    return beta_cylinder_integral_window(m, k, u, v, -ext, ext, tol);
}

// ---------------------------------------------------------------- gamma limits

LimitReport gamma_point_limit(int m, cplx u, const std::vector<double>& deltas) {
    require(u.imag() > -1.0 && u.imag() < 0.0, "Im u must lie in (-1, 0)");
    cplx cg = complex_gamma(DoubleExponent::from_mu(m, u));
    std::vector<ConvergenceRecord> recs;
    for (double d : deltas) {
        require(reciprocal_integer(d), "delta must satisfy 1/delta in Z_{>0}");
        PeriodPair w = PeriodPair::degeneration(d);
        GammaEvalReport g = hyp_gamma(kI * w.sqrt_product() * (static_cast<double>(m) + u * d), w);
        if (g.pole) {
            recs.push_back(skipped_record(d, "argument on the pole lattice"));
            continue;
        }
        cplx rhs = std::exp(kI * kPi * static_cast<double>(m * m) / 2.0 + (kI * u - 1.0) * std::log(4.0 * kPi * d)) * cg;
        recs.push_back(make_record(d, g.value, rhs, g.evals));
    }
    return finalize_report(std::move(recs));
}

LimitReport gamma_ratio_limit(double alpha, double beta, int m, cplx u, const std::vector<double>& deltas) {
    DoubleExponent e = DoubleExponent::from_mu(m, u);
    cplx rhs = std::exp(dpow_of_log(log_2sh(cplx(alpha, beta)), e));
    std::vector<ConvergenceRecord> recs;
    for (double d : deltas) {
        require(reciprocal_integer(d), "delta must satisfy 1/delta in Z_{>0}");
        PeriodPair w = PeriodPair::degeneration(d);
        double N = std::round(alpha / d);
        cplx s = kI * w.sqrt_product();
        cplx z1 = s * (N + beta + static_cast<double>(m) + u * d), z0 = s * (N + beta);
        GammaEvalReport g1 = hyp_gamma(z1, w), g0 = hyp_gamma(z0, w);
        if (g1.pole || g0.pole || g0.zero) {
            recs.push_back(skipped_record(d, "pinching pole"));
            continue;
        }
        // the phase e^{-pi i N m} is exactly (-1)^{N m}
        double sign = (static_cast<long>(N) * m) % 2 == 0 ? 1.0 : -1.0;
        cplx lhs = sign * std::exp(-kI * kPi * static_cast<double>(m * m) / 2.0 + log_hyp_gamma_ratio(z1, z0, w));
        recs.push_back(make_record(d, lhs, rhs, g1.evals + g0.evals));
    }
    return finalize_report(std::move(recs));
}

// ---------------------------------------------------------------- sums

namespace {

std::vector<double> conical_focus(const ComplexRegime& r) { return {0.0, r.sigma.value_or(0.0)}; }

CylinderSumResult regime_sum(const ComplexRegime& r, long n_lo, long n_hi, double tol, int threads, bool conical,
                             const std::vector<long>& excluded = {}) {
    CylinderSumOptions opt;
    opt.threads = threads;
    opt.excluded = excluded;
    opt.focus_betas = conical ? conical_focus(r) : std::vector<double>{0.0};
    LineFn f = conical ? LineFn([&](cplx z) { return conical_integrand_regime(z, r); })
                       : LineFn([&](cplx z) { return beta_integrand(z, r); });
    return cylinder_sum_range(f, r.delta, r.sqrt_w1w2(), n_lo, n_hi, tol, opt);
}

long n_of(double M, double delta) { return static_cast<long>(std::floor(M / delta + 1e-9)); }

}  // namespace

CylinderSumResult beta_sum(const ComplexRegime& r, double tol, int threads) {
    r.validate();
    long n = n_of(r.M, r.delta);
    return regime_sum(r, -n, n, tol, threads, false);
}

CylinderSumResult conical_sum(const ComplexRegime& r, double tol, int threads) {
    r.validate();
    require(r.conical(), "conical sum needs rho and sigma");
    long n = n_of(r.M, r.delta);
    return regime_sum(r, -n, n, tol, threads, true);
}

std::vector<long> conical_excluded_indices(double delta, double rho) {
    long K = floor_div(rho, delta);
    return {0, K, K + 1};
}

std::vector<IndexRange> conical_index_ranges(double delta, double rho, int M) {
    require(rho > 0.0, "index ranges assume rho > 0 (use the x -> -x symmetry)");
    require(M >= rho + 2.0, "needs M >= rho + 2");
    long n = n_of(M, delta), K = floor_div(rho, delta);
    return {{-n, -1}, {1, K - 1}, {K + 2, n}};
}

// ---------------------------------------------------------------- limit experiments

namespace {

// Sum over |N| <= M/delta plus the measured tail out to where the terms fall below tol.
QuadratureResult full_sum(const ComplexRegime& r, double tol, int threads, bool conical, double decay_rate) {
    double ext = r.M + tail_extent(decay_rate, tol);
    long n = n_of(std::ceil(ext), r.delta);
    CylinderSumResult s = regime_sum(r, -n, n, tol, threads, conical);
    return s.total;
}

}  // namespace

LimitReport beta_limit_experiment(const ComplexRegime& tmpl, const std::vector<double>& deltas,
                                  const ExperimentOptions& opt, BetaTarget target) {
    tmpl.validate();
    auto t0 = std::chrono::steady_clock::now();
    cplx rhs;
    long rhs_evals = 0;
    if (target == BetaTarget::closed_form) {
        rhs = beta_closed_form(tmpl.m, tmpl.k, tmpl.u, tmpl.v);
    } else {
        QuadratureResult q = beta_cylinder_integral(tmpl.m, tmpl.k, tmpl.u, tmpl.v, opt.tol);
        rhs = q.value;
        rhs_evals = q.evals;
    }
    double rhs_ms = elapsed_ms(t0);
    std::vector<ConvergenceRecord> recs;
    for (double d : deltas) {
        ComplexRegime r = tmpl.with_delta(d);
        r.validate();
        auto t1 = std::chrono::steady_clock::now();
        try {
            QuadratureResult lhs = full_sum(r, opt.tol, opt.threads, false, -r.u.imag());
            ConvergenceRecord rec = make_record(d, lhs.value, rhs, lhs.evals + rhs_evals,
                                                opt.timing ? elapsed_ms(t1) + rhs_ms : 0.0);
            if (!lhs.converged) rec.note = lhs.note;
            recs.push_back(rec);
        } catch (const PinchError& e) {
            recs.push_back(skipped_record(d, e.what()));
        }
    }
    return finalize_report(std::move(recs));
}

LimitReport conical_limit_experiment(const ComplexRegime& tmpl, const std::vector<double>& deltas,
                                     const ExperimentOptions& opt) {
    tmpl.validate();
    require(tmpl.conical(), "conical experiment needs rho and sigma");
    auto t0 = std::chrono::steady_clock::now();
    ComplexConicalParams cp{*tmpl.rho, *tmpl.sigma, tmpl.u, tmpl.m, tmpl.v, tmpl.k};
    QuadratureResult phi = complex_conical_phi(cp, opt.tol);
    double rhs_ms = elapsed_ms(t0);
    std::vector<ConvergenceRecord> recs;
    for (double d : deltas) {
        ComplexRegime r = tmpl.with_delta(d);
        r.validate();
        auto t1 = std::chrono::steady_clock::now();
        try {
            QuadratureResult lhs = full_sum(r, opt.tol, opt.threads, true, -2.0 * r.u.imag());
            ConvergenceRecord rec = make_record(d, lhs.value, phi.value, lhs.evals + phi.evals,
                                                opt.timing ? elapsed_ms(t1) + rhs_ms : 0.0);
            if (!lhs.converged) rec.note = lhs.note;
            recs.push_back(rec);
        } catch (const PinchError& e) {
            recs.push_back(skipped_record(d, e.what()));
        }
    }
    return finalize_report(std::move(recs));
}

// ---------------------------------------------------------------- classical limit

cplx classical_conical_target(double u, double v, cplx x, double tol) {
    require(std::abs(x.real()) < 1e-14, "classical conical target needs x in iR");
    // t = 1/(1 + e^{2 pi i z}) turns the integral into a Gauss 2F1 with c = 2a
    cplx a = 2.0 * u, b = 2.0 * u - v, c = 4.0 * u;
    cplx w = -expm1_c(kTwoPi * kI * x);
    cplx pre = std::exp(kTwoPi * kI * u * x + log_gamma(b) + log_gamma(c - b) - log_gamma(c)) / kTwoPi;
    return pre * gauss_2f1_euler(a, b, c, w, tol);
}

ClassicalLimitReport classical_limit_experiment(double u, double v, cplx x, const std::vector<double>& omega1_list,
                                                double z, double tol) {
    require(u > 0.0, "classical limit needs u > 0");
    require(std::abs(v) < 2.0 * u, "classical limit needs |v| < 2u");
    require(z > 0.0 && z < 1.0, "classical limit needs 0 < z < omega2 = 1");
    ClassicalLimitReport rep;
    std::vector<ConvergenceRecord> r1, r2, r3;
    cplx target = classical_conical_target(u, v, x, tol);
    cplx gz = euler_gamma(z);
    cplx ratio_rhs = std::pow(2.0 * std::sin(kPi * z), u);
    for (double w1 : omega1_list) {
        require(w1 > 0.0 && w1 < 1.0, "omega1 must lie in (0, 1)");
        PeriodPair w(w1, 1.0);
        cplx lhs1 = hg(z * w1, w) * std::sqrt(kTwoPi) * std::pow(kTwoPi * w1, 0.5 - z);
        r1.push_back(make_record(w1, lhs1, gz));
        cplx lhs2 = std::exp(log_hg(z + u * w1, w) - log_hg(cplx(z), w));
        r2.push_back(make_record(w1, lhs2, ratio_rhs));
        ConicalParams p{x, v * w1, u * w1, w};
        QuadratureResult psi = conical_psi(p, tol);
        r3.push_back(make_record(w1, std::sqrt(w1) * psi.value, target, psi.evals));
    }
    rep.gamma_point = finalize_report(std::move(r1));
    rep.gamma_ratio = finalize_report(std::move(r2));
    rep.conical = finalize_report(std::move(r3));
    return rep;
}

// ---------------------------------------------------------------- excluded terms

namespace {

// delta * integral over beta of f(beta), peaked at the focus points with width ~ delta.
QuadratureResult focused_beta_integral(const RealFn& f, double delta, const std::vector<double>& focus, double tol) {
    std::vector<double> br;
    for (double fb : focus) {
        double b = fb - std::round(fb);
        br.push_back(b);
        for (double off = delta / 8.0; off < 1.0; off *= 1.6) {
            br.push_back(b - off);
            br.push_back(b + off);
        }
    }
    std::sort(br.begin(), br.end());
    return gk_adaptive(f, -0.5, 0.5, tol, 0.0, 2000000, br);
}

}  // namespace

DecayReport excluded_term_decay(const ComplexRegime& tmpl, long N, const std::vector<double>& deltas,
                                IntegrandKind kind, bool offset_from_K, double tol) {
    tmpl.validate();
    bool conical = kind == IntegrandKind::conical;
    require(!conical || tmpl.conical(), "conical kind needs rho and sigma");
    require(!offset_from_K || conical, "offset from K needs the conical kind");
    long N0 = std::abs(tmpl.m) + 3;
    require(offset_from_K ? std::abs(N) <= N0 : std::abs(N) <= N0, "|N| must not exceed N0 = |m| + 3");
    DecayReport rep;
    rep.N = N;
    std::vector<double> ds(deltas);
    std::sort(ds.begin(), ds.end(), std::greater<double>());
    for (double d : ds) {
        ComplexRegime r = tmpl.with_delta(d);
        r.validate();
        long n = offset_from_K ? r.K() + N : N;
        cplx s = kI * r.sqrt_w1w2();
        std::vector<double> focus = conical ? conical_focus(r) : std::vector<double>{0.0};
        RealFn fi = [&](double b) {
            cplx z = s * (static_cast<double>(n) + b);
            return conical ? conical_integrand_regime(z, r) : beta_integrand(z, r);
        };
        DecayRecord rec;
        rec.delta = d;
        rec.value = d * focused_beta_integral(fi, d, focus, tol / d).value;
        double a = n * d;
        bool singular = n == 0 || (conical && std::abs(a - *r.rho) < 1e-14);
        if (singular) {
            rec.j_value = cplx(kNaN, kNaN);
        } else {
            RealFn fj = [&](double b) {
                return conical ? conical_limit_integrand(a, b, r.m, r.u, r.k, r.v, *r.rho, *r.sigma)
                               : beta_limit_integrand(a, b, r.m, r.u, r.k, r.v);
            };
            rec.j_value = d * focused_beta_integral(fj, d, focus, tol / d).value;
        }
        rep.records.push_back(rec);
    }
    // envelope C1 d^{2(1 + Im u)} + C2 d ln(1/d) through the two coarsest points
    double p = 2.0 * (1.0 + tmpl.u.imag());
    auto basis = [&](double d) { return std::make_pair(std::pow(d, p), d * std::log(1.0 / d)); };
    if (rep.records.size() >= 2) {
        auto [a1, b1] = basis(rep.records[0].delta);
        auto [a2, b2] = basis(rep.records[1].delta);
        double y1 = std::abs(rep.records[0].value), y2 = std::abs(rep.records[1].value);
        double det = a1 * b2 - a2 * b1;
        double C1 = det != 0.0 ? (y1 * b2 - y2 * b1) / det : 0.0;
        double C2 = det != 0.0 ? (a1 * y2 - a2 * y1) / det : 0.0;
        if (C1 < 0.0 || C2 < 0.0) {
            // one-term envelope covering both fit points
            double c1 = std::max(y1 / a1, y2 / a2), c2 = std::max(y1 / b1, y2 / b2);
            bool use_first = c1 * a1 + c1 * a2 <= c2 * b1 + c2 * b2;
            C1 = use_first ? c1 : 0.0;
            C2 = use_first ? 0.0 : c2;
        }
        rep.C1 = C1;
        rep.C2 = C2;
    } else if (!rep.records.empty()) {
        rep.C1 = std::abs(rep.records[0].value) / basis(rep.records[0].delta).first;
    }
    std::vector<double> mags;
    rep.within_envelope = true;
    for (auto& rec : rep.records) {
        auto [a, b] = basis(rec.delta);
        rec.envelope = rep.C1 * a + rep.C2 * b;
        mags.push_back(std::abs(rec.value));
        if (!(std::abs(rec.value) <= 1.1 * rec.envelope)) rep.within_envelope = false;
    }
    rep.decays = !mags.empty() && monotone_with_slack(mags);
    return rep;
}

// ---------------------------------------------------------------- Riemann sums against improper integrals

cplx beta_cell_function(double alpha, const ComplexRegime& r, double tol) {
    require(alpha != 0.0, "the beta cell function is singular at alpha = 0");
    RealFn f = [&](double b) { return beta_limit_integrand(alpha, b, r.m, r.u, r.k, r.v); };
    return focused_beta_integral(f, std::abs(alpha), {0.0}, tol).value;
}

cplx conical_cell_function(double alpha, const ComplexRegime& r, double tol) {
    require(r.conical(), "conical cell function needs rho and sigma");
    require(alpha != 0.0 && alpha != *r.rho, "the conical cell function is singular at alpha = 0 and rho");
    RealFn f = [&](double b) { return conical_limit_integrand(alpha, b, r.m, r.u, r.k, r.v, *r.rho, *r.sigma); };
    double width = std::min(std::abs(alpha), std::abs(alpha - *r.rho));
    return focused_beta_integral(f, width, conical_focus(r), tol).value;
}

LimitReport riemann_improper_gap(IntegrandKind kind, const ComplexRegime& tmpl, const std::vector<double>& deltas,
                                 int M, double tol) {
    tmpl.validate();
    require(M >= 1, "M must be a positive integer");
    bool conical = kind == IntegrandKind::conical;
    QuadratureResult window;
    if (conical) {
        require(tmpl.conical(), "conical kind needs rho and sigma");
        require(*tmpl.rho > 0.0 && M >= *tmpl.rho + 2.0, "conical kind needs rho > 0 and M >= rho + 2");
        ComplexConicalParams cp{*tmpl.rho, *tmpl.sigma, tmpl.u, tmpl.m, tmpl.v, tmpl.k};
        CylinderDomain dom;
        dom.alpha_min = -M;
        dom.alpha_max = M;
        double e = 2.0 * tmpl.u.imag();
        dom.singular = {{0.0, 0.0, e}, {cp.rho, cp.sigma, e}};
        window = integrate_cylinder([&](double a, double b) { return complex_conical_integrand(a, b, cp); }, dom, tol);
    } else {
        window = beta_cylinder_integral_window(tmpl.m, tmpl.k, tmpl.u, tmpl.v, -M, M, tol);
    }
    std::vector<ConvergenceRecord> recs;
    for (double d : deltas) {
        ComplexRegime r = tmpl.with_delta(d);
        r.M = M;
        r.validate();
        std::vector<long> idx;
        if (conical) {
            for (const auto& rg : conical_index_ranges(d, *r.rho, M))
                for (long N = rg.lo; N <= rg.hi; ++N) idx.push_back(N);
        } else {
            long n = n_of(M, d);
            for (long N = -n; N <= n; ++N)
                if (N != 0) idx.push_back(N);
        }
        std::vector<cplx> vals(idx.size());
        double cell_tol = tol / (static_cast<double>(idx.size()) * d);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            double a = idx[i] * d;
            vals[i] = conical ? conical_cell_function(a, r, cell_tol) : beta_cell_function(a, r, cell_tol);
        }
        cplx sum = 0.0, comp = 0.0;
        for (cplx v : vals) {
            cplx y = v - comp, t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        recs.push_back(make_record(d, d * sum, window.value, window.evals));
    }
    return finalize_report(std::move(recs));
}

// ---------------------------------------------------------------- tails

TailReport beta_sum_tails(const ComplexRegime& r, const std::vector<int>& Ms, int M_ref, double tol, int threads) {
    r.validate();
    require(!Ms.empty(), "needs at least one M");
    for (int M : Ms) require(M >= 1 && M < M_ref, "each M must lie in [1, M_ref)");
    long n_ref = n_of(M_ref, r.delta);
    CylinderSumResult s = regime_sum(r, -n_ref, n_ref, tol, threads, false);
    TailReport rep;
    rep.Ms = Ms;
    double rate = kTwoPi * std::abs(r.u.imag());
    for (int M : Ms) {
        long n = n_of(M, r.delta);
        cplx tail = 0.0;
        for (const auto& t : s.terms)
            if (std::abs(t.N) > n) tail += t.value;
        rep.tails.push_back(std::abs(tail));
    }
    rep.C = rep.tails[0] * std::exp(rate * Ms[0]);
    rep.holds = true;
    for (std::size_t i = 0; i < Ms.size(); ++i) {
        rep.bounds.push_back(rep.C * std::exp(-rate * Ms[i]));
        if (!(rep.tails[i] <= rep.bounds[i] * (1.0 + 1e-12))) rep.holds = false;
    }
    return rep;
}

}  // namespace hyplab
