#include "hyplab/bounds_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "detail.hpp"
#include "hyplab/degeneration.hpp"
#include "hyplab/hyperbolic_gamma.hpp"
#include "hyplab/parallel.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

using namespace detail;

cplx epsilon_standard(double delta) { return epsilon_of_delta(delta); }

OzyPoint ozy(long N, double delta, double beta, int m, cplx u, cplx eps) {
    double s = std::sqrt(1.0 + delta * delta);
    cplx is = kI * s;
    return {is * (static_cast<double>(N) + beta), is * (static_cast<double>(m) + u * delta + eps * delta * delta)};
}

namespace {

void check_delta(double delta) { require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]"); }

// ln(1 - e^{-2 pi (N delta + i beta)}) for N delta > 0.
cplx log_one_minus_sh_exp(double Nd, double beta) { return log_one_minus_exp(-kTwoPi * cplx(Nd, beta)); }

cplx log_gamma_ratio(cplx a, cplx b, const PeriodPair& w) {
    cplx L = log_hyp_gamma_ratio(a, b, w);
    if (!std::isfinite(L.real()) || !std::isfinite(L.imag())) throw ParameterError("gamma ratio hits a pole or zero");
    return L;
}

// finer levels may not exceed the largest coarser sup by more than 10%
bool refinement_stable(const std::vector<double>& sups) {
    if (sups.size() < 2) return false;
    double ref = sups[0];
    for (std::size_t i = 1; i < sups.size(); ++i) {
        if (!(sups[i] <= 1.1 * ref)) return false;
        ref = std::max(ref, sups[i]);
    }
    return true;
}

}  // namespace

double qprod_ratio_residual(long N, double delta, double beta, int m, cplx u, const EpsilonFn& eps, int ell) {
    require(static_cast<double>(m) > u.imag(), "needs m > Im u");
    require(N >= 1, "needs N >= 1");
    require(std::abs(beta) <= 0.5, "needs |beta| <= 1/2");
    require(ell >= 0, "ell must be non-negative");
    check_delta(delta);
    PeriodPair w = PeriodPair::degeneration(delta);
    OzyPoint p = ozy(N, delta, beta, m, u, eps(delta));
    cplx shift = static_cast<double>(ell) * w.omega1;
    cplx q = std::exp(kTwoPi * kI * w.omega1 / w.omega2);
    cplx x0 = std::exp(kTwoPi * kI * (p.z + shift) / w.omega2);
    cplx x1 = std::exp(kTwoPi * kI * (p.z + p.y + shift) / w.omega2);
    cplx lhs = log_q_pochhammer_series(x0, q) - log_q_pochhammer_series(x1, q);
    cplx limit = 0.5 * (static_cast<double>(m) + kI * u) * log_one_minus_sh_exp(N * delta, beta);
    return std::abs(lhs - limit);
}

LogShiftResult log_shift_residual(long N, double delta, double beta, double mu) {
    require(N >= 1 && delta > 0.0 && mu >= 0.0, "needs N >= 1, delta > 0, mu >= 0");
    LogShiftResult r;
    double Nd = N * delta;
    r.lhs = std::abs(log_one_minus_sh_exp(Nd + mu * delta, beta) - log_one_minus_sh_exp(Nd, beta));
    r.bound = kTwoPi * mu * delta / -std::expm1(-kTwoPi * Nd);
    // the series is compared term by term, so only rounding separates the two sides
    r.holds = r.lhs <= r.bound * (1.0 + 1e-12) + 1e-15;
    return r;
}

cplx gamma_ratio_f(long N, double beta, int m, cplx u, cplx eps, double delta) {
    check_delta(delta);
    PeriodPair w = PeriodPair::degeneration(delta);
    OzyPoint p = ozy(N, delta, beta, m, u, eps);
    cplx L = log_gamma_ratio(p.z + p.y, p.z, w);
    double sign = (N * static_cast<long>(m)) % 2 == 0 ? 1.0 : -1.0;
    cplx sh = log_2sh(cplx(N * delta, beta));
    return sign * std::exp(-kI * kPi * static_cast<double>(m * m) / 2.0 + L -
                           dpow_of_log(sh, DoubleExponent::from_mu(m, u)));
}

cplx gamma_ratio_F(long N, double beta, int m, cplx u, cplx eps, double delta) {
    double aN = std::abs(static_cast<double>(N));
    return gamma_ratio_f(N, beta, m, u, eps, delta) * std::exp(-kI * kPi * aN * eps * delta * delta);
}

double envelope_bound(double C1, double C2, long N, double delta) {
    return C1 * delta / -std::expm1(-C2 * std::abs(static_cast<double>(N)) * delta);
}

EnvelopeReport envelope_fit(const std::vector<GridValue>& grid, double C2) {
    require(!grid.empty(), "envelope fit needs a non-empty grid");
    EnvelopeReport rep;
    double dmax = 0.0;
    for (const auto& g : grid) dmax = std::max(dmax, g.delta);
    rep.C2_used = C2 > 0.0 ? C2 : kPi / std::sqrt(1.0 + dmax);
    std::map<double, double, std::greater<double>> per_delta;
    double best = -1.0;
    for (const auto& g : grid) {
        double n = std::abs(static_cast<double>(g.N));
        double scaled = g.value * -std::expm1(-rep.C2_used * n * g.delta) / g.delta;
        double& s = per_delta[g.delta];
        s = std::max(s, scaled);
        if (scaled > best) {
            best = scaled;
            rep.sup_location = g;
        }
    }
    rep.C1_fitted = std::max(best, 0.0);
    for (auto& [d, s] : per_delta) {
        rep.deltas.push_back(d);
        rep.sup_per_delta.push_back(s);
    }
    rep.stable = refinement_stable(rep.sup_per_delta);
    return rep;
}

int small_n_shift(const ShiftData& y1, const ShiftData& y2) {
    int need = 0;
    for (const ShiftData* y : {&y1, &y2})
        need = std::max(need, std::abs(y->m) + static_cast<int>(std::floor(std::abs(y->u.imag()))) + 3);
    return (need + 1) / 2;
}

SmallNResult small_n_envelope(long N, double delta, double beta, const ShiftData& y1, const ShiftData& y2, int N0) {
    require(std::abs(N) <= N0, "needs |N| <= N0");
    require(std::abs(beta) <= 1.0, "needs |beta| <= 1");
    for (const ShiftData* y : {&y1, &y2}) {
        double im = y->u.imag();
        require(std::abs(im - std::round(im)) > 1e-12, "needs Im u not an integer");
    }
    check_delta(delta);
    PeriodPair w = PeriodPair::degeneration(delta);
    OzyPoint p1 = ozy(N, delta, beta, y1.m, y1.u, y1.eps);
    OzyPoint p2 = ozy(N, delta, beta, y2.m, y2.u, y2.eps);
    SmallNResult r;
    r.k = small_n_shift(y1, y2);
    r.lhs = std::exp(log_gamma_ratio(p1.z + p1.y, p2.z + p2.y, w).real());
    double sg = N >= 0 ? 1.0 : -1.0;
    cplx arg(N * delta + 2.0 * r.k * sg * delta, beta);
    r.bound_shape = std::exp((y2.u - y1.u).imag() * log_2sh(arg).real());
    return r;
}

double big_n_ratio(long N, double delta, double beta, const ShiftData& y1, const ShiftData& y2) {
    check_delta(delta);
    PeriodPair w = PeriodPair::degeneration(delta);
    OzyPoint p1 = ozy(N, delta, beta, y1.m, y1.u, y1.eps);
    OzyPoint p2 = ozy(N, delta, beta, y2.m, y2.u, y2.eps);
    double log_lhs = log_gamma_ratio(p1.z + p1.y, p2.z + p2.y, w).real();
    double aN = std::abs(static_cast<double>(N));
    double log_shape =
        kPi * aN * (y2.eps - y1.eps).imag() * delta * delta + (y2.u - y1.u).imag() * log_2sh(cplx(N * delta, beta)).real();
    return std::exp(log_lhs - log_shape);
}

SupReport sup_stability(const std::vector<GridValue>& grid) {
    require(!grid.empty(), "sup stability needs a non-empty grid");
    SupReport rep;
    std::map<double, double, std::greater<double>> per_delta;
    double best = -1.0;
    for (const auto& g : grid) {
        double& s = per_delta[g.delta];
        s = std::max(s, g.value);
        if (g.value > best) {
            best = g.value;
            rep.sup_location = g;
        }
    }
    for (auto& [d, s] : per_delta) {
        rep.deltas.push_back(d);
        rep.sups.push_back(s);
    }
    rep.stable = refinement_stable(rep.sups);
    return rep;
}

// ---------------------------------------------------------------- I(delta, a)

namespace {

void check_a(double a) { require(a > 0.0 && a < 1.0, "needs a in (0, 1)"); }

// integral_0^X (1 + x^2)^{-a} dx
double plateau_integral(double a, double X) {
    std::vector<double> br;
    for (double b = 1.0; b < X; b *= 2.0) br.push_back(b);
    RealFn f = [a](double x) { return cplx(std::pow(1.0 + x * x, -a)); };
    return gk_adaptive(f, 0.0, X, 1e-15, 1e-14, 400000, br).value.real();
}

}  // namespace

double i_delta(double delta, double a) {
    check_a(a);
    check_delta(delta);
    if (a == 0.5) return 2.0 * delta * std::asinh(1.0 / (2.0 * delta));
    std::vector<double> br{0.0};
    for (double b = delta / 4.0; b < 0.5; b *= 2.0) br.push_back(b);
    RealFn f = [=](double b) { return cplx(std::pow(delta * delta + b * b, -a)); };
    return 2.0 * delta * gk_adaptive(f, 0.0, 0.5, 1e-15, 1e-14, 400000, br).value.real();
}

double i_delta_substitution(double delta, double a) {
    check_a(a);
    check_delta(delta);
    return 2.0 * std::pow(delta, 2.0 * (1.0 - a)) * plateau_integral(a, 0.5 / delta);
}

IDeltaEnvelope i_delta_envelope(double a, double fit_delta, const std::vector<double>& check) {
    check_a(a);
    check_delta(fit_delta);
    IDeltaEnvelope env;
    env.a = a;
    // integral_0^{1/(2 delta)} <= integral_0^{1/2} (1 + x^2)^{-a} + integral_{1/2}^{1/(2 delta)} x^{-2a}
    double A = plateau_integral(a, 0.5);
    double L = std::log(1.0 / fit_delta);
    if (a == 0.5) {
        env.C1 = 0.0;
        env.C2 = 2.0 + 2.0 * A / L;
    } else if (a > 0.5) {
        env.C1 = 2.0 * A + std::pow(2.0, 2.0 * a) / (2.0 * a - 1.0);
        env.C2 = 0.0;
    } else {
        env.C1 = std::max(0.0, 2.0 * A - std::pow(2.0, 2.0 * a) / (1.0 - 2.0 * a));
        env.C2 = std::pow(2.0, 2.0 * a) / ((1.0 - 2.0 * a) * L);
    }
    std::vector<double> ds{fit_delta};
    for (double d : check) {
        require(d <= fit_delta, "check deltas must not exceed the fit delta");
        ds.push_back(d);
    }
    env.holds = true;
    for (double d : ds) {
        double v = i_delta(d, a);
        double b = env.C1 * std::pow(d, 2.0 * (1.0 - a)) + env.C2 * d * std::log(1.0 / d);
        env.deltas.push_back(d);
        env.values.push_back(v);
        env.bounds.push_back(b);
        if (!(v <= b)) env.holds = false;
    }
    return env;
}

// ---------------------------------------------------------------- grids

namespace {

long cap_of(double NdMax, double delta) { return static_cast<long>(std::floor(NdMax / delta + 1e-9)); }

std::vector<GridValue> run_grid(std::vector<GridValue> pts, int threads, const std::function<double(const GridValue&)>& f) {
    parallel_for(pts.size(), threads, [&](std::size_t i) { pts[i].value = f(pts[i]); });
    return pts;
}

}  // namespace

std::vector<GridValue> qprod_grid(int m, cplx u, const EpsilonFn& eps, const std::vector<double>& deltas,
                                  const std::vector<double>& betas, long n_max_times_delta, int ell) {
    std::vector<GridValue> pts;
    for (double d : deltas)
        for (long N = 1; N <= cap_of(static_cast<double>(n_max_times_delta), d); ++N)
            for (double b : betas) pts.push_back({N, d, b, 0.0});
    return run_grid(std::move(pts), 1, [&](const GridValue& g) {
        return qprod_ratio_residual(g.N, g.delta, g.beta, m, u, eps, ell);
    });
}

std::vector<GridValue> gamma_ratio_grid(int m, cplx u, const EpsilonFn& eps, const std::vector<double>& deltas,
                                        const std::vector<double>& betas, int which, int M) {
    require(which >= 0 && which <= 3, "which selects one of |F-1|, |1/F-1|, |f-1|, |1/f-1|");
    long N0 = std::abs(m) + static_cast<long>(std::floor(std::abs(u.imag()))) + 2;
    double NdMax = M > 0 ? M : 8.0;
    std::vector<GridValue> pts;
    for (double d : deltas)
        for (long n = N0 + 1; n <= cap_of(NdMax, d); ++n)
            for (long N : {n, -n})
                for (double b : betas) pts.push_back({N, d, b, 0.0});
    return run_grid(std::move(pts), 1, [&](const GridValue& g) {
        cplx e = eps(g.delta);
        cplx v = which < 2 ? gamma_ratio_F(g.N, g.beta, m, u, e, g.delta) : gamma_ratio_f(g.N, g.beta, m, u, e, g.delta);
        if (which % 2 == 1) v = 1.0 / v;
        return std::abs(v - 1.0);
    });
}

std::vector<GridValue> small_n_grid(const ShiftData& y1, const ShiftData& y2, const std::vector<double>& deltas,
                                    const std::vector<double>& betas, int N0) {
    require(N0 >= 0, "needs N0 >= 0");
    std::vector<GridValue> pts;
    for (double d : deltas)
        for (long N = -N0; N <= N0; ++N)
            for (double b : betas) pts.push_back({N, d, b, 0.0});
    return run_grid(std::move(pts), 1, [&](const GridValue& g) {
        SmallNResult r = small_n_envelope(g.N, g.delta, g.beta, y1, y2, N0);
        return r.lhs / r.bound_shape;
    });
}

std::vector<GridValue> big_n_grid(const ShiftData& y1, const ShiftData& y2, const std::vector<double>& deltas,
                                  const std::vector<double>& betas, double nu, long n_max_times_delta) {
    require(nu > 0.0, "needs nu > 0");
    std::vector<GridValue> pts;
    for (double d : deltas) {
        long lo = std::max(1L, static_cast<long>(std::floor(nu / d + 1e-9)));
        for (long n = lo; n <= cap_of(static_cast<double>(n_max_times_delta), d); ++n)
            for (long N : {n, -n})
                for (double b : betas) {
                    require(std::abs(b) <= 1.0, "needs |beta| <= 1");
                    pts.push_back({N, d, b, 0.0});
                }
    }
    return run_grid(std::move(pts), 1, [&](const GridValue& g) { return big_n_ratio(g.N, g.delta, g.beta, y1, y2); });
}

}  // namespace hyplab
