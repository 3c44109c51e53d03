#include "hyplab/integrals.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/parallel.hpp"

namespace hyplab {

using namespace detail;

// ---------------------------------------------------------------- hyperbolic beta

cplx hyperbolic_beta_integrand(cplx z, const HyperbolicBetaParams& p) {
    const PeriodPair& w = p.omega;
    cplx gs = w.sum() / 2.0 - p.g;
    return std::exp(kTwoPi * kI * p.lambda * z / w.product() + log_hg(z + gs, w) + log_hg(-z + gs, w));
}

IdentityCheck hyperbolic_beta(const HyperbolicBetaParams& p, double tol) {
    double rg = p.g.real();
    require(std::abs(p.lambda.real()) < rg && rg < p.omega.sum().real() / 2.0,
            "hyperbolic beta needs |Re lambda| < Re g < Re(omega1 + omega2)/2");
    LineSpec spec;
    spec.tol = tol * 1e-2;
    spec.tail_threshold = tol * 1e-4;
    QuadratureResult q = integrate_line([&](cplx z) { return hyperbolic_beta_integrand(z, p); }, spec);
    IdentityCheck c;
    c.lhs = q.value / p.omega.sqrt_product();
    c.rhs = hg(p.lambda + p.g, p.omega) * hg(-p.lambda + p.g, p.omega) / hg(2.0 * p.g, p.omega);
    c.residual = rel_residual(c.lhs, c.rhs);
    c.est_abs_err = q.est_abs_err / std::abs(p.omega.sqrt_product());
    c.evals = q.evals;
    c.converged = q.converged;
    return c;
}

// ---------------------------------------------------------------- complex beta

cplx complex_beta_closed_form(const DoubleExponent& a, const DoubleExponent& b) {
    return complex_gamma(a) * complex_gamma(b) / complex_gamma(a + b);
}

IdentityCheck complex_beta(const DoubleExponent& a, const DoubleExponent& b, double tol, PlaneMode mode) {
    double sa = a.sum().real(), sb = b.sum().real();
    require(sa > 0.0 && sb > 0.0 && sa + sb < 2.0, "complex beta needs Re(a+a') > 0, Re(b+b') > 0, Re(a+a'+b+b') < 2");
    DoubleExponent am = shifted(a, -1.0), bm = shifted(b, -1.0);
    PlaneFn f = [&](cplx t, cplx omt) { return double_power(t, am) * double_power(omt, bm); };
    PlaneSpec spec;
    spec.exponent_at_0 = sa - 2.0;
    spec.exponent_at_1 = sb - 2.0;
    spec.exponent_at_inf = sa + sb - 4.0;
    spec.mode = mode;
    QuadratureResult q = integrate_plane(f, spec, tol);
    IdentityCheck c;
    c.lhs = q.value / kPi;
    c.rhs = complex_beta_closed_form(a, b);
    c.residual = rel_residual(c.lhs, c.rhs);
    c.est_abs_err = q.est_abs_err / kPi;
    c.evals = q.evals;
    c.converged = q.converged;
    return c;
}

// ---------------------------------------------------------------- complex binomial theorem

cplx complex_gamma_xn(cplx x, double n) {
    return complex_gamma(DoubleExponent((n + kI * x) / 2.0, (-n + kI * x) / 2.0));
}

namespace {

cplx log_complex_gamma_xn(cplx x, double n) {
    return log_complex_gamma(DoubleExponent((n + kI * x) / 2.0, (-n + kI * x) / 2.0));
}

// Smooth step: 1 below L/2, 0 above L, C-infinity in between.
double radial_window(double r, double L) {
    double t = std::clamp((r - L / 2.0) / (L / 2.0), 0.0, 1.0);
    auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    double a = f(1.0 - t), b = f(t);
    return a / (a + b);
}

}  // namespace

cplx complex_binomial_rhs(const ComplexBinomialParams& p) {
    cplx W = 2.0 * std::cosh(kPi * cplx(p.alpha, p.beta));
    DoubleExponent e(-p.ell - kI * p.s, p.ell - kI * p.s);
    return complex_gamma_xn(2.0 * p.s, 2.0 * p.ell) * double_power(W, e);
}

IdentityCheck complex_binomial(const ComplexBinomialParams& p, double tol) {
    require(p.s.imag() > -0.5, "complex binomial needs Im s > -1/2");
    double twice = 2.0 * p.ell;
    require(std::abs(twice - std::round(twice)) < 1e-12, "ell must be an integer or half-integer");
    require(p.m_cutoff >= 1, "m_cutoff must be positive");
    double mu = std::abs(p.ell - std::round(p.ell)) > 0.25 ? 0.5 : 0.0;
    double L = p.m_cutoff;
    std::vector<double> ms;
    for (double m = -std::ceil(L) - mu; m <= L; m += 1.0)
        if (std::abs(m) < L) ms.push_back(m);
    std::vector<QuadratureResult> parts(ms.size());
    parallel_for(ms.size(), 1, [&](std::size_t i) {
        double m = ms[i];
        double U = std::sqrt(std::max(L * L - m * m, 0.0));
        RealFn f = [&](double u) {
            double w = radial_window(std::hypot(u, m), L);
            if (w == 0.0) return cplx(0.0);
            cplx lg = log_complex_gamma_xn(p.s + u, p.ell + m) + log_complex_gamma_xn(p.s - u, p.ell - m);
            return w * std::exp(-kTwoPi * kI * (p.alpha * u + p.beta * m) + lg);
        };
        std::vector<double> br;
        for (double x = -U + 1.0; x < U; x += 1.0) br.push_back(x);
        parts[i] = gk_adaptive(f, -U, U, tol * 1e-2 / ms.size(), 0.0, 400000, br);
    });
    QuadratureResult total;
    total.value = 0.0;
    for (auto& q : parts) total += q;
    IdentityCheck c;
    c.lhs = total.value / (4.0 * kPi);
    c.rhs = complex_binomial_rhs(p);
    c.residual = rel_residual(c.lhs, c.rhs);
    c.est_abs_err = total.est_abs_err / (4.0 * kPi);
    c.evals = total.evals;
    c.converged = total.converged;
    return c;
}

// ---------------------------------------------------------------- hyperbolic conical function

cplx conical_integrand(cplx z, const ConicalParams& p) {
    const PeriodPair& w = p.omega;
    cplx gs = w.sum() / 2.0 - p.g;
    return std::exp(kTwoPi * kI * p.lambda * z / w.product() + log_hg(z + gs, w) + log_hg(-z + gs, w) +
                    log_hg(z - p.x + gs, w) + log_hg(-z + p.x + gs, w));
}

QuadratureResult conical_psi(const ConicalParams& p, double tol) {
    double rg = p.g.real(), half = p.omega.sum().real() / 2.0;
    require(std::abs(p.x.real()) < 1e-14, "conical function needs x in iR");
    require(rg > 0.0 && rg < half, "conical function needs 0 < Re g < Re(omega1 + omega2)/2");
    require(rg > 1e-6 && half - rg > 1e-6, "integrand poles pinch the contour");
    LineSpec spec;
    spec.tol = tol * 1e-2;
    spec.tail_threshold = tol * 1e-4;
    spec.breaks = {0.0, p.x.imag()};
    QuadratureResult q = integrate_line([&](cplx z) { return conical_integrand(z, p); }, spec);
    cplx s = p.omega.sqrt_product();
    q.value /= s;
    q.est_abs_err /= std::abs(s);
    return q;
}

// ---------------------------------------------------------------- complex conical function

namespace {

void check_conical(const ComplexConicalParams& p) {
    require(std::abs(p.sigma) <= 0.5, "complex conical function needs |sigma| <= 1/2");
    require(p.u.imag() > -1.0 && p.u.imag() < 0.0, "complex conical function needs Im u in (-1, 0)");
    if (p.rho == 0.0 && p.sigma == 0.0)
        require(p.u.imag() > -0.5, "with rho = sigma = 0 the integrand needs Im u in (-1/2, 0)");
}

}  // namespace

cplx complex_conical_integrand(double alpha, double beta, const ComplexConicalParams& p) {
    DoubleExponent A = DoubleExponent::from_mu(-2 * p.m, -2.0 * p.u);
    cplx w{alpha, beta};
    cplx L = log_2sh(w) + log_2sh(w - cplx(p.rho, p.sigma));
    return std::exp(-kTwoPi * kI * (alpha * p.v + beta * p.k) + dpow_of_log(L, A));
}

QuadratureResult complex_conical_phi(const ComplexConicalParams& p, double tol) {
    check_conical(p);
    CylinderDomain dom;
    double e = 2.0 * p.u.imag();
    if (p.rho == 0.0 && p.sigma == 0.0) {
        dom.singular = {{0.0, 0.0, 2.0 * e}};
    } else {
        dom.singular = {{0.0, 0.0, e}, {p.rho, p.sigma, e}};
    }
    return integrate_cylinder([&](double a, double b) { return complex_conical_integrand(a, b, p); }, dom, tol);
}

cplx complex_conical_phi_via_2f1(const ComplexConicalParams& p, double tol) {
    check_conical(p);
    // z = 1/(1 - e^{2 pi (alpha + i beta)}) maps the cylinder onto the plane
    const double m = p.m;
    const cplx u = p.u;
    DoubleExponent A = DoubleExponent::from_mu(-2 * p.m, -2.0 * u);
    DoubleExponent a(m + kI * u, -m + kI * u);
    DoubleExponent b((static_cast<double>(p.k) + kI * p.v) / 2.0 + m + kI * u, (static_cast<double>(-p.k) + kI * p.v) / 2.0 - m + kI * u);
    DoubleExponent c(2.0 * m + 2.0 * kI * u, -2.0 * m + 2.0 * kI * u);
    cplx r{p.rho, p.sigma};
    cplx w = -expm1_c(kTwoPi * r);
    QuadratureResult q = complex_euler_plane_integral(a, b, c, w, tol);
    double sign = (p.k % 2 == 0) ? 1.0 : -1.0;
    cplx pre = std::exp(dpow_of_log(-kPi * r, A));
    return sign * pre * q.value / (4.0 * kPi * kPi);
}

// ---------------------------------------------------------------- Gauss 2F1

cplx gauss_2f1_series(cplx a, cplx b, cplx c, cplx w, double tol) {
    require(std::abs(w) < 1.0, "2F1 series needs |w| < 1");
    cplx term = 1.0, sum = 1.0;
    for (int k = 0; k < 1000000; ++k) {
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * w;
        sum += term;
        if (std::abs(term) < tol * std::abs(sum) && k > 2) break;
    }
    return sum;
}

cplx gauss_2f1_euler(cplx a, cplx b, cplx c, cplx w, double tol) {
    require(b.real() > 0.0 && (c - b).real() > 0.0, "Euler integral needs Re b > 0 and Re(c - b) > 0");
    bool at_one = std::abs(w - 1.0) < 1e-15;
    require(at_one || !(w.imag() == 0.0 && w.real() >= 1.0), "w on the cut [1, inf)");
    double pb = (c - b - 1.0).real();
    if (at_one) {
        require((c - a - b).real() > 0.0, "at w = 1 the Euler integral needs Re(c - a - b) > 0");
        pb = (c - b - a - 1.0).real();
    }
    // left half in t, right half in s = 1 - t so the endpoint factor stays accurate
    RealFn left = [&](double t) {
        return std::exp((b - 1.0) * std::log(t) + (c - b - 1.0) * std::log1p(-t)) * std::pow(1.0 - w * t, -a);
    };
    RealFn right = [&](double s) {
        cplx lw = at_one ? -a * std::log(s) : -a * std::log(1.0 - w + w * s);
        return std::exp((b - 1.0) * std::log1p(-s) + (c - b - 1.0) * std::log(s) + lw);
    };
    QuadratureResult q = integrate_endpoint_graded(left, 0.0, 0.5, (b - 1.0).real(), 0.0, tol * 0.5);
    q += integrate_endpoint_graded(right, 0.0, 0.5, pb, 0.0, tol * 0.5);
    return std::exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b)) * q.value;
}

// ---------------------------------------------------------------- complex 2F1

QuadratureResult complex_euler_plane_integral(const DoubleExponent& a, const DoubleExponent& b,
                                              const DoubleExponent& c, cplx w, double tol, PlaneMode mode) {
    DoubleExponent e0 = shifted(b, -1.0);
    DoubleExponent e1 = shifted(c - b, -1.0);
    DoubleExponent ew(-a.a, -a.a_prime);
    double p0 = e0.sum().real(), p1 = e1.sum().real(), pw = ew.sum().real();
    bool has_w = std::abs(w) > 0.0;
    bool w_at_one = has_w && std::abs(w - 1.0) < 1e-14;
    PlaneSpec spec;
    spec.mode = mode;
    spec.exponent_at_0 = p0;
    spec.exponent_at_1 = w_at_one ? p1 + pw : p1;
    spec.exponent_at_inf = p0 + p1 + (has_w ? pw : 0.0);
    if (has_w && !w_at_one) spec.extra.push_back({1.0 / w, pw});
    auto fail = [](const char* where, double p) {
        throw ParameterError(std::string("complex 2F1 integrand not integrable at ") + where +
                             " (local exponent " + std::to_string(p) + ")");
    };
    if (!(spec.exponent_at_0 > -2.0)) fail("0", spec.exponent_at_0);
    if (!(spec.exponent_at_1 > -2.0)) fail("1", spec.exponent_at_1);
    if (has_w && !w_at_one && !(pw > -2.0)) fail("1/w", pw);
    if (!(spec.exponent_at_inf < -2.0)) fail("infinity", spec.exponent_at_inf);
    PlaneFn f = [&](cplx t, cplx omt) {
        cplx v = double_power(t, e0) * double_power(omt, e1);
        if (has_w) v *= double_power(1.0 - w * t, ew);
        return v;
    };
    return integrate_plane(f, spec, tol);
}

cplx complex_2f1_euler(const DoubleExponent& a, const DoubleExponent& b, const DoubleExponent& c, cplx w, double tol,
                       PlaneMode mode) {
    QuadratureResult q = complex_euler_plane_integral(a, b, c, w, tol, mode);
    return complex_gamma(c) / (kPi * complex_gamma(b) * complex_gamma(c - b)) * q.value;
}

// ---------------------------------------------------------------- self-dual Fourier identity

IdentityCheck fourier_selfdual(cplx lambda, const PeriodPair& omega, double tol, const FourierOptions& opt) {
    require(omega.integral_valid(), "Fourier identity needs Re omega_j > 0");
    IdentityCheck c;
    GammaEvalReport rg = products_ok(omega) ? hyp_gamma(lambda, omega) : hyp_gamma_auto(lambda, omega, 1e-12);
    if (rg.pole) {
        c.rhs = rg.value;
        c.lhs = std::numeric_limits<double>::quiet_NaN();
        c.residual = std::numeric_limits<double>::infinity();
        c.converged = false;
        return c;
    }
    c.rhs = std::exp(-0.5 * kPi * kI * bernoulli_b22(lambda, omega)) * rg.value;
    double h = opt.shift >= 0.0 ? opt.shift : 0.05 * omega.sum().real();
    cplx b0 = bernoulli_b22(0.0, omega);
    LineFn f = [&](cplx z) {
        return std::exp(kTwoPi * kI * lambda * z / omega.product() + 0.5 * kPi * kI * (bernoulli_b22(z, omega) - b0) +
                        log_hg(z, omega));
    };
    // probe 8 tilts per half-ray and keep the one with the fastest decay
    auto pick = [&](double base) {
        double best_angle = base, best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int j = 0; j < 8; ++j) {
            double phi = (-3.0 + j) * kPi / 16.0;
            double th = base + (base > 0 ? -phi : phi);
            cplx e = std::polar(1.0, th);
            double near = std::abs(f(h + 4.0 * e)), far = 0.0;
            for (int s = 0; s < 5; ++s) far = std::max(far, std::abs(f(h + (10.0 + s) * e)));
            if (std::isfinite(far) && far < near && far < best) {
                best = far;
                best_angle = th;
                found = true;
            }
        }
        return std::make_pair(best_angle, found);
    };
    auto up = pick(kPi / 2.0), down = pick(-kPi / 2.0);
    LineSpec spec;
    spec.tol = tol * 1e-2;
    spec.tail_threshold = tol * 1e-4;
    QuadratureResult qu = integrate_ray(f, h, up.first, spec);
    QuadratureResult qd = integrate_ray(f, h, down.first, spec);
    c.lhs = (qu.value - qd.value) / (kI * omega.sqrt_product());
    c.residual = rel_residual(c.lhs, c.rhs);
    c.est_abs_err = (qu.est_abs_err + qd.est_abs_err) / std::abs(omega.sqrt_product());
    c.evals = qu.evals + qd.evals;
    c.converged = up.second && down.second && qu.converged && qd.converged;
    return c;
}

// ---------------------------------------------------------------- classical Euler beta

IdentityCheck euler_beta_classical(double u, double v, double tol) {
    require(std::abs(v) < u, "classical Euler integral needs |v| < u");
    LineSpec spec;
    spec.tol = tol * 1e-2;
    spec.tail_threshold = tol * 1e-4;
    QuadratureResult q = integrate_real_line(
        [&](double y) {
            double lc = kPi * std::abs(y) + std::log1p(std::exp(-2.0 * kPi * std::abs(y)));
            return cplx(std::exp(-kTwoPi * v * y - 2.0 * u * lc));
        },
        spec);
    IdentityCheck c;
    c.lhs = kTwoPi * q.value;
    c.rhs = std::exp(log_gamma(u + v) + log_gamma(u - v) - log_gamma(2.0 * u));
    c.residual = rel_residual(c.lhs, c.rhs);
    c.est_abs_err = kTwoPi * q.est_abs_err;
    c.evals = q.evals;
    c.converged = q.converged;
    return c;
}

// ---------------------------------------------------------------- eight-parameter integrand

std::array<cplx, 4> RuijsenaarsParams::c_hat() const {
    return {0.5 * (c[0] + c[1] + c[2] + c[3]), 0.5 * (c[0] + c[1] - c[2] - c[3]), 0.5 * (c[0] - c[1] + c[2] - c[3]),
            0.5 * (c[0] - c[1] - c[2] + c[3])};
}

RuijsenaarsParams RuijsenaarsParams::from_degeneration(double delta, int m1, int m2, int k, cplx u1, cplx u2,
                                                       double v, double rho, double sigma) {
    require(std::abs(sigma) <= 0.5, "sigma must satisfy |sigma| <= 1/2");
    require(std::abs((u1 + u2).imag()) < 1.0 && std::abs((u1 - u2).imag()) < 1.0,
            "needs |Im(u1 + u2)| < 1 and |Im(u1 - u2)| < 1");
    RuijsenaarsParams p;
    p.omega = PeriodPair::degeneration(delta);
    cplx s = kI * p.omega.sqrt_product();
    p.c[0] = p.c[1] = s * (static_cast<double>(m1) + u1 * delta);
    p.c[2] = s * (m2 + 0.5 + u2 * delta);
    p.c[3] = s * (m2 - 0.5 + u2 * delta);
    p.lambda = s * (static_cast<double>(k) + v * delta);
    p.K = static_cast<long>(std::floor(rho / delta + 1e-12));
    p.x = s * (static_cast<double>(p.K) + sigma);
    p.m1 = m1;
    p.m2 = m2;
    p.k = k;
    p.u1 = u1;
    p.u2 = u2;
    p.v = v;
    p.rho = rho;
    p.sigma = sigma;
    return p;
}

cplx inverse_gamma_pm2z_direct(cplx z, const PeriodPair& omega) {
    return 1.0 / (hg(2.0 * z, omega) * hg(-2.0 * z, omega));
}

cplx inverse_gamma_pm2z_sines(cplx z, const PeriodPair& omega) {
    return -4.0 * std::sin(kTwoPi * z / omega.omega1) * std::sin(kTwoPi * z / omega.omega2);
}

namespace {

cplx log_limit_integrand(double alpha, double beta, const RuijsenaarsParams& p) {
    cplx w{alpha, beta};
    cplx r{p.rho, p.sigma};
    DoubleExponent e_sh(static_cast<double>(p.m2 - p.m1 + p.k) + kI * (p.u2 - p.u1 + p.v),
                        static_cast<double>(-(p.m2 - p.m1 + p.k)) + kI * (p.u2 - p.u1 + p.v));
    DoubleExponent e_ch(static_cast<double>(p.m1 - p.m2 + p.k) + kI * (p.u1 - p.u2 + p.v),
                        static_cast<double>(-(p.m1 - p.m2 + p.k)) + kI * (p.u1 - p.u2 + p.v));
    cplx y = kI * (p.u1 + p.u2 + p.v - kI);
    double n = p.m1 + p.m2 + p.k;
    DoubleExponent e_pair(-(n + y) / 2.0, -(-n + y) / 2.0);
    return dpow_of_log(log_2sh(w), e_sh) + dpow_of_log(log_2ch(w), e_ch) +
           dpow_of_log(log_2sh(w + r) + log_2sh(w - r), e_pair);
}

}  // namespace

cplx ruijsenaars_integrand(cplx point, const RuijsenaarsParams& p, RuijsenaarsMode mode) {
    if (mode == RuijsenaarsMode::limit) return std::exp(log_limit_integrand(point.real(), point.imag(), p));
    const PeriodPair& w = p.omega;
    auto ch = p.c_hat();
    cplx q = w.sum() / 4.0;
    cplx hl = (ch[0] + p.lambda) / 2.0;
    cplx z = point;
    cplx L = 0.0;
    for (int j = 0; j < 4; ++j) L += log_hg(z + q - p.c[j] + hl, w) + log_hg(-z + q - p.c[j] + hl, w);
    L += log_hg(z - p.x + q - hl, w) + log_hg(-(z - p.x) + q - hl, w);
    L += log_hg(z + p.x + q - hl, w) + log_hg(-(z + p.x) + q - hl, w);
    // 1/gamma(+-2z) = -4 sin(2 pi z/omega1) sin(2 pi z/omega2)
    L += std::log(cplx(-4.0)) + log_sin_pi(2.0 * z / w.omega1) + log_sin_pi(2.0 * z / w.omega2);
    return std::exp(L);
}

QuadratureResult ruijsenaars_limit_cylinder(const RuijsenaarsParams& p, double tol) {
    double e0 = -2.0 * (p.u2 - p.u1).imag();
    double eh = -2.0 * (p.u1 - p.u2).imag();
    double er = -1.0 + (p.u1 + p.u2).imag();
    require(e0 > -2.0 && eh > -2.0 && er > -2.0 && er < 0.0, "limit integrand is not integrable");
    CylinderDomain dom;
    if (p.rho == 0.0 && std::abs(p.sigma) < 1e-15) {
        dom.singular = {{0.0, 0.0, e0 + 2.0 * er}, {0.0, 0.5, eh}};
    } else if (p.rho == 0.0) {
        dom.singular = {{0.0, 0.0, e0}, {0.0, 0.5, eh}, {0.0, p.sigma, er}, {0.0, -p.sigma, er}};
    } else {
        dom.singular = {{0.0, 0.0, e0}, {0.0, 0.5, eh}, {p.rho, p.sigma, er}, {-p.rho, -p.sigma, er}};
    }
    for (const auto& s : dom.singular) require(s.exponent > -2.0, "limit integrand is not integrable");
    return integrate_cylinder(
        [&](double a, double b) { return std::exp(log_limit_integrand(a, b, p)); }, dom, tol);
}

cplx ruijsenaars_limit_via_2f1(const RuijsenaarsParams& p, double tol) {
    require((p.m1 + p.m2 + p.k) % 2 == 0, "the reduction needs (m1 + m2 + k)/2 integer");
    double n = p.m1 + p.m2 + p.k;
    cplx s = p.u1 + p.u2;
    DoubleExponent a((n + kI * (s + p.v - kI)) / 2.0, (-n + kI * (s + p.v - kI)) / 2.0);
    double nb = p.m1 + p.m2 - p.k;
    DoubleExponent b((nb + kI * (s - p.v - kI)) / 2.0, (-nb + kI * (s - p.v - kI)) / 2.0);
    DoubleExponent c(static_cast<double>(p.m1) + kI * (p.u1 - kI), static_cast<double>(-p.m1) + kI * (p.u1 - kI));
    cplx sh = std::sinh(kPi * cplx(p.rho, p.sigma));
    cplx W = -sh * sh;
    QuadratureResult q = complex_euler_plane_integral(a, b, c, W, tol);
    // z = -1/sh^2 covers the plane twice; Jacobian 4 pi^2 |ch|^2 |sh|^-6
    cplx E = 2.0 * kI * p.v - 2.0 * kI * s - 2.0;
    int parity = ((p.m1 + p.m2 - p.k) % 2 + 2) % 2;
    double sign = parity == 0 ? 1.0 : -1.0;
    return q.value / (2.0 * kPi * kPi * sign * std::exp(-E * std::log(2.0)));
}

}  // namespace hyplab
