#include "hyplab/hyperbolic_gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyplab/errors.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// sum_{k>=0} log(1 - exp(xl + k ql)), Re ql < 0.
cplx log_qp_from_logs(cplx xl, cplx ql, double tol) {
    double decay = -ql.real();
    double stop = std::log(tol * (1.0 - std::exp(-decay)));
    long kmax = 16 + static_cast<long>(std::max(0.0, (xl.real() - stop) / decay));
    cplx sum = 0.0;
    for (long k = 0; k <= kmax; ++k) sum += log_one_minus_exp(xl + static_cast<double>(k) * ql);
    return sum;
}

const PeriodPair& product_order(const PeriodPair& omega, PeriodPair& storage) {
    if (omega.products_converge()) return omega;
    storage = omega.swapped();
    if (!storage.products_converge())
        throw ParameterError("q-products diverge: omega1/omega2 is real");
    return storage;
}

// log of the two q-products, without the quadratic phase.
cplx log_products(cplx z, const PeriodPair& w, double tol) {
    cplx lq = w.log_q(), lqt = w.log_q_tilde();
    cplx num = log_qp_from_logs(lqt + kTwoPi * kI * z / w.omega1, lqt, tol);
    cplx den = log_qp_from_logs(kTwoPi * kI * z / w.omega2, lq, tol);
    return num - den;
}

// Real coordinates (x1, x2) with z = x1 omega1 + x2 omega2.
bool lattice_coords(cplx z, const PeriodPair& w, double& x1, double& x2) {
    double a = w.omega1.real(), b = w.omega2.real(), c = w.omega1.imag(), d = w.omega2.imag();
    double det = a * d - b * c;
    if (std::abs(det) < 1e-300) return false;
    x1 = (z.real() * d - b * z.imag()) / det;
    x2 = (a * z.imag() - c * z.real()) / det;
    return true;
}

struct LatticeHit {
    bool found = false;
    int n1 = 0, n2 = 0;
    double dist = 0.0;
};

// Nearest point base + sgn (n1 omega1 + n2 omega2) with n1, n2 >= 0.
LatticeHit nearest(cplx z, cplx base, int sgn, const PeriodPair& w) {
    LatticeHit h;
    double x1, x2;
    if (!lattice_coords(static_cast<double>(sgn) * (z - base), w, x1, x2)) return h;
    double best = std::numeric_limits<double>::infinity();
    for (int d1 = -1; d1 <= 1; ++d1)
        for (int d2 = -1; d2 <= 1; ++d2) {
            long n1 = std::lround(x1) + d1, n2 = std::lround(x2) + d2;
            if (n1 < 0 || n2 < 0) continue;
            cplx p = base + static_cast<double>(sgn) * (static_cast<double>(n1) * w.omega1 +
                                                         static_cast<double>(n2) * w.omega2);
            double d = std::abs(z - p);
            if (d < best) {
                best = d;
                h.found = true;
                h.n1 = static_cast<int>(n1);
                h.n2 = static_cast<int>(n2);
                h.dist = d;
            }
        }
    return h;
}

double near_radius(const PeriodPair& w) {
    return 0.1 * std::min({std::abs(w.omega1), std::abs(w.omega2), std::abs(w.omega1 + w.omega2),
                           std::abs(w.omega1 - w.omega2)});
}

bool is_exact(double dist, cplx p) { return dist <= 1e-13 * std::max(1.0, std::abs(p)); }

}  // namespace

PeriodPair::PeriodPair(cplx w1, cplx w2) : omega1(w1), omega2(w2) {
    if (w1 == cplx(0.0) || w2 == cplx(0.0)) throw ParameterError("period is zero");
    if (w1.real() < 0.0 || w2.real() < 0.0) throw ParameterError("period with negative real part");
    cplx r = w1 / w2;
    if (r.imag() == 0.0 && r.real() < 0.0) throw ParameterError("periods with real negative ratio");
}

PeriodPair PeriodPair::degeneration(double delta) {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    PeriodPair p(cplx(delta, 1.0), cplx(delta, -1.0));
    p.delta = delta;
    return p;
}

cplx PeriodPair::sqrt_product() const {
    if (delta) return std::sqrt(1.0 + *delta * *delta);
    return std::sqrt(omega1 * omega2);
}

PeriodPair PeriodPair::swapped() const {
    PeriodPair p(omega2, omega1);
    p.delta = delta;
    return p;
}

cplx log_hyp_gamma(cplx z, const PeriodPair& omega, double tol) {
    PeriodPair storage;
    const PeriodPair& w = product_order(omega, storage);
    return -0.5 * kPi * kI * bernoulli_b22(z, w) + log_products(z, w, tol);
}

cplx log_hyp_gamma_ratio(cplx z1, cplx z2, const PeriodPair& omega, double tol) {
    PeriodPair storage;
    const PeriodPair& w = product_order(omega, storage);
    cplx db22 = (z1 - z2) * (z1 + z2 - w.sum()) / w.product();
    return -0.5 * kPi * kI * db22 + log_products(z1, w, tol) - log_products(z2, w, tol);
}

GammaEvalReport hyp_gamma(cplx z, const PeriodPair& omega, double tol) {
    GammaEvalReport r;
    r.method = GammaMethod::q_product;
    LatticeHit pole = nearest(z, 0.0, -1, omega);
    cplx pp = -(static_cast<double>(pole.n1) * omega.omega1 + static_cast<double>(pole.n2) * omega.omega2);
    if (pole.found && is_exact(pole.dist, pp)) {
        r.pole = true;
        r.m1 = pole.n1;
        r.m2 = pole.n2;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    LatticeHit zero = nearest(z, omega.sum(), 1, omega);
    cplx zp = omega.sum() + static_cast<double>(zero.n1) * omega.omega1 + static_cast<double>(zero.n2) * omega.omega2;
    if (zero.found && is_exact(zero.dist, zp)) {
        r.zero = true;
        r.m1 = zero.n1;
        r.m2 = zero.n2;
        r.value = 0.0;
        return r;
    }
    // Off the two cones the products have removable 0/0 points on the lattice; average over a small circle.
    double x1, x2;
    if (lattice_coords(z, omega, x1, x2)) {
        cplx lp = std::round(x1) * omega.omega1 + std::round(x2) * omega.omega2;
        if (std::abs(z - lp) <= 1e-9 * std::max(1.0, std::abs(lp))) {
            double eps = 0.01 * std::min(std::abs(omega.omega1), std::abs(omega.omega2));
            cplx acc = 0.0;
            for (int j = 0; j < 8; ++j) acc += std::exp(log_hyp_gamma(z + eps * std::polar(1.0, kPi * j / 4.0), omega, 1e-17));
            r.value = acc / 8.0;
            r.est_abs_err = 1e-13 * std::abs(r.value);
            return r;
        }
    }
    double rad = near_radius(omega);
    cplx zc = z, factor = 1.0;
    for (int s = 0; s < 8; ++s) {
        LatticeHit p = nearest(zc, 0.0, -1, omega);
        LatticeHit q = nearest(zc, omega.sum(), 1, omega);
        if (p.found && p.dist < rad) {
            // gamma(z) = gamma(z + omega1) / (2 sin(pi z / omega2)) and symmetric
            if (p.n1 <= p.n2) {
                factor /= 2.0 * std::sin(kPi * zc / omega.omega2);
                zc += omega.omega1;
            } else {
                factor /= 2.0 * std::sin(kPi * zc / omega.omega1);
                zc += omega.omega2;
            }
        } else if (q.found && q.dist < rad) {
            if (q.n1 <= q.n2) {
                zc -= omega.omega1;
                factor *= 2.0 * std::sin(kPi * zc / omega.omega2);
            } else {
                zc -= omega.omega2;
                factor *= 2.0 * std::sin(kPi * zc / omega.omega1);
            }
        } else {
            break;
        }
        ++r.shift_count;
    }
    if (r.shift_count > 0) r.method = GammaMethod::shifted;
    cplx lg = log_hyp_gamma(zc, omega, std::min(tol, 1e-14) * 1e-2);
    r.value = factor * std::exp(lg);
    r.est_abs_err = std::abs(r.value) * (1e-15 * (1.0 + std::abs(lg)) + tol * 1e-2);
    return r;
}

GammaEvalReport hyp_gamma_integral(cplx z, const PeriodPair& omega, double tol) {
    if (!omega.integral_valid()) throw ParameterError("integral form needs Re omega_j > 0");
    cplx S = omega.sum();
    if (!(z.real() > 0.0 && z.real() < S.real()))
        throw ParameterError("integral form needs 0 < Re z < Re(omega1 + omega2)");
    const cplx w1 = omega.omega1, w2 = omega.omega2;
    if (z.imag() < 0.0 && w1.imag() == 0.0 && w2.imag() == 0.0) {
        // the line sits above the real axis, so below it the integrand cancels badly; reflect instead
        GammaEvalReport r = hyp_gamma_integral(std::conj(z), omega, tol);
        r.value = std::conj(r.value);
        return r;
    }
    double h = 0.5 * std::min(kTwoPi * w1.real() / std::norm(w1), kTwoPi * w2.real() / std::norm(w2));
    auto g = [&](double x) -> cplx {
        cplx t{x, h};
        return std::exp(z * t - log_one_minus_exp(w1 * t) - log_one_minus_exp(w2 * t) - std::log(t));
    };
    LineSpec spec;
    spec.tol = tol;
    spec.tail_threshold = tol * 1e-3;
    spec.initial_radius = 8.0;
    spec.breaks = {0.0};
    QuadratureResult q = integrate_real_line(g, spec);
    GammaEvalReport r;
    r.method = GammaMethod::contour_integral;
    r.value = std::exp(-0.5 * kPi * kI * bernoulli_b22(z, omega) - q.value);
    r.evals = q.evals;
    r.est_abs_err = std::abs(r.value) * q.est_abs_err;
    return r;
}

GammaEvalReport hyp_gamma_auto(cplx z, const PeriodPair& omega, double tol) {
    PeriodPair sw = omega.swapped();
    if (omega.products_converge() || sw.products_converge()) return hyp_gamma(z, omega, std::min(tol, 1e-14));
    if (!omega.integral_valid()) throw ParameterError("periods admit neither products nor the integral form");
    double rs = omega.sum().real();
    double lo = 0.25 * rs, hi = 0.75 * rs;
    const cplx w1 = omega.omega1, w2 = omega.omega2;
    cplx zc = z, factor = 1.0;
    int shifts = 0;
    auto up = [&](cplx a, cplx b) {  // gamma(zc) = gamma(zc + a) / (2 sin(pi zc / b))
        factor /= 2.0 * std::sin(kPi * zc / b);
        zc += a;
    };
    auto down = [&](cplx a, cplx b) {
        zc -= a;
        factor *= 2.0 * std::sin(kPi * zc / b);
    };
    bool big1 = w1.real() >= w2.real();
    cplx wb = big1 ? w1 : w2, ws = big1 ? w2 : w1;
    while (zc.real() < lo || zc.real() > hi) {
        if (++shifts > 100000) throw ParameterError("too many shifts into the strip");
        if (zc.real() < lo) {
            if (zc.real() + wb.real() <= hi) up(wb, ws);
            else up(ws, wb);
        } else {
            if (zc.real() - wb.real() >= lo) down(wb, ws);
            else down(ws, wb);
        }
    }
    GammaEvalReport r;
    if (factor == cplx(0.0)) {
        r.zero = true;
        r.value = 0.0;
        r.shift_count = shifts;
        r.method = GammaMethod::shifted;
        return r;
    }
    if (!std::isfinite(std::abs(factor))) {
        r.pole = true;
        r.value = std::numeric_limits<double>::infinity();
        r.shift_count = shifts;
        r.method = GammaMethod::shifted;
        return r;
    }
    // far from the real axis the corrections to the asymptotic form are below tol
    double wmax = std::max(std::abs(w1), std::abs(w2));
    double small_div = std::abs(2.0 * std::sin(kPi * ws / wb));
    double margin = std::log(1.0 / tol) + std::log1p(1.0 / std::max(small_div, 1e-300)) + 2.0;
    if (kTwoPi * std::abs(zc.imag()) / wmax > margin) {
        r.value = factor / asymptotic_prefactor(zc, omega);
        r.est_abs_err = std::abs(r.value) * tol;
        r.shift_count = shifts;
        r.method = GammaMethod::asymptotic;
        return r;
    }
    r = hyp_gamma_integral(zc, omega, tol);
    r.value *= factor;
    r.est_abs_err *= std::abs(factor);
    r.shift_count = shifts;
    if (shifts > 0) r.method = GammaMethod::shifted;
    return r;
}

Lattice pole_zero_lattice(const PeriodPair& omega, int m_max) {
    if (m_max < 0) throw ParameterError("m_max must be non-negative");
    Lattice l;
    for (int a = 0; a <= m_max; ++a)
        for (int b = 0; b <= m_max; ++b) {
            cplx p = static_cast<double>(a) * omega.omega1 + static_cast<double>(b) * omega.omega2;
            l.poles.push_back(-p);
            l.zeros.push_back(omega.sum() + p);
        }
    return l;
}

cplx asymptotic_prefactor(cplx z, const PeriodPair& omega) {
    double a1 = std::arg(omega.omega1), a2 = std::arg(omega.omega2);
    if (a1 < a2) std::swap(a1, a2);
    double th = std::arg(z);
    auto inside = [](double t, double lo, double hi) {
        for (int k = -1; k <= 1; ++k) {
            double s = t + k * kTwoPi;
            if (s > lo && s < hi) return true;
        }
        return false;
    };
    cplx b = bernoulli_b22(z, omega);
    if (inside(th, a1, a2 + kPi)) return std::exp(0.5 * kPi * kI * b);
    if (inside(th, a1 - kPi, a2)) return std::exp(-0.5 * kPi * kI * b);
    throw ParameterError("direction lies inside a pole or zero wedge");
}

cplx ruijsenaars_G(cplx z, const PeriodPair& omega, double tol) {
    return hyp_gamma(omega.sum() / 2.0 - kI * z, omega, tol).value;
}

}  // namespace hyplab
