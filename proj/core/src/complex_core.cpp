#include "hyplab/complex_core.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "hyplab/errors.hpp"
#include "hyplab/hyperbolic_gamma.hpp"

namespace hyplab {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
const double kHalfLogTwoPi = 0.5 * std::log(kTwoPi);

bool is_nonpositive_integer(cplx z, double tol = 0.0) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

// Lanczos g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_right(cplx z) {
    // Re z >= 1/2
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z), any branch.
cplx log_sin_pi(cplx z) {
    double x = z.real() - 2.0 * std::round(z.real() / 2.0);
    double y = z.imag();
    cplx zr{x, y};
    if (std::abs(y) < 1.0) {
        cplx s{std::sin(kPi * x) * std::cosh(kPi * y), std::cos(kPi * x) * std::sinh(kPi * y)};
        return std::log(s);
    }
    if (y > 0) return -kI * kPi * zr + log1p_c(-std::exp(2.0 * kPi * kI * zr)) + std::log(cplx(0.0, 0.5));
    return kI * kPi * zr + log1p_c(-std::exp(-2.0 * kPi * kI * zr)) - std::log(cplx(0.0, 2.0));
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

DoubleExponent::DoubleExponent(cplx a_, cplx ap_) : a(a_), a_prime(ap_) {
    cplx d = a - a_prime;
    double r = std::round(d.real());
    if (std::abs(d.imag()) > 1e-9 || std::abs(d.real() - r) > 1e-9)
        throw ParameterError("double exponent: a - a' is not an integer");
    m = static_cast<int>(r);
}

DoubleExponent DoubleExponent::from_mu(int m_, cplx u) {
    return DoubleExponent((static_cast<double>(m_) + kI * u) / 2.0, (static_cast<double>(-m_) + kI * u) / 2.0);
}

DoubleExponent operator+(const DoubleExponent& x, const DoubleExponent& y) {
    return DoubleExponent(x.a + y.a, x.a_prime + y.a_prime);
}
DoubleExponent operator-(const DoubleExponent& x, const DoubleExponent& y) {
    return DoubleExponent(x.a - y.a, x.a_prime - y.a_prime);
}
DoubleExponent operator*(int k, const DoubleExponent& x) {
    return DoubleExponent(static_cast<double>(k) * x.a, static_cast<double>(k) * x.a_prime);
}
DoubleExponent shifted(const DoubleExponent& x, cplx s) { return DoubleExponent(x.a + s, x.a_prime + s); }

cplx double_power(cplx z, const DoubleExponent& e) {
    if (z == cplx(0.0)) {
        if (e.sum().real() > 0.0) return 0.0;
        throw ParameterError("double power: zero base with Re(a + a') <= 0");
    }
    return double_power_log(std::log(std::abs(z)), std::arg(z), e);
}

cplx double_power_log(double log_abs_z, double arg_z, const DoubleExponent& e) {
    return std::exp(e.sum() * log_abs_z + kI * (static_cast<double>(e.m) * arg_z));
}

cplx log_gamma(cplx z) {
    if (z.real() >= 0.5) return log_gamma_right(z);
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

TaggedValue euler_gamma_tagged(cplx z) {
    TaggedValue t;
    if (is_nonpositive_integer(z)) {
        int n = static_cast<int>(-z.real());
        t.pole = true;
        t.order = 1;
        t.value = (n % 2 == 0 ? 1.0 : -1.0) * std::numeric_limits<double>::infinity();
        return t;
    }
    t.value = std::exp(log_gamma(z));
    return t;
}

cplx euler_gamma(cplx z) { return euler_gamma_tagged(z).value; }

TaggedValue complex_gamma_tagged(const DoubleExponent& e) {
    TaggedValue t;
    cplx b = 1.0 - e.a_prime;
    double tol_a = 1e-13 * std::max(1.0, std::abs(e.a));
    double tol_b = 1e-13 * std::max(1.0, std::abs(b));
    bool pole = is_nonpositive_integer(e.a, tol_a);
    bool zero = is_nonpositive_integer(b, tol_b);
    if (pole && zero) {
        int n = static_cast<int>(std::round(-e.a.real()));
        int k = static_cast<int>(std::round(-b.real()));
        t.value = -(((n + k) % 2 == 0) ? 1.0 : -1.0) * factorial(k) / factorial(n);
        return t;
    }
    if (pole) {
        t.pole = true;
        t.order = 1;
        t.value = std::numeric_limits<double>::infinity();
        return t;
    }
    if (zero) {
        t.zero = true;
        t.value = 0.0;
        return t;
    }
    t.value = std::exp(log_gamma(e.a) - log_gamma(b));
    return t;
}

cplx complex_gamma(const DoubleExponent& e) { return complex_gamma_tagged(e).value; }

cplx log_complex_gamma(const DoubleExponent& e) { return log_gamma(e.a) - log_gamma(1.0 - e.a_prime); }

cplx bernoulli_b22(cplx z, cplx w1, cplx w2) {
    if (w1 * w2 == cplx(0.0)) throw ParameterError("B22: omega1 omega2 = 0");
    cplx c = z - (w1 + w2) / 2.0;
    return (c * c - (w1 * w1 + w2 * w2) / 12.0) / (w1 * w2);
}

cplx bernoulli_b22(cplx z, const PeriodPair& omega) { return bernoulli_b22(z, omega.omega1, omega.omega2); }

double q_product_tail_bound(double abs_x, double abs_q, int K) {
    double w = abs_x * std::pow(abs_q, K + 1);
    if (w >= 1.0) return std::numeric_limits<double>::infinity();
    return w / ((1.0 - abs_q) * (1.0 - w));
}

QProductResult q_pochhammer(const QProductSpec& spec) {
    double aq = std::abs(spec.q);
    if (!(aq < 1.0)) throw ParameterError("q-Pochhammer: |q| >= 1");
    if (!(spec.truncation_tol > 0.0)) throw ParameterError("q-Pochhammer: truncation_tol must be positive");
    QProductResult r;
    double ax = std::abs(spec.x);
    cplx prod = 1.0;
    cplx w = spec.x;
    for (int k = 0;; ++k) {
        cplx f = 1.0 - w;
        if (f == cplx(0.0)) {
            r.value = 0.0;
            r.exact_zero = true;
            r.zero_index = k;
            r.terms = k;
            return r;
        }
        prod *= f;
        double tail = q_product_tail_bound(ax, aq, k);
        if (tail < spec.truncation_tol || k > 10000000) {
            r.value = prod;
            r.terms = k;
            r.tail_bound = tail;
            return r;
        }
        w *= spec.q;
    }
}

cplx log_q_pochhammer_series(cplx x, cplx q, double tol) {
    double ax = std::abs(x), aq = std::abs(q);
    if (!(ax < 1.0) || !(aq < 1.0)) throw ParameterError("log q-Pochhammer series: needs |x| < 1 and |q| < 1");
    cplx sum = 0.0, xk = 1.0, qk = 1.0;
    for (int k = 1; k < 100000000; ++k) {
        xk *= x;
        qk *= q;
        cplx term = xk / (static_cast<double>(k) * (1.0 - qk));
        sum -= term;
        double rest = std::pow(ax, k + 1) / ((1.0 - aq) * (1.0 - ax) * (k + 1));
        if (rest < tol) break;
    }
    return sum;
}

cplx log1p_c(cplx w) {
    if (std::abs(w) < 0.5) {
        double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
        double im = std::atan2(w.imag(), 1.0 + w.real());
        return {re, im};
    }
    return std::log(1.0 + w);
}

cplx expm1_c(cplx w) {
    double x = w.real(), y = w.imag();
    double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

cplx log_one_minus_exp(cplx w) {
    double y = std::remainder(w.imag(), kTwoPi);
    cplx wr{w.real(), y};
    if (wr.real() < -1.0) return log1p_c(-std::exp(wr));
    if (wr.real() <= 0.0) return std::log(-expm1_c(wr));
    return wr + std::log(expm1_c(-wr));
}

TaggedValue jackson_q_gamma_tagged(cplx z, cplx q) {
    double aq = std::abs(q);
    if (!(aq < 1.0)) throw ParameterError("Jackson q-gamma: |q| >= 1");
    TaggedValue t;
    if (is_nonpositive_integer(z)) {
        t.pole = true;
        t.order = 1;
        t.value = std::numeric_limits<double>::infinity();
        return t;
    }
    cplx lq = std::log(q);
    cplx qz = std::exp(z * lq);
    // sum_k log(1 - q^{k+1}) - log(1 - q^{z+k}), termwise to avoid cancellation near q = 1
    cplx sum = 0.0, comp = 0.0;
    cplx a = q, b = qz;
    double bound_z = std::abs(qz);
    for (long k = 0; k < 100000000; ++k) {
        cplx term = log1p_c(-a) - log1p_c(-b);
        cplx y = term - comp;
        cplx s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        double rest = (std::abs(a) + std::abs(b)) / (1.0 - aq);
        if (rest < 1e-17 * std::max(1.0, std::abs(sum))) break;
        a *= q;
        b *= q;
        (void)bound_z;
    }
    t.value = std::exp(sum + (1.0 - z) * log1p_c(-q));
    return t;
}

cplx jackson_q_gamma(cplx z, cplx q) { return jackson_q_gamma_tagged(z, q).value; }

}  // namespace hyplab
