#pragma once

#include <complex>
#include <optional>

namespace hyplab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

// Exponent pair (a, a') of a double power [z]^a = z^a zbar^a' with a - a' integer.
struct DoubleExponent {
    cplx a;
    cplx a_prime;
    int m = 0;  // a - a', rounded

    DoubleExponent() = default;
    // Throws ParameterError unless a - a' is within 1e-9 of an integer.
    DoubleExponent(cplx a, cplx a_prime);
    // a = (m + iu)/2, a' = (-m + iu)/2.
    static DoubleExponent from_mu(int m, cplx u);

    DoubleExponent swapped() const { return DoubleExponent(a_prime, a); }
    cplx sum() const { return a + a_prime; }
};

DoubleExponent operator+(const DoubleExponent& x, const DoubleExponent& y);
DoubleExponent operator-(const DoubleExponent& x, const DoubleExponent& y);
DoubleExponent operator*(int k, const DoubleExponent& x);
// Shift both components by the same complex number.
DoubleExponent shifted(const DoubleExponent& x, cplx s);

// |z|^(a+a') exp(i (a-a') arg z), arg in (-pi, pi].
cplx double_power(cplx z, const DoubleExponent& e);
// Same, with the modulus supplied as a logarithm (for factors that overflow).
cplx double_power_log(double log_abs_z, double arg_z, const DoubleExponent& e);

// Tagged value for functions with poles: value is +-inf at a pole, exact 0 at a forced zero.
struct TaggedValue {
    cplx value;
    bool pole = false;
    bool zero = false;
    int order = 0;  // pole order when pole is set
};

// A logarithm of Gamma(z) (branch not normalized). z must not be a pole.
cplx log_gamma(cplx z);
TaggedValue euler_gamma_tagged(cplx z);
// Gamma(z); infinity at the poles.
cplx euler_gamma(cplx z);

// Gamma(a)/Gamma(1-a') for the complex field, including the finite double-pole limit.
TaggedValue complex_gamma_tagged(const DoubleExponent& e);
cplx complex_gamma(const DoubleExponent& e);
// log of complex_gamma away from poles and zeros; branch not normalized.
cplx log_complex_gamma(const DoubleExponent& e);

struct PeriodPair;
cplx bernoulli_b22(cplx z, const PeriodPair& omega);
cplx bernoulli_b22(cplx z, cplx omega1, cplx omega2);

struct QProductSpec {
    cplx x;
    cplx q;
    double truncation_tol = 1e-15;
};

struct QProductResult {
    cplx value;
    int terms = 0;             // K: factors k = 0..K were multiplied
    double tail_bound = 0.0;   // bound on the dropped log-tail
    bool exact_zero = false;
    int zero_index = -1;
};

// (x; q)_inf truncated so the dropped log-tail is below truncation_tol.
QProductResult q_pochhammer(const QProductSpec& spec);
// ln (x; q)_inf = -sum_{k>=1} x^k / (k (1 - q^k)), requires |x| < 1.
cplx log_q_pochhammer_series(cplx x, cplx q, double tol = 1e-17);
// Bound on sum_{k>K} |log(1 - x q^k)|.
double q_product_tail_bound(double abs_x, double abs_q, int K);

// Jackson q-gamma (q;q)_inf / (q^z;q)_inf (1-q)^(1-z).
TaggedValue jackson_q_gamma_tagged(cplx z, cplx q);
cplx jackson_q_gamma(cplx z, cplx q);

// log(1 + w) accurate for small |w|.
cplx log1p_c(cplx w);
// exp(w) - 1 accurate for small |w|.
cplx expm1_c(cplx w);
// log(1 - e^w), stable for large Re w and accurate when e^w is near 1.
cplx log_one_minus_exp(cplx w);

}  // namespace hyplab
