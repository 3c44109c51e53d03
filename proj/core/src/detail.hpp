#pragma once

#include <algorithm>
#include <cmath>

#include "hyplab/errors.hpp"
#include "hyplab/hyperbolic_gamma.hpp"

namespace hyplab::detail {

inline constexpr double kTwoPi = 2.0 * kPi;

inline bool products_ok(const PeriodPair& w) { return w.products_converge() || w.swapped().products_converge(); }

// log gamma^(2)(z) by products when they converge, otherwise through the shifted integral form.
inline cplx log_hg(cplx z, const PeriodPair& w) {
    if (products_ok(w)) return log_hyp_gamma(z, w);
    GammaEvalReport r = hyp_gamma_auto(z, w, 1e-12);
    return std::log(r.value);
}

inline cplx hg(cplx z, const PeriodPair& w) {
    if (products_ok(w)) return hyp_gamma(z, w).value;
    return hyp_gamma_auto(z, w, 1e-12).value;
}

inline double rel_residual(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

// A logarithm of 2 sh(pi w), finite for large |Re w|.
inline cplx log_2sh(cplx w) {
    if (w.real() >= 0.0) return kPi * w + log_one_minus_exp(-kTwoPi * w);
    return kI * kPi - kPi * w + log_one_minus_exp(kTwoPi * w);
}

// A logarithm of 2 ch(pi w).
inline cplx log_2ch(cplx w) {
    if (w.real() >= 0.0) return kPi * w + log1p_c(std::exp(-kTwoPi * w));
    return -kPi * w + log1p_c(std::exp(kTwoPi * w));
}

// log of [X]^e given any logarithm L of X.
inline cplx dpow_of_log(cplx L, const DoubleExponent& e) { return e.a * L + e.a_prime * std::conj(L); }

// A logarithm of sin(pi zeta), stable for large |Im zeta|.
inline cplx log_sin_pi(cplx z) {
    double x = z.real() - 2.0 * std::round(z.real() / 2.0);
    cplx zr{x, z.imag()};
    if (std::abs(z.imag()) < 1.0) return std::log(std::sin(kPi * zr));
    if (z.imag() > 0) return -kI * kPi * zr + log1p_c(-std::exp(2.0 * kPi * kI * zr)) + std::log(cplx(0.0, 0.5));
    return kI * kPi * zr + log1p_c(-std::exp(-2.0 * kPi * kI * zr)) - std::log(cplx(0.0, 2.0));
}

inline void require(bool ok, const char* msg) {
    if (!ok) throw ParameterError(msg);
}

}  // namespace hyplab::detail
