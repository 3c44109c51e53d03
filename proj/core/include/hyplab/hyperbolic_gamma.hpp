#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hyplab/complex_core.hpp"

namespace hyplab {

// Quasi-periods of the hyperbolic gamma function.
struct PeriodPair {
    cplx omega1;
    cplx omega2;
    std::optional<double> delta;  // set for omega1 = i + delta, omega2 = -i + delta

    PeriodPair() = default;
    // Throws ParameterError when Re omega_j < 0 or omega_j = 0 or the ratio is real negative.
    PeriodPair(cplx w1, cplx w2);
    static PeriodPair degeneration(double delta);

    cplx sum() const { return omega1 + omega2; }
    cplx product() const { return omega1 * omega2; }
    // sqrt(omega1 omega2), exactly sqrt(1 + delta^2) in the degeneration regime.
    cplx sqrt_product() const;
    cplx log_q() const { return 2.0 * kPi * kI * omega1 / omega2; }
    cplx log_q_tilde() const { return -2.0 * kPi * kI * omega2 / omega1; }
    cplx q() const { return std::exp(log_q()); }
    cplx q_tilde() const { return std::exp(log_q_tilde()); }
    bool products_converge() const { return (omega1 / omega2).imag() > 0.0; }
    bool integral_valid() const { return omega1.real() > 0.0 && omega2.real() > 0.0; }
    PeriodPair swapped() const;
};

enum class GammaMethod { q_product, contour_integral, shifted, asymptotic };

struct GammaEvalReport {
    cplx value;
    GammaMethod method = GammaMethod::q_product;
    int shift_count = 0;
    double est_abs_err = 0.0;
    long evals = 0;
    bool pole = false;
    bool zero = false;
    int m1 = 0;  // lattice indices of the exact pole or zero
    int m2 = 0;
};

// log gamma^(2)(z) from the q-products, no shifting. Needs products_converge on omega or its swap.
cplx log_hyp_gamma(cplx z, const PeriodPair& omega, double tol = 1e-16);
// log(gamma(z1)/gamma(z2)) with the quadratic phases combined analytically.
cplx log_hyp_gamma_ratio(cplx z1, cplx z2, const PeriodPair& omega, double tol = 1e-16);

// Product representation with near-lattice shifting by the difference equations.
GammaEvalReport hyp_gamma(cplx z, const PeriodPair& omega, double tol = 1e-14);
// Contour-integral representation, valid for 0 < Re z < Re(omega1 + omega2).
GammaEvalReport hyp_gamma_integral(cplx z, const PeriodPair& omega, double tol = 1e-12);
// Products when they converge, otherwise shift into the strip and use the integral.
GammaEvalReport hyp_gamma_auto(cplx z, const PeriodPair& omega, double tol = 1e-12);

struct Lattice {
    std::vector<cplx> poles;
    std::vector<cplx> zeros;
};
Lattice pole_zero_lattice(const PeriodPair& omega, int m_max);

// exp(+-(pi i/2) B22(z)) depending on the sector of arg z; throws ParameterError inside a wedge.
cplx asymptotic_prefactor(cplx z, const PeriodPair& omega);

// Ruijsenaars convention G(z) = gamma^(2)((omega1 + omega2)/2 - i z).
cplx ruijsenaars_G(cplx z, const PeriodPair& omega, double tol = 1e-14);

}  // namespace hyplab
