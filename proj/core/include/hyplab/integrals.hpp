#pragma once

#include <array>

#include "hyplab/hyperbolic_gamma.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

struct IdentityCheck {
    cplx lhs;
    cplx rhs;
    double residual = 0.0;  // |lhs - rhs| / |rhs|
    double est_abs_err = 0.0;
    long evals = 0;
    bool converged = true;
};

struct HyperbolicBetaParams {
    cplx lambda;
    cplx g;
    PeriodPair omega;
};

struct ConicalParams {
    cplx x;
    cplx lambda;
    cplx g;
    PeriodPair omega;
};

struct ComplexConicalParams {
    double rho = 0.0;
    double sigma = 0.0;
    cplx u;
    int m = 0;
    double v = 0.0;
    int k = 0;
};

struct ComplexBinomialParams {
    double ell = 0.0;  // integer or half-integer
    cplx s;
    double alpha = 0.0;
    double beta = 0.0;
    int m_cutoff = 64;  // smooth summation radius in the (u, m) plane
};

// Integrand exp(2 pi i lambda z/(w1 w2)) gamma(+-z + (w1+w2)/2 - g).
cplx hyperbolic_beta_integrand(cplx z, const HyperbolicBetaParams& p);
IdentityCheck hyperbolic_beta(const HyperbolicBetaParams& p, double tol);

// Complex beta integral (1/pi) int [t]^{a-1} [1-t]^{b-1} d^2t against its gamma closed form.
IdentityCheck complex_beta(const DoubleExponent& a, const DoubleExponent& b, double tol,
                           PlaneMode mode = PlaneMode::cylinder);
cplx complex_beta_closed_form(const DoubleExponent& a, const DoubleExponent& b);

// Gamma((n + i x)/2 | (-n + i x)/2).
cplx complex_gamma_xn(cplx x, double n);
IdentityCheck complex_binomial(const ComplexBinomialParams& p, double tol);
cplx complex_binomial_rhs(const ComplexBinomialParams& p);

cplx conical_integrand(cplx z, const ConicalParams& p);
QuadratureResult conical_psi(const ConicalParams& p, double tol);

// Integrand of the complex-rational conical function on the cylinder.
cplx complex_conical_integrand(double alpha, double beta, const ComplexConicalParams& p);
QuadratureResult complex_conical_phi(const ComplexConicalParams& p, double tol);
// The same value through the complex-field 2F1 after the exponential change of variables.
cplx complex_conical_phi_via_2f1(const ComplexConicalParams& p, double tol);

// Classical Euler integral for 2F1(a, b; c; w).
cplx gauss_2f1_euler(cplx a, cplx b, cplx c, cplx w, double tol);
cplx gauss_2f1_series(cplx a, cplx b, cplx c, cplx w, double tol = 1e-16);

// Complex-field 2F1 through its plane integral.
cplx complex_2f1_euler(const DoubleExponent& a, const DoubleExponent& b, const DoubleExponent& c, cplx w,
                       double tol, PlaneMode mode = PlaneMode::cylinder);
// The plane integral int [t]^{b-1}[1-t]^{c-b-1}[1-wt]^{-a} d^2t without normalization.
QuadratureResult complex_euler_plane_integral(const DoubleExponent& a, const DoubleExponent& b,
                                              const DoubleExponent& c, cplx w, double tol,
                                              PlaneMode mode = PlaneMode::cylinder);

// Self-dual Fourier identity of gamma^(2).
struct FourierOptions {
    double shift = -1.0;  // real shift of the contour; negative means 0.05 Re(w1 + w2)
};
IdentityCheck fourier_selfdual(cplx lambda, const PeriodPair& omega, double tol, const FourierOptions& opt = {});

// Euler-type classical integral 2 pi int exp(-2 pi v y)(2 cosh pi y)^{-2u} dy.
IdentityCheck euler_beta_classical(double u, double v, double tol);

// Parameters of the eight-parameter hyperbolic hypergeometric integrand.
struct RuijsenaarsParams {
    std::array<cplx, 4> c{};
    cplx x;
    cplx lambda;
    PeriodPair omega;
    // degeneration data
    int m1 = 0, m2 = 0, k = 0;
    cplx u1, u2;
    double v = 0.0, rho = 0.0, sigma = 0.0;
    long K = 0;

    std::array<cplx, 4> c_hat() const;
    // Build c, lambda, x from the degeneration data at the given delta.
    static RuijsenaarsParams from_degeneration(double delta, int m1, int m2, int k, cplx u1, cplx u2, double v,
                                               double rho, double sigma);
};

enum class RuijsenaarsMode { hyperbolic, limit };
// Hyperbolic mode takes the point z; limit mode takes (alpha, beta) packed as alpha + i beta.
cplx ruijsenaars_integrand(cplx point, const RuijsenaarsParams& p, RuijsenaarsMode mode);
// 1/gamma(2z) gamma(-2z) both ways: from gamma values and from the sine product.
cplx inverse_gamma_pm2z_direct(cplx z, const PeriodPair& omega);
cplx inverse_gamma_pm2z_sines(cplx z, const PeriodPair& omega);
// Cylinder integral of the limit integrand J_h and its image as a complex-field 2F1.
QuadratureResult ruijsenaars_limit_cylinder(const RuijsenaarsParams& p, double tol);
cplx ruijsenaars_limit_via_2f1(const RuijsenaarsParams& p, double tol);

}  // namespace hyplab
