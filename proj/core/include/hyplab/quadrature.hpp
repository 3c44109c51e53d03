#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hyplab/complex_core.hpp"

namespace hyplab {

struct QuadratureResult {
    cplx value;
    double est_abs_err = 0.0;
    long evals = 0;
    bool converged = true;
    std::string note;

    QuadratureResult& operator+=(const QuadratureResult& o);
};

using RealFn = std::function<cplx(double)>;
using LineFn = std::function<cplx(cplx)>;
using CylFn = std::function<cplx(double, double)>;

// Globally adaptive Gauss-Kronrod 7/15 on [a, b] with optional interior breakpoints.
QuadratureResult gk_adaptive(const RealFn& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                             long max_evals = 200000, const std::vector<double>& breaks = {});

// Integral over [a, b] with algebraic endpoint behaviour |f| ~ (t-a)^pa, (b-t)^pb, pa, pb > -1.
QuadratureResult integrate_endpoint_graded(const RealFn& f, double a, double b, double pa, double pb,
                                           double abs_tol, long max_evals = 400000);

struct LineSpec {
    double tol = 1e-10;
    long max_evals = 2000000;
    double tail_threshold = 1e-14;
    double initial_radius = 4.0;
    // Contour is shift + i*R; a real shift moves it off the imaginary axis.
    cplx shift = 0.0;
    // Known features of the integrand along the line, given as y-coordinates.
    std::vector<double> breaks;
    // Width of the adaptive starting panels.
    double panel = 1.0;
};

// Integral of f(z) dz / i along shift + iR, i.e. the integral of f(shift + i y) dy.
QuadratureResult integrate_line(const LineFn& f, const LineSpec& spec);
// Integral of g(y) dy over R with the same tail logic.
QuadratureResult integrate_real_line(const RealFn& g, const LineSpec& spec);
// Integral of f along the ray origin + e^{i theta} r, r in [0, inf), as f(z) dz.
QuadratureResult integrate_ray(const LineFn& f, cplx origin, double theta, const LineSpec& spec);

struct SingularPoint {
    double alpha = 0.0;
    double beta = 0.0;      // location in the beta direction (mod 1)
    double exponent = 0.0;  // |f| ~ r^exponent near the point, must exceed -2
};

struct CylinderDomain {
    double alpha_min = -60.0;
    double alpha_max = 60.0;
    double beta_lo = -0.5;  // beta runs over [beta_lo, beta_lo + 1]
    std::vector<SingularPoint> singular;
    double radius = 0.1;    // half-width of the square patch around each singular point
    long max_evals = 20000000;
};

// Integral of f(alpha, beta) over the cylinder with declared power-law corners.
QuadratureResult integrate_cylinder(const CylFn& f, const CylinderDomain& dom, double tol);

// Integrand over the plane, evaluated as f(t, 1 - t) to keep 1 - t accurate near t = 1.
using PlaneFn = std::function<cplx(cplx, cplx)>;

struct PlanePoint {
    cplx t;
    double exponent;
};

enum class PlaneMode { cylinder, polar };

struct PlaneSpec {
    double exponent_at_0 = 0.0;    // |f| ~ |t|^p near 0
    double exponent_at_1 = 0.0;    // |f| ~ |1 - t|^p near 1
    double exponent_at_inf = -4.0; // |f| ~ |t|^p for large |t|
    std::vector<PlanePoint> extra;
    PlaneMode mode = PlaneMode::cylinder;
    long max_evals = 20000000;
};

// Integral of f over C with area measure d^2 t = d Re t d Im t.
QuadratureResult integrate_plane(const PlaneFn& f, const PlaneSpec& spec, double tol);

struct SumTerm {
    long N;
    cplx value;  // delta * integral over beta for this N
    double est_abs_err;
    long evals;
};

struct CylinderSumResult {
    QuadratureResult total;
    std::vector<SumTerm> terms;
};

struct CylinderSumOptions {
    std::vector<double> focus_betas{0.0};  // beta values where the integrand peaks
    std::vector<long> excluded;            // indices N left out of the sum
    int threads = 1;
    long max_evals_per_term = 400000;
};

// delta * sum_{|N| <= M/delta} integral_{-1/2}^{1/2} I(i sqrt(omega1 omega2) (N + beta)) dbeta.
CylinderSumResult cylinder_sum(const LineFn& I, double delta, cplx sqrt_w1w2, int M, double tol,
                               const CylinderSumOptions& opt = {});
// Same over an explicit index range [n_lo, n_hi].
CylinderSumResult cylinder_sum_range(const LineFn& I, double delta, cplx sqrt_w1w2, long n_lo, long n_hi,
                                     double tol, const CylinderSumOptions& opt = {});

}  // namespace hyplab
