#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyplab/hyperbolic_gamma.hpp"
#include "hyplab/integrals.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

// omega1 = i + delta, omega2 = -i + delta with g, lambda (and x) scaled around the pinching points.
struct ComplexRegime {
    double delta = 0.25;
    int m = 1;
    cplx u{0.0, -0.4};
    int k = 2;
    double v = 0.3;
    std::optional<double> rho;
    std::optional<double> sigma;
    int M = 3;

    // Throws ParameterError on a violated invariant.
    void validate() const;
    ComplexRegime with_delta(double d) const;
    bool conical() const { return rho.has_value(); }

    PeriodPair omega() const { return PeriodPair::degeneration(delta); }
    double sqrt_w1w2() const;
    cplx g() const;
    cplx lambda() const;
    cplx g_star() const;  // (omega1 + omega2)/2 - g
    long K() const;       // floor(rho/delta)
    cplx x() const;
    cplx epsilon() const; // (i/delta)(1 - 1/sqrt(1 + delta^2))
};

// (i/delta)(1 - 1/sqrt(1 + delta^2)).
cplx epsilon_of_delta(double delta);

struct ConvergenceRecord {
    double delta = 0.0;
    cplx lhs;
    cplx rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    long evals = 0;
    double runtime_ms = 0.0;
    bool skipped = false;
    std::string note;
};

ConvergenceRecord make_record(double delta, cplx lhs, cplx rhs, long evals = 0, double runtime_ms = 0.0);

struct LimitReport {
    std::vector<ConvergenceRecord> records;  // delta descending
    double fitted_rate = 0.0;                // slope of log rel_err against log delta
    bool monotone = false;                   // non-increasing errors, 10% slack
};

// Sorts by delta descending and fills fitted_rate and monotone.
LimitReport finalize_report(std::vector<ConvergenceRecord> records);
bool monotone_with_slack(const std::vector<double>& values, double slack = 0.1);

struct ExperimentOptions {
    double tol = 1e-8;
    int threads = 1;
    bool timing = false;  // fill runtime_ms; off keeps output reproducible
};

// Hyperbolic-side integrands in the degeneration regime.
cplx beta_integrand(cplx z, const ComplexRegime& r);
cplx conical_integrand_regime(cplx z, const ComplexRegime& r);
// Limit integrands on the cylinder.
cplx beta_limit_integrand(double alpha, double beta, int m, cplx u, int k, double v);
cplx conical_limit_integrand(double alpha, double beta, int m, cplx u, int k, double v, double rho, double sigma);

cplx beta_closed_form(int m, int k, cplx u, double v);
QuadratureResult beta_cylinder_integral(int m, int k, cplx u, double v, double tol);
QuadratureResult beta_cylinder_integral_window(int m, int k, cplx u, double v, double alpha_min, double alpha_max,
                                               double tol);

LimitReport gamma_point_limit(int m, cplx u, const std::vector<double>& deltas);
LimitReport gamma_ratio_limit(double alpha, double beta, int m, cplx u, const std::vector<double>& deltas);

enum class BetaTarget { cylinder, closed_form };
LimitReport beta_limit_experiment(const ComplexRegime& tmpl, const std::vector<double>& deltas,
                                  const ExperimentOptions& opt, BetaTarget target = BetaTarget::cylinder);
LimitReport conical_limit_experiment(const ComplexRegime& tmpl, const std::vector<double>& deltas,
                                     const ExperimentOptions& opt);

// The hyperbolic-side sums for one regime.
CylinderSumResult beta_sum(const ComplexRegime& r, double tol, int threads = 1);
CylinderSumResult conical_sum(const ComplexRegime& r, double tol, int threads = 1);

// Indices left out of the conical Riemann-type sums: 0, K, K + 1.
std::vector<long> conical_excluded_indices(double delta, double rho);
struct IndexRange {
    long lo;
    long hi;
};
// [-M/delta, -1], [1, K - 1], [K + 2, M/delta].
std::vector<IndexRange> conical_index_ranges(double delta, double rho, int M);

struct ClassicalLimitReport {
    LimitReport gamma_point;
    LimitReport gamma_ratio;
    LimitReport conical;
};
// omega2 = 1; z is the point for the gamma-point and gamma-ratio sub-experiments.
ClassicalLimitReport classical_limit_experiment(double u, double v, cplx x, const std::vector<double>& omega1_list,
                                                double z = 0.4, double tol = 1e-9);
cplx classical_conical_target(double u, double v, cplx x, double tol = 1e-12);

struct DecayRecord {
    double delta = 0.0;
    cplx value;     // delta * integral of the hyperbolic integrand over the cell
    cplx j_value;   // delta * integral of the limit integrand over the cell (NaN when singular)
    double envelope = 0.0;
};

struct DecayReport {
    long N = 0;
    std::vector<DecayRecord> records;  // delta descending
    double C1 = 0.0;
    double C2 = 0.0;
    bool decays = false;           // |value| non-increasing, 10% slack
    bool within_envelope = false;  // |value| <= 1.1 envelope at every delta
};

enum class IntegrandKind { beta, conical };

// Single excluded cell N; the envelope C1 delta^{2(1+Im u)} + C2 delta ln(1/delta) is fitted on the two
// coarsest deltas. For the conical kind N is measured from K (N = K + offset when offset_from_K is set).
DecayReport excluded_term_decay(const ComplexRegime& tmpl, long N, const std::vector<double>& deltas,
                                IntegrandKind kind = IntegrandKind::beta, bool offset_from_K = false,
                                double tol = 1e-9);

// |delta * sum G(N delta) - integral_{-M}^{M} G| over the index sets used by the bounds.
LimitReport riemann_improper_gap(IntegrandKind kind, const ComplexRegime& tmpl, const std::vector<double>& deltas,
                                 int M, double tol = 1e-9);
// G(alpha) = integral of the limit integrand over beta.
cplx beta_cell_function(double alpha, const ComplexRegime& r, double tol);
cplx conical_cell_function(double alpha, const ComplexRegime& r, double tol);

struct TailReport {
    std::vector<int> Ms;
    std::vector<double> tails;  // |sum(M_ref) - sum(M)|
    std::vector<double> bounds; // C exp(-2 pi M |Im u|)
    double C = 0.0;
    bool holds = false;
};
// Tails of the beta sum at fixed delta, C fitted at the first M.
TailReport beta_sum_tails(const ComplexRegime& r, const std::vector<int>& Ms, int M_ref, double tol, int threads = 1);

}  // namespace hyplab
