#pragma once

#include <functional>
#include <vector>

#include "hyplab/complex_core.hpp"

namespace hyplab {

using EpsilonFn = std::function<cplx(double)>;
cplx epsilon_standard(double delta);
inline cplx epsilon_zero(double) { return 0.0; }

// z = i sqrt(w1 w2)(N + beta), y = i sqrt(w1 w2)(m + u delta + eps delta^2) in the degeneration regime.
struct OzyPoint {
    cplx z;
    cplx y;
};
OzyPoint ozy(long N, double delta, double beta, int m, cplx u, cplx eps);

// Residual of the q-product ratio against ((m + iu)/2) ln(1 - e^{-2 pi (N delta + i beta)}).
// ell > 0 shifts both products by ell * omega1.
double qprod_ratio_residual(long N, double delta, double beta, int m, cplx u, const EpsilonFn& eps, int ell = 0);

struct LogShiftResult {
    double lhs = 0.0;
    double bound = 0.0;
    bool holds = false;
};
LogShiftResult log_shift_residual(long N, double delta, double beta, double mu);

// Normalized gamma ratio f and its phase-corrected version F.
cplx gamma_ratio_f(long N, double beta, int m, cplx u, cplx eps, double delta);
cplx gamma_ratio_F(long N, double beta, int m, cplx u, cplx eps, double delta);

struct GridValue {
    long N = 0;
    double delta = 0.0;
    double beta = 0.0;
    double value = 0.0;
};

struct EnvelopeReport {
    double C2_used = 0.0;
    double C1_fitted = 0.0;
    GridValue sup_location;
    bool stable = false;
    std::vector<double> deltas;         // descending
    std::vector<double> sup_per_delta;  // sup of value (1 - e^{-C2 |N| delta}) / delta
};

// C2 <= 0 selects the default pi / sqrt(1 + delta_max).
EnvelopeReport envelope_fit(const std::vector<GridValue>& grid, double C2 = -1.0);
double envelope_bound(double C1, double C2, long N, double delta);

struct ShiftData {
    int m = 0;
    cplx u;
    cplx eps;
};

struct SmallNResult {
    double lhs = 0.0;
    double bound_shape = 0.0;
    int k = 0;
};
SmallNResult small_n_envelope(long N, double delta, double beta, const ShiftData& y1, const ShiftData& y2, int N0);
int small_n_shift(const ShiftData& y1, const ShiftData& y2);

// |gamma(z+y1)/gamma(z+y2)| divided by exp(pi |N| Im(eps2 - eps1) delta^2) |2 sh pi(N delta + i beta)|^{Im(u2-u1)}.
double big_n_ratio(long N, double delta, double beta, const ShiftData& y1, const ShiftData& y2);

// Ratio sup stability across deltas (values already normalized by the expected shape).
struct SupReport {
    std::vector<double> deltas;
    std::vector<double> sups;
    GridValue sup_location;
    bool stable = false;
};
SupReport sup_stability(const std::vector<GridValue>& grid);

// delta * integral_{-1/2}^{1/2} (delta^2 + beta^2)^{-a} dbeta.
double i_delta(double delta, double a);
double i_delta_substitution(double delta, double a);

struct IDeltaEnvelope {
    double a = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    std::vector<double> deltas;
    std::vector<double> values;
    std::vector<double> bounds;
    bool holds = false;
};
// Constants from the integral split at x = 1/2, valid for every delta <= fit_delta.
IDeltaEnvelope i_delta_envelope(double a, double fit_delta = 0.1,
                                const std::vector<double>& check = {0.05, 0.025, 0.0125});

// Rows of a bounds sweep in the CLI schema.
struct BoundRow {
    long N = 0;
    double delta = 0.0;
    double beta = 0.0;
    double residual = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
};

// Grids used by the acceptance suite and the CLI.
std::vector<GridValue> qprod_grid(int m, cplx u, const EpsilonFn& eps, const std::vector<double>& deltas,
                                  const std::vector<double>& betas, long n_max_times_delta = 8, int ell = 0);
// |F - 1|, |1/F - 1|, |f - 1|, |1/f - 1| selected by `which` (0..3).
std::vector<GridValue> gamma_ratio_grid(int m, cplx u, const EpsilonFn& eps, const std::vector<double>& deltas,
                                        const std::vector<double>& betas, int which, int M = 0);
// lhs / bound_shape over |N| <= N0.
std::vector<GridValue> small_n_grid(const ShiftData& y1, const ShiftData& y2, const std::vector<double>& deltas,
                                    const std::vector<double>& betas, int N0);
// big_n_ratio over floor(nu / delta) <= |N| <= n_max_times_delta / delta.
std::vector<GridValue> big_n_grid(const ShiftData& y1, const ShiftData& y2, const std::vector<double>& deltas,
                                  const std::vector<double>& betas, double nu = 1.0, long n_max_times_delta = 8);

}  // namespace hyplab
