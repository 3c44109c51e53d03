#include "hyplab_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "hyplab/bounds_lab.hpp"
#include "hyplab/degeneration.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/hyperbolic_gamma.hpp"
#include "hyplab/integrals.hpp"
#include "hyplab/parallel.hpp"
#include "hyplab_cli/literals.hpp"
#include "hyplab_cli/table.hpp"

namespace hyplab::cli {

namespace {

struct Common {
    double tol = 1e-8;
    std::string format = "csv";
    std::uint64_t seed = 0;
    long max_evals = 0;
    int threads = 1;
    std::string out;
    bool timing = false;
};

struct Outcome {
    Table table;
    bool pass = true;
    long failing_row = -1;
    std::string message;

    void fail(long row, std::string why) {
        if (!pass) return;
        pass = false;
        failing_row = row;
        message = std::move(why);
    }
};

// Raw option text per leaf command; parsed after CLI11 is done.
using Values = std::map<std::string, std::string>;

struct Leaf {
    CLI::App* app = nullptr;
    Values values;
    std::function<Outcome(const Values&, const Common&)> run;
};

const std::vector<std::string> kRecordColumns{"delta",  "lhs_re",  "lhs_im", "rhs_re",    "rhs_im",
                                               "abs_err", "rel_err", "evals",  "runtime_ms"};
const std::vector<std::string> kBoundColumns{"N", "delta", "beta", "residual", "envelope", "ratio"};

// ---------------------------------------------------------------- option access

bool has(const Values& v, const std::string& key) { return v.count(key) && !v.at(key).empty(); }

const std::string& text(const Values& v, const std::string& key) {
    if (!has(v, key)) throw ParameterError("missing --" + key);
    return v.at(key);
}

double real_of(const Values& v, const std::string& key) { return parse_real(text(v, key)); }
cplx complex_of(const Values& v, const std::string& key) { return parse_complex(text(v, key)); }

int int_of(const Values& v, const std::string& key) {
    double x = real_of(v, key);
    if (x != std::round(x)) throw ParameterError("--" + key + " must be an integer");
    return static_cast<int>(x);
}

PeriodPair omega_of(const Values& v) {
    auto w = parse_complex_list(text(v, "omega"));
    if (w.size() != 2) throw ParameterError("--omega takes two periods");
    return PeriodPair(w[0], w[1]);
}

DoubleExponent exponent_of(const Values& v, const std::string& key) {
    auto e = parse_complex_list(text(v, key));
    if (e.size() != 2) throw ParameterError("--" + key + " takes a pair a,a'");
    return DoubleExponent(e[0], e[1]);
}

ComplexRegime regime_of(const Values& v) {
    ComplexRegime r;
    r.m = int_of(v, "m");
    r.k = int_of(v, "k");
    r.u = complex_of(v, "u");
    r.v = real_of(v, "v");
    r.M = int_of(v, "M");
    if (has(v, "rho")) r.rho = real_of(v, "rho");
    if (has(v, "sigma")) r.sigma = real_of(v, "sigma");
    std::vector<double> ds = parse_real_list(text(v, "deltas"));
    if (ds.empty()) throw ParameterError("--deltas is empty");
    for (double d : ds) r.with_delta(d).validate();
    return r;
}

EpsilonFn eps_of(const Values& v) {
    std::string e = has(v, "eps") ? v.at("eps") : "standard";
    if (e == "standard") return epsilon_standard;
    if (e == "zero") return epsilon_zero;
    throw ParameterError("--eps is standard or zero");
}

// ---------------------------------------------------------------- rows

void add_record(Table& t, const ConvergenceRecord& r) {
    t.add({r.delta, r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.abs_err, r.rel_err, r.evals,
           r.runtime_ms});
}

Outcome record_outcome(const std::vector<ConvergenceRecord>& recs) {
    Outcome o;
    o.table.columns = kRecordColumns;
    for (const auto& r : recs) add_record(o.table, r);
    return o;
}

ConvergenceRecord identity_record(const IdentityCheck& c, double runtime_ms) {
    ConvergenceRecord r = make_record(0.0, c.lhs, c.rhs, c.evals, runtime_ms);
    r.rel_err = c.residual;
    return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Identity checks pass when the residual is within --tol.
Outcome identity_outcome(const std::function<IdentityCheck()>& f, const Common& c) {
    auto t0 = std::chrono::steady_clock::now();
    IdentityCheck chk = f();
    Outcome o = record_outcome({identity_record(chk, c.timing ? elapsed_ms(t0) : 0.0)});
    o.table.note("converged", chk.converged);
    if (!(chk.residual <= c.tol)) o.fail(0, "residual " + format_number(chk.residual) + " exceeds tol");
    return o;
}

void check_limit(Outcome& o, const LimitReport& rep, const Values& v) {
    o.table.note("monotone", rep.monotone);
    o.table.note("fitted_rate", rep.fitted_rate);
    for (std::size_t i = 0; i < rep.records.size(); ++i)
        if (rep.records[i].skipped) o.fail(static_cast<long>(i), "skipped: " + rep.records[i].note);
    if (!rep.monotone) {
        long row = static_cast<long>(rep.records.size()) - 1;
        for (std::size_t i = 1; i < rep.records.size(); ++i)
            if (rep.records[i].rel_err > 1.1 * rep.records[i - 1].rel_err) {
                row = static_cast<long>(i);
                break;
            }
        o.fail(row, "relative error is not monotone in delta");
    }
    if (has(v, "max-rel-err") && !rep.records.empty()) {
        double cap = real_of(v, "max-rel-err");
        if (!(rep.records.back().rel_err <= cap))
            o.fail(static_cast<long>(rep.records.size()) - 1, "final relative error exceeds --max-rel-err");
    }
}

void add_bound_rows(Outcome& o, const std::vector<GridValue>& grid, const std::function<double(const GridValue&)>& env) {
    o.table.columns = kBoundColumns;
    for (const auto& g : grid) {
        double e = env(g);
        o.table.add({g.N, g.delta, g.beta, g.value, e, e > 0.0 ? g.value / e : (g.value == 0.0 ? 0.0 : INFINITY)});
    }
}

long row_of(const std::vector<GridValue>& grid, const GridValue& at) {
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i].N == at.N && grid[i].delta == at.delta && grid[i].beta == at.beta) return static_cast<long>(i);
    return -1;
}

void note_sups(Table& t, const std::vector<double>& deltas, const std::vector<double>& sups) {
    for (std::size_t i = 0; i < deltas.size(); ++i) t.note("sup_at_delta_" + format_number(deltas[i]), sups[i]);
}

Outcome envelope_outcome(const std::vector<GridValue>& grid, const Values& v) {
    EnvelopeReport rep = envelope_fit(grid, has(v, "C2") ? real_of(v, "C2") : -1.0);
    Outcome o;
    add_bound_rows(o, grid, [&](const GridValue& g) { return envelope_bound(rep.C1_fitted, rep.C2_used, g.N, g.delta); });
    o.table.note("C1", rep.C1_fitted);
    o.table.note("C2", rep.C2_used);
    o.table.note("stable", rep.stable);
    note_sups(o.table, rep.deltas, rep.sup_per_delta);
    if (!rep.stable) o.fail(row_of(grid, rep.sup_location), "envelope sup grows under delta refinement");
    return o;
}

Outcome sup_outcome(const std::vector<GridValue>& grid) {
    SupReport rep = sup_stability(grid);
    double A = 0.0;
    for (double s : rep.sups) A = std::max(A, s);
    Outcome o;
    add_bound_rows(o, grid, [&](const GridValue&) { return A; });
    o.table.note("C", A);
    o.table.note("stable", rep.stable);
    note_sups(o.table, rep.deltas, rep.sups);
    if (!rep.stable) o.fail(row_of(grid, rep.sup_location), "ratio sup grows under delta refinement");
    return o;
}

std::vector<double> list_or(const Values& v, const std::string& key, std::vector<double> fallback) {
    return has(v, key) ? parse_real_list(v.at(key)) : std::move(fallback);
}

ShiftData shift_of(const Values& v, int j) {
    std::string s = std::to_string(j);
    ShiftData y;
    y.m = int_of(v, "m" + s);
    y.u = complex_of(v, "u" + s);
    y.eps = has(v, "eps" + s) ? complex_of(v, "eps" + s) : cplx(0.0);
    return y;
}

// ---------------------------------------------------------------- commands

Outcome gamma_eval(const Values& v, const Common& c) {
    PeriodPair w = omega_of(v);
    std::vector<cplx> zs;
    if (has(v, "z")) zs = parse_complex_list(v.at("z"));
    if (has(v, "random")) {
        int n = int_of(v, "random");
        if (n < 0) throw ParameterError("--random must be non-negative");
        double im_max = has(v, "im-max") ? real_of(v, "im-max") : 1.5;
        std::mt19937_64 gen(c.seed);
        std::uniform_real_distribution<double> re(0.05, 0.95), im(-im_max, im_max);
        double strip = w.sum().real();
        for (int i = 0; i < n; ++i) {
            double x = strip * re(gen);
            zs.emplace_back(x, im(gen));
        }
    }
    if (zs.empty()) throw ParameterError("give --z or --random");
    std::string check = has(v, "check") ? v.at("check") : "none";
    if (check != "none" && check != "reflection" && check != "integral")
        throw ParameterError("--check is none, reflection or integral");

    const char* names[] = {"q_product", "contour_integral", "shifted", "asymptotic"};
    double eval_tol = std::min(1e-12, c.tol * 1e-3);
    Outcome o;
    o.table.columns = {"z_re", "z_im", "value_re", "value_im", "method", "check"};
    for (std::size_t i = 0; i < zs.size(); ++i) {
        cplx z = zs[i];
        GammaEvalReport g = hyp_gamma_auto(z, w, eval_tol);
        double residual = NAN;
        if (check == "reflection") {
            GammaEvalReport h = hyp_gamma_auto(w.sum() - z, w, eval_tol);
            residual = std::abs(g.value * h.value - 1.0);
        } else if (check == "integral") {
            GammaEvalReport h = hyp_gamma_integral(z, w, eval_tol);
            residual = std::abs(g.value - h.value) / std::abs(h.value);
        }
        o.table.add({z.real(), z.imag(), g.value.real(), g.value.imag(),
                     std::string(names[static_cast<int>(g.method)]), residual});
        if (check != "none" && !(residual <= c.tol))
            o.fail(static_cast<long>(i), check + " residual " + format_number(residual) + " exceeds tol");
    }
    return o;
}

Outcome verify_beta(const Values& v, const Common& c) {
    std::string family = has(v, "family") ? v.at("family") : "hyperbolic";
    double qtol = c.tol * 0.1;
    if (family == "hyperbolic") {
        HyperbolicBetaParams p;
        p.omega = omega_of(v);
        p.g = complex_of(v, "g");
        p.lambda = has(v, "lambda") ? complex_of(v, "lambda") : cplx(0.0);
        return identity_outcome([&] { return hyperbolic_beta(p, qtol); }, c);
    }
    if (family == "complex") {
        DoubleExponent a = exponent_of(v, "a"), b = exponent_of(v, "b");
        std::string mode = has(v, "mode") ? v.at("mode") : "cylinder";
        if (mode != "cylinder" && mode != "polar") throw ParameterError("--mode is cylinder or polar");
        PlaneMode pm = mode == "polar" ? PlaneMode::polar : PlaneMode::cylinder;
        return identity_outcome([&] { return complex_beta(a, b, qtol, pm); }, c);
    }
    if (family == "classical") {
        double u = real_of(v, "u"), vv = real_of(v, "v");
        return identity_outcome([&] { return euler_beta_classical(u, vv, qtol); }, c);
    }
    throw ParameterError("--family is hyperbolic, complex or classical");
}

Outcome verify_binomial(const Values& v, const Common& c) {
    ComplexBinomialParams p;
    p.ell = real_of(v, "ell");
    p.s = complex_of(v, "s");
    p.alpha = real_of(v, "alpha");
    p.beta = real_of(v, "beta");
    if (has(v, "cutoff")) p.m_cutoff = int_of(v, "cutoff");
    return identity_outcome([&] { return complex_binomial(p, c.tol * 0.1); }, c);
}

Outcome verify_fourier(const Values& v, const Common& c) {
    PeriodPair w = omega_of(v);
    cplx lambda = complex_of(v, "lambda");
    return identity_outcome([&] { return fourier_selfdual(lambda, w, c.tol * 0.1); }, c);
}

Outcome verify_conical_sym(const Values& v, const Common& c) {
    ComplexConicalParams p;
    p.rho = real_of(v, "rho");
    p.sigma = real_of(v, "sigma");
    p.u = complex_of(v, "u");
    p.m = int_of(v, "m");
    p.v = real_of(v, "v");
    p.k = int_of(v, "k");
    // conj Phi_{v,k}(rho, sigma; u, m) = Phi_{-v,k}(rho, -sigma; -conj u, m)
    ComplexConicalParams q = p;
    q.sigma = -p.sigma;
    q.u = -std::conj(p.u);
    q.v = -p.v;
    return identity_outcome(
        [&] {
            QuadratureResult a = complex_conical_phi(p, c.tol * 0.1);
            QuadratureResult b = complex_conical_phi(q, c.tol * 0.1);
            IdentityCheck chk;
            chk.lhs = std::conj(a.value);
            chk.rhs = b.value;
            chk.residual = std::abs(chk.lhs - chk.rhs) / std::abs(chk.rhs);
            chk.est_abs_err = a.est_abs_err + b.est_abs_err;
            chk.evals = a.evals + b.evals;
            chk.converged = a.converged && b.converged;
            return chk;
        },
        c);
}

ExperimentOptions experiment_options(const Common& c) {
    ExperimentOptions opt;
    opt.tol = c.tol;
    opt.threads = c.threads;
    opt.timing = c.timing;
    return opt;
}

Outcome limit_beta(const Values& v, const Common& c) {
    ComplexRegime r = regime_of(v);
    if (r.conical()) throw ParameterError("limit beta takes no --rho/--sigma");
    std::string target = has(v, "target") ? v.at("target") : "cylinder";
    if (target != "cylinder" && target != "closed") throw ParameterError("--target is cylinder or closed");
    LimitReport rep = beta_limit_experiment(r, parse_real_list(text(v, "deltas")), experiment_options(c),
                                            target == "closed" ? BetaTarget::closed_form : BetaTarget::cylinder);
    Outcome o = record_outcome(rep.records);
    check_limit(o, rep, v);
    return o;
}

Outcome limit_conical(const Values& v, const Common& c) {
    ComplexRegime r = regime_of(v);
    if (!r.conical()) throw ParameterError("limit conical needs --rho and --sigma");
    LimitReport rep = conical_limit_experiment(r, parse_real_list(text(v, "deltas")), experiment_options(c));
    Outcome o = record_outcome(rep.records);
    check_limit(o, rep, v);
    return o;
}

Outcome limit_gamma_point(const Values& v, const Common&) {
    LimitReport rep = gamma_point_limit(int_of(v, "m"), complex_of(v, "u"), parse_real_list(text(v, "deltas")));
    Outcome o = record_outcome(rep.records);
    check_limit(o, rep, v);
    return o;
}

Outcome limit_gamma_ratio(const Values& v, const Common&) {
    LimitReport rep = gamma_ratio_limit(real_of(v, "alpha"), real_of(v, "beta"), int_of(v, "m"), complex_of(v, "u"),
                                        parse_real_list(text(v, "deltas")));
    Outcome o = record_outcome(rep.records);
    check_limit(o, rep, v);
    return o;
}

Outcome limit_classical(const Values& v, const Common& c) {
    double z = has(v, "z") ? real_of(v, "z") : 0.4;
    ClassicalLimitReport rep = classical_limit_experiment(real_of(v, "u"), real_of(v, "v"), complex_of(v, "x"),
                                                          parse_real_list(text(v, "omega1s")), z, c.tol);
    std::string part = has(v, "part") ? v.at("part") : "conical";
    const LimitReport* pick = nullptr;
    if (part == "gamma-point") pick = &rep.gamma_point;
    if (part == "gamma-ratio") pick = &rep.gamma_ratio;
    if (part == "conical") pick = &rep.conical;
    if (!pick) throw ParameterError("--part is gamma-point, gamma-ratio or conical");
    Outcome o = record_outcome(pick->records);
    check_limit(o, *pick, v);
    return o;
}

Outcome bounds_qprod(const Values& v, const Common&) {
    int ell = has(v, "ell") ? int_of(v, "ell") : 0;
    long nd = has(v, "nd-max") ? int_of(v, "nd-max") : 8;
    auto grid = qprod_grid(int_of(v, "m"), complex_of(v, "u"), eps_of(v), list_or(v, "deltas", {0.125, 0.0625, 0.03125}),
                           list_or(v, "betas", {-0.4, 0.0, 0.4}), nd, ell);
    return envelope_outcome(grid, v);
}

Outcome bounds_gamma_ratio(const Values& v, const Common&) {
    std::string which = has(v, "which") ? v.at("which") : "F";
    const std::map<std::string, int> codes{{"F", 0}, {"F-inverse", 1}, {"f", 2}, {"f-inverse", 3}};
    auto it = codes.find(which);
    if (it == codes.end()) throw ParameterError("--which is F, F-inverse, f or f-inverse");
    int M = has(v, "M") ? int_of(v, "M") : 0;
    auto grid = gamma_ratio_grid(int_of(v, "m"), complex_of(v, "u"), eps_of(v),
                                 list_or(v, "deltas", {0.125, 0.0625, 0.03125}),
                                 list_or(v, "betas", {-1.0, -0.5, 0.0, 0.5, 1.0}), it->second, M);
    return envelope_outcome(grid, v);
}

Outcome bounds_small_n(const Values& v, const Common&) {
    ShiftData y1 = shift_of(v, 1), y2 = shift_of(v, 2);
    int N0 = has(v, "n0") ? int_of(v, "n0") : 4;
    auto grid = small_n_grid(y1, y2, list_or(v, "deltas", {0.125, 0.0625, 0.03125}),
                             list_or(v, "betas", {-1.0, -0.5, 0.0, 0.5, 1.0}), N0);
    Outcome o = sup_outcome(grid);
    o.table.note("k", static_cast<long>(small_n_shift(y1, y2)));
    return o;
}

Outcome bounds_big_n(const Values& v, const Common&) {
    double nu = has(v, "nu") ? real_of(v, "nu") : 1.0;
    long nd = has(v, "nd-max") ? int_of(v, "nd-max") : 8;
    auto grid = big_n_grid(shift_of(v, 1), shift_of(v, 2), list_or(v, "deltas", {0.125, 0.0625, 0.03125}),
                           list_or(v, "betas", {-1.0, -0.5, 0.0, 0.5, 1.0}), nu, nd);
    return sup_outcome(grid);
}

Outcome bounds_idelta(const Values& v, const Common&) {
    double fit = has(v, "fit-delta") ? real_of(v, "fit-delta") : 0.1;
    IDeltaEnvelope env = i_delta_envelope(real_of(v, "a"), fit, list_or(v, "check", {0.05, 0.025, 0.0125}));
    Outcome o;
    o.table.columns = kBoundColumns;
    for (std::size_t i = 0; i < env.deltas.size(); ++i) {
        o.table.add({0L, env.deltas[i], 0.0, env.values[i], env.bounds[i], env.values[i] / env.bounds[i]});
        if (!(env.values[i] <= env.bounds[i])) o.fail(static_cast<long>(i), "value exceeds the envelope");
    }
    o.table.note("C1", env.C1);
    o.table.note("C2", env.C2);
    o.table.note("holds", env.holds);
    return o;
}

Outcome bounds_logshift(const Values& v, const Common&) {
    int n_max = has(v, "n-max") ? int_of(v, "n-max") : 25;
    double mu = real_of(v, "mu");
    std::vector<double> betas = list_or(v, "betas", {});
    if (betas.empty())
        for (int i = 0; i <= 19; ++i) betas.push_back(-0.5 + i / 19.0);
    Outcome o;
    o.table.columns = kBoundColumns;
    long violations = 0;
    for (double d : list_or(v, "deltas", {0.5, 0.2, 0.1, 0.05}))
        for (long N = 1; N <= n_max; ++N)
            for (double b : betas) {
                LogShiftResult r = log_shift_residual(N, d, b, mu);
                o.table.add({N, d, b, r.lhs, r.bound, r.bound > 0.0 ? r.lhs / r.bound : 0.0});
                if (!r.holds) {
                    ++violations;
                    o.fail(static_cast<long>(o.table.rows.size()) - 1, "log-shift inequality violated");
                }
            }
    o.table.note("violations", violations);
    return o;
}

Outcome bounds_riemann_gap(const Values& v, const Common& c) {
    std::string kind = has(v, "kind") ? v.at("kind") : "beta";
    if (kind != "beta" && kind != "conical") throw ParameterError("--kind is beta or conical");
    ComplexRegime r = regime_of(v);
    if ((kind == "conical") != r.conical()) throw ParameterError("--rho/--sigma go with --kind conical only");
    LimitReport rep = riemann_improper_gap(kind == "beta" ? IntegrandKind::beta : IntegrandKind::conical, r,
                                           parse_real_list(text(v, "deltas")), r.M, c.tol);
    Outcome o = record_outcome(rep.records);
    check_limit(o, rep, v);
    return o;
}

Outcome lattice_poles(const Values& v, const Common&) {
    int m_max = has(v, "m-max") ? int_of(v, "m-max") : 3;
    if (m_max < 0) throw ParameterError("--m-max must be non-negative");
    Lattice lat = pole_zero_lattice(omega_of(v), m_max);
    Outcome o;
    o.table.columns = {"kind", "re", "im"};
    for (cplx p : lat.poles) o.table.add({std::string("pole"), p.real(), p.imag()});
    for (cplx z : lat.zeros) o.table.add({std::string("zero"), z.real(), z.imag()});
    return o;
}

// ---------------------------------------------------------------- wiring

Leaf& make_leaf(std::vector<std::unique_ptr<Leaf>>& leaves, CLI::App* parent, const std::string& name,
                const std::string& desc, std::function<Outcome(const Values&, const Common&)> run,
                const std::vector<std::pair<std::string, std::string>>& options) {
    leaves.push_back(std::make_unique<Leaf>());
    Leaf& leaf = *leaves.back();
    leaf.app = parent->add_subcommand(name, desc);
    leaf.app->fallthrough();
    leaf.run = std::move(run);
    for (const auto& [opt, help] : options) {
        leaf.values[opt];
        leaf.app->add_option("--" + opt, leaf.values[opt], help);
    }
    return leaf;
}

using Opts = std::vector<std::pair<std::string, std::string>>;

const Opts kRegimeOpts{{"m", "integer m"},      {"k", "integer k"},
                       {"u", "complex u, -1 < Im u < 0"}, {"v", "real v"},
                       {"M", "truncation M"},   {"deltas", "comma list of delta, fractions allowed"},
                       {"max-rel-err", "fail when the last relative error exceeds this"}};

Opts with(Opts base, const Opts& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic gamma and complex beta integral laboratory", "hyplab"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--tol", common.tol, "tolerance, default 1e-8")->check(CLI::PositiveNumber);
    app.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", common.seed, "seed for random draws");
    app.add_option("--max-evals", common.max_evals, "fail when a row uses more integrand evaluations");
    app.add_option("--threads", common.threads, "worker threads, 0 = all cores")
        ->envname("HYPLAB_THREADS")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", common.out, "write results to this file");
    app.add_flag("--timing", common.timing, "fill runtime_ms (breaks byte-identical output)");

    std::vector<std::unique_ptr<Leaf>> leaves;
    auto* gamma = app.add_subcommand("gamma", "hyperbolic gamma function")->require_subcommand(1);
    auto* verify = app.add_subcommand("verify", "check an integral identity")->require_subcommand(1);
    auto* limit = app.add_subcommand("limit", "degeneration limit experiments")->require_subcommand(1);
    auto* bounds = app.add_subcommand("bounds", "uniform error envelopes over grids")->require_subcommand(1);
    auto* lattice = app.add_subcommand("lattice", "pole and zero lattice")->require_subcommand(1);
    for (auto* g : {gamma, verify, limit, bounds, lattice}) g->fallthrough();

    make_leaf(leaves, gamma, "eval", "evaluate gamma^(2) at points", gamma_eval,
              {{"omega", "periods w1,w2"},
               {"z", "comma list of points"},
               {"random", "number of seeded points in the strip"},
               {"im-max", "|Im z| range for random points"},
               {"check", "none, reflection or integral"}});
    make_leaf(leaves, verify, "beta", "beta integral identity", verify_beta,
              {{"family", "hyperbolic, complex or classical"},
               {"omega", "periods w1,w2"},
               {"g", "complex g"},
               {"lambda", "complex lambda"},
               {"a", "exponent pair a,a'"},
               {"b", "exponent pair b,b'"},
               {"mode", "cylinder or polar"},
               {"u", "real u"},
               {"v", "real v"}});
    make_leaf(leaves, verify, "binomial", "complex binomial theorem", verify_binomial,
              {{"ell", "integer or half-integer"},
               {"s", "complex s"},
               {"alpha", "real alpha"},
               {"beta", "real beta"},
               {"cutoff", "summation radius"}});
    make_leaf(leaves, verify, "fourier", "self-dual Fourier transform", verify_fourier,
              {{"omega", "periods w1,w2"}, {"lambda", "complex lambda"}});
    make_leaf(leaves, verify, "conical-sym", "conjugation symmetry of the complex conical function",
              verify_conical_sym,
              {{"rho", "real rho"},
               {"sigma", "real sigma"},
               {"u", "complex u"},
               {"m", "integer m"},
               {"v", "real v"},
               {"k", "integer k"}});
    make_leaf(leaves, limit, "beta", "beta integral limit", limit_beta,
              with(kRegimeOpts, {{"target", "cylinder or closed"}}));
    make_leaf(leaves, limit, "conical", "conical function limit", limit_conical,
              with(kRegimeOpts, {{"rho", "real rho"}, {"sigma", "real sigma"}}));
    make_leaf(leaves, limit, "gamma-point", "gamma^(2) at the pinching point", limit_gamma_point,
              {{"m", "integer m"}, {"u", "complex u"}, {"deltas", "comma list of delta"}, {"max-rel-err", ""}});
    make_leaf(leaves, limit, "gamma-ratio", "gamma^(2) ratio limit", limit_gamma_ratio,
              {{"alpha", "real alpha"},
               {"beta", "real beta"},
               {"m", "integer m"},
               {"u", "complex u"},
               {"deltas", "comma list of delta"},
               {"max-rel-err", ""}});
    make_leaf(leaves, limit, "classical", "classical limit omega1 -> 0", limit_classical,
              {{"u", "real u"},
               {"v", "real v"},
               {"x", "point on iR"},
               {"omega1s", "comma list of omega1"},
               {"z", "real point for the gamma checks"},
               {"part", "gamma-point, gamma-ratio or conical"},
               {"max-rel-err", ""}});
    const Opts grid{{"deltas", "comma list of delta"}, {"betas", "comma list of beta"}};
    make_leaf(leaves, bounds, "qprod", "q-product ratio residual envelope", bounds_qprod,
              with(grid, {{"m", "integer m"},
                          {"u", "complex u"},
                          {"eps", "standard or zero"},
                          {"ell", "shift by ell omega1"},
                          {"nd-max", "largest N delta"},
                          {"C2", "envelope rate"}}));
    make_leaf(leaves, bounds, "gamma-ratio", "gamma ratio factor envelopes", bounds_gamma_ratio,
              with(grid, {{"m", "integer m"},
                          {"u", "complex u"},
                          {"eps", "standard or zero"},
                          {"which", "F, F-inverse, f or f-inverse"},
                          {"M", "cap |N| delta <= M (0 = 8)"},
                          {"C2", "envelope rate"}}));
    const Opts shifts{{"m1", "integer m1"}, {"u1", "complex u1"}, {"eps1", "complex eps1"},
                      {"m2", "integer m2"}, {"u2", "complex u2"}, {"eps2", "complex eps2"}};
    make_leaf(leaves, bounds, "small-n", "gamma ratio for |N| <= N0", bounds_small_n,
              with(with(grid, shifts), {{"n0", "N0"}}));
    make_leaf(leaves, bounds, "big-n", "gamma ratio for |N| >= nu / delta", bounds_big_n,
              with(with(grid, shifts), {{"nu", "nu"}, {"nd-max", "largest N delta"}}));
    make_leaf(leaves, bounds, "idelta", "I(delta, a) envelope", bounds_idelta,
              {{"a", "exponent in (0, 1)"}, {"fit-delta", "delta where constants are fixed"}, {"check", "deltas"}});
    make_leaf(leaves, bounds, "logshift", "log-shift inequality", bounds_logshift,
              with(grid, {{"mu", "shift mu >= 0"}, {"n-max", "largest N"}}));
    make_leaf(leaves, bounds, "riemann-gap", "Riemann sum against the improper integral", bounds_riemann_gap,
              with(kRegimeOpts, {{"kind", "beta or conical"}, {"rho", "real rho"}, {"sigma", "real sigma"}}));
    make_leaf(leaves, lattice, "poles", "poles and zeros of gamma^(2)", lattice_poles,
              {{"omega", "periods w1,w2"}, {"m-max", "lattice extent"}});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    Leaf* chosen = nullptr;
    for (auto& l : leaves)
        if (l->app->parsed()) chosen = l.get();
    if (!chosen) {
        err << app.help();
        return exit_usage;
    }

    std::ofstream file;
    if (!common.out.empty()) {
        file.open(common.out);
        if (!file) {
            err << "error: cannot write " << common.out << "\n";
            return exit_usage;
        }
    }
    std::ostream& sink = common.out.empty() ? out : file;
    common.threads = resolve_threads(common.threads);

    Outcome o;
    try {
        o = chosen->run(chosen->values, common);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const PinchError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    if (common.max_evals > 0 && o.table.columns == kRecordColumns) {
        for (std::size_t i = 0; i < o.table.rows.size(); ++i)
            if (std::get<long>(o.table.rows[i][7]) > common.max_evals)
                o.fail(static_cast<long>(i), "evaluation count exceeds --max-evals");
    }

    Format fmt = common.format == "json" ? Format::json : Format::csv;
    write_table(sink, o.table, fmt);
    sink.flush();
    if (fmt == Format::csv)
        for (const auto& [key, value] : o.table.summary) err << "# " << key << " = " << format_cell(value) << "\n";

    if (!o.pass) {
        err << "FAIL: " << o.message << "\n";
        if (o.failing_row >= 0 && o.failing_row < static_cast<long>(o.table.rows.size())) {
            std::string head;
            for (std::size_t j = 0; j < o.table.columns.size(); ++j) head += (j ? "," : "") + o.table.columns[j];
            err << head << "\n" << csv_row(o.table, static_cast<std::size_t>(o.failing_row)) << "\n";
        }
        return exit_tolerance;
    }
    return exit_pass;
}

}  // namespace hyplab::cli
