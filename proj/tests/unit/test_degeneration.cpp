#include <doctest.h>

#include <cmath>

#include "../oracles/oracle_values.hpp"
#include "hyplab/degeneration.hpp"
#include "hyplab/errors.hpp"
#include "test_helpers.hpp"

using namespace hyplab;

namespace {
ComplexRegime base_regime() {
    ComplexRegime r;
    r.m = 1;
    r.k = 2;
    r.u = cplx(0, -0.4);
    r.v = 0.3;
    r.M = 3;
    return r;
}
}  // namespace

TEST_CASE("regime invariants") {
    ComplexRegime r = base_regime();
    CHECK_NOTHROW(r.validate());

    ComplexRegime bad = r;
    bad.u = cplx(0, -1.5);
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = r;
    bad.delta = 0.3;  // 1/delta not an integer
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = r;
    bad.rho = 0.6;
    bad.sigma = 0.7;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = r;
    bad.rho = 0.6;  // sigma missing
    CHECK_THROWS_AS(bad.validate(), ParameterError);

    ComplexRegime c = r;
    c.rho = 0.6;
    c.sigma = 0.2;
    for (double d : {0.25, 0.125, 1.0 / 16, 1.0 / 32}) {
        auto q = c.with_delta(d);
        double kd = q.K() * d;
        CHECK(kd <= 0.6 + 1e-12);
        CHECK(kd > 0.6 - d);
    }
    auto q = r.with_delta(1.0 / 64);
    CHECK(std::abs(q.epsilon() - kI * q.delta / 2.0) < 1e-5);
    CHECK(std::abs(q.g_star() - (q.omega().sum() / 2.0 - q.g())) < 1e-15);
}

TEST_CASE("beta limit closed form") {
    cplx cf = beta_closed_form(1, 2, cplx(0, -0.4), 0.3);
    CHECK(rel_diff(cf, oracle::beta_closed_1_2_m0p4i_0p3) < 1e-10);
    auto cyl = beta_cylinder_integral(1, 2, cplx(0, -0.4), 0.3, 1e-9);
    CHECK(rel_diff(cyl.value, cf) < 1e-6);
}

TEST_CASE("gamma at the pinching point") {
    CHECK_THROWS_AS(gamma_point_limit(0, cplx(0, -1), {0.125}), ParameterError);

    auto rep = gamma_point_limit(1, cplx(0, -0.4), {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64});
    REQUIRE(rep.records.size() == 4);
    CHECK(rep.monotone);
    CHECK(rel_diff(rep.records.back().rhs, oracle::gamma_point_rhs_1_m0p4i_d64) < 1e-10);
    // m = 0, u = -i/2: complex gamma reduces to Gamma(1/4)/Gamma(3/4)
    auto half = gamma_point_limit(0, cplx(0, -0.5), {1.0 / 32});
    double ratio = std::tgamma(0.25) / std::tgamma(0.75);
    double scale = std::abs(std::exp((kI * cplx(0, -0.5) - 1.0) * std::log(4 * kPi / 32)));
    CHECK(std::abs(std::abs(half.records[0].rhs) - scale * ratio) < 1e-10 * ratio * scale);
}

TEST_CASE("gamma ratio limit") {
    auto trivial = gamma_ratio_limit(0.5, 0.1, 0, 0.0, {0.125});
    CHECK(trivial.records[0].rel_err < 1e-6);

    cplx u(0.1, -0.3);
    auto a = gamma_ratio_limit(0.5, 0.1, 1, u, {1.0 / 8, 1.0 / 16, 1.0 / 32});
    CHECK(a.monotone);
    // (alpha, beta, m, u) -> (-alpha, -beta, -m, -conj u) negates and conjugates both sides
    auto b = gamma_ratio_limit(-0.5, -0.1, -1, -std::conj(u), {1.0 / 8});
    CHECK(rel_diff(b.records[0].lhs, -std::conj(a.records[0].lhs)) < 1e-10);
    CHECK(rel_diff(b.records[0].rhs, -std::conj(a.records[0].rhs)) < 1e-10);
}

TEST_CASE("conical index bookkeeping") {
    double d = 1.0 / 8, rho = 0.6;
    auto ex = conical_excluded_indices(d, rho);
    REQUIRE(ex.size() == 3);
    CHECK(ex[0] == 0);
    CHECK(ex[1] == 4);
    CHECK(ex[2] == 5);
    auto ranges = conical_index_ranges(d, rho, 3);
    REQUIRE(ranges.size() == 3);
    long count = 0;
    for (auto& rg : ranges) count += rg.hi - rg.lo + 1;
    CHECK(count == 2 * 24 + 1 - 3);
    CHECK(ranges[0].lo == -24);
    CHECK(ranges[0].hi == -1);
    CHECK(ranges[1].lo == 1);
    CHECK(ranges[1].hi == 3);
    CHECK(ranges[2].lo == 6);
    CHECK(ranges[2].hi == 24);
    CHECK_THROWS_AS(conical_index_ranges(d, rho, 2), ParameterError);
}

TEST_CASE("cylinder sum at delta 1/2 equals the line integral") {
    ComplexRegime r = base_regime().with_delta(0.5);
    auto sum = beta_sum(r, 1e-10);
    // a sum over every N without truncation rewrites the line integral exactly
    r.M = 40;
    auto wide = beta_sum(r, 1e-10);
    LineSpec spec;
    spec.tol = 1e-11;
    auto line = integrate_line([&](cplx z) { return beta_integrand(z, r); }, spec);
    double s = r.sqrt_w1w2();
    CHECK(rel_diff(wide.total.value / r.delta, line.value / s) < 1e-6);
    CHECK(std::abs(sum.total.value - wide.total.value) < 1e-2 * std::abs(wide.total.value));
}

TEST_CASE("excluded N = 0 term") {
    auto rep = excluded_term_decay(base_regime(), 0, {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128});
    REQUIRE(rep.records.size() == 4);
    CHECK(rep.decays);
    CHECK(std::isnan(rep.records[0].j_value.real()));
    CHECK(std::abs(rep.records.back().value) < std::abs(rep.records.front().value));
    CHECK_THROWS_AS(excluded_term_decay(base_regime(), 9, {0.125}), ParameterError);
}

TEST_CASE("classical conical target") {
    cplx t = classical_conical_target(0.3, 0.2, cplx(0, 0.4));
    CHECK(rel_diff(t, oracle::classical_conical_rhs) < 1e-9);
    CHECK_THROWS_AS(classical_conical_target(0.3, 0.2, cplx(0.1, 0.4)), ParameterError);

    auto rep = classical_limit_experiment(0.3, 0.2, cplx(0, 0.4), {0.2, 0.1, 0.05});
    CHECK(rep.gamma_point.monotone);
    CHECK(rep.gamma_ratio.monotone);
    CHECK(rep.conical.monotone);
    CHECK(rep.gamma_point.records.back().rel_err < 0.05);
    CHECK_THROWS_AS(classical_limit_experiment(0.3, 0.7, cplx(0, 0.4), {0.1}), ParameterError);
}

TEST_CASE("conical Riemann gap") {
    ComplexRegime r = base_regime();
    r.rho = 0.6;
    r.sigma = 0.2;
    auto rep = riemann_improper_gap(IntegrandKind::conical, r, {1.0 / 8, 1.0 / 16, 1.0 / 32}, 3);
    CHECK(rep.monotone);
    CHECK(rep.records.back().rel_err < rep.records.front().rel_err);
}

TEST_CASE("beta sum tails") {
    auto tr = beta_sum_tails(base_regime().with_delta(0.25), {1, 2}, 6, 1e-10);
    REQUIRE(tr.tails.size() == 2);
    CHECK(tr.tails[1] < tr.tails[0]);
    CHECK(tr.holds);
}
