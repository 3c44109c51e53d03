#include <doctest.h>

#include <cmath>
#include <limits>

#include "../oracles/oracle_values.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/quadrature.hpp"
#include "test_helpers.hpp"

using namespace hyplab;

TEST_CASE("gauss-kronrod basics") {
    auto r = gk_adaptive([](double x) { return cplx(std::exp(x)); }, 0, 1, 1e-14);
    CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-14);
    CHECK(r.converged);
    auto o = gk_adaptive([](double x) { return cplx(std::cos(20 * x), 0); }, 0, 10, 1e-12);
    CHECK(std::abs(o.value - std::sin(200.0) / 20.0) < 1e-11);
    auto rev = gk_adaptive([](double x) { return cplx(x); }, 1, 0, 1e-14);
    CHECK(std::abs(rev.value + 0.5) < 1e-15);
    auto kink = gk_adaptive([](double x) { return cplx(std::abs(x - 0.3)); }, 0, 1, 1e-14, 0, 2000, {0.3});
    CHECK(std::abs(kink.value - (0.045 + 0.245)) < 1e-14);
    CHECK(kink.evals == 30);
    auto capped = gk_adaptive([](double x) { return cplx(std::sin(1 / x)); }, 1e-6, 1, 1e-15, 0, 200);
    CHECK_FALSE(capped.converged);
}

TEST_CASE("endpoint grading") {
    auto r = integrate_endpoint_graded([](double x) { return cplx(std::pow(x, -0.7)); }, 0, 1, -0.7, 0, 1e-12);
    CHECK(std::abs(r.value - 1.0 / 0.3) < 1e-10);
    auto a = integrate_endpoint_graded([](double x) { return cplx(1.0 / std::sqrt(x * (1 - x))); }, 0, 1, -0.5, -0.5,
                                       1e-13);
    // points closer than one ulp to b = 1 are not representable, costing about sqrt(eps)
    CHECK(std::abs(a.value - kPi) < 1e-7);
    CHECK_THROWS_AS(integrate_endpoint_graded([](double) { return cplx(1); }, 0, 1, -1.0, 0, 1e-8), ParameterError);
}

TEST_CASE("real line and contours") {
    LineSpec spec;
    spec.tol = 1e-13;
    auto g = integrate_real_line([](double y) { return cplx(std::exp(-y * y)); }, spec);
    CHECK(std::abs(g.value - std::sqrt(kPi)) < 1e-12);
    auto s = integrate_real_line([](double y) { return cplx(1.0 / std::cosh(y)); }, spec);
    CHECK(std::abs(s.value - kPi) < 1e-11);
    auto flat = integrate_real_line([](double) { return cplx(1.0); }, spec);
    CHECK_FALSE(flat.converged);

    spec.shift = 0.7;
    auto shifted = integrate_line([](cplx z) { return std::exp(z * z); }, spec);
    CHECK(std::abs(shifted.value - std::sqrt(kPi)) < 1e-11);

    LineSpec rs;
    rs.tol = 1e-13;
    auto ray = integrate_ray([](cplx z) { return std::exp(-z); }, 0.0, 0.3, rs);
    CHECK(std::abs(ray.value - 1.0) < 1e-12);
}

TEST_CASE("cylinder integration") {
    CylinderDomain dom;
    auto smooth = integrate_cylinder(
        [](double a, double b) { return cplx(std::exp(-a * a) * (1 + std::cos(2 * kPi * b))); }, dom, 1e-11);
    CHECK(std::abs(smooth.value - std::sqrt(kPi)) < 1e-10);
    CHECK_THROWS_AS(integrate_cylinder([](double, double) { return cplx(1); },
                                       CylinderDomain{-1, 1, -0.5, {{0, 0, -2.0}}}, 1e-8),
                    ParameterError);
}

TEST_CASE("plane integration against the complex beta value") {
    // int |t|^{-4/3} |1-t|^{-4/3} d^2 t = pi Gamma(1/3)^3 / Gamma(2/3)^3
    PlaneFn f = [](cplx t, cplx omt) { return cplx(std::pow(std::abs(t), -4.0 / 3) * std::pow(std::abs(omt), -4.0 / 3)); };
    PlaneSpec spec;
    spec.exponent_at_0 = -4.0 / 3;
    spec.exponent_at_1 = -4.0 / 3;
    spec.exponent_at_inf = -8.0 / 3;
    cplx expect = kPi * oracle::cbeta_third;
    auto cyl = integrate_plane(f, spec, 1e-9);
    CHECK(rel_diff(cyl.value, expect) < 1e-7);
    spec.mode = PlaneMode::polar;
    auto pol = integrate_plane(f, spec, 1e-9);
    CHECK(rel_diff(pol.value, expect) < 1e-7);
    spec.exponent_at_inf = -2.0;
    CHECK_THROWS_AS(integrate_plane(f, spec, 1e-8), ParameterError);
}

TEST_CASE("plane integration with an extra singular point") {
    // translating the beta integrand: |t-t0|^{-4/3} |t-t0-1|^{-4/3}, declared at t0 and t0 + 1
    cplx t0{0.3, -0.8};
    PlaneFn shifted = [t0](cplx t, cplx) {
        return cplx(std::pow(std::abs(t - t0), -2.0 / 3) * std::pow(std::abs(t - t0 - 1.0), -2.0 / 3) *
                    std::pow(std::abs(t), -2.0 / 3) * std::pow(std::abs(1.0 - t), -1.0 / 3));
    };
    PlaneSpec spec;
    spec.exponent_at_0 = -2.0 / 3;
    spec.exponent_at_1 = -1.0 / 3;
    spec.exponent_at_inf = -7.0 / 3;
    spec.extra = {{t0, -2.0 / 3}, {t0 + 1.0, -2.0 / 3}};
    auto a = integrate_plane(shifted, spec, 1e-8);
    // the same integral after t -> 1 - t
    PlaneFn mirrored = [t0](cplx t, cplx omt) {
        return cplx(std::pow(std::abs(omt - t0), -2.0 / 3) * std::pow(std::abs(omt - t0 - 1.0), -2.0 / 3) *
                    std::pow(std::abs(omt), -2.0 / 3) * std::pow(std::abs(t), -1.0 / 3));
    };
    PlaneSpec ms = spec;
    std::swap(ms.exponent_at_0, ms.exponent_at_1);
    ms.extra = {{1.0 - t0, -2.0 / 3}, {-t0, -2.0 / 3}};
    auto b = integrate_plane(mirrored, ms, 1e-8);
    CHECK(a.converged);
    CHECK(rel_diff(a.value, b.value) < 1e-6);
}

TEST_CASE("cylinder sums") {
    double d = 0.25;
    LineFn gauss = [d](cplx z) { return std::exp(d * d * z * z); };
    auto r = cylinder_sum(gauss, d, 1.0, 8, 1e-12);
    CHECK(std::abs(r.total.value - std::sqrt(kPi)) < 1e-11);
    CHECK(r.terms.size() == 65);
    CylinderSumOptions ex;
    ex.excluded = {0};
    auto e = cylinder_sum(gauss, d, 1.0, 8, 1e-12, ex);
    CHECK(std::abs(e.total.value - std::sqrt(kPi) * (1 - std::erf(d / 2))) < 1e-11);

    CylinderSumOptions par;
    par.threads = 3;
    auto p = cylinder_sum(gauss, d, 1.0, 8, 1e-12, par);
    auto q = cylinder_sum(gauss, d, 1.0, 8, 1e-12);
    CHECK(p.total.value == r.total.value);
    CHECK(q.total.value == r.total.value);

    LineFn pinched = [](cplx z) {
        return std::abs(z.imag() - 2.0) < 0.25 ? cplx(std::numeric_limits<double>::infinity()) : cplx(1.0);
    };
    try {
        cylinder_sum(pinched, 0.5, 1.0, 2, 1e-8);
        CHECK(false);
    } catch (const PinchError& err) {
        CHECK(err.index() == 2);
    }
}
