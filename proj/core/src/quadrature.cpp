#include "hyplab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "hyplab/errors.hpp"
#include "hyplab/parallel.hpp"

namespace hyplab {

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double err;
};

Segment gk15(const RealFn& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx k = fc * kWgk[7], g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        cplx s = f(c - dx) + f(c + dx);
        k += kWgk[j] * s;
        if (j % 2 == 1) g += kWg[j / 2] * s;
    }
    Segment s{a, b, k * h, std::abs((k - g) * h)};
    if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag())) s.err = std::numeric_limits<double>::infinity();
    return s;
}

struct SegLess {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    }
};

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Neumaier-compensated complex sum.
struct Accum {
    cplx s = 0.0, c = 0.0;
    void add(cplx x) {
        auto one = [](double& sum, double& comp, double v) {
            double t = sum + v;
            if (std::abs(sum) >= std::abs(v)) comp += (sum - t) + v;
            else comp += (v - t) + sum;
            sum = t;
        };
        double sr = s.real(), si = s.imag(), cr = c.real(), ci = c.imag();
        one(sr, cr, x.real());
        one(si, ci, x.imag());
        s = {sr, si};
        c = {cr, ci};
    }
    cplx value() const { return s + c; }
};

}  // namespace

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& o) {
    value += o.value;
    est_abs_err += o.est_abs_err;
    evals += o.evals;
    converged = converged && o.converged;
    if (!o.note.empty()) note = note.empty() ? o.note : note + "; " + o.note;
    return *this;
}

QuadratureResult gk_adaptive(const RealFn& f, double a, double b, double abs_tol, double rel_tol, long max_evals,
                             const std::vector<double>& breaks) {
    QuadratureResult r;
    if (a == b) {
        r.value = 0.0;
        return r;
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> pts{a};
    std::vector<double> bs(breaks);
    std::sort(bs.begin(), bs.end());
    for (double x : bs)
        if (x > a && x < b && x > pts.back()) pts.push_back(x);
    pts.push_back(b);
    std::priority_queue<Segment, std::vector<Segment>, SegLess> heap;
    double err = 0.0;
    Accum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Segment s = gk15(f, pts[i], pts[i + 1]);
        r.evals += 15;
        err += s.err;
        total.add(s.value);
        heap.push(s);
    }
    std::vector<Segment> done;
    while (true) {
        double target = std::max(abs_tol, rel_tol * std::abs(total.value()));
        if (err <= target) break;
        if (r.evals + 30 > max_evals) {
            r.converged = false;
            r.note = "max_evals reached";
            break;
        }
        Segment s = heap.top();
        if (!std::isfinite(s.err)) {
            r.converged = false;
            r.note = "non-finite integrand";
            break;
        }
        double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b)) {
            r.converged = false;
            r.note = "interval too small";
            break;
        }
        heap.pop();
        Segment l = gk15(f, s.a, mid), rr = gk15(f, mid, s.b);
        r.evals += 30;
        err += l.err + rr.err - s.err;
        total.add(l.value + rr.value - s.value);
        heap.push(l);
        heap.push(rr);
    }
    // final value re-summed in interval order so the result does not depend on heap history
    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    std::sort(done.begin(), done.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    Accum acc;
    double e = 0.0;
    for (const auto& s : done) {
        acc.add(s.value);
        e += s.err;
    }
    r.value = sign * acc.value();
    r.est_abs_err = e;
    if (!finite(r.value)) r.converged = false;
    return r;
}

QuadratureResult integrate_endpoint_graded(const RealFn& f, double a, double b, double pa, double pb, double abs_tol,
                                           long max_evals) {
    if (!(pa > -1.0) || !(pb > -1.0)) throw ParameterError("endpoint exponent must exceed -1");
    double mid = 0.5 * (a + b), L = mid - a;
    auto grade = [](double p) { return std::min(20.0, std::max(1.0, 2.0 / (p + 1.0))); };
    double ga = grade(pa), gb = grade(pb);
    RealFn left = [&](double u) {
        double s = std::pow(u, ga - 1.0);
        double x = a + L * s * u;
        if (x == a) return cplx(0.0);  // collapsed onto the endpoint in floating point
        return f(x) * (L * ga * s);
    };
    RealFn right = [&](double u) {
        double s = std::pow(u, gb - 1.0);
        double x = b - L * s * u;
        if (x == b) return cplx(0.0);
        return f(x) * (L * gb * s);
    };
    QuadratureResult r = gk_adaptive(left, 0.0, 1.0, 0.5 * abs_tol, 0.0, max_evals / 2);
    r += gk_adaptive(right, 0.0, 1.0, 0.5 * abs_tol, 0.0, max_evals / 2);
    return r;
}

namespace {

// Radius beyond which sup |g| on a short probe stays below threshold.
double decay_radius(const RealFn& g, double sgn, double r0, double threshold, bool& ok, long& evals) {
    double R = r0;
    for (int it = 0; it < 14; ++it) {
        double m = 0.0;
        for (int j = 0; j <= 8; ++j) {
            cplx v = g(sgn * (R + 0.25 * j));
            ++evals;
            m = std::max(m, finite(v) ? std::abs(v) : std::numeric_limits<double>::infinity());
        }
        if (m < threshold) {
            ok = true;
            return R;
        }
        R *= 1.6;
    }
    ok = false;
    return R;
}

}  // namespace

QuadratureResult integrate_real_line(const RealFn& g, const LineSpec& spec) {
    long probe = 0;
    bool ok_p = false, ok_m = false;
    double Rp = decay_radius(g, 1.0, spec.initial_radius, spec.tail_threshold, ok_p, probe);
    double Rm = decay_radius(g, -1.0, spec.initial_radius, spec.tail_threshold, ok_m, probe);
    std::vector<double> br;
    double panel = spec.panel > 0 ? spec.panel : 1.0;
    double width = Rp + Rm;
    if (width / panel > 4000.0) panel = width / 4000.0;
    for (double x = -Rm + panel; x < Rp; x += panel) br.push_back(x);
    for (double x : spec.breaks) br.push_back(x);
    QuadratureResult r = gk_adaptive(g, -Rm, Rp, spec.tol, spec.tol, spec.max_evals, br);
    r.evals += probe;
    if (!ok_p || !ok_m) {
        r.converged = false;
        r.note = r.note.empty() ? "integrand does not decay" : r.note + "; integrand does not decay";
    }
    return r;
}

QuadratureResult integrate_line(const LineFn& f, const LineSpec& spec) {
    cplx s = spec.shift;
    return integrate_real_line([&](double y) { return f(s + kI * y); }, spec);
}

QuadratureResult integrate_ray(const LineFn& f, cplx origin, double theta, const LineSpec& spec) {
    cplx e = std::polar(1.0, theta);
    RealFn g = [&](double r) { return f(origin + e * r) * e; };
    long probe = 0;
    bool ok = false;
    double R = decay_radius(g, 1.0, spec.initial_radius, spec.tail_threshold, ok, probe);
    std::vector<double> br;
    for (double x = spec.panel; x < R; x += spec.panel) br.push_back(x);
    for (double x : spec.breaks) br.push_back(x);
    QuadratureResult r = gk_adaptive(g, 0.0, R, spec.tol, spec.tol, spec.max_evals, br);
    r.evals += probe;
    if (!ok) {
        r.converged = false;
        r.note = "integrand does not decay";
    }
    return r;
}

// ---------------------------------------------------------------- cylinder

namespace {

struct Budget {
    long used = 0;
    long limit;
    explicit Budget(long l) : limit(l) {}
    long left() const { return std::max(1000L, limit - used); }
};

QuadratureResult rectangle(const CylFn& f, double a0, double a1, double b0, double b1, double tol,
                           const std::vector<double>& bbreaks, Budget& bud) {
    double inner_tol = 0.2 * tol / std::max(a1 - a0, 1e-300);
    long inner_evals = 0;
    bool inner_ok = true;
    RealFn outer = [&](double a) {
        auto q = gk_adaptive([&](double b) { return f(a, b); }, b0, b1, inner_tol, 0.0, 60000, bbreaks);
        inner_evals += q.evals;
        inner_ok = inner_ok && q.converged;
        return q.value;
    };
    QuadratureResult r = gk_adaptive(outer, a0, a1, tol, 0.0, 4000);
    r.evals = inner_evals;
    if (!inner_ok) {
        r.converged = false;
        if (r.note.empty()) r.note = "inner integral did not converge";
    }
    bud.used += r.evals;
    return r;
}

// Triangle with apex c and opposite edge p1 -> p2, radially graded towards the apex.
QuadratureResult duffy(const CylFn& f, double ca, double cb, double p1a, double p1b, double p2a, double p2b,
                       double exponent, double tol, Budget& bud) {
    double g = std::min(20.0, std::max(1.0, 2.0 / (exponent + 2.0)));
    double ea = p1a - ca, eb = p1b - cb, da = p2a - p1a, db = p2b - p1b;
    double det = std::abs(ea * db - eb * da);
    long inner_evals = 0;
    bool inner_ok = true;
    RealFn outer = [&](double tau) {
        double rho = std::pow(tau, g);
        double jac = g * std::pow(tau, g - 1.0) * rho * det;
        auto q = gk_adaptive(
            [&](double s) {
                double a = ca + rho * (ea + s * da), b = cb + rho * (eb + s * db);
                // rounded onto the apex; the share of such points is below rounding
                if (a == ca && b == cb) return cplx(0.0);
                return f(a, b);
            },
            0.0, 1.0,
            0.2 * tol / std::max(jac, 1e-300), 0.0, 60000);
        inner_evals += q.evals;
        inner_ok = inner_ok && q.converged;
        return q.value * jac;
    };
    QuadratureResult r = gk_adaptive(outer, 0.0, 1.0, tol, 0.0, 4000);
    r.evals = inner_evals;
    if (!inner_ok) {
        r.converged = false;
        if (r.note.empty()) r.note = "inner integral did not converge";
    }
    bud.used += r.evals;
    return r;
}

double wrap_beta(double b, double lo) { return b - std::floor(b - lo); }  // into [lo, lo + 1)

struct Group {
    double alpha;
    std::vector<std::pair<double, double>> pts;  // (beta, exponent)
};

}  // namespace

QuadratureResult integrate_cylinder(const CylFn& f, const CylinderDomain& dom, double tol) {
    for (const auto& s : dom.singular)
        if (!(s.exponent > -2.0)) throw ParameterError("cylinder corner exponent must exceed -2");
    Budget bud(dom.max_evals);
    std::vector<SingularPoint> sp(dom.singular);
    std::sort(sp.begin(), sp.end(), [](const SingularPoint& x, const SingularPoint& y) { return x.alpha < y.alpha; });
    std::vector<Group> groups;
    for (const auto& s : sp) {
        if (s.alpha < dom.alpha_min || s.alpha > dom.alpha_max) continue;
        if (!groups.empty() && std::abs(groups.back().alpha - s.alpha) < 1e-12)
            groups.back().pts.push_back({s.beta, s.exponent});
        else
            groups.push_back({s.alpha, {{s.beta, s.exponent}}});
    }
    double r = dom.radius;
    for (std::size_t i = 0; i + 1 < groups.size(); ++i) r = std::min(r, 0.45 * (groups[i + 1].alpha - groups[i].alpha));
    for (auto& g : groups) {
        std::sort(g.pts.begin(), g.pts.end());
        for (std::size_t i = 0; i < g.pts.size(); ++i) {
            double nb = (i + 1 < g.pts.size()) ? g.pts[i + 1].first : g.pts[0].first + 1.0;
            double gap = nb - g.pts[i].first;
            if (gap > 1e-12) r = std::min(r, 0.45 * gap);
        }
    }
    if (groups.empty()) groups.push_back({0.0, {}});
    bool plain_only = groups.size() == 1 && groups[0].pts.empty();
    if (plain_only) r = 0.5;

    double piece_tol = tol / 16.0;
    QuadratureResult total;
    total.value = 0.0;
    std::vector<double> all_betas;
    for (const auto& g : groups)
        for (auto& p : g.pts) all_betas.push_back(p.first);

    auto breaks_in = [&](double lo) {
        std::vector<double> out;
        for (double b : all_betas) out.push_back(wrap_beta(b, lo));
        return out;
    };
    auto beta_lo_for = [&](const Group& g) { return g.pts.empty() ? dom.beta_lo : g.pts[0].first - 0.5; };

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        double a0 = g.alpha - r, a1 = g.alpha + r;
        if (g.pts.empty()) {
            total += rectangle(f, a0, a1, dom.beta_lo, dom.beta_lo + 1.0, piece_tol, breaks_in(dom.beta_lo), bud);
        } else {
            double blo = beta_lo_for(g);
            std::vector<std::pair<double, double>> w;
            for (auto& pt : g.pts) w.push_back({wrap_beta(pt.first, blo), pt.second});
            std::sort(w.begin(), w.end());
            // boxes, and plain strips between consecutive boxes along beta
            for (std::size_t i = 0; i < w.size(); ++i) {
                double bs = w[i].first;
                double corners[4][2] = {{a0, bs - r}, {a1, bs - r}, {a1, bs + r}, {a0, bs + r}};
                for (int e = 0; e < 4; ++e) {
                    int e2 = (e + 1) % 4;
                    total += duffy(f, g.alpha, bs, corners[e][0], corners[e][1], corners[e2][0], corners[e2][1],
                                   w[i].second, piece_tol / 4.0, bud);
                }
                double next = (i + 1 < w.size()) ? w[i + 1].first : w[0].first + 1.0;
                if (next - r > bs + r) total += rectangle(f, a0, a1, bs + r, next - r, piece_tol, {}, bud);
            }
        }
        // gap to the next group
        if (gi + 1 < groups.size()) {
            double b0 = beta_lo_for(g);
            double c0 = a1, c1 = groups[gi + 1].alpha - r;
            if (c1 > c0) total += rectangle(f, c0, c1, b0, b0 + 1.0, piece_tol, breaks_in(b0), bud);
        }
    }

    // tails in unit cells until both the cell and its outer edge are negligible
    auto tail = [&](double start, double dir, double limit, double blo) {
        double edge = start;
        int quiet = 0;
        for (int cell = 0; cell < 10000; ++cell) {
            if ((dir > 0 && edge >= limit) || (dir < 0 && edge <= limit)) return;
            double next = edge + dir;
            if ((dir > 0 && next > limit) || (dir < 0 && next < limit)) next = limit;
            double lo = std::min(edge, next), hi = std::max(edge, next);
            QuadratureResult q = rectangle(f, lo, hi, blo, blo + 1.0, piece_tol, breaks_in(blo), bud);
            total += q;
            double sup = 0.0;
            for (int j = 0; j < 16; ++j) {
                cplx v = f(next, blo + (j + 0.5) / 16.0);
                sup = std::max(sup, std::abs(v));
            }
            total.evals += 16;
            if (std::abs(q.value) + q.est_abs_err < tol * 1e-2 && sup < tol * 1e-2) {
                if (++quiet >= 2) return;
            } else {
                quiet = 0;
            }
            if (bud.used > bud.limit) {
                total.converged = false;
                total.note = "max_evals reached in tail";
                return;
            }
            edge = next;
        }
    };
    tail(groups.back().alpha + r, 1.0, dom.alpha_max, beta_lo_for(groups.back()));
    tail(groups.front().alpha - r, -1.0, dom.alpha_min, beta_lo_for(groups.front()));
    if (bud.used > bud.limit) {
        total.converged = false;
        if (total.note.empty()) total.note = "max_evals reached";
    }
    return total;
}

// ---------------------------------------------------------------- plane

QuadratureResult integrate_plane(const PlaneFn& f, const PlaneSpec& spec, double tol) {
    double q = spec.exponent_at_inf;
    if (!(spec.exponent_at_0 > -2.0) || !(spec.exponent_at_1 > -2.0) || !(q < -2.0))
        throw ParameterError("plane integrand is not integrable at 0, 1 or infinity");
    for (const auto& p : spec.extra)
        if (!(p.exponent > -2.0)) throw ParameterError("plane integrand is not integrable at an extra point");

    if (spec.mode == PlaneMode::cylinder) {
        CylFn g = [&](double a, double b) -> cplx {
            cplx w{a, b};
            cplx e = expm1_c(2.0 * kPi * w);
            cplx t = -1.0 / e;
            cplx s = std::exp(2.0 * kPi * w);
            cplx omt = -s * t;
            double at = std::abs(t);
            double jac = 4.0 * kPi * kPi * std::exp(4.0 * kPi * a) * at * at * at * at;
            if (jac == 0.0 || !std::isfinite(jac)) return 0.0;
            return f(t, omt) * jac;
        };
        CylinderDomain dom;
        dom.alpha_min = -100.0;
        dom.alpha_max = 100.0;
        dom.max_evals = spec.max_evals;
        dom.singular.push_back({0.0, 0.0, -(q + 4.0)});
        for (const auto& p : spec.extra) {
            cplx s0 = 1.0 - 1.0 / p.t;
            dom.singular.push_back(
                {std::log(std::abs(s0)) / (2.0 * kPi), std::arg(s0) / (2.0 * kPi), p.exponent});
        }
        return integrate_cylinder(g, dom, tol);
    }

    if (!spec.extra.empty()) throw ParameterError("polar plane mode does not support extra singular points");
    // g(t) = f(t) + f(1 - t) over Re t < 1/2, in polar coordinates about 0
    auto g = [&](cplx t) { return f(t, 1.0 - t) + f(1.0 - t, t); };
    double p0 = std::min(spec.exponent_at_0, spec.exponent_at_1);
    long evals = 0;
    bool ok = true;
    RealFn ray = [&](double th) -> cplx {
        cplx e = std::polar(1.0, th);
        double c = std::cos(th);
        double R = c > 1e-15 ? 0.5 / c : std::numeric_limits<double>::infinity();
        double tin = std::min(1.0, R);
        auto inner = integrate_endpoint_graded([&](double r) { return g(e * r) * r; }, 0.0, tin, p0 + 1.0, 0.0,
                                               tol * 0.05, 200000);
        evals += inner.evals;
        ok = ok && inner.converged;
        cplx v = inner.value;
        if (R > 1.0) {
            double xlo = std::isfinite(R) ? 1.0 / R : 0.0;
            RealFn outer = [&](double x) { return g(e / x) / (x * x * x); };
            QuadratureResult o;
            if (xlo == 0.0)
                o = integrate_endpoint_graded(outer, 0.0, 1.0, -q - 3.0, 0.0, tol * 0.05, 200000);
            else
                o = gk_adaptive(outer, xlo, 1.0, tol * 0.05, 0.0, 200000);
            evals += o.evals;
            ok = ok && o.converged;
            v += o.value;
        }
        return v;
    };
    const double third = kPi / 3.0, half = kPi / 2.0;
    QuadratureResult r = gk_adaptive(ray, -kPi, kPi, tol, 0.0, 20000, {-half, -third, third, half});
    r.evals = evals;
    if (!ok) {
        r.converged = false;
        if (r.note.empty()) r.note = "ray integral did not converge";
    }
    return r;
}

// ---------------------------------------------------------------- cylinder sums

CylinderSumResult cylinder_sum_range(const LineFn& I, double delta, cplx sqrt_w1w2, long n_lo, long n_hi, double tol,
                                     const CylinderSumOptions& opt) {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    std::vector<long> idx;
    for (long N = n_lo; N <= n_hi; ++N)
        if (std::find(opt.excluded.begin(), opt.excluded.end(), N) == opt.excluded.end()) idx.push_back(N);
    std::vector<double> br;
    for (double fb : opt.focus_betas) {
        double b = fb - std::round(fb);
        br.push_back(b);
        for (double off = delta / 8.0; off < 1.0; off *= 1.6) {
            br.push_back(b - off);
            br.push_back(b + off);
        }
    }
    std::sort(br.begin(), br.end());
    double term_tol = tol / (static_cast<double>(std::max<std::size_t>(idx.size(), 1)) * delta);
    CylinderSumResult res;
    res.terms.resize(idx.size());
    parallel_for(idx.size(), opt.threads, [&](std::size_t i) {
        long N = idx[i];
        bool bad = false;
        RealFn g = [&](double b) {
            cplx v = I(kI * sqrt_w1w2 * (static_cast<double>(N) + b));
            if (!finite(v)) {
                bad = true;
                return cplx(0.0);
            }
            return v;
        };
        QuadratureResult q = gk_adaptive(g, -0.5, 0.5, term_tol, 0.0, opt.max_evals_per_term, br);
        if (bad) throw PinchError("integrand pole on the contour at N = " + std::to_string(N), N);
        res.terms[i] = {N, delta * q.value, delta * q.est_abs_err, q.evals};
    });
    Accum acc;
    res.total.value = 0.0;
    for (const auto& t : res.terms) {
        acc.add(t.value);
        res.total.est_abs_err += t.est_abs_err;
        res.total.evals += t.evals;
    }
    res.total.value = acc.value();
    if (res.total.est_abs_err > tol * 10.0) {
        res.total.converged = false;
        res.total.note = "per-term tolerance not reached";
    }
    return res;
}

CylinderSumResult cylinder_sum(const LineFn& I, double delta, cplx sqrt_w1w2, int M, double tol,
                               const CylinderSumOptions& opt) {
    if (M < 1) throw ParameterError("M must be at least 1");
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    long n = static_cast<long>(std::floor(M / delta + 1e-9));
    return cylinder_sum_range(I, delta, sqrt_w1w2, -n, n, tol, opt);
}

}  // namespace hyplab
