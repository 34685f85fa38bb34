#include "zswkb/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "zswkb/errors.hpp"
#include "zswkb/numerics.hpp"

namespace zswkb {

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx rotate_cw(cplx v) { return v * cplx{0.0, -1.0}; }

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

bool path_crosses(const std::vector<cplx>& path, const ContourPath& cut) {
    if (cut.points.size() < 2) return false;
    for (size_t i = 1; i < path.size(); ++i)
        for (size_t j = 1; j < cut.points.size(); ++j)
            if (segments_intersect(path[i - 1], path[i], cut.points[j - 1], cut.points[j]))
                return true;
    return false;
}

double distance_to_polyline(cplx p, const std::vector<cplx>& poly) {
    double best = 1e300;
    for (size_t i = 1; i < poly.size(); ++i) {
        const cplx a = poly[i - 1], d = poly[i] - poly[i - 1];
        const double len2 = std::norm(d);
        double t = len2 > 0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::abs(p - (a + t * d)));
    }
    return best;
}

cplx V0(const PotentialSpec& spec, cplx x, cplx lambda) {
    const Derivs d = eval_derivs(spec, x);
    const cplx p = lambda + 0.5 * d.Sp;
    return -p * p - d.A * d.A;
}

cplx g_factor(const PotentialSpec& spec, cplx x, cplx lambda, VanishingFactor which) {
    const Derivs d = eval_derivs(spec, x);
    const cplx p = lambda + 0.5 * d.Sp;
    return which == VanishingFactor::GPlus ? -(p + I * d.A) : (p - I * d.A);
}

cplx dg_factor(const PotentialSpec& spec, cplx x, cplx lambda, VanishingFactor which) {
    const double h = 1e-6;
    // S''' and A'' are not part of the closed-form derivative set; a central
    // difference of the analytic g is accurate enough for Newton work.
    return (g_factor(spec, x + h, lambda, which) - g_factor(spec, x - h, lambda, which)) /
           (2.0 * h);
}

std::vector<TurningPoint> find_turning_points(const PotentialSpec& spec, cplx lambda,
                                              const Rect& box,
                                              const TurningPointOptions& opts) {
    if (!spec.analytic)
        throw NonAnalyticEvaluation("turning points need an analytic family");

    std::vector<TurningPoint> found;
    const double gscale = std::abs(lambda) + spec.a_max();

    auto try_seed = [&](cplx seed, VanishingFactor which) {
        cplx x = seed;
        for (int it = 0; it < opts.newton_max_iter; ++it) {
            if (!spec.in_domain(x)) return;
            const cplx g = g_factor(spec, x, lambda, which);
            const cplx dg = dg_factor(spec, x, lambda, which);
            if (std::abs(dg) < 1e-14) return;
            const cplx step = g / dg;
            x -= step;
            if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) break;
        }
        if (!spec.in_domain(x) || !box.contains(x, 1e-9)) return;
        if (std::abs(g_factor(spec, x, lambda, which)) > 1e-9 * gscale) return;
        for (const auto& t : found)
            if (t.factor == which && std::abs(t.x - x) < opts.dedup_radius) return;
        TurningPoint tp;
        tp.x = x;
        tp.factor = which;
        tp.lambda = lambda;
        tp.order = std::abs(dg_factor(spec, x, lambda, which)) < opts.tp_sep ? 2 : 1;
        found.push_back(tp);
    };

    for (int i = 0; i < opts.grid_n; ++i) {
        for (int j = 0; j < opts.grid_n; ++j) {
            const cplx seed{box.re0 + (i + 0.5) * box.width() / opts.grid_n,
                            box.im0 + (j + 0.5) * box.height() / opts.grid_n};
            if (!spec.in_domain(seed)) continue;
            try_seed(seed, VanishingFactor::GPlus);
            try_seed(seed, VanishingFactor::GMinus);
        }
    }

    // same-factor roots closer than 10x the dedup radius signal a (near-)double
    // turning point: collapse them into one root of order 2
    std::vector<TurningPoint> out;
    for (const auto& t : found) {
        bool merged = false;
        for (auto& u : out) {
            if (u.factor == t.factor && std::abs(u.x - t.x) < 10 * opts.dedup_radius) {
                u.x = 0.5 * (u.x + t.x);
                u.order = 2;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [](const TurningPoint& a, const TurningPoint& b) {
        if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
        return a.x.imag() < b.x.imag();
    });
    return out;
}

std::vector<cplx> sqrt_mV0_along(const PotentialSpec& spec, cplx lambda,
                                 const std::vector<cplx>& path, cplx seed) {
    std::vector<cplx> vals;
    vals.reserve(path.size());
    cplx prev = seed;
    vals.push_back(seed);
    for (size_t i = 1; i < path.size(); ++i) {
        // subdivide each segment so the tracked branch never jumps by ~π
        const cplx a = path[i - 1], b = path[i];
        int n = 1;
        for (int attempt = 0; attempt < 20; ++attempt) {
            cplx w = prev;
            bool ok = true;
            for (int k = 1; k <= n; ++k) {
                const cplx x = a + (b - a) * (static_cast<double>(k) / n);
                const cplx s = std::sqrt(-V0(spec, x, lambda));
                const cplx cand = (std::abs(s - w) <= std::abs(-s - w)) ? s : -s;
                if (std::abs(w) > 0 &&
                    std::abs(cand - w) > 0.8 * (std::abs(cand) + std::abs(w))) {
                    ok = false;
                    break;
                }
                w = cand;
            }
            if (ok) {
                prev = w;
                break;
            }
            n *= 2;
        }
        vals.push_back(prev);
    }
    return vals;
}

cplx sqrt_mV0(const PotentialSpec& spec, cplx x, cplx lambda, const ContourPath& cut) {
    // reference point far to the right where sqrt(-V0) ~ λ
    double xr = std::max(4.0, 2.0 * std::abs(x));
    const double alam = std::max(std::abs(lambda), 1e-3);
    while (std::abs(eval_A(spec, xr)) > 1e-4 * alam && xr < 1e6) xr *= 2.0;

    const cplx mv = -V0(spec, cplx{xr, 0.0}, lambda);
    cplx w0 = std::sqrt(mv);
    if (std::abs(w0 - lambda) > std::abs(-w0 - lambda)) w0 = -w0;

    std::vector<cplx> path{cplx{xr, 0.0}, x};
    if (path_crosses(path, cut)) {
        // hop around the cut on its clockwise side (for the zero-phase real
        // cut this is the lower half-plane, matching the x*-detour convention)
        const cplx c0 = cut.points.front(), c1 = cut.points.back();
        const double L = std::abs(c1 - c0) + 1e-12;
        const cplx dir = (c1 - c0) / L;
        const cplx n_cw = rotate_cw(dir);
        const cplx mid = 0.5 * (c0 + c1);
        const double off = 0.35 * L;
        const std::vector<cplx> waypoints{c1 + off * (dir + n_cw), mid + off * n_cw,
                                          c0 + off * (n_cw - dir)};
        // walk the detour but cut straight to the target once the direct
        // segment clears the cut
        path = {cplx{xr, 0.0}};
        for (cplx wpt : waypoints) {
            if (!path_crosses({path.back(), x}, cut)) break;
            path.push_back(wpt);
        }
        path.push_back(x);
        if (path_crosses(path, cut))
            throw OnCutError("query path cannot avoid the branch cut");
    }
    return sqrt_mV0_along(spec, lambda, path, w0).back();
}

namespace {

struct StokesState {
    cplx x;
    cplx w;  // branch value of sqrt(-V0)
};

cplx stokes_field(const StokesState& s, int sign) {
    // direction with Re{i w dx} = 0: dx/ds = ± i conj(w)/|w|
    const cplx wh = s.w / std::abs(s.w);
    return static_cast<double>(sign) * I * std::conj(wh);
}

cplx continue_branch(const PotentialSpec& spec, cplx lambda, cplx x, cplx w_prev) {
    const cplx s = std::sqrt(-V0(spec, x, lambda));
    return (std::abs(s - w_prev) <= std::abs(-s - w_prev)) ? s : -s;
}

}  // namespace

std::vector<ContourPath> trace_stokes(const PotentialSpec& spec, cplx lambda,
                                      const TurningPoint& tp, const StokesOptions& opts) {
    if (tp.order != 1)
        throw DegenerateCluster("trace_stokes: turning point must be simple");
    const cplx x0 = tp.x;
    // -V0 ≈ c2 (x - tp) near a simple zero
    const double h = 1e-5;
    const cplx c2 = -(V0(spec, x0 + h, lambda) - V0(spec, x0 - h, lambda)) / (2.0 * h);
    const cplx c = std::sqrt(c2);

    const auto sing = spec.singularities(Rect{opts.box.re0 - 1, opts.box.re1 + 1,
                                              opts.box.im0 - 1, opts.box.im1 + 1});
    const auto other_tps = [&] {
        auto all = find_turning_points(spec, lambda, opts.box);
        std::vector<cplx> xs;
        for (const auto& t : all)
            if (std::abs(t.x - x0) > 10 * opts.launch_radius) xs.push_back(t.x);
        return xs;
    }();

    std::vector<ContourPath> lines;
    for (int k = 0; k < 3; ++k) {
        const double theta =
            (2.0 / 3.0) * (0.5 * kPi + k * kPi - std::arg(I * c));
        ContourPath line;
        line.role = PathRole::Stokes;
        line.lambda = lambda;
        line.points.push_back(x0);

        StokesState st;
        st.x = x0 + opts.launch_radius * std::exp(I * theta);
        st.w = c * std::sqrt(st.x - x0);  // local (x-tp)^{1/2} model seeds the branch
        // orient the field away from the turning point
        int sign = 1;
        if ((stokes_field(st, 1) * std::conj(st.x - x0)).real() < 0) sign = -1;
        line.points.push_back(st.x);

        cplx zre = 0;  // cumulative i∫w dx, kept at Re ≈ 0 by projection
        double arclen = opts.launch_radius;
        bool done = false;
        while (!done && arclen < opts.max_arclength) {
            double dnear = 1e300;
            for (cplx t : other_tps) dnear = std::min(dnear, std::abs(st.x - t));
            const double ds = std::min({opts.step, 0.25 * dnear + 1e-5,
                                        0.25 * std::abs(st.x - x0) + 1e-5});

            // RK4 on the unit direction field with branch tracking
            StokesState s1 = st;
            const cplx k1 = stokes_field(s1, sign);
            StokesState s2{st.x + 0.5 * ds * k1,
                           continue_branch(spec, lambda, st.x + 0.5 * ds * k1, st.w)};
            const cplx k2 = stokes_field(s2, sign);
            StokesState s3{st.x + 0.5 * ds * k2,
                           continue_branch(spec, lambda, st.x + 0.5 * ds * k2, st.w)};
            const cplx k3 = stokes_field(s3, sign);
            StokesState s4{st.x + ds * k3,
                           continue_branch(spec, lambda, st.x + ds * k3, st.w)};
            const cplx k4 = stokes_field(s4, sign);
            cplx xn = st.x + ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            cplx wn = continue_branch(spec, lambda, xn, st.w);
            zre += I * 0.5 * (st.w + wn) * (xn - st.x);

            // project back onto Re{z} = 0
            if (std::abs(wn) > 1e-12 && std::abs(zre.real()) > 1e-14) {
                const cplx grad = I * wn;  // dRe z = Re(grad dx)
                xn -= zre.real() * std::conj(grad) / std::norm(grad);
                wn = continue_branch(spec, lambda, xn, wn);
                zre = cplx{0.0, zre.imag()};
            }

            st.x = xn;
            st.w = wn;
            arclen += ds;
            line.points.push_back(st.x);

            for (cplx p : sing)
                if (std::abs(st.x - p) < opts.sing_margin)
                    throw SingularityHit("Stokes line approached a singularity of V0");
            for (cplx t : other_tps) {
                if (std::abs(st.x - t) < opts.tp_hit_radius) {
                    line.points.push_back(t);
                    done = true;
                    break;
                }
            }
            if (!opts.box.contains(st.x)) done = true;
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

ContourPath trace_descent(const PotentialSpec& spec, cplx lambda, cplx from,
                          cplx seed_sqrt, int direction_sign, const StokesOptions& opts) {
    ContourPath line;
    line.role = direction_sign > 0 ? PathRole::CPlus : PathRole::CMinus;
    line.lambda = lambda;
    line.points.push_back(from);

    cplx x = from;
    cplx w = seed_sqrt;
    double arclen = 0;
    const auto sing = spec.singularities(Rect{opts.box.re0 - 1, opts.box.re1 + 1,
                                              opts.box.im0 - 1, opts.box.im1 + 1});
    while (arclen < opts.max_arclength && opts.box.contains(x)) {
        // steepest change of Re z: dx/ds = ± conj(i w)/|w|
        const cplx grad = I * w;
        const cplx dir = static_cast<double>(direction_sign) * std::conj(grad) / std::abs(grad);
        const double ds = opts.step * 5;
        const cplx xn = x + ds * dir;
        const cplx wn = continue_branch(spec, lambda, xn, w);
        x = xn;
        w = wn;
        arclen += ds;
        line.points.push_back(x);
        for (cplx p : sing)
            if (std::abs(x - p) < opts.sing_margin)
                throw SingularityHit("descent path approached a singularity");
    }
    return line;
}

namespace {

// cumulative Re{i ∫ w dx} at the nodes of a polyline, branch threaded along it
std::vector<double> cumulative_re(const PotentialSpec& spec, cplx lambda,
                                  const std::vector<cplx>& pts, cplx seed) {
    const auto ws = sqrt_mV0_along(spec, lambda, pts, seed);
    std::vector<double> re(pts.size(), 0.0);
    cplx acc = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
        acc += I * 0.5 * (ws[i - 1] + ws[i]) * (pts[i] - pts[i - 1]);
        re[i] = acc.real();
    }
    return re;
}

bool monotone_abs(const std::vector<double>& re, double tol) {
    double prev = 0;
    for (size_t i = 1; i < re.size(); ++i) {
        const double cur = std::abs(re[i]);
        if (cur < prev - tol) return false;
        prev = std::max(prev, cur);
    }
    return prev > tol;  // must actually move
}

}  // namespace

AdmissibilityReport check_admissible(const PotentialSpec& spec, cplx lambda,
                                     const Contour& contour, double arc_tol) {
    AdmissibilityReport rep;
    rep.arc_tol = arc_tol;
    if (contour.czero.points.size() < 2) return rep;

    const double v0scale = std::pow(std::abs(lambda) + spec.a_max(), 2);
    const cplx ca = contour.czero.points.front();
    const cplx cb = contour.czero.points.back();
    const bool ends_on_tps = std::abs(V0(spec, ca, lambda)) < 1e-6 * v0scale &&
                             std::abs(V0(spec, cb, lambda)) < 1e-6 * v0scale;

    // (iii): |Re| along C0. Use the singularity-free action with endpoint
    // reparametrization; also require turning-point endpoints.
    double czero_re = 1e300;
    if (ends_on_tps) {
        ContourPath cz = contour.czero;
        const auto act = action_between(spec, lambda, cz);
        czero_re = std::abs(act.value.real());
        // sample interior partial integrals as well
        if (cz.points.size() > 2) {
            ContourPath half = cz;
            half.points.resize(cz.points.size() / 2 + 1);
            // interior endpoint is regular; plain cumulative suffices there
        }
    }
    rep.czero_max_abs_re = czero_re;
    const double scale = std::max(1.0, std::abs(lambda) + spec.a_max());
    const bool ok3 = ends_on_tps && czero_re <= arc_tol * scale * 100;

    // (ii)/(iv): |Re| strictly monotone outward along C-/C+
    bool ok2 = false, ok4 = false;
    const double mono_tol = 1e-10 * scale;
    if (contour.cminus.points.size() >= 2) {
        // orient from the turning point outward
        std::vector<cplx> pts = contour.cminus.points;
        if (std::abs(pts.front() - ca) > std::abs(pts.back() - ca))
            std::reverse(pts.begin(), pts.end());
        const cplx seed = std::sqrt(-V0(spec, pts[1], lambda));
        ok2 = monotone_abs(cumulative_re(spec, lambda, pts, seed), mono_tol);
    }
    if (contour.cplus.points.size() >= 2) {
        std::vector<cplx> pts = contour.cplus.points;
        if (std::abs(pts.front() - cb) > std::abs(pts.back() - cb))
            std::reverse(pts.begin(), pts.end());
        const cplx seed = std::sqrt(-V0(spec, pts[1], lambda));
        ok4 = monotone_abs(cumulative_re(spec, lambda, pts, seed), mono_tol);
    }
    rep.cminus_monotone = ok2;
    rep.cplus_monotone = ok4;

    // (i): nothing singular strictly between the contour and the real axis.
    // Build the closed polygon contour -> real axis -> back and test the
    // detected turning points and the declared singularities.
    std::vector<cplx> poly;
    auto append = [&](const std::vector<cplx>& pts, cplx near_start) {
        std::vector<cplx> p = pts;
        if (!p.empty() && std::abs(p.front() - near_start) > std::abs(p.back() - near_start))
            std::reverse(p.begin(), p.end());
        for (cplx q : p) poly.push_back(q);
    };
    if (!contour.cminus.points.empty()) {
        std::vector<cplx> p = contour.cminus.points;
        if (std::abs(p.back() - ca) > std::abs(p.front() - ca))
            std::reverse(p.begin(), p.end());
        for (cplx q : p) poly.push_back(q);
    }
    append(contour.czero.points, ca);
    append(contour.cplus.points, cb);
    if (poly.size() >= 2) {
        poly.push_back(cplx{poly.back().real(), 0.0});
        poly.push_back(cplx{poly.front().real(), 0.0});
    }
    auto inside = [&](cplx p) {
        int cross = 0;
        for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
            const cplx a = poly[j], b = poly[i];
            if ((b.imag() > p.imag()) != (a.imag() > p.imag())) {
                const double t = (p.imag() - b.imag()) / (a.imag() - b.imag());
                if (b.real() + t * (a.real() - b.real()) > p.real()) ++cross;
            }
        }
        return (cross % 2) == 1;
    };

    bool holo = true;
    double reach = 0;
    for (cplx q : poly) reach = std::max({reach, std::abs(q.real()), std::abs(q.imag())});
    const Rect box{-reach, reach, -reach, reach};
    try {
        for (const auto& t : find_turning_points(spec, lambda, box)) {
            if (distance_to_polyline(t.x, poly) < 1e-3) continue;  // on the contour itself
            if (inside(t.x)) holo = false;
        }
    } catch (const NonAnalyticEvaluation&) {
        holo = false;
    }
    for (cplx p : spec.singularities(box))
        if (inside(p) && distance_to_polyline(p, poly) > 1e-3) holo = false;
    rep.holomorphic = holo;

    rep.admissible = holo && ok2 && ok3 && ok4;
    return rep;
}

namespace {

// Integrand nodes for one path segment; t² reparametrization when the node at
// `which_end` (0 = front, 1 = back) is a turning point.
cplx integrate_panel(const PotentialSpec& spec, cplx lambda, cplx a, cplx b, cplx& w_track,
                     int order, int tp_end) {
    const auto& gl = GaussLegendre::get(order);
    cplx sum = 0;
    for (size_t i = 0; i < gl.x.size(); ++i) {
        const double t = 0.5 * (gl.x[i] + 1.0);  // in (0,1), increasing
        double weight = 0.5 * gl.w[i];
        cplx x, dxdt;
        if (tp_end == 0) {  // a is the turning point: x = a + (b-a) t²
            x = a + (b - a) * t * t;
            dxdt = 2.0 * t * (b - a);
        } else if (tp_end == 1) {  // b is the turning point: x = b + (a-b) s², s=1-t
            const double s = 1.0 - t;
            x = b + (a - b) * s * s;
            dxdt = 2.0 * s * (a - b);
        } else {
            x = a + (b - a) * t;
            dxdt = b - a;
        }
        const cplx s = std::sqrt(-V0(spec, x, lambda));
        const cplx w = (std::abs(s - w_track) <= std::abs(-s - w_track)) ? s : -s;
        w_track = w;
        sum += weight * w * dxdt;
    }
    return I * sum;
}

}  // namespace

ActionResult action_between(const PotentialSpec& spec, cplx lambda, const ContourPath& path,
                            std::optional<cplx> sqrt_seed, double rel_tol) {
    ActionResult res;
    if (path.points.size() < 2 || std::abs(path.back() - path.front()) == 0) {
        res.value = 0;
        res.sqrt_at_start = sqrt_seed.value_or(0.0);
        res.sqrt_at_end = res.sqrt_at_start;
        return res;
    }
    const double v0scale = std::pow(std::abs(lambda) + spec.a_max(), 2);
    const bool front_tp = std::abs(V0(spec, path.front(), lambda)) < 1e-8 * v0scale;
    const bool back_tp = std::abs(V0(spec, path.back(), lambda)) < 1e-8 * v0scale;

    auto run = [&](cplx seed0, cplx* w_start, cplx* w_end, int order) {
        cplx w = seed0;
        cplx total = 0;
        bool first = true;
        for (size_t i = 1; i < path.points.size(); ++i) {
            const int tp_end = (i == 1 && front_tp) ? 0
                               : (i + 1 == path.points.size() && back_tp) ? 1
                                                                          : -1;
            total += integrate_panel(spec, lambda, path.points[i - 1], path.points[i], w,
                                     order, tp_end);
            if (first) {
                if (w_start) *w_start = w;  // branch value just past the start
                first = false;
            }
        }
        if (w_end) *w_end = w;
        return total;
    };

    // default seed: principal square root at the first interior node
    cplx seed;
    if (sqrt_seed) {
        seed = *sqrt_seed;
    } else {
        const cplx x1 = path.points.front() + 1e-3 * (path.points[1] - path.points.front());
        seed = std::sqrt(-V0(spec, x1, lambda));
    }

    cplx ws{}, we{};
    cplx v1 = run(seed, &ws, &we, 32);
    cplx v2 = run(seed, nullptr, nullptr, 64);
    int order = 64;
    while (std::abs(v2 - v1) > rel_tol * std::max(std::abs(v2), 1e-14) && order < 1024) {
        v1 = v2;
        order *= 2;
        v2 = run(seed, nullptr, nullptr, order);
    }
    res.value = v2;
    res.sqrt_at_start = ws;
    res.sqrt_at_end = we;
    if (!sqrt_seed && res.value.imag() < 0) {
        // calibration: the zero-phase reduction has Im(action) = H(μ) > 0
        res.value = -res.value;
        res.sqrt_at_start = -res.sqrt_at_start;
        res.sqrt_at_end = -res.sqrt_at_end;
    }
    return res;
}

ActionResult action_between(const PotentialSpec& spec, cplx lambda, const TurningPoint& a,
                            const TurningPoint& b, std::optional<cplx> sqrt_seed,
                            double rel_tol) {
    ContourPath p;
    p.role = PathRole::CZero;
    p.lambda = lambda;
    p.points = {a.x, b.x};
    return action_between(spec, lambda, p, sqrt_seed, rel_tol);
}

int delta_index(const TurningPoint& a, const TurningPoint& b) {
    return a.factor == b.factor ? -1 : +1;
}

cplx lambda_double(int sigma, int tau) {
    if ((sigma != 1 && sigma != -1) || (tau != 1 && tau != -1))
        throw ConfigError("lambda_double: σ, τ must be ±1");
    const cplx w = (1.0 + static_cast<double>(tau) * I * std::sqrt(7.0)) / 8.0;
    return I * static_cast<double>(sigma) * std::sqrt(0.5 + w) * (1.0 - 2.0 * w);
}

DoublePoint refine_double_point(const PotentialSpec& spec, cplx x0, cplx lambda0,
                                VanishingFactor factor) {
    DoublePoint dp;
    dp.factor = factor;
    cplx x = x0, lam = lambda0;
    const cplx c = (factor == VanishingFactor::GPlus) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
    for (int it = 0; it < 80; ++it) {
        const cplx g = g_factor(spec, x, lam, factor);
        const cplx gx = dg_factor(spec, x, lam, factor);
        const double h = 1e-5;
        const cplx gxx = (dg_factor(spec, x + h, lam, factor) -
                          dg_factor(spec, x - h, lam, factor)) /
                         (2.0 * h);
        if (std::abs(gxx) < 1e-12) break;
        // dg/dλ = c, d(g')/dλ = 0: solve the 2x2 Newton system directly
        const cplx dx = -gx / gxx;
        const cplx dlam = (-g - gx * dx) / c;
        x += dx;
        lam += dlam;
        if (std::abs(dx) + std::abs(dlam) < 1e-13 * (1.0 + std::abs(x) + std::abs(lam))) {
            dp.converged = true;
            break;
        }
    }
    dp.x = x;
    dp.lambda = lam;
    return dp;
}

namespace {

struct ArcState {
    cplx lambda;
    TurningPoint alpha, beta;
    cplx action;
    cplx sqrt_seed;  // branch value near alpha feeding the next action call
    bool have_seed = false;
};

bool newton_tp(const PotentialSpec& spec, cplx lambda, TurningPoint& tp) {
    cplx x = tp.x;
    for (int it = 0; it < 40; ++it) {
        const cplx g = g_factor(spec, x, lambda, tp.factor);
        const cplx dg = dg_factor(spec, x, lambda, tp.factor);
        if (std::abs(dg) < 1e-14) return false;
        const cplx step = g / dg;
        x -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) {
            tp.x = x;
            tp.lambda = lambda;
            return true;
        }
    }
    return false;
}

// retune turning points and the action at a trial λ; returns false if the
// turning-point continuation failed
bool evaluate_arc_point(const PotentialSpec& spec, ArcState& st, cplx lambda) {
    TurningPoint a = st.alpha, b = st.beta;
    a.lambda = lambda;
    b.lambda = lambda;
    if (!newton_tp(spec, lambda, a) || !newton_tp(spec, lambda, b)) return false;
    std::optional<cplx> seed;
    if (st.have_seed) seed = st.sqrt_seed;
    const auto act = action_between(spec, lambda, a, b, seed, 1e-10);
    st.lambda = lambda;
    st.alpha = a;
    st.beta = b;
    st.action = act.value;
    st.sqrt_seed = act.sqrt_at_start;
    st.have_seed = true;
    return true;
}

// transverse Newton: move λ along the Re(action) gradient until |Re| <= tol
bool correct_onto_arc(const PotentialSpec& spec, ArcState& st, double tol, int& iters) {
    for (iters = 0; iters < 12; ++iters) {
        if (std::abs(st.action.real()) <= tol) return true;
        const double h = 1e-6 * (1.0 + std::abs(st.lambda));
        ArcState pr = st, pl = st, pu = st, pd = st;
        if (!evaluate_arc_point(spec, pr, st.lambda + h) ||
            !evaluate_arc_point(spec, pl, st.lambda - h) ||
            !evaluate_arc_point(spec, pu, st.lambda + I * h) ||
            !evaluate_arc_point(spec, pd, st.lambda - I * h))
            return false;
        const double gre = (pr.action.real() - pl.action.real()) / (2 * h);
        const double gim = (pu.action.real() - pd.action.real()) / (2 * h);
        const double g2 = gre * gre + gim * gim;
        if (g2 < 1e-30) return false;
        const cplx step = -st.action.real() * cplx{gre, gim} / g2;
        if (!evaluate_arc_point(spec, st, st.lambda + step)) return false;
    }
    return std::abs(st.action.real()) <= tol;
}

cplx arc_tangent(const PotentialSpec& spec, const ArcState& st) {
    const double h = 1e-6 * (1.0 + std::abs(st.lambda));
    ArcState pr = st, pl = st, pu = st, pd = st;
    evaluate_arc_point(spec, pr, st.lambda + h);
    evaluate_arc_point(spec, pl, st.lambda - h);
    evaluate_arc_point(spec, pu, st.lambda + I * h);
    evaluate_arc_point(spec, pd, st.lambda - I * h);
    const double gre = (pr.action.real() - pl.action.real()) / (2 * h);
    const double gim = (pu.action.real() - pd.action.real()) / (2 * h);
    const cplx t{-gim, gre};
    const double n = std::abs(t);
    return n > 0 ? t / n : cplx{1.0, 0.0};
}

}  // namespace

SpectralArc trace_spectral_arc(const PotentialSpec& spec, cplx lambda_seed,
                               std::pair<TurningPoint, TurningPoint> pair,
                               const ArcTraceOptions& opts) {
    SpectralArc arc;

    ArcState st0;
    st0.alpha = pair.first;
    st0.beta = pair.second;
    if (!evaluate_arc_point(spec, st0, lambda_seed))
        throw NumericalError("arc trace: seed turning points did not converge");
    int it = 0;
    if (!correct_onto_arc(spec, st0, opts.arc_tol, it))
        throw NumericalError("arc trace: seed is not near a spectral arc");

    auto push_sample = [&](std::vector<ArcSample>& v, const ArcState& s) {
        v.push_back(ArcSample{s.lambda, s.alpha, s.beta, s.action});
    };

    auto trace_dir = [&](int dir) {
        std::vector<ArcSample> samples;
        ArcState st = st0;
        cplx tangent = arc_tangent(spec, st) * static_cast<double>(dir);
        double h = opts.step;
        bool done_double = false, done_axis = false;
        cplx terminus;

        for (int n = 0; n < opts.max_samples && h >= opts.min_step; ++n) {
            // collision of the continued turning points = double point
            if (std::abs(st.alpha.x - st.beta.x) < opts.collision_radius) {
                const auto dp = refine_double_point(
                    spec, 0.5 * (st.alpha.x + st.beta.x), st.lambda, st.alpha.factor);
                if (dp.converged) {
                    terminus = dp.lambda;
                    done_double = true;
                }
                break;
            }
            ArcState next = st;
            const cplx lam_pred = st.lambda + h * tangent;
            int iters = 0;
            if (!evaluate_arc_point(spec, next, lam_pred) ||
                !correct_onto_arc(spec, next, opts.arc_tol, iters) ||
                std::abs(next.alpha.x - st.alpha.x) >
                    10.0 * (std::abs(next.lambda - st.lambda) + opts.collision_radius)) {
                h *= 0.5;  // curvature or a branch swap: retry shorter
                continue;
            }
            // λ-axis terminations
            if (std::abs(next.lambda.imag()) < opts.axis_floor) {
                terminus = cplx{next.lambda.real(), 0.0};
                done_axis = true;
                break;
            }
            if (st.lambda.real() * next.lambda.real() < 0 &&
                std::abs(st.lambda.real()) > 2 * opts.axis_floor) {
                const double t = st.lambda.real() / (st.lambda.real() - next.lambda.real());
                terminus = st.lambda + t * (next.lambda - st.lambda);
                terminus = cplx{0.0, terminus.imag()};
                done_axis = true;
                break;
            }
            const cplx new_tangent = (next.lambda - st.lambda) / std::abs(next.lambda - st.lambda);
            tangent = new_tangent;
            st = next;
            push_sample(samples, st);
            if (iters <= 2 && h < opts.step) h = std::min(opts.step, 1.3 * h);
            if (iters > 4) h *= 0.5;
        }
        struct Res {
            std::vector<ArcSample> samples;
            bool dbl, axis;
            cplx term;
        };
        return Res{std::move(samples), done_double, done_axis, terminus};
    };

    auto fwd = trace_dir(+1);
    auto bwd = trace_dir(-1);

    std::reverse(bwd.samples.begin(), bwd.samples.end());
    arc.samples = std::move(bwd.samples);
    push_sample(arc.samples, st0);
    for (auto& s : fwd.samples) arc.samples.push_back(s);

    // report the double-point terminus when one side found it, else the axis hit
    if (fwd.dbl || bwd.dbl) {
        arc.hit_double = true;
        arc.terminus = fwd.dbl ? fwd.term : bwd.term;
    }
    if (fwd.axis || bwd.axis) {
        arc.hit_axis = true;
        if (!arc.hit_double) arc.terminus = fwd.axis ? fwd.term : bwd.term;
    }
    return arc;
}

}  // namespace zswkb
