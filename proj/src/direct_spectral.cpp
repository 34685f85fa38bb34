#include "zswkb/direct_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zswkb/errors.hpp"
#include "zswkb/numerics.hpp"

namespace zswkb {

namespace {
constexpr double kPi = 3.14159265358979323846;

double point_tail_bound(const PotentialSpec& spec, double X) {
    const Derivs d = eval_derivs(spec, X);
    return std::abs(d.A) + 0.5 * std::abs(d.Sp);
}
}  // namespace

double x_truncation(const PotentialSpec& spec, cplx lambda, double eps,
                    const JostOptions& opts) {
    if (opts.x_trunc_override > 0) return opts.x_trunc_override;
    if (spec.family == Family::SplineBump) return spec.scale;

    // Effective tail contribution to the Jost remainder. The raw bound is
    // ∫_X^∞ (A + |S'|/2); for |λ| bounded away from 0 the kernel carries an
    // extra factor ε/(2|λ|): a decaying exponential for Im λ > 0, an
    // oscillation (integration by parts) for real λ.
    const double alam = std::abs(lambda);
    const double kernel_gain =
        alam > 0 ? std::min(1.0, eps / (2.0 * alam)) : 1.0;
    auto crit = [&](double X) {
        return std::min(tail_integral(spec, X), point_tail_bound(spec, X) * kernel_gain);
    };

    double X = 1.0;
    while (crit(X) > opts.tail_tol) {
        X *= 2.0;
        if (X > opts.x_trunc_cap)
            throw TailError("tail tolerance unreachable for this family (X > cap)");
    }
    if (X <= 1.0) return 1.0;
    // bisect down to the smallest adequate radius (keeps integration spans short)
    double lo = X / 2.0, hi = X;
    for (int it = 0; it < 60 && hi - lo > 1e-3 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (crit(mid) > opts.tail_tol ? lo : hi) = mid;
    }
    return hi;
}

JostScaled jost_solve_scaled(const PotentialSpec& spec, cplx lambda, double eps,
                             Side side, Branch branch, double x_eval,
                             const JostOptions& opts) {
    if (eps <= 0) throw ConfigError("jost: ε must be positive");
    const double X = x_truncation(spec, lambda, eps, opts);
    if (std::abs(x_eval) > X + 1e-12)
        throw DomainError("jost: x_eval outside [-X_trunc, X_trunc]");

    const double x_start = (side == Side::Left) ? -X : X;
    // free asymptotics: plus -> (0, e^{iλx/ε}), minus -> (e^{-iλx/ε}, 0)
    JostScaled out;
    if (branch == Branch::Plus) {
        out.v = State2{0.0, 1.0};
        out.log_scale = I * lambda * x_start / eps;
    } else {
        out.v = State2{1.0, 0.0};
        out.log_scale = -I * lambda * x_start / eps;
    }
    if (x_eval == x_start) return out;

    OdeOptions ode;
    ode.rtol = opts.ode_tol;
    Rhs2 rhs = [&](double x, const State2& y, State2& dy) {
        const State2 f = zs_reduced_rhs(spec, lambda, eps, x, y);
        dy = f;
    };
    out.v = integrate_ode(rhs, out.v, x_start, x_eval, ode);
    return out;
}

State2 jost_solve(const PotentialSpec& spec, cplx lambda, double eps, Side side,
                  Branch branch, double x_eval, const JostOptions& opts) {
    const JostScaled js = jost_solve_scaled(spec, lambda, eps, side, branch, x_eval, opts);
    const cplx s = std::exp(js.log_scale);
    return State2{js.v[0] * s, js.v[1] * s};
}

namespace {
cplx wronskian_scaled(const JostScaled& a, const JostScaled& b) {
    return wronskian(a.v, b.v) * std::exp(a.log_scale + b.log_scale);
}
}  // namespace

ScatteringData scattering_data(const PotentialSpec& spec, double lambda, double eps,
                               const JostOptions& opts) {
    if (std::abs(lambda) < opts.lambda_floor)
        throw NearZeroLambda("λ below the continuous-spectrum floor; use the near-zero sweep");

    const auto lp = jost_solve_scaled(spec, lambda, eps, Side::Left, Branch::Plus, 0, opts);
    const auto lm = jost_solve_scaled(spec, lambda, eps, Side::Left, Branch::Minus, 0, opts);
    const auto rp = jost_solve_scaled(spec, lambda, eps, Side::Right, Branch::Plus, 0, opts);
    const auto rm = jost_solve_scaled(spec, lambda, eps, Side::Right, Branch::Minus, 0, opts);

    // f^l_+ = a f^r_+ + b f^r_- with W(f^r_+, f^r_-) = -1
    ScatteringData sd;
    sd.lambda = lambda;
    sd.epsilon = eps;
    sd.a = -wronskian_scaled(lp, rm);
    sd.b = wronskian_scaled(lp, rp);
    const cplx a_star = wronskian_scaled(lm, rp);
    const cplx b_star = -wronskian_scaled(lm, rm);
    sd.residual = std::abs(sd.a * a_star - sd.b * b_star - 1.0);
    sd.R = sd.b / sd.a;
    return sd;
}

namespace {

struct FCache {
    const PotentialSpec& spec;
    double eps;
    double X;
    const JostOptions& opts;
    std::map<std::pair<double, double>, cplx> memo;

    cplx operator()(cplx lam) {
        const auto key = std::make_pair(lam.real(), lam.imag());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        JostOptions jo = opts;
        jo.x_trunc_override = X;
        // decaying pair: left solution carrying the e^{-iλx/ε} label, right the
        // e^{+iλx/ε} one; their wronskian is analytic with zeros at eigenvalues
        const auto phi = jost_solve_scaled(spec, lam, eps, Side::Left, Branch::Minus, 0, jo);
        const auto psi = jost_solve_scaled(spec, lam, eps, Side::Right, Branch::Plus, 0, jo);
        const cplx val = wronskian(phi.v, psi.v);
        memo.emplace(key, val);
        return val;
    }
};

// Accumulated argument change of F along the segment [a,b], refining until
// each phase increment is below 0.8π.
double arg_change_on_segment(FCache& F, cplx a, cplx b, double boundary_tol, int depth) {
    const cplx fa = F(a), fb = F(b);
    if (std::abs(fa) <= boundary_tol || std::abs(fb) <= boundary_tol)
        throw BoundaryZero("F vanishes on the counting boundary");
    const double d = std::arg(fb / fa);
    if (std::abs(d) <= 0.8 * kPi) {
        if (depth > 36) return d;
        // one sanity refinement: large hidden swings show up as inconsistency
        if (std::abs(b - a) < 1e-9) return d;
        const cplx mid = 0.5 * (a + b);
        const double d2 = std::arg(F(mid) / fa) + std::arg(fb / F(mid));
        if (std::abs(d2 - d) < 1e-3) return d2;
        return arg_change_on_segment(F, a, mid, boundary_tol, depth + 1) +
               arg_change_on_segment(F, mid, b, boundary_tol, depth + 1);
    }
    if (depth > 36) throw BoundaryZero("phase refinement exhausted near the boundary");
    const cplx mid = 0.5 * (a + b);
    return arg_change_on_segment(F, a, mid, boundary_tol, depth + 1) +
           arg_change_on_segment(F, mid, b, boundary_tol, depth + 1);
}

long winding_number(FCache& F, const Rect& r, double boundary_tol, int min_samples) {
    const cplx c[4] = {{r.re0, r.im0}, {r.re1, r.im0}, {r.re1, r.im1}, {r.re0, r.im1}};
    double total = 0;
    for (int e = 0; e < 4; ++e) {
        const cplx a = c[e], b = c[(e + 1) % 4];
        const int n = std::max(min_samples / 4, 4);
        for (int i = 0; i < n; ++i) {
            const cplx p = a + (b - a) * (static_cast<double>(i) / n);
            const cplx q = a + (b - a) * (static_cast<double>(i + 1) / n);
            total += arg_change_on_segment(F, p, q, boundary_tol, 0);
        }
    }
    const double w = total / (2 * kPi);
    const long wi = std::lround(w);
    if (std::abs(w - static_cast<double>(wi)) > 0.05)
        throw BoundaryZero("winding integral did not converge to an integer");
    return wi;
}

void subdivide_and_refine(FCache& F, const Rect& r, long count, double newton_tol,
                          double boundary_tol, int min_samples, int& budget,
                          std::vector<cplx>& roots) {
    if (count <= 0) return;
    if (--budget < 0) throw NumericalError("eigenvalue search: subdivision budget exhausted");

    const double diag = std::hypot(r.width(), r.height());
    if (count == 1 && diag < 0.2) {
        auto nr = complex_newton([&](cplx z) { return F(z); }, r.center(), newton_tol, 60);
        if (nr.converged && r.contains(nr.root, 0.05 * diag)) {
            roots.push_back(nr.root);
            return;
        }
        // Newton escaped: fall through and split further
    }
    if (diag < 1e-8) {
        // cluster tighter than the splitting resolution: report the center
        for (long k = 0; k < count; ++k) roots.push_back(r.center());
        return;
    }

    const bool split_re = r.width() > r.height();
    for (double frac : {0.5, 0.53, 0.47, 0.57, 0.43, 0.61}) {
        Rect r1 = r, r2 = r;
        if (split_re) {
            const double s = r.re0 + frac * r.width();
            r1.re1 = s;
            r2.re0 = s;
        } else {
            const double s = r.im0 + frac * r.height();
            r1.im1 = s;
            r2.im0 = s;
        }
        try {
            const long c1 = winding_number(F, r1, boundary_tol, min_samples);
            subdivide_and_refine(F, r1, c1, newton_tol, boundary_tol, min_samples, budget,
                                 roots);
            subdivide_and_refine(F, r2, count - c1, newton_tol, boundary_tol, min_samples,
                                 budget, roots);
            return;
        } catch (const BoundaryZero&) {
            continue;  // a zero sat on the split line; try a shifted cut
        }
    }
    throw BoundaryZero("could not find a zero-free splitting line");
}

}  // namespace

std::vector<EigenvalueRecord> locate_eigenvalues(const PotentialSpec& spec, double eps,
                                                 const Rect& region,
                                                 const LocateOptions& opts) {
    if (region.im0 < opts.jost.lambda_floor)
        throw DomainError("locate_eigenvalues: region must avoid the real axis by λ_floor");
    // one truncation radius for the whole region keeps F analytic in λ;
    // the bottom edge has the slowest decay
    const double X =
        x_truncation(spec, cplx{0.0, region.im0}, eps, opts.jost);
    FCache F{spec, eps, X, opts.jost, {}};

    const long total = winding_number(F, region, opts.boundary_tol, opts.boundary_min_samples);
    std::vector<cplx> roots;
    int budget = opts.max_subdivisions;
    subdivide_and_refine(F, region, total, opts.newton_tol, opts.boundary_tol,
                         opts.boundary_min_samples, budget, roots);
    if (static_cast<long>(roots.size()) != total)
        throw NumericalError("eigenvalue count mismatch: winding=" + std::to_string(total) +
                             " refined=" + std::to_string(roots.size()));

    std::sort(roots.begin(), roots.end(),
              [](cplx a, cplx b) { return a.imag() > b.imag(); });
    std::vector<EigenvalueRecord> out;
    out.reserve(roots.size());
    for (cplx r : roots) {
        EigenvalueRecord rec;
        rec.lambda = r;
        rec.epsilon = eps;
        rec.method = EvMethod::Direct;
        rec.diag["abs_F"] = std::abs(F(r));
        rec.diag["winding_total"] = static_cast<double>(total);
        out.push_back(std::move(rec));
    }
    return out;
}

cplx norming_constant(const PotentialSpec& spec, const EigenvalueRecord& rec, double eps,
                      const JostOptions& opts) {
    if (rec.method != EvMethod::Direct)
        throw ConfigError("norming_constant: record must come from the direct solver");
    const cplx lam = rec.lambda;

    cplx gamma{};
    double spread = 0;
    bool first = true;
    for (double xe : {0.0, 1.0, -1.0}) {
        const auto phi = jost_solve_scaled(spec, lam, eps, Side::Left, Branch::Minus, xe, opts);
        const auto psi = jost_solve_scaled(spec, lam, eps, Side::Right, Branch::Plus, xe, opts);
        // identical log prefactors on both sides, so the ratio is direct
        const cplx num = phi.v[0] * std::conj(psi.v[0]) + phi.v[1] * std::conj(psi.v[1]);
        const double den = std::norm(psi.v[0]) + std::norm(psi.v[1]);
        const cplx g = num / den;
        const State2 resid{phi.v[0] - g * psi.v[0], phi.v[1] - g * psi.v[1]};
        const double rel = norm2(resid) / norm2(phi.v);
        if (rel > 1e-4)
            throw NotAnEigenvalue("left/right Jost solutions are not proportional (residual " +
                                  std::to_string(rel) + ")");
        if (first) {
            gamma = g;
            first = false;
        } else {
            spread = std::max(spread, std::abs(g - gamma));
        }
    }
    if (spread > 1e-5)
        throw NotAnEigenvalue("norming constant spread across x samples too large");
    return gamma;
}

std::vector<ReflectionRow> reflection_sweep(const PotentialSpec& spec, double lambda,
                                            const std::vector<double>& eps_list,
                                            const JostOptions& opts) {
    std::vector<ReflectionRow> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        const ScatteringData sd = scattering_data(spec, lambda, eps, opts);
        const double a = std::abs(sd.R);
        rows.push_back({eps, a, a > 0 ? std::log(a) : -750.0});
    }
    return rows;
}

}  // namespace zswkb
