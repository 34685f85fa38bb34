#include "zswkb/numerics.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

#include "zswkb/errors.hpp"

namespace zswkb {

const GaussLegendre& GaussLegendre::get(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    gsl_integration_glfixed_table* tab =
        gsl_integration_glfixed_table_alloc(static_cast<size_t>(order));
    GaussLegendre gl;
    gl.x.resize(order);
    gl.w.resize(order);
    for (int i = 0; i < order; ++i) {
        double xi, wi;
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &xi, &wi, tab);
        gl.x[i] = xi;
        gl.w[i] = wi;
    }
    gsl_integration_glfixed_table_free(tab);
    return cache.emplace(order, std::move(gl)).first->second;
}

cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, int order) {
    const auto& gl = GaussLegendre::get(order);
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    cplx sum = 0;
    for (size_t i = 0; i < gl.x.size(); ++i) sum += gl.w[i] * f(mid + half * gl.x[i]);
    return sum * half;
}

static cplx integrate_rec(const std::function<cplx(cplx)>& f, cplx a, cplx b, cplx whole,
                          double rel_tol, int order, int depth) {
    const cplx mid = 0.5 * (a + b);
    const cplx left = integrate_segment(f, a, mid, order);
    const cplx right = integrate_segment(f, mid, b, order);
    const cplx sum = left + right;
    const double scale = std::max(std::abs(sum), 1e-300);
    if (std::abs(sum - whole) <= rel_tol * scale || depth <= 0) return sum;
    return integrate_rec(f, a, mid, left, rel_tol, order, depth - 1) +
           integrate_rec(f, mid, b, right, rel_tol, order, depth - 1);
}

cplx integrate_segment_adaptive(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                double rel_tol, int order, int max_depth) {
    return integrate_rec(f, a, b, integrate_segment(f, a, b, order), rel_tol, order,
                         max_depth);
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      int order) {
    const auto& gl = GaussLegendre::get(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0;
    for (size_t i = 0; i < gl.x.size(); ++i) sum += gl.w[i] * f(mid + half * gl.x[i]);
    return sum * half;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    const size_t n = xs.size();
    if (n != ys.size() || n < 2) throw std::invalid_argument("fit_line: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    LineFit fit;
    fit.slope = (dn * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / dn;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / dn;
    for (size_t i = 0; i < n; ++i) {
        const double pred = fit.slope * xs[i] + fit.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys, double floor_y) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] > floor_y && xs[i] > 0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    return fit_line(lx, ly);
}

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       double f_tol, const std::function<double(double)>& df) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if (flo * fhi > 0)
        throw NumericalError("solve_bracketed: endpoints do not bracket a root");
    // bisect until the interval is small, then Newton-polish from the midpoint
    for (int it = 0; it < 200 && (hi - lo) > 1e-3 * (std::abs(lo) + std::abs(hi) + 1.0);
         ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if (flo * fm < 0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < 100; ++it) {
        if (std::abs(fx) <= f_tol) return x;
        double d;
        if (df) {
            d = df(x);
        } else {
            const double h = 1e-7 * (std::abs(x) + 1.0);
            d = (f(x + h) - f(x - h)) / (2 * h);
        }
        double xn = (d != 0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // fall back to bisection
        const double fn = f(xn);
        if (flo * fn < 0) {
            hi = xn;
            fhi = fn;
        } else {
            lo = xn;
            flo = fn;
        }
        x = xn;
        fx = fn;
    }
    if (std::abs(fx) <= f_tol * 100) return x;
    throw NumericalError("solve_bracketed: no convergence");
}

ComplexNewtonResult complex_newton(const std::function<cplx(cplx)>& F, cplx z0,
                                   double step_tol, int max_iter, double fd_step) {
    ComplexNewtonResult res;
    cplx z = z0;
    cplx fz = F(z);
    for (int it = 0; it < max_iter; ++it) {
        const double h = fd_step * (std::abs(z) + 1.0);
        // Richardson-extrapolated central difference along the real direction;
        // valid for analytic F.
        const cplx d1 = (F(z + h) - F(z - h)) / (2 * h);
        const cplx d2 = (F(z + 0.5 * h) - F(z - 0.5 * h)) / h;
        const cplx dF = (4.0 * d2 - d1) / 3.0;
        if (std::abs(dF) == 0) break;
        const cplx dz = fz / dF;
        z -= dz;
        fz = F(z);
        res.iterations = it + 1;
        if (std::abs(dz) <= step_tol) {
            res.converged = true;
            break;
        }
    }
    res.root = z;
    res.f_at_root = fz;
    return res;
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_string(EvMethod m) {
    switch (m) {
        case EvMethod::Direct: return "direct";
        case EvMethod::BSReal: return "BS-real";
        case EvMethod::BSArc: return "BS-arc";
        case EvMethod::ExactWKB: return "exact-WKB";
    }
    return "?";
}

}  // namespace zswkb
