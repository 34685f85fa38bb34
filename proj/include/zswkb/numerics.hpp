#pragma once

#include <functional>
#include <span>
#include <vector>

#include "zswkb/types.hpp"

namespace zswkb {

/// Gauss-Legendre nodes/weights on [-1,1], cached per order.
struct GaussLegendre {
    std::vector<double> x, w;
    static const GaussLegendre& get(int order);
};

/// ∫ f over the straight segment [a,b] in the complex plane, fixed-order GL.
cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, int order = 32);

/// Same, adaptive bisection until two half-panels agree to rel_tol.
cplx integrate_segment_adaptive(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                double rel_tol = 1e-12, int order = 32, int max_depth = 14);

/// Real integral over [a,b].
double integrate_real(const std::function<double(double)>& f, double a, double b, int order);

struct LineFit {
    double slope = 0, intercept = 0, r2 = 0;
};

/// Least-squares line through (x_i, y_i).
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

/// Fit of log(y) against log(x); points with y <= floor_y are dropped.
LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys, double floor_y = 0.0);

/// Monotone bracketed root of f on [lo,hi]: bisection plus Newton polish.
/// df may be empty (secant-style polish is used then).
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       double f_tol, const std::function<double(double)>& df = {});

/// Newton on an analytic F with numerically differenced derivative
/// (central differences at step fd_step, one Richardson extrapolation level).
struct ComplexNewtonResult {
    cplx root;
    cplx f_at_root;
    int iterations = 0;
    bool converged = false;
};
ComplexNewtonResult complex_newton(const std::function<cplx(cplx)>& F, cplx z0,
                                   double step_tol = 1e-10, int max_iter = 40,
                                   double fd_step = 1e-6);

/// FNV-1a hash of a byte string, hex-encoded. Used for config provenance.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace zswkb
