#include "zswkb/ode.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <cmath>

#include "zswkb/errors.hpp"

namespace zswkb {

namespace {

struct GslCtx {
    const Rhs2* rhs;
};

int gsl_rhs_trampoline(double t, const double y[], double dydt[], void* params) {
    const auto* ctx = static_cast<GslCtx*>(params);
    State2 yc{cplx{y[0], y[1]}, cplx{y[2], y[3]}};
    State2 dc;
    (*ctx->rhs)(t, yc, dc);
    dydt[0] = dc[0].real();
    dydt[1] = dc[0].imag();
    dydt[2] = dc[1].real();
    dydt[3] = dc[1].imag();
    return GSL_SUCCESS;
}

struct GslHandlerGuard {
    gsl_error_handler_t* old;
    GslHandlerGuard() { old = gsl_set_error_handler_off(); }
    ~GslHandlerGuard() { gsl_set_error_handler(old); }
};

}  // namespace

State2 integrate_ode(const Rhs2& rhs, State2 y0, double t0, double t1,
                     const OdeOptions& opts) {
    if (t0 == t1) return y0;
    GslHandlerGuard guard;
    GslCtx ctx{&rhs};
    gsl_odeiv2_system sys{gsl_rhs_trampoline, nullptr, 4, &ctx};

    const double span = t1 - t0;
    const double h0 = span * opts.h_init_frac;
    gsl_odeiv2_driver* drv = gsl_odeiv2_driver_alloc_y_new(
        &sys, gsl_odeiv2_step_rk8pd, h0, opts.atol, opts.rtol);
    gsl_odeiv2_driver_set_hmin(drv, std::abs(span) * opts.h_min_frac);

    double y[4] = {y0[0].real(), y0[0].imag(), y0[1].real(), y0[1].imag()};
    double t = t0;
    const int status = gsl_odeiv2_driver_apply(drv, &t, t1, y);
    gsl_odeiv2_driver_free(drv);
    if (status != GSL_SUCCESS)
        throw StiffnessFailure("ODE step control failed (status " +
                               std::to_string(status) + ")");
    return State2{cplx{y[0], y[1]}, cplx{y[2], y[3]}};
}

State2 zs_reduced_rhs(const PotentialSpec& spec, cplx lambda, double eps, cplx x,
                      const State2& v) {
    const Derivs d = eval_derivs(spec, x);
    const cplx p = lambda + 0.5 * d.Sp;
    const cplx m11 = -I * p / eps;
    const cplx m12 = d.A / eps;
    return State2{m11 * v[0] + m12 * v[1], -m12 * v[0] - m11 * v[1]};
}

State2 integrate_zs_along_path(const PotentialSpec& spec, cplx lambda, double eps,
                               const std::vector<cplx>& path, State2 v0,
                               const OdeOptions& opts) {
    State2 v = v0;
    for (size_t i = 1; i < path.size(); ++i) {
        const cplx a = path[i - 1], b = path[i];
        if (a == b) continue;
        const cplx dir = b - a;
        Rhs2 rhs = [&](double t, const State2& y, State2& dy) {
            const cplx x = a + t * dir;
            const State2 f = zs_reduced_rhs(spec, lambda, eps, x, y);
            dy[0] = f[0] * dir;
            dy[1] = f[1] * dir;
        };
        v = integrate_ode(rhs, v, 0.0, 1.0, opts);
    }
    return v;
}

State2 zs_factored_rhs(const PotentialSpec& spec, cplx lambda, double eps, cplx x,
                       const State2& v) {
    const Derivs d = eval_derivs(spec, x);
    const cplx p = lambda + 0.5 * d.Sp;
    const cplx gp = -(p + I * d.A);
    const cplx gm = p - I * d.A;
    const cplx c = I / eps;
    return State2{c * gp * v[1], -c * gm * v[0]};
}

State2 integrate_factored_along_path(const PotentialSpec& spec, cplx lambda, double eps,
                                     const std::vector<cplx>& path, State2 v0,
                                     const OdeOptions& opts) {
    State2 v = v0;
    for (size_t i = 1; i < path.size(); ++i) {
        const cplx a = path[i - 1], b = path[i];
        if (a == b) continue;
        const cplx dir = b - a;
        Rhs2 rhs = [&](double t, const State2& y, State2& dy) {
            const cplx x = a + t * dir;
            const State2 f = zs_factored_rhs(spec, lambda, eps, x, y);
            dy[0] = f[0] * dir;
            dy[1] = f[1] * dir;
        };
        v = integrate_ode(rhs, v, 0.0, 1.0, opts);
    }
    return v;
}

}  // namespace zswkb
