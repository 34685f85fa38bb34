#pragma once

#include <functional>

#include "zswkb/potential.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

/// dy/dt = f(t, y) for a complex 2-vector, integrated with an adaptive
/// embedded Runge-Kutta (GSL rk8pd) on the flattened real system.
struct OdeOptions {
    double rtol = 1e-11;
    double atol = 1e-13;
    double h_init_frac = 1e-3;   // initial step as fraction of |t1-t0|
    double h_min_frac = 1e-12;   // step collapse threshold (StiffnessFailure)
};

using Rhs2 = std::function<void(double t, const State2& y, State2& dydt)>;

/// Integrate from t0 to t1 (either direction). Returns y(t1).
State2 integrate_ode(const Rhs2& rhs, State2 y0, double t0, double t1,
                     const OdeOptions& opts = {});

/// Right-hand side of the phase-removed Zakharov-Shabat system at real x:
///   v' = [[-i(λ+S'/2)/ε, A/ε], [-A/ε, i(λ+S'/2)/ε]] v
State2 zs_reduced_rhs(const PotentialSpec& spec, cplx lambda, double eps, cplx x,
                      const State2& v);

/// Integrate the reduced system along a complex-plane polyline.
State2 integrate_zs_along_path(const PotentialSpec& spec, cplx lambda, double eps,
                               const std::vector<cplx>& path, State2 v0,
                               const OdeOptions& opts = {});

/// Right-hand side of the g±-diagonalized system
///   v' = (i/ε) [[0, g₊], [-g₋, 0]] v
/// whose solutions the exact WKB ansatz approximates.
State2 zs_factored_rhs(const PotentialSpec& spec, cplx lambda, double eps, cplx x,
                       const State2& v);

State2 integrate_factored_along_path(const PotentialSpec& spec, cplx lambda, double eps,
                                     const std::vector<cplx>& path, State2 v0,
                                     const OdeOptions& opts = {});

}  // namespace zswkb
