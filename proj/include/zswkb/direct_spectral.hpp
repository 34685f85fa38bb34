#pragma once

#include <vector>

#include "zswkb/ode.hpp"
#include "zswkb/potential.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

/// Jost-matching output at one (λ, ε).
struct ScatteringData {
    cplx lambda;
    double epsilon;
    cplx a, b, R;
    double residual;  // |det T - 1|
};

enum class Side { Left, Right };
enum class Branch { Plus, Minus };

struct JostOptions {
    double tail_tol = 1e-12;
    double ode_tol = 1e-11;
    double lambda_floor = 1e-4;
    double x_trunc_override = 0;  // >0 forces the truncation radius
    double x_trunc_cap = 1e6;
};

/// Truncation radius: the potential tail beyond it contributes less than
/// tail_tol to the Jost remainder. For Im λ > 0 the decaying-mode kernel
/// weight is used, for real λ the oscillatory (integration by parts) bound;
/// both fall back to the plain ∫(A+|S'|/2) bound when that is smaller.
double x_truncation(const PotentialSpec& spec, cplx lambda, double eps,
                    const JostOptions& opts = {});

/// Jost solution of the reduced system at x_eval, integrated from the side's
/// truncation point with the free asymptotic initial vector.
State2 jost_solve(const PotentialSpec& spec, cplx lambda, double eps, Side side,
                  Branch branch, double x_eval, const JostOptions& opts = {});

/// Scaled form: true value = v * exp(log_scale). Keeps exponentials of
/// complex λ out of the integrated quantities.
struct JostScaled {
    State2 v;
    cplx log_scale;
};
JostScaled jost_solve_scaled(const PotentialSpec& spec, cplx lambda, double eps,
                             Side side, Branch branch, double x_eval,
                             const JostOptions& opts = {});

ScatteringData scattering_data(const PotentialSpec& spec, double lambda, double eps,
                               const JostOptions& opts = {});

struct LocateOptions {
    JostOptions jost;
    double newton_tol = 1e-10;
    double boundary_tol = 1e-12;
    int boundary_min_samples = 24;
    int max_subdivisions = 2000;
};

/// All eigenvalues inside the rectangle (upper half-plane), found by
/// argument-principle counting + bisection + Newton refinement.
/// Sorted by Im λ descending.
std::vector<EigenvalueRecord> locate_eigenvalues(const PotentialSpec& spec, double eps,
                                                 const Rect& region,
                                                 const LocateOptions& opts = {});

/// Proportionality constant γ between the left and right decaying Jost
/// solutions at an eigenvalue, cross-checked at x = 0, ±1.
cplx norming_constant(const PotentialSpec& spec, const EigenvalueRecord& rec, double eps,
                      const JostOptions& opts = {});

struct ReflectionRow {
    double epsilon;
    double absR;
    double logAbsR;
};
std::vector<ReflectionRow> reflection_sweep(const PotentialSpec& spec, double lambda,
                                            const std::vector<double>& eps_list,
                                            const JostOptions& opts = {});

}  // namespace zswkb
