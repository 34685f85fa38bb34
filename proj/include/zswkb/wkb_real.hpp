#pragma once

#include <vector>

#include "zswkb/potential.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

/// Action integral H(μ) = ∫_{-x*}^{x*} sqrt(A² - μ²) dx and its μ-derivative.
struct ActionProfile {
    double mu;
    double x_star;
    double H;
    double dH_dmu;
};

enum class WindowKind { Reflection, Eigenvalue };

/// Open upper bound alpha_max of the admissible exponent window λ ≥ ε^α.
struct AdmissibilityWindow {
    WindowKind kind;
    double alpha_max;
    DecayClass basis;
    double basis_param;
};

/// Right turning point x*(μ): the positive root of A(x) = μ.
double turning_point(const PotentialSpec& spec, double mu);

/// Quadrature with the endpoint square-root singularity removed by
/// x = x* sin θ; value certified by doubling the GL order.
ActionProfile action_H(const PotentialSpec& spec, double mu, int gl_order = 200);

/// Bohr-Sommerfeld eigenvalues λ = iμ_n from H(μ) = π(n+1/2)ε.
std::vector<EigenvalueRecord> bs_eigenvalues(const PotentialSpec& spec, double eps,
                                             double mu_min, int gl_order = 200);

struct CountResult {
    long count;          // round((H(μ1)-H(μ2))/(πε))
    double raw;          // the un-rounded ratio
    double error_bound;  // guaranteed |R(ε)| ≤ 1
};
CountResult count_eigenvalues(const PotentialSpec& spec, double eps, double mu1, double mu2);

int norming_sign(int n);

AdmissibilityWindow admissibility_window(const PotentialSpec& spec, WindowKind kind);

}  // namespace zswkb
