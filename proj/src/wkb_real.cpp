#include "zswkb/wkb_real.hpp"

#include <cmath>

#include "zswkb/errors.hpp"
#include "zswkb/numerics.hpp"

namespace zswkb {

namespace {
constexpr double kPi = 3.14159265358979323846;

double A_real(const PotentialSpec& spec, double x) { return eval_A(spec, x).real(); }
double dA_real(const PotentialSpec& spec, double x) { return eval_derivs(spec, x).dA.real(); }

// (A(x)² - μ²) / (x*² - x²), finite and positive on [0, x*] for bell-shaped A.
double ratio_factor(const PotentialSpec& spec, double mu, double x_star, double x) {
    const double ax = std::abs(x);
    if (x_star - ax < 1e-6 * x_star) {
        // near the turning point use (A-μ)/(x*-|x|) ≈ -A'(midpoint)
        const double q = -dA_real(spec, 0.5 * (ax + x_star));
        const double a = A_real(spec, ax);
        return q * (a + mu) / (x_star + ax);
    }
    const double a = A_real(spec, ax);
    return (a * a - mu * mu) / ((x_star - ax) * (x_star + ax));
}

double action_integral(const PotentialSpec& spec, double mu, double x_star, int order) {
    // x = x* sin θ turns sqrt(A²-μ²) dx into x*² cos²θ sqrt(ratio) dθ
    return integrate_real(
        [&](double th) {
            const double c = std::cos(th);
            const double x = x_star * std::sin(th);
            return x_star * x_star * c * c * std::sqrt(ratio_factor(spec, mu, x_star, x));
        },
        -0.5 * kPi, 0.5 * kPi, order);
}

double action_derivative(const PotentialSpec& spec, double mu, double x_star, int order) {
    // dH/dμ = -μ ∫ dx / sqrt(A²-μ²); same substitution removes the singularity
    return -mu * integrate_real(
                     [&](double th) {
                         const double x = x_star * std::sin(th);
                         return 1.0 / std::sqrt(ratio_factor(spec, mu, x_star, x));
                     },
                     -0.5 * kPi, 0.5 * kPi, order);
}
}  // namespace

double turning_point(const PotentialSpec& spec, double mu) {
    const double amax = spec.a_max();
    if (!(mu > 0.0 && mu < amax)) throw OutOfRange("turning_point: need 0 < μ < A_max");
    if (!spec.symmetric) throw OutOfRange("turning_point: spec must be symmetric");

    // bracket to the right of the maximum
    double hi = 1.0;
    while (A_real(spec, hi) > mu) {
        hi *= 2.0;
        if (hi > 1e9) throw NumericalError("turning_point: bracket search failed");
    }
    const double x = solve_bracketed([&](double t) { return A_real(spec, t) - mu; }, 0.0, hi,
                                     1e-14 * amax, [&](double t) { return dA_real(spec, t); });
    return x;
}

ActionProfile action_H(const PotentialSpec& spec, double mu, int gl_order) {
    const double amax = spec.a_max();
    if (mu == amax) return {mu, 0.0, 0.0, action_derivative(spec, mu * (1 - 1e-9),
                                                            turning_point(spec, mu * (1 - 1e-9)),
                                                            gl_order)};
    const double xs = turning_point(spec, mu);
    const double h1 = action_integral(spec, mu, xs, gl_order);
    const double h2 = action_integral(spec, mu, xs, 2 * gl_order);
    if (std::abs(h2 - h1) > 1e-8 * std::max(std::abs(h2), 1e-12))
        throw NumericalError("action_H: quadrature did not certify under order doubling");
    ActionProfile ap;
    ap.mu = mu;
    ap.x_star = xs;
    ap.H = h2;
    ap.dH_dmu = action_derivative(spec, mu, xs, 2 * gl_order);
    return ap;
}

std::vector<EigenvalueRecord> bs_eigenvalues(const PotentialSpec& spec, double eps,
                                             double mu_min, int gl_order) {
    if (eps <= 0) throw ConfigError("bs_eigenvalues: ε must be positive");
    const double amax = spec.a_max();
    if (mu_min < 0 || mu_min >= amax)
        throw OutOfRange("bs_eigenvalues: need μ_min in [0, A_max)");

    const double mu_lo = mu_min > 0 ? mu_min : 1e-8 * amax;
    const double H_top = action_H(spec, mu_lo, gl_order).H;
    const double f_tol = 1e-11 * H_top;

    std::vector<EigenvalueRecord> out;
    for (int n = 0;; ++n) {
        const double target = kPi * (n + 0.5) * eps;
        if (target > H_top) break;
        // H is strictly decreasing on (0, A_max); bracket and polish
        const double mu_n = solve_bracketed(
            [&](double m) { return action_integral(spec, m, turning_point(spec, m), gl_order) - target; },
            mu_lo, amax * (1.0 - 1e-12), f_tol,
            [&](double m) { return action_derivative(spec, m, turning_point(spec, m), gl_order); });
        EigenvalueRecord rec;
        rec.lambda = cplx{0.0, mu_n};
        rec.n = n;
        rec.epsilon = eps;
        rec.method = EvMethod::BSReal;
        rec.diag["H_residual"] =
            std::abs(action_H(spec, mu_n, gl_order).H - target);
        out.push_back(std::move(rec));
    }
    return out;
}

CountResult count_eigenvalues(const PotentialSpec& spec, double eps, double mu1, double mu2) {
    if (!(0 < mu1 && mu1 <= mu2 && mu2 <= spec.a_max()))
        throw OutOfRange("count_eigenvalues: need 0 < μ1 ≤ μ2 ≤ A_max");
    CountResult cr;
    if (mu1 == mu2) {
        cr.count = 0;
        cr.raw = 0;
        cr.error_bound = 1.0;
        return cr;
    }
    const double H1 = action_H(spec, mu1).H;
    const double H2 = action_H(spec, mu2).H;
    cr.raw = (H1 - H2) / (kPi * eps);
    cr.count = std::lround(cr.raw);
    cr.error_bound = 1.0;
    return cr;
}

int norming_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

AdmissibilityWindow admissibility_window(const PotentialSpec& spec, WindowKind kind) {
    if (spec.decay_class == DecayClass::CompactSmooth)
        throw UnsupportedDecayClass("admissibility window undefined for compact-smooth data");
    AdmissibilityWindow w;
    w.kind = kind;
    w.basis = spec.decay_class;
    w.basis_param = spec.decay_exponent;
    if (kind == WindowKind::Reflection) {
        w.alpha_max = 1.0;  // both tail classes admit any α < 1
    } else {
        w.alpha_max = (spec.decay_class == DecayClass::Polynomial)
                          ? spec.decay_exponent / (spec.decay_exponent + 1.0)
                          : 1.0;
    }
    return w;
}

}  // namespace zswkb
