#pragma once

#include <string>
#include <vector>

#include "zswkb/errors.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

enum class Family { SechScaled, Sech2xPhase, AlgebraicTail, GaussianTail, SplineBump };
enum class DecayClass { Polynomial, Exponential, CompactSmooth };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// A potential pair (A, S) with closed-form derivatives and the metadata the
/// near-zero admissibility formulas need. Immutable after construction.
struct PotentialSpec {
    Family family = Family::SechScaled;
    double amplitude = 1.0;   // A0 for sech, C for tails, height for the bump
    double scale = 1.0;       // k in sech(kx); support half-width for the bump
    double decay_exponent = 1.0;  // d (polynomial) or sigma (exponential)
    bool analytic = true;
    DecayClass decay_class = DecayClass::Exponential;
    bool symmetric = true;
    double strip_height = 0;  // rho0 of the analyticity domain D(rho0, theta0)
    double cone_tan = 1.0;    // tan(theta0)
    double decay_constant_c = 1.0;  // the constant c of the scale functions

    double a_max() const { return amplitude; }
    bool has_phase() const { return family == Family::Sech2xPhase; }

    static PotentialSpec sech_scaled(double A0, double k = 1.0);
    static PotentialSpec sech2x_phase();
    static PotentialSpec algebraic_tail(double C, double d);
    static PotentialSpec gaussian_tail(double C);
    static PotentialSpec spline_bump(double height, double half_width);

    std::string to_json() const;
    static PotentialSpec from_json(const std::string& js);

    /// Poles/branch points of A (and S) inside a box; empty for entire families.
    std::vector<cplx> singularities(const Rect& box) const;

    /// True if x lies inside the declared analyticity domain D(rho0, theta0).
    bool in_domain(cplx x) const;
};

struct Derivs {
    cplx A, dA, Sp, Spp;  // A, A', S', S''
};

cplx eval_A(const PotentialSpec& spec, cplx x);
cplx eval_S(const PotentialSpec& spec, cplx x);
Derivs eval_derivs(const PotentialSpec& spec, cplx x);

/// Near-zero scale functions a(λ), b(μ) of the decay class.
struct DecayScales {
    double a_scale, b_scale;
};
DecayScales decay_scales(const PotentialSpec& spec, double lambda, double mu);

/// ∫_X^∞ (A + |S'|/2) dx, closed form per family (upper bound for tails).
double tail_integral(const PotentialSpec& spec, double X);

}  // namespace zswkb
