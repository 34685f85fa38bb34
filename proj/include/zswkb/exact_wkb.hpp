#pragma once

#include <optional>

#include "zswkb/geometry.hpp"
#include "zswkb/ode.hpp"
#include "zswkb/potential.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

/// Phase map z(x) = i∫_α^x sqrt(-V0) on a turning-point-free simply
/// connected neighborhood, with the branch anchored at a reference point.
struct PhaseMap {
    PotentialSpec spec;
    cplx lambda;
    cplx alpha;            // base point (usually a simple turning point)
    cplx anchor_x;         // branch anchor
    cplx sqrt_at_anchor;   // branch value of sqrt(-V0) there
    cplx z_at_anchor;      // i∫_α^anchor with that branch
    ContourPath cut;       // queries must not cross it

    /// z at x, continued from the anchor along a straight segment (or the
    /// provided polyline). Throws DomainError if the query crosses the cut.
    cplx z(cplx x, const std::vector<cplx>& via = {}) const;

    /// Branch value of sqrt(-V0) at x (same continuation rules).
    cplx sqrt_at(cplx x, const std::vector<cplx>& via = {}) const;
};

/// Anchors the branch so that Re z(x_ref) has the requested sign
/// ("Re z increases from x_ref toward α" <=> negative at x_ref).
PhaseMap make_phase_map(const PotentialSpec& spec, cplx lambda, cplx alpha, cplx x_ref,
                        bool re_z_negative_at_ref, ContourPath cut = {});

/// 𝓗(z) = (1/4)[A S'' - 2λA' - A'S'] / sqrt(-V0)³ with the branch value
/// sqrt_val of sqrt(-V0) at x.
cplx script_H(const PotentialSpec& spec, cplx x, cplx lambda, cplx sqrt_val);

/// Single-valued log-derivative d/dx log H(x) = 𝓗(z)·dz/dx; this is what the
/// symbol recursion integrates (no branch needed).
cplx h_log_deriv(const PotentialSpec& spec, cplx x, cplx lambda);

struct WKBSymbol {
    int sign = +1;         // +1 or -1
    cplx base_z0;          // z at the symbol base point x0
    cplx end_z;            // z at the path endpoint
    cplx end_x;
    double epsilon = 0;
    int N = 4;
    std::vector<cplx> w;   // orders -1..2N at the endpoint; w[k] = w_{k-1}
    cplx w_even, w_odd;    // partial sums
    double conv_ratio = 0; // max |w_n+2..|/|w_n..| tail ratio observed

    cplx order(int n) const { return w[static_cast<size_t>(n + 1)]; }
};

struct SymbolOptions {
    double prog_tol = 1e-9;
    double max_step_eps_frac = 0.25;  // node spacing ≤ ε * this
    double max_step_abs = 0.05;
};

/// Iterated integral operators 𝓘±, 𝓙 along a (±)-progressive path starting
/// at the symbol base x0 = path.front().
WKBSymbol symbol_iterate(const PhaseMap& pm, const ContourPath& path, double eps, int N,
                         int sign = +1, const SymbolOptions& opts = {});

/// x-plane polyline whose z-image is the straight segment z(x_from) → z(x_to)
/// (progressive by construction when Re(z_to - z_from) has the right sign).
ContourPath make_progressive_path(const PhaseMap& pm, cplx x_from, cplx x_to,
                                  int n_nodes = 64);

struct ExactWKBSolution {
    State2 u;     // solution of the original system
    State2 v;     // same solution in the g±-diagonalized variables
    cplx x;
    int sign;
    cplx base_x0;
    cplx alpha;
    cplx lambda;
    double epsilon;
};

/// Assembles u± at the endpoint of the symbol's path.
ExactWKBSolution exact_wkb_solution(const PhaseMap& pm, const WKBSymbol& symbol);

/// Wronskian of two exact WKB solutions sharing phase base, λ, ε and
/// evaluation point. Throws BaseMismatch otherwise.
cplx wronskian_pair(const ExactWKBSolution& a, const ExactWKBSolution& b);

struct ConnectionOptions {
    double base_depth = 0.3;  // fraction of the local Stokes-triangle scale
    double ode_rtol = 1e-12;
    StokesOptions stokes;
};

/// The three pairwise wronskians of the sectorial solutions u0, u1, u2
/// around a simple turning point, in the normalization where
/// W01 → 2i, W12 → -2i, W20 → ∓2 as ε ↓ 0.
struct ConnectionTriple {
    cplx W01, W12, W20;
    cplx x0, x1, x2;  // the base points used
    VanishingFactor factor;
};
ConnectionTriple connection_triple(const PotentialSpec& spec, cplx lambda,
                                   const TurningPoint& tp, double eps,
                                   const ConnectionOptions& opts = {});

/// The correction factor m(ε) of the eigenvalue condition
/// m(ε) e^{2z(β,λ,α)/ε} = 1; asymptotically δ(α, β).
cplx m_factor(const PotentialSpec& spec, cplx lambda, double eps, const Contour& contour,
              const TurningPoint& alpha, const TurningPoint& beta,
              const ConnectionOptions& opts = {});

/// Real-axis admissible contour for zero-phase λ = iμ (C0 = [-x*, x*]).
Contour real_axis_contour(const PotentialSpec& spec, double mu, double x_extent);

/// Builds C- ∪ C0 ∪ C+ for a pair of complex turning points: C0 along the
/// connecting Stokes line, C∓ by steepest descent toward Re → ∓∞.
Contour build_admissible_contour(const PotentialSpec& spec, cplx lambda,
                                 const TurningPoint& alpha, const TurningPoint& beta,
                                 double x_extent, const StokesOptions& opts = {});

}  // namespace zswkb
