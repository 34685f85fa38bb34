#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zswkb/potential.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

enum class VanishingFactor { GPlus, GMinus };

/// A complex root of V0(·, λ), tagged by which factor g± vanishes there.
struct TurningPoint {
    cplx x;
    VanishingFactor factor = VanishingFactor::GMinus;
    int order = 1;
    cplx lambda;
};

struct ArcSample {
    cplx lambda;
    TurningPoint alpha, beta;
    cplx action;  // i∫ sqrt(-V0) between alpha and beta, Im > 0 branch
};

struct SpectralArc {
    std::vector<ArcSample> samples;
    int branch_id = 0;
    cplx terminus;            // refined endpoint (double point or axis crossing)
    bool hit_double = false;  // turning points coalesced
    bool hit_axis = false;    // reached the real or imaginary λ-axis
};

/// V0(x, λ) = -[λ + S'(x)/2]² - A(x)²  = g₋ g₊.
cplx V0(const PotentialSpec& spec, cplx x, cplx lambda);
cplx g_factor(const PotentialSpec& spec, cplx x, cplx lambda, VanishingFactor which);
cplx dg_factor(const PotentialSpec& spec, cplx x, cplx lambda, VanishingFactor which);

struct TurningPointOptions {
    int grid_n = 40;
    double dedup_radius = 1e-6;
    double tp_sep = 1e-4;  // |g'| threshold separating simple from higher order
    int newton_max_iter = 60;
};

std::vector<TurningPoint> find_turning_points(const PotentialSpec& spec, cplx lambda,
                                              const Rect& search_box,
                                              const TurningPointOptions& opts = {});

/// Continuation of a branch of sqrt(-V0) along a polyline. seed is the branch
/// value at path.front(). Returns the values at the polyline nodes.
std::vector<cplx> sqrt_mV0_along(const PotentialSpec& spec, cplx lambda,
                                 const std::vector<cplx>& path, cplx seed);

/// Canonical branch of sqrt(-V0): normalized to ~λ as Re x → +∞ and continued
/// to x along a straight query path; if that path crosses the cut, the query
/// is rerouted around the cut endpoint on the side obtained by rotating the
/// cut direction clockwise (for the zero-phase real cut: below the axis).
/// Throws OnCutError when the query cannot avoid crossing the cut.
cplx sqrt_mV0(const PotentialSpec& spec, cplx x, cplx lambda,
              const ContourPath& cut = {});

struct StokesOptions {
    Rect box{-12, 12, -12, 12};
    double max_arclength = 30;
    double step = 2e-3;          // base arclength step
    double launch_radius = 1e-3;
    double sing_margin = 1e-2;
    double tp_hit_radius = 1e-3;
};

/// The three Stokes lines Re{i∫sqrt(-V0)} = 0 emanating from a simple
/// turning point, launched 2π/3 apart in the local (x-tp)^{3/2} coordinate.
std::vector<ContourPath> trace_stokes(const PotentialSpec& spec, cplx lambda,
                                      const TurningPoint& tp,
                                      const StokesOptions& opts = {});

/// Steepest-descent line (Im{i∫sqrt(-V0)} constant) from a point; used to
/// build the C∓ pieces of admissible contours.
ContourPath trace_descent(const PotentialSpec& spec, cplx lambda, cplx from,
                          cplx seed_sqrt, int direction_sign,
                          const StokesOptions& opts = {});

struct Contour {
    ContourPath cminus, czero, cplus;
};

struct AdmissibilityReport {
    bool admissible = false;
    // per-condition diagnostics: (i) holomorphy, (ii) C- monotone,
    // (iii) |Re| on C0, (iv) C+ monotone
    bool holomorphic = false;
    bool cminus_monotone = false;
    double czero_max_abs_re = 0;
    bool cplus_monotone = false;
    double arc_tol = 0;
};

AdmissibilityReport check_admissible(const PotentialSpec& spec, cplx lambda,
                                     const Contour& contour, double arc_tol = 1e-8);

struct ActionResult {
    cplx value;
    cplx sqrt_at_start;  // branch value just past the start node
    cplx sqrt_at_end;    // branch value just before the end node
};

/// i∫ sqrt(-V0) along the path; square-root endpoint singularities are
/// removed by a t² reparametrization of the panels adjacent to turning
/// points. Branch continued from sqrt_seed at the start; without a seed the
/// branch giving Im(value) ≥ 0 is chosen (the H(μ) calibration).
ActionResult action_between(const PotentialSpec& spec, cplx lambda,
                            const ContourPath& path,
                            std::optional<cplx> sqrt_seed = std::nullopt,
                            double rel_tol = 1e-9);

/// Convenience: straight path between two turning points.
ActionResult action_between(const PotentialSpec& spec, cplx lambda,
                            const TurningPoint& a, const TurningPoint& b,
                            std::optional<cplx> sqrt_seed = std::nullopt,
                            double rel_tol = 1e-9);

struct ArcTraceOptions {
    double step = 0.01;       // initial |Δλ|
    double min_step = 1e-6;
    double arc_tol = 1e-8;    // |Re action| kept below this at samples
    int max_samples = 4000;
    double collision_radius = 5e-3;  // turning-point coalescence detection
    double axis_floor = 1e-4;
};

/// Predictor-corrector continuation of Re(action) = 0 in the λ-plane with
/// the turning points continued in tandem. Traces in both directions from
/// the seed.
SpectralArc trace_spectral_arc(const PotentialSpec& spec, cplx lambda_seed,
                               std::pair<TurningPoint, TurningPoint> pair,
                               const ArcTraceOptions& opts = {});

int delta_index(const TurningPoint& a, const TurningPoint& b);

enum class MMode { Leading, ExactWKB };

std::vector<EigenvalueRecord> quantize_on_arc(const PotentialSpec& spec,
                                              const SpectralArc& arc, double eps,
                                              MMode mode = MMode::Leading);

/// The four double-point values λ_D(σ, τ) of the sech(2x) phase family.
cplx lambda_double(int sigma, int tau);

/// Segment-chain vs cut crossing test (strict interior crossings only).
bool path_crosses(const std::vector<cplx>& path, const ContourPath& cut);

double distance_to_polyline(cplx p, const std::vector<cplx>& poly);

/// Newton refinement of a double turning point: solves g = g' = 0 in (x, λ).
struct DoublePoint {
    cplx x, lambda;
    VanishingFactor factor;
    bool converged = false;
};
DoublePoint refine_double_point(const PotentialSpec& spec, cplx x0, cplx lambda0,
                                VanishingFactor factor);

}  // namespace zswkb
