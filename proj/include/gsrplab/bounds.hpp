#pragma once

#include "gsrplab/gsrp.hpp"

namespace gsrplab {

/// Cosines and sines of every subspace-pair angle referenced by the
/// regret-error bound formulas. Each cos/sin pair refers to the same
/// ordered pair of subspaces, so cos^2 + sin^2 = 1.
struct AngleSet {
    double cos_ws = 0, sin_ws = 0;            // (W, S)
    double cos_wperp_s = 0, sin_wperp_s = 0;  // (W-perp, S)
    double cos_as = 0, sin_as = 0;            // (A, S)
    double cos_aperp_s = 0, sin_aperp_s = 0;  // (A-perp, S)
    double cos_a_sperp = 0, sin_a_sperp = 0;  // (A, S-perp)
    double cos_bs = 0, sin_bperp_s = 0;       // (B, S) and (B-perp, S)
    double cos_a_wperp = 0, sin_aw = 0;       // (A, W-perp) and (A, W)
    double lambda = 0;
};

struct ErrorReport {
    double absolute_error = 0;  // ||x - Tx||
    double regret_error = 0;    // ||P_W x - Tx||
    double optimal_error = 0;   // ||P_{W-perp} x||
    double snr_db = 0;          // 20 log10(||x|| / ||x - Tx||)
};

struct BoundReport {
    double lower = 0;
    double upper = 0;
    double measured = 0;
    double slack_lower = 0;  // measured - lower
    double slack_upper = 0;  // upper - measured
};

/// Orthogonal projectors onto the four subspaces a bound row may reference.
struct ProjectionSet {
    Projector p_w, p_s, p_a, p_b;
    GridInnerProduct ip;
};

ProjectionSet make_projections(const Frame& s, const Frame& w, const Frame& a, double lambda);

ErrorReport error_report(const GsrpScheme& scheme, const Vector& x);

AngleSet angle_set(const Frame& s, const Frame& w, const Frame& a, double lambda);

/// Lower/upper bound on the regret error ||P_W x - T x|| for the scheme's
/// row of the bound table, against the measured value. Throws UnsupportedRow
/// for the orthogonal scheme, whose regret error is identically zero.
BoundReport regret_bounds(const GsrpScheme& scheme, const AngleSet& angles,
                          const Vector& x, const ProjectionSet& proj);

/// Bound formulas for the constrained scheme restricted to inputs in A:
/// (1-lambda) cos(A,S-perp) cos(W-perp,S) ||x|| <= ||R x|| <=
/// (1-lambda) sin(A,S) sin(W,S) ||x||, plus the induced two-sided bound on
/// the absolute error. Requires sin(x, A) <= 1e-8.
struct SubspaceInputBounds {
    BoundReport regret;
    BoundReport absolute;
};
SubspaceInputBounds subspace_input_bounds(const AngleSet& angles, double lambda,
                                          const Vector& x, const GsrpScheme& constrained,
                                          const ProjectionSet& proj);

/// Pure-formula variant (no measurement): regret bounds for x in A of given norm.
std::pair<double, double> subspace_input_regret_bounds(const AngleSet& angles,
                                                       double lambda, double x_norm);

/// ||E_l x|| <= l ||E_sub x|| + (1-l) ||E_reg x||, and the same for R.
struct ConvexityCheck {
    double e_lhs = 0, e_rhs = 0;
    double r_lhs = 0, r_rhs = 0;
    bool holds = false;
};
ConvexityCheck convexity_bound_check(const Frame& s, const Frame& w, const Frame& a,
                                     double lambda, const Vector& x);

/// The simple safe choice lambda = cos(A,S), which caps ||R x|| by sqrt(2)||x||
/// and ||E x|| by sqrt(3)||x|| for every input.
double safe_lambda(const AngleSet& angles);

/// Two-sided bounds on cos^2(B,S) and sin^2(B-perp,S) in terms of the (A,S)
/// angles, plus the monotonicity cos^2(B,S) >= cos^2(A,S).
struct BAngleReport {
    double cos2_bs = 0, sin2_bperp_s = 0;
    double cos2_lower = 0, cos2_upper = 0;
    double sin2_lower = 0, sin2_upper = 0;
    bool cos_bounds_hold = false;
    bool sin_bounds_hold = false;
    bool monotonicity_holds = false;
    bool all_hold = false;
};
BAngleReport b_angle_inequalities(const Frame& s, const Frame& a, double lambda,
                                  double slack = 1e-8);

/// Sandwich scalars for the constrained scheme's regret bound.
double constrained_alpha(const AngleSet& angles, double lambda);
double constrained_beta(const AngleSet& angles, double lambda);

} // namespace gsrplab
