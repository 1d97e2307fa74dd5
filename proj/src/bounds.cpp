#include "gsrplab/bounds.hpp"

#include <cmath>
#include <limits>

namespace gsrplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio(double num, double den) {
    if (den > 1e-300) return num / den;
    return num > 1e-300 ? kInf : 0.0;
}

double residual_norm(const Projector& p, const Vector& x, const GridInnerProduct& ip) {
    return ip.norm(x - p.matrix * x);
}

SubspaceBasis span_of(const Frame& f) { return orthonormal_basis(f.synthesis, f.ip); }

BoundReport make_report(double lower, double upper, double measured) {
    BoundReport r;
    r.lower = lower;
    r.upper = upper;
    r.measured = measured;
    r.slack_lower = measured - lower;
    r.slack_upper = upper - measured;
    return r;
}

} // namespace

double constrained_alpha(const AngleSet& a, double lambda) {
    const double q = ratio(a.cos_aperp_s * a.cos_aperp_s, a.sin_aperp_s * a.sin_aperp_s);
    return std::sqrt(1.0 + lambda * lambda * q) * a.cos_wperp_s;
}

double constrained_beta(const AngleSet& a, double lambda) {
    const double q = ratio(a.sin_as * a.sin_as, a.cos_as * a.cos_as);
    return std::sqrt(1.0 + lambda * lambda * q) * a.sin_ws;
}

ProjectionSet make_projections(const Frame& s, const Frame& w, const Frame& a, double lambda) {
    ProjectionSet ps;
    ps.ip = s.ip;
    ps.p_w = orthogonal_projector(span_of(w));
    ps.p_s = orthogonal_projector(span_of(s));
    ps.p_a = orthogonal_projector(span_of(a));
    ps.p_b = orthogonal_projector(modified_subspace_B(s, a, lambda).range_basis);
    return ps;
}

ErrorReport error_report(const GsrpScheme& scheme, const Vector& x) {
    if (x.size() != scheme.op.cols())
        throw GridMismatch("error_report: signal does not live on the scheme's grid");
    const GridInnerProduct ip = scheme.w.ip;
    auto wb = span_of(scheme.w);

    Vector xr = scheme.op * x;
    Vector pwx = wb.project(x);

    ErrorReport rep;
    rep.absolute_error = ip.norm(x - xr);
    rep.regret_error = ip.norm(pwx - xr);
    rep.optimal_error = ip.norm(x - pwx);
    rep.snr_db = rep.absolute_error > 0.0
                     ? 20.0 * std::log10(ip.norm(x) / rep.absolute_error)
                     : kInf;
    return rep;
}

AngleSet angle_set(const Frame& s, const Frame& w, const Frame& a, double lambda) {
    auto sb = span_of(s);
    auto wb = span_of(w);
    auto ab = span_of(a);
    auto wperp = orthogonal_complement(wb);
    auto aperp = orthogonal_complement(ab);
    auto sperp = orthogonal_complement(sb);

    AngleSet out;
    out.lambda = lambda;
    out.cos_ws = angle_cos(wb, sb);
    out.sin_ws = angle_sin(wb, sb);
    out.cos_wperp_s = angle_cos(wperp, sb);
    out.sin_wperp_s = angle_sin(wperp, sb);
    out.cos_as = angle_cos(ab, sb);
    out.sin_as = angle_sin(ab, sb);
    out.cos_aperp_s = angle_cos(aperp, sb);
    out.sin_aperp_s = angle_sin(aperp, sb);
    out.cos_a_sperp = angle_cos(ab, sperp);
    out.sin_a_sperp = angle_sin(ab, sperp);
    out.cos_a_wperp = angle_cos(ab, wperp);
    out.sin_aw = angle_sin(ab, wb);

    Projector b = modified_subspace_B(s, a, lambda);
    out.cos_bs = angle_cos(b.range_basis, sb);
    auto bperp = orthogonal_complement(b.range_basis);
    out.sin_bperp_s = angle_sin(bperp, sb);
    return out;
}

BoundReport regret_bounds(const GsrpScheme& scheme, const AngleSet& a,
                          const Vector& x, const ProjectionSet& proj) {
    if (scheme.tag == SchemeTag::orthogonal)
        throw UnsupportedRow("regret_bounds: the orthogonal row is identically zero");
    if (x.size() != scheme.op.cols())
        throw GridMismatch("regret_bounds: signal does not live on the scheme's grid");

    const GridInnerProduct ip = proj.ip;
    const double measured = ip.norm(proj.p_w.matrix * x - scheme.op * x);

    double lower = 0.0, upper = 0.0;
    switch (scheme.tag) {
        case SchemeTag::consistent: {
            const double nw = residual_norm(proj.p_w, x, ip);
            lower = ratio(a.cos_wperp_s, a.sin_wperp_s) * nw;
            upper = ratio(a.sin_ws, a.cos_ws) * nw;
            break;
        }
        case SchemeTag::subspace: {
            const double na = residual_norm(proj.p_a, x, ip);
            lower = ratio(a.cos_wperp_s, a.sin_aperp_s) * na;
            upper = ratio(a.sin_ws, a.cos_as) * na;
            break;
        }
        case SchemeTag::regret: {
            const double ns = residual_norm(proj.p_s, x, ip);
            lower = a.cos_wperp_s * ns;
            upper = a.sin_ws * ns;
            break;
        }
        case SchemeTag::constrained: {
            const double nb = residual_norm(proj.p_b, x, ip);
            lower = constrained_alpha(a, scheme.lambda) * nb;
            upper = constrained_beta(a, scheme.lambda) * nb;
            break;
        }
        default:
            throw UnsupportedRow("regret_bounds: unknown scheme row");
    }
    return make_report(lower, upper, measured);
}

std::pair<double, double> subspace_input_regret_bounds(const AngleSet& a,
                                                       double lambda, double x_norm) {
    const double lower = (1.0 - lambda) * a.cos_a_sperp * a.cos_wperp_s * x_norm;
    const double upper = (1.0 - lambda) * a.sin_as * a.sin_ws * x_norm;
    return {lower, upper};
}

SubspaceInputBounds subspace_input_bounds(const AngleSet& a, double lambda,
                                          const Vector& x, const GsrpScheme& constrained,
                                          const ProjectionSet& proj) {
    const GridInnerProduct ip = proj.ip;
    const double xn = ip.norm(x);
    if (!(xn > 0.0)) throw ZeroSubspace("subspace_input_bounds: zero input");
    if (residual_norm(proj.p_a, x, ip) / xn > 1e-8)
        throw InputNotInSubspace("subspace_input_bounds: input does not lie in A");

    Vector xr = constrained.op * x;
    const double measured_regret = ip.norm(proj.p_w.matrix * x - xr);
    const double measured_abs = ip.norm(x - xr);

    auto [rl, ru] = subspace_input_regret_bounds(a, lambda, xn);

    const double om = 1.0 - lambda;
    const double abs_lower =
        std::sqrt(a.cos_a_wperp * a.cos_a_wperp +
                  om * om * a.cos_a_sperp * a.cos_a_sperp * a.cos_wperp_s * a.cos_wperp_s) * xn;
    const double abs_upper =
        std::sqrt(a.sin_aw * a.sin_aw +
                  om * om * a.sin_as * a.sin_as * a.sin_ws * a.sin_ws) * xn;

    SubspaceInputBounds out;
    out.regret = make_report(rl, ru, measured_regret);
    out.absolute = make_report(abs_lower, abs_upper, measured_abs);
    return out;
}

ConvexityCheck convexity_bound_check(const Frame& s, const Frame& w, const Frame& a,
                                     double lambda, const Vector& x) {
    GsrpScheme sub = build_subspace(s, w, a);
    GsrpScheme reg = build_regret(s, w);
    GsrpScheme con = build_constrained(s, w, a, lambda);
    const GridInnerProduct ip = s.ip;
    auto wb = span_of(w);
    Vector pwx = wb.project(x);

    ConvexityCheck c;
    c.e_lhs = ip.norm(x - con.op * x);
    c.e_rhs = lambda * ip.norm(x - sub.op * x) + (1.0 - lambda) * ip.norm(x - reg.op * x);
    c.r_lhs = ip.norm(pwx - con.op * x);
    c.r_rhs = lambda * ip.norm(pwx - sub.op * x) + (1.0 - lambda) * ip.norm(pwx - reg.op * x);
    const double slack = 1e-9;
    c.holds = c.e_lhs <= c.e_rhs * (1.0 + slack) + slack &&
              c.r_lhs <= c.r_rhs * (1.0 + slack) + slack;
    return c;
}

double safe_lambda(const AngleSet& angles) { return angles.cos_as; }

BAngleReport b_angle_inequalities(const Frame& s, const Frame& a, double lambda,
                                  double slack) {
    auto sb = span_of(s);
    auto ab = span_of(a);
    auto sperp = orthogonal_complement(sb);
    auto aperp = orthogonal_complement(ab);

    const double cos_as = angle_cos(ab, sb);
    const double sin_as = angle_sin(ab, sb);
    const double cos_a_sperp = angle_cos(ab, sperp);
    const double sin_a_sperp = angle_sin(ab, sperp);
    const double cos_aperp_s = angle_cos(aperp, sb);
    const double sin_aperp_s = angle_sin(aperp, sb);

    Projector b = modified_subspace_B(s, a, lambda);
    const double cos_bs = angle_cos(b.range_basis, sb);
    auto bperp = orthogonal_complement(b.range_basis);
    const double sin_bperp_s = angle_sin(bperp, sb);

    const double l2 = lambda * lambda;
    BAngleReport rep;
    rep.cos2_bs = cos_bs * cos_bs;
    rep.sin2_bperp_s = sin_bperp_s * sin_bperp_s;
    rep.cos2_lower = 1.0 / (1.0 + l2 * ratio(sin_as * sin_as, cos_as * cos_as));
    rep.cos2_upper = 1.0 / (1.0 + l2 * ratio(cos_a_sperp * cos_a_sperp, sin_a_sperp * sin_a_sperp));
    rep.sin2_lower = rep.cos2_lower;
    rep.sin2_upper = 1.0 / (1.0 + l2 * ratio(cos_aperp_s * cos_aperp_s, sin_aperp_s * sin_aperp_s));

    rep.cos_bounds_hold = rep.cos2_bs >= rep.cos2_lower - slack &&
                          rep.cos2_bs <= rep.cos2_upper + slack;
    rep.sin_bounds_hold = rep.sin2_bperp_s >= rep.sin2_lower - slack &&
                          rep.sin2_bperp_s <= rep.sin2_upper + slack;
    rep.monotonicity_holds = rep.cos2_bs >= cos_as * cos_as - slack;
    rep.all_hold = rep.cos_bounds_hold && rep.sin_bounds_hold && rep.monotonicity_holds;
    return rep;
}

} // namespace gsrplab
