#include "gsrplab/gsrp.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace gsrplab {

namespace {

void require_grid(const Frame& f, const Vector& x, const char* what) {
    if (x.size() != f.ambient_dim())
        throw GridMismatch(std::string(what) + ": signal does not live on the frame's grid");
}

SubspaceBasis span_of(const Frame& f) {
    return orthonormal_basis(f.synthesis, f.ip);
}

} // namespace

const char* scheme_name(SchemeTag tag) {
    switch (tag) {
        case SchemeTag::orthogonal: return "orthogonal";
        case SchemeTag::consistent: return "consistent";
        case SchemeTag::subspace: return "subspace";
        case SchemeTag::regret: return "regret";
        case SchemeTag::constrained: return "constrained";
    }
    return "?";
}

std::pair<double, double> frame_bounds(const Frame& f, double tol) {
    detail::require_finite(f.synthesis, "frame_bounds");
    if (f.size() == 0) throw ZeroSubspace("frame_bounds: empty frame");
    if (tol < 0.0)
        tol = static_cast<double>(std::max(f.synthesis.rows(), f.synthesis.cols())) *
              std::numeric_limits<double>::epsilon();

    Eigen::BDCSVD<Matrix> svd(std::sqrt(f.ip.weight) * f.synthesis);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * sv(0);
    double smin = -1.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) smin = sv(i);
    if (smin < 0.0) throw ZeroSubspace("frame_bounds: zero frame");
    return {smin * smin, sv(0) * sv(0)};
}

Vector sample(const Frame& s, const Vector& x) {
    require_grid(s, x, "sample");
    return s.ip.weight * (s.synthesis.transpose() * x);
}

Vector synthesize(const Frame& w, const Vector& c) {
    if (c.size() != w.size())
        throw LengthMismatch("synthesize: coefficient count does not match the frame");
    return w.synthesis * c;
}

GsrpScheme build_orthogonal(const Frame& w, const std::optional<Frame>& s) {
    auto wb = span_of(w);
    GsrpScheme scheme;
    scheme.tag = SchemeTag::orthogonal;
    scheme.op = orthogonal_projector(wb).matrix;
    scheme.w = w;
    scheme.s = s;
    scheme.q_realizable = false;
    if (s) {
        auto sb = span_of(*s);
        // Realizable as W Q S* only under the inclusion W within S.
        if (angle_sin(wb, sb) < 1e-8) {
            scheme.q_realizable = true;
            Matrix ws = w.analysis() * w.synthesis;
            Matrix ss = s->analysis() * s->synthesis;
            scheme.correction =
                pseudoinverse(ws) * (w.analysis() * s->synthesis) * pseudoinverse(ss);
        }
    }
    return scheme;
}

GsrpScheme build_consistent(const Frame& s, const Frame& w) {
    if (s.ambient_dim() != w.ambient_dim())
        throw GridMismatch("build_consistent: frames live on different grids");
    auto sb = span_of(s);
    auto wb = span_of(w);
    Projector t = oblique_projector(wb, sb);  // throws DirectSumViolation when W (+) S-perp fails

    GsrpScheme scheme;
    scheme.tag = SchemeTag::consistent;
    scheme.op = t.matrix;
    scheme.correction = pseudoinverse(s.analysis() * w.synthesis);
    scheme.s = s;
    scheme.w = w;
    return scheme;
}

GsrpScheme build_subspace(const Frame& s, const Frame& w, const Frame& a) {
    auto sb = span_of(s);
    auto wb = span_of(w);
    auto ab = span_of(a);
    Projector pas = oblique_projector(ab, sb);  // direct sum checked on the (A,S) pair
    Projector pw = orthogonal_projector(wb);

    GsrpScheme scheme;
    scheme.tag = SchemeTag::subspace;
    scheme.op = pw.matrix * pas.matrix;
    Matrix ws = w.analysis() * w.synthesis;
    scheme.correction = pseudoinverse(ws) * (w.analysis() * a.synthesis) *
                        pseudoinverse(s.analysis() * a.synthesis);
    scheme.s = s;
    scheme.w = w;
    scheme.a = a;
    return scheme;
}

GsrpScheme build_regret(const Frame& s, const Frame& w) {
    auto sb = span_of(s);
    auto wb = span_of(w);
    Projector pw = orthogonal_projector(wb);
    Projector ps = orthogonal_projector(sb);

    GsrpScheme scheme;
    scheme.tag = SchemeTag::regret;
    scheme.op = pw.matrix * ps.matrix;
    Matrix ws = w.analysis() * w.synthesis;
    scheme.correction = pseudoinverse(ws) * (w.analysis() * s.synthesis) *
                        pseudoinverse(s.analysis() * s.synthesis);
    scheme.s = s;
    scheme.w = w;
    return scheme;
}

GsrpScheme build_constrained(const Frame& s, const Frame& w, const Frame& a, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw LambdaOutOfRange("build_constrained: lambda must lie in [0,1]");
    GsrpScheme sub = build_subspace(s, w, a);
    GsrpScheme reg = build_regret(s, w);

    GsrpScheme scheme;
    scheme.tag = SchemeTag::constrained;
    scheme.lambda = lambda;
    scheme.op = lambda * sub.op + (1.0 - lambda) * reg.op;
    scheme.correction = lambda * sub.correction + (1.0 - lambda) * reg.correction;
    scheme.s = s;
    scheme.w = w;
    scheme.a = a;
    return scheme;
}

Projector modified_subspace_B(const Frame& s, const Frame& a, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw LambdaOutOfRange("modified_subspace_B: lambda must lie in [0,1]");
    auto sb = span_of(s);
    auto ab = span_of(a);
    Projector pas = oblique_projector(ab, sb);
    Projector ps = orthogonal_projector(sb);

    Projector b;
    b.matrix = lambda * pas.matrix + (1.0 - lambda) * ps.matrix;
    b.kind = lambda == 0.0 ? ProjectorKind::orthogonal : ProjectorKind::oblique;
    // range(B) = B(S) since the nullspace of B is S-perp.
    b.range_basis = orthonormal_basis(b.matrix * sb.basis, s.ip);
    b.nullspace_basis = ps.nullspace_basis;
    return b;
}

double beta_constraint_level(const Frame& s, const Frame& w, const Frame& a, const Vector& c) {
    if (c.size() != s.size())
        throw LengthMismatch("beta_constraint_level: sample sequence does not match the sampling frame");
    auto sb = span_of(s);
    auto ab = span_of(a);
    (void)oblique_projector(ab, sb);  // enforce the (A,S) direct-sum precondition
    auto wb = span_of(w);

    Vector from_s = s.synthesis * (pseudoinverse(s.analysis() * s.synthesis) * c);
    Vector from_a = a.synthesis * (pseudoinverse(s.analysis() * a.synthesis) * c);
    Vector diff = wb.project(from_s) - wb.project(from_a);
    return s.ip.norm(diff);
}

Vector reconstruct(const GsrpScheme& scheme, const Vector& x) {
    if (x.size() != scheme.op.cols())
        throw GridMismatch("reconstruct: signal does not live on the scheme's grid");
    return scheme.op * x;
}

} // namespace gsrplab
