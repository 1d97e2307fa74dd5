#pragma once

#include <optional>
#include <utility>

#include "gsrplab/numerics.hpp"

namespace gsrplab {

/// A frame of a subspace, described by its synthesis operator: columns are
/// the frame vectors on the grid. The analysis operator is the adjoint under
/// the grid inner product.
struct Frame {
    Matrix synthesis;
    GridInnerProduct ip;

    int ambient_dim() const { return static_cast<int>(synthesis.rows()); }
    int size() const { return static_cast<int>(synthesis.cols()); }

    /// Adjoint of the synthesis operator: (analysis() * x)[n] = <x, f_n>.
    Matrix analysis() const { return ip.weight * synthesis.transpose(); }
};

/// Tight two-sided energy bounds of the frame on its span: the smallest and
/// largest nonzero squared singular values of the weighted synthesis matrix.
std::pair<double, double> frame_bounds(const Frame& f, double tol = -1.0);

/// c[n] = <x, s_n> under the grid inner product.
Vector sample(const Frame& s, const Vector& x);

/// W c = sum_n c[n] w_n.
Vector synthesize(const Frame& w, const Vector& c);

enum class SchemeTag { orthogonal, consistent, subspace, regret, constrained };

const char* scheme_name(SchemeTag tag);

/// A built sampling-reconstruction scheme: end-to-end operator T, correction
/// filter Q (so that T = W Q S* whenever realizable), and the frames it was
/// built from. Immutable once built.
struct GsrpScheme {
    SchemeTag tag = SchemeTag::regret;
    double lambda = 0.0;  // meaningful only for the constrained tag
    Matrix correction;    // empty when the scheme is not realizable as W Q S*
    Matrix op;            // T
    std::optional<Frame> s;
    Frame w;
    std::optional<Frame> a;
    bool q_realizable = true;
};

/// Reference optimum T = P_W. Not realizable as W Q S* unless the
/// reconstruction space is contained in the sampling space; when a sampling
/// frame is supplied and the inclusion holds numerically, Q is also produced.
GsrpScheme build_orthogonal(const Frame& w, const std::optional<Frame>& s = std::nullopt);

/// Q = (S*W)^+, T = P_{W,S-perp}. Error-free on W; sample consistent.
GsrpScheme build_consistent(const Frame& s, const Frame& w);

/// Q = (W*W)^+ W* A (S*A)^+, T = P_W P_{A,S-perp}. Optimal for inputs in A.
GsrpScheme build_subspace(const Frame& s, const Frame& w, const Frame& a);

/// Q = (W*W)^+ W* S (S*S)^+, T = P_W P_S. Minimizes the worst-case regret.
GsrpScheme build_regret(const Frame& s, const Frame& w);

/// Q = lambda Q_sub + (1-lambda) Q_reg, T = lambda T_sub + (1-lambda) T_reg.
GsrpScheme build_constrained(const Frame& s, const Frame& w, const Frame& a, double lambda);

/// B = lambda P_{A,S-perp} + (1-lambda) P_S: an oblique projector with
/// nullspace S-perp; equals P_S + lambda P_{S-perp} P_{A,S-perp}.
Projector modified_subspace_B(const Frame& s, const Frame& a, double lambda);

/// beta(c) = || P_W S (S*S)^+ c - P_W A (S*A)^+ c ||: the constraint budget
/// of the constrained scheme; the built Q_lambda attains lambda * beta(c).
double beta_constraint_level(const Frame& s, const Frame& w, const Frame& a, const Vector& c);

/// x_r = T x. The reconstruction always lies in range(W).
Vector reconstruct(const GsrpScheme& scheme, const Vector& x);

} // namespace gsrplab
