#pragma once

#include <Eigen/Dense>

#include "gsrplab/errors.hpp"

namespace gsrplab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Inner product on a uniform grid: <x,y> = weight * sum_i x[i]*y[i].
/// With weight equal to the grid step, discrete sums approximate L2 integrals.
struct GridInnerProduct {
    double weight = 1.0;

    GridInnerProduct() = default;
    explicit GridInnerProduct(double w) : weight(w) {
        if (!(w > 0.0)) throw Error("GridInnerProduct: weight must be positive");
    }

    double dot(const Vector& x, const Vector& y) const {
        if (x.size() != y.size()) throw LengthMismatch("inner product: size mismatch");
        return weight * x.dot(y);
    }
    double norm(const Vector& x) const { return std::sqrt(weight) * x.norm(); }
};

/// Orthonormal basis of a subspace under a GridInnerProduct.
/// Columns satisfy weight * B^T B = I.
struct SubspaceBasis {
    Matrix basis;
    GridInnerProduct ip;
    double tol_used = 0.0;

    int dim() const { return static_cast<int>(basis.cols()); }
    int ambient_dim() const { return static_cast<int>(basis.rows()); }

    /// Orthogonal projection of x onto the subspace.
    Vector project(const Vector& x) const {
        return basis * (ip.weight * (basis.transpose() * x));
    }
};

enum class ProjectorKind { orthogonal, oblique };

struct Projector {
    Matrix matrix;
    ProjectorKind kind = ProjectorKind::orthogonal;
    SubspaceBasis range_basis;
    SubspaceBasis nullspace_basis;

    Vector apply(const Vector& x) const {
        if (x.size() != matrix.cols()) throw LengthMismatch("Projector::apply: size mismatch");
        return matrix * x;
    }
};

/// Conditioning threshold below which an oblique projector is refused.
inline constexpr double kDirectSumThreshold = 1e-8;

/// Moore-Penrose pseudoinverse via SVD. Singular values below
/// tol * sigma_max are treated as zero. tol < 0 selects
/// max(rows,cols) * machine epsilon.
Matrix pseudoinverse(const Matrix& m, double tol = -1.0);

/// Rank-revealing orthonormal basis of range(m) under ip.
/// max_rank >= 0 additionally caps the retained rank.
/// Throws ZeroSubspace when the numerical rank is zero.
SubspaceBasis orthonormal_basis(const Matrix& m, const GridInnerProduct& ip,
                                double tol = -1.0, int max_rank = -1);

/// Basis of the orthogonal complement of v in the ambient space.
SubspaceBasis orthogonal_complement(const SubspaceBasis& v);

/// P_V = V (V*V)^+ V*, realized on an orthonormal basis.
Projector orthogonal_projector(const SubspaceBasis& v);

/// Oblique projector P_{V1,S-perp} = V1 (S* V1)^+ S* with range
/// range(V1) and nullspace orthogonal to range(S). Throws
/// DirectSumViolation when range(V1) (+) S-perp fails to decompose
/// the ambient space (dimension mismatch or conditioning below
/// kDirectSumThreshold).
Projector oblique_projector(const Matrix& range_frame, const Matrix& sampling_frame,
                            const GridInnerProduct& ip, double tol = -1.0);
Projector oblique_projector(const SubspaceBasis& range, const SubspaceBasis& sampling);

/// Cosine of the maximal principal angle: inf over unit x in v1 of ||P_{v2} x||.
/// Smallest singular value of the cross-Gram of orthonormal bases; 0 whenever
/// dim v1 > dim v2.
double angle_cos(const SubspaceBasis& v1, const SubspaceBasis& v2);

/// sin(v1,v2) = sup over unit x in v1 of ||P_{v2-perp} x|| = sqrt(1 - cos^2).
double angle_sin(const SubspaceBasis& v1, const SubspaceBasis& v2);

/// Cosine of the angle between a single vector and a subspace.
double vector_angle_cos(const Vector& x, const SubspaceBasis& v);

namespace detail {
void require_finite(const Matrix& m, const char* what);
} // namespace detail

} // namespace gsrplab
