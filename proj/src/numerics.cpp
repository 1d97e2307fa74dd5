#include "gsrplab/numerics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace gsrplab {

namespace detail {

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw NonFiniteInput(std::string(what) + ": non-finite entries");
}

} // namespace detail

namespace {

double default_rank_tol(const Matrix& m) {
    return static_cast<double>(std::max(m.rows(), m.cols())) *
           std::numeric_limits<double>::epsilon();
}

Eigen::BDCSVD<Matrix> thin_svd(const Matrix& m) {
    return Eigen::BDCSVD<Matrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

} // namespace

Matrix pseudoinverse(const Matrix& m, double tol) {
    detail::require_finite(m, "pseudoinverse");
    if (m.size() == 0) return Matrix(m.cols(), m.rows());
    if (tol < 0.0) tol = default_rank_tol(m);

    auto svd = thin_svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * (sv.size() > 0 ? sv(0) : 0.0);

    Vector inv_sv = Vector::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) inv_sv(i) = 1.0 / sv(i);

    return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

SubspaceBasis orthonormal_basis(const Matrix& m, const GridInnerProduct& ip,
                                double tol, int max_rank) {
    detail::require_finite(m, "orthonormal_basis");
    if (m.cols() == 0) throw ZeroSubspace("orthonormal_basis: no columns");
    if (tol < 0.0) tol = default_rank_tol(m);

    const double sw = std::sqrt(ip.weight);
    auto svd = thin_svd(sw * m);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * (sv.size() > 0 ? sv(0) : 0.0);

    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
    if (max_rank >= 0) rank = std::min(rank, max_rank);
    if (rank == 0) throw ZeroSubspace("orthonormal_basis: numerical rank is zero");

    SubspaceBasis out;
    out.basis = svd.matrixU().leftCols(rank) / sw;
    out.ip = ip;
    out.tol_used = tol;
    return out;
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& v) {
    const int n = v.ambient_dim();
    const int d = v.dim();
    if (d >= n) throw ZeroSubspace("orthogonal_complement: subspace spans the ambient space");

    const double sw = std::sqrt(v.ip.weight);
    // Full SVD of the scaled basis; trailing left singular vectors span the kernel of P_V.
    Eigen::BDCSVD<Matrix> svd(sw * v.basis, Eigen::ComputeFullU);
    SubspaceBasis out;
    out.basis = svd.matrixU().rightCols(n - d) / sw;
    out.ip = v.ip;
    out.tol_used = v.tol_used;
    return out;
}

Projector orthogonal_projector(const SubspaceBasis& v) {
    if (v.dim() == 0) throw ZeroSubspace("orthogonal_projector: empty basis");
    Projector p;
    p.matrix = v.ip.weight * (v.basis * v.basis.transpose());
    p.kind = ProjectorKind::orthogonal;
    p.range_basis = v;
    if (v.dim() < v.ambient_dim()) {
        p.nullspace_basis = orthogonal_complement(v);
    } else {
        p.nullspace_basis.basis = Matrix(v.ambient_dim(), 0);
        p.nullspace_basis.ip = v.ip;
    }
    return p;
}

Projector oblique_projector(const SubspaceBasis& range, const SubspaceBasis& sampling) {
    if (range.dim() == 0 || sampling.dim() == 0)
        throw ZeroSubspace("oblique_projector: empty subspace");
    if (range.dim() != sampling.dim())
        throw DirectSumViolation("oblique_projector: dim(range) != dim(sampling), direct sum fails");

    // Cross-Gram under the weighted inner product; with weighted-orthonormal
    // bases U/sqrt(w) this reduces to the Euclidean Gram of the scaled bases.
    const double w = range.ip.weight;
    Matrix gram = w * (sampling.basis.transpose() * range.basis);

    Eigen::JacobiSVD<Matrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smax > 0.0) || smin / smax < kDirectSumThreshold)
        throw DirectSumViolation("oblique_projector: range (+) sampling-complement is ill-posed "
                                 "(conditioning " + std::to_string(smax > 0 ? smin / smax : 0.0) + ")");

    Matrix sampling_adjoint = w * sampling.basis.transpose();
    Projector p;
    p.matrix = range.basis * gram.partialPivLu().solve(sampling_adjoint);
    p.kind = ProjectorKind::oblique;
    p.range_basis = range;
    if (sampling.dim() < sampling.ambient_dim()) {
        p.nullspace_basis = orthogonal_complement(sampling);
    } else {
        p.nullspace_basis.basis = Matrix(sampling.ambient_dim(), 0);
        p.nullspace_basis.ip = sampling.ip;
    }
    return p;
}

Projector oblique_projector(const Matrix& range_frame, const Matrix& sampling_frame,
                            const GridInnerProduct& ip, double tol) {
    auto range = orthonormal_basis(range_frame, ip, tol);
    auto sampling = orthonormal_basis(sampling_frame, ip, tol);
    return oblique_projector(range, sampling);
}

double angle_cos(const SubspaceBasis& v1, const SubspaceBasis& v2) {
    if (v1.dim() == 0 || v2.dim() == 0) throw ZeroSubspace("angle_cos: empty subspace");
    if (v1.dim() > v2.dim()) return 0.0;  // some direction of v1 must leave v2

    const double w = v1.ip.weight;
    Matrix gram = w * (v2.basis.transpose() * v1.basis);
    Eigen::JacobiSVD<Matrix> svd(gram);
    const auto& sv = svd.singularValues();
    double c = sv(sv.size() - 1);
    return std::clamp(c, 0.0, 1.0);
}

double angle_sin(const SubspaceBasis& v1, const SubspaceBasis& v2) {
    const double c = angle_cos(v1, v2);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

double vector_angle_cos(const Vector& x, const SubspaceBasis& v) {
    const double nx = v.ip.norm(x);
    if (!(nx > 0.0)) throw ZeroSubspace("vector_angle_cos: zero vector");
    return std::clamp(v.ip.norm(v.project(x)) / nx, 0.0, 1.0);
}

} // namespace gsrplab
