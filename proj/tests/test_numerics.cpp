#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsrplab/numerics.hpp"

#include <random>

using namespace gsrplab;

namespace {

const GridInnerProduct unit_ip{1.0};

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

} // namespace

TEST_CASE("pseudoinverse of the identity is the identity") {
    Matrix id = Matrix::Identity(3, 3);
    CHECK((pseudoinverse(id) - id).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pseudoinverse of a zero matrix is the transposed zero matrix") {
    Matrix z = Matrix::Zero(2, 3);
    Matrix p = pseudoinverse(z);
    CHECK(p.rows() == 3);
    CHECK(p.cols() == 2);
    CHECK(p.norm() == 0.0);
}

TEST_CASE("pseudoinverse satisfies the four Penrose identities") {
    Matrix m(3, 2);
    m << 1, 0, 0, 0, 0, 0;
    Matrix p = pseudoinverse(m);
    Matrix expected(2, 3);
    expected << 1, 0, 0, 0, 0, 0;
    CHECK((p - expected).norm() < 1e-12);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        Matrix a = random_matrix(rng, 6, 4) * random_matrix(rng, 4, 5);  // rank <= 4
        Matrix ap = pseudoinverse(a);
        const double tol = 1e-8 * std::max(1.0, a.norm());
        CHECK((a * ap * a - a).norm() < tol);
        CHECK((ap * a * ap - ap).norm() < tol);
        CHECK(((a * ap).transpose() - a * ap).norm() < tol);
        CHECK(((ap * a).transpose() - ap * a).norm() < tol);
    }
}

TEST_CASE("pseudoinverse rejects non-finite input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pseudoinverse(m), NonFiniteInput);
}

TEST_CASE("orthonormal_basis keeps an already-orthonormal column") {
    Matrix m(2, 1);
    m << 1, 0;
    auto b = orthonormal_basis(m, unit_ip);
    CHECK(b.dim() == 1);
    CHECK(std::abs(std::abs(b.basis(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(b.basis(1, 0)) < 1e-12);
}

TEST_CASE("orthonormal_basis collapses duplicate columns") {
    Matrix m(3, 2);
    m << 1, 1, 2, 2, -1, -1;
    CHECK(orthonormal_basis(m, unit_ip).dim() == 1);
}

TEST_CASE("orthonormal_basis recovers a known rank") {
    std::mt19937_64 rng(3);
    Matrix m = random_matrix(rng, 10, 3) * random_matrix(rng, 3, 4);
    auto b = orthonormal_basis(m, unit_ip);
    CHECK(b.dim() == 3);
    // Weighted orthonormality: w * B^T B = I.
    Matrix gram = b.ip.weight * (b.basis.transpose() * b.basis);
    CHECK((gram - Matrix::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("orthonormal_basis respects a non-unit grid weight") {
    GridInnerProduct ip{0.25};
    std::mt19937_64 rng(4);
    auto b = orthonormal_basis(random_matrix(rng, 8, 3), ip);
    Matrix gram = ip.weight * (b.basis.transpose() * b.basis);
    CHECK((gram - Matrix::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("orthonormal_basis rejects the zero matrix") {
    CHECK_THROWS_AS(orthonormal_basis(Matrix::Zero(4, 2), unit_ip), ZeroSubspace);
}

TEST_CASE("orthogonal projector onto the whole space is the identity") {
    std::mt19937_64 rng(5);
    auto b = orthonormal_basis(random_matrix(rng, 4, 4), unit_ip);
    Projector p = orthogonal_projector(b);
    CHECK((p.matrix - Matrix::Identity(4, 4)).norm() < 1e-10);
    CHECK(p.nullspace_basis.dim() == 0);
}

TEST_CASE("orthogonal projector onto coordinate and diagonal lines") {
    Matrix e1(2, 1);
    e1 << 1, 0;
    Projector p1 = orthogonal_projector(orthonormal_basis(e1, unit_ip));
    Matrix expect1(2, 2);
    expect1 << 1, 0, 0, 0;
    CHECK((p1.matrix - expect1).norm() < 1e-12);

    Matrix diag(2, 1);
    diag << 1, 1;
    Projector p2 = orthogonal_projector(orthonormal_basis(diag, unit_ip));
    Matrix expect2(2, 2);
    expect2 << 0.5, 0.5, 0.5, 0.5;
    CHECK((p2.matrix - expect2).norm() < 1e-12);
}

TEST_CASE("orthogonal projector is idempotent and self-adjoint under the weight") {
    GridInnerProduct ip{0.7};
    std::mt19937_64 rng(6);
    auto b = orthonormal_basis(random_matrix(rng, 9, 4), ip);
    Projector p = orthogonal_projector(b);
    CHECK((p.matrix * p.matrix - p.matrix).norm() <= 1e-10 * std::max(1.0, p.matrix.norm()));
    // Self-adjointness of P under <x,y> = w x.y is plain matrix symmetry.
    CHECK((p.matrix - p.matrix.transpose()).norm() < 1e-10);
    CHECK((p.matrix * b.basis - b.basis).norm() < 1e-10);
    CHECK((p.matrix * p.nullspace_basis.basis).norm() < 1e-10);
}

TEST_CASE("oblique projector reduces to the orthogonal one for matching spaces") {
    std::mt19937_64 rng(8);
    Matrix m = random_matrix(rng, 5, 2);
    auto b = orthonormal_basis(m, unit_ip);
    Projector ortho = orthogonal_projector(b);
    Projector obli = oblique_projector(m, m, unit_ip);
    CHECK((ortho.matrix - obli.matrix).norm() < 1e-10);
}

TEST_CASE("oblique projector matches the planar consistent-reconstruction picture") {
    // Range span{(1,1)}, samples along span{(1,0)}: x = (1, 0.4) must land on
    // (1,1) because the correction may only remove multiples of (0,1).
    Matrix v1(2, 1), s(2, 1);
    v1 << 1, 1;
    s << 1, 0;
    Projector p = oblique_projector(v1, s, unit_ip);
    Vector x(2);
    x << 1, 0.4;
    Vector px = p.apply(x);
    CHECK(px(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(px(1) == doctest::Approx(1.0).epsilon(1e-12));

    // Independent oracle: x + alpha (0,1) lies in span{(1,1)} only for
    // alpha = 0.6, giving (1,1).
    CHECK((px - v1.col(0)).norm() < 1e-12);
}

TEST_CASE("oblique projector refuses perpendicular range and sampling spaces") {
    Matrix v1(2, 1), s(2, 1);
    v1 << 0, 1;
    s << 1, 0;
    CHECK_THROWS_AS(oblique_projector(v1, s, unit_ip), DirectSumViolation);
}

TEST_CASE("oblique projector refuses a dimension mismatch") {
    std::mt19937_64 rng(9);
    Matrix v1 = random_matrix(rng, 6, 3);
    Matrix s = random_matrix(rng, 6, 2);
    CHECK_THROWS_AS(oblique_projector(v1, s, unit_ip), DirectSumViolation);
}

TEST_CASE("principal angles of simple planar pairs") {
    Matrix e1(2, 1), diag(2, 1), e2(2, 1);
    e1 << 1, 0;
    diag << 1, 1;
    e2 << 0, 1;
    auto b1 = orthonormal_basis(e1, unit_ip);
    auto bd = orthonormal_basis(diag, unit_ip);
    auto b2 = orthonormal_basis(e2, unit_ip);

    CHECK(angle_cos(b1, b1) == doctest::Approx(1.0));
    CHECK(angle_sin(b1, b1) == doctest::Approx(0.0));
    CHECK(angle_cos(b1, b2) == doctest::Approx(0.0));
    CHECK(angle_sin(b1, b2) == doctest::Approx(1.0));
    CHECK(angle_cos(bd, b1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(angle_sin(bd, b1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("angle identities on random pairs") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 50; ++t) {
        auto v1 = orthonormal_basis(random_matrix(rng, 8, 3), unit_ip);
        auto v2 = orthonormal_basis(random_matrix(rng, 8, 3), unit_ip);
        const double c = angle_cos(v1, v2);
        const double s = angle_sin(v1, v2);
        CHECK(std::abs(c * c + s * s - 1.0) < 1e-10);
        // Swapping to complements preserves the angle.
        CHECK(angle_cos(orthogonal_complement(v2), orthogonal_complement(v1)) ==
              doctest::Approx(c).epsilon(1e-9));
    }
}

TEST_CASE("angle cosine is zero when the first space is too large to embed") {
    std::mt19937_64 rng(11);
    auto big = orthonormal_basis(random_matrix(rng, 8, 5), unit_ip);
    auto small = orthonormal_basis(random_matrix(rng, 8, 2), unit_ip);
    CHECK(angle_cos(big, small) == 0.0);
}

TEST_CASE("orthogonal complement in the plane and of the full space") {
    Matrix e1(2, 1);
    e1 << 1, 0;
    auto b = orthonormal_basis(e1, unit_ip);
    auto comp = orthogonal_complement(b);
    CHECK(comp.dim() == 1);
    CHECK(std::abs(comp.basis(0, 0)) < 1e-12);
    CHECK(std::abs(std::abs(comp.basis(1, 0)) - 1.0) < 1e-12);

    std::mt19937_64 rng(12);
    auto full = orthonormal_basis(random_matrix(rng, 3, 3), unit_ip);
    CHECK_THROWS_AS(orthogonal_complement(full), ZeroSubspace);
}

TEST_CASE("orthogonal complement of a random subspace") {
    std::mt19937_64 rng(13);
    auto v = orthonormal_basis(random_matrix(rng, 8, 3), unit_ip);
    auto comp = orthogonal_complement(v);
    CHECK(comp.dim() == 5);
    CHECK((comp.basis.transpose() * v.basis).norm() < 1e-10);
}

TEST_CASE("projection norms respect the angle sandwich for vectors in a subspace") {
    std::mt19937_64 rng(14);
    std::normal_distribution<double> g;
    for (int t = 0; t < 100; ++t) {
        auto v1 = orthonormal_basis(random_matrix(rng, 7, 2), unit_ip);
        auto v2 = orthonormal_basis(random_matrix(rng, 7, 3), unit_ip);
        Vector coef(2);
        coef << g(rng), g(rng);
        Vector x = v1.basis * coef;
        const double xn = unit_ip.norm(x);
        if (!(xn > 1e-9)) continue;
        const double px = unit_ip.norm(v2.project(x));
        CHECK(px >= angle_cos(v1, v2) * xn - 1e-9);
        CHECK(px <= angle_sin(v1, orthogonal_complement(v2)) * xn + 1e-9);
    }
}
