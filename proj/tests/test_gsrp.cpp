#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsrplab/gsrp.hpp"

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

Vector random_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

// The planar geometry used throughout: W = span{(1,1)}, S = span{(1,0)},
// x = (1, 0.4).
struct Planar {
    Frame s, w;
    Vector x;
    Planar() {
        Matrix ms(2, 1), mw(2, 1);
        ms << 1, 0;
        mw << 1, 1;
        s = Frame{ms, unit_ip};
        w = Frame{mw, unit_ip};
        x = Vector(2);
        x << 1, 0.4;
    }
};

} // namespace

TEST_CASE("frame bounds of orthonormal, duplicated, and scaled columns") {
    Matrix ortho = Matrix::Identity(3, 3).leftCols(2);
    auto [a1, b1] = frame_bounds(Frame{ortho, unit_ip});
    CHECK(a1 == doctest::Approx(1.0));
    CHECK(b1 == doctest::Approx(1.0));

    Matrix dup(2, 2);
    dup << 1, 1, 0, 0;
    auto [a2, b2] = frame_bounds(Frame{dup, unit_ip});
    CHECK(a2 == doctest::Approx(2.0));
    CHECK(b2 == doctest::Approx(2.0));

    Matrix diag(2, 2);
    diag << 1, 0, 0, 2;
    auto [a3, b3] = frame_bounds(Frame{diag, unit_ip});
    CHECK(a3 == doctest::Approx(1.0));
    CHECK(b3 == doctest::Approx(4.0));
}

TEST_CASE("sampling annihilates the orthogonal complement of S") {
    std::mt19937_64 rng(1);
    Frame s{random_matrix(rng, 6, 2), unit_ip};
    auto sb = orthonormal_basis(s.synthesis, unit_ip);
    Vector y = random_vector(rng, 6);
    Vector perp = y - sb.project(y);
    CHECK(sample(s, perp).norm() < 1e-10);

    // Identity frame: samples are just the weighted signal.
    GridInnerProduct ip{0.5};
    Frame id{Matrix::Identity(4, 4), ip};
    Vector x = random_vector(rng, 4);
    CHECK((sample(id, x) - ip.weight * x).norm() < 1e-12);
}

TEST_CASE("synthesis is the plain column combination") {
    Frame w{Matrix::Identity(2, 2), unit_ip};
    Vector c(2);
    c << 1, 1;
    Vector out = synthesize(w, c);
    CHECK(out(0) == 1.0);
    CHECK(out(1) == 1.0);
    CHECK_THROWS_AS(synthesize(w, Vector::Zero(3)), LengthMismatch);
    CHECK(synthesize(w, Vector::Zero(2)).norm() == 0.0);
}

TEST_CASE("orthogonal scheme projects onto W") {
    Planar p;
    GsrpScheme scheme = build_orthogonal(p.w);
    Vector xr = reconstruct(scheme, p.x);
    CHECK(xr(0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(xr(1) == doctest::Approx(0.7).epsilon(1e-12));

    Vector in_w = 2.5 * p.w.synthesis.col(0);
    CHECK((reconstruct(scheme, in_w) - in_w).norm() < 1e-12);
    Vector perp(2);
    perp << 1, -1;
    CHECK(reconstruct(scheme, perp).norm() < 1e-12);
}

TEST_CASE("orthogonal scheme is marked realizable only under inclusion") {
    std::mt19937_64 rng(2);
    Matrix big = random_matrix(rng, 7, 4);
    Frame s{big, unit_ip};
    Frame w{big.leftCols(2), unit_ip};  // W inside S
    GsrpScheme inc = build_orthogonal(w, s);
    CHECK(inc.q_realizable);
    Matrix via_q = w.synthesis * inc.correction * s.analysis();
    CHECK((via_q - inc.op).norm() < 1e-8 * std::max(1.0, inc.op.norm()));

    Frame w2{random_matrix(rng, 7, 2), unit_ip};
    CHECK_FALSE(build_orthogonal(w2, s).q_realizable);
    CHECK_FALSE(build_orthogonal(w2).q_realizable);
}

TEST_CASE("consistent scheme fixes W and reproduces the planar oracle") {
    Planar p;
    GsrpScheme scheme = build_consistent(p.s, p.w);
    Vector xr = reconstruct(scheme, p.x);
    CHECK(xr(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(xr(1) == doctest::Approx(1.0).epsilon(1e-12));

    Vector in_w = -1.3 * p.w.synthesis.col(0);
    CHECK((reconstruct(scheme, in_w) - in_w).norm() < 1e-12);

    Matrix perp_w(2, 1);
    perp_w << 0, 1;  // perpendicular to S
    CHECK_THROWS_AS(build_consistent(p.s, Frame{perp_w, unit_ip}), DirectSumViolation);
}

TEST_CASE("consistent scheme is sample consistent on random instances") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        Frame s{random_matrix(rng, 8, 3), unit_ip};
        Frame w{random_matrix(rng, 8, 3), unit_ip};
        GsrpScheme scheme;
        try {
            scheme = build_consistent(s, w);
        } catch (const DirectSumViolation&) {
            continue;
        }
        Vector x = random_vector(rng, 8);
        CHECK((sample(s, scheme.op * x) - sample(s, x)).norm() <
              1e-9 * std::max(1.0, sample(s, x).norm()));
    }
}

TEST_CASE("subspace scheme is regret-free on A and generalizes consistent") {
    std::mt19937_64 rng(4);
    Frame s{random_matrix(rng, 8, 3), unit_ip};
    Frame w{random_matrix(rng, 8, 3), unit_ip};
    Frame a{random_matrix(rng, 8, 3), unit_ip};
    GsrpScheme sub = build_subspace(s, w, a);

    auto wb = orthonormal_basis(w.synthesis, unit_ip);
    Vector x = a.synthesis * random_vector(rng, 3);
    CHECK((sub.op * x - wb.project(x)).norm() < 1e-9 * std::max(1.0, unit_ip.norm(x)));

    // Consistent sampling is the special case A = W.
    GsrpScheme con = build_consistent(s, w);
    GsrpScheme sub_w = build_subspace(s, w, w);
    CHECK((con.op - sub_w.op).norm() < 1e-9 * std::max(1.0, con.op.norm()));
}

TEST_CASE("subspace scheme in 3-d: Q-form and projector-form agree") {
    // S = the x-y plane, A = a tilted plane, W = a line.
    Matrix ms(3, 2), ma(3, 2), mw(3, 1);
    ms << 1, 0, 0, 1, 0, 0;
    ma << 1, 0, 0, 1, 0.4, -0.3;
    mw << 1, 2, 1;
    Frame s{ms, unit_ip}, a{ma, unit_ip}, w{mw, unit_ip};
    GsrpScheme sub = build_subspace(s, w, a);
    Matrix via_q = w.synthesis * sub.correction * s.analysis();
    CHECK((via_q - sub.op).norm() < 1e-10);
}

TEST_CASE("regret scheme reproduces the planar oracle and its fixed points") {
    Planar p;
    GsrpScheme scheme = build_regret(p.s, p.w);
    Vector xr = reconstruct(scheme, p.x);
    CHECK(xr(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(xr(1) == doctest::Approx(0.5).epsilon(1e-12));

    Vector perp_s(2);
    perp_s << 0, 1;
    CHECK(reconstruct(scheme, perp_s).norm() < 1e-12);

    // A vector in S and W simultaneously is reproduced exactly.
    Matrix shared(4, 1);
    shared << 1, 1, 0, 0;
    std::mt19937_64 rng(5);
    Matrix ms(4, 2), mw(4, 2);
    ms.col(0) = shared;
    ms.col(1) = random_matrix(rng, 4, 1);
    mw.col(0) = shared;
    mw.col(1) = random_matrix(rng, 4, 1);
    GsrpScheme both = build_regret(Frame{ms, unit_ip}, Frame{mw, unit_ip});
    Vector v = shared.col(0);
    CHECK((both.op * v - v).norm() < 1e-10);
}

TEST_CASE("constrained scheme interpolates subspace and regret") {
    Planar p;
    Matrix ma(2, 1);
    ma << 1, 0.25;
    Frame a{ma, unit_ip};

    GsrpScheme sub = build_subspace(p.s, p.w, a);
    GsrpScheme reg = build_regret(p.s, p.w);
    GsrpScheme at0 = build_constrained(p.s, p.w, a, 0.0);
    GsrpScheme at1 = build_constrained(p.s, p.w, a, 1.0);
    CHECK((at0.op - reg.op).norm() < 1e-14);
    CHECK((at1.op - sub.op).norm() < 1e-14);

    GsrpScheme mid = build_constrained(p.s, p.w, a, 0.5);
    CHECK((mid.op - (0.5 * sub.op + 0.5 * reg.op)).norm() == 0.0);

    CHECK_THROWS_AS(build_constrained(p.s, p.w, a, -0.1), LambdaOutOfRange);
    CHECK_THROWS_AS(build_constrained(p.s, p.w, a, 1.5), LambdaOutOfRange);
    CHECK_THROWS_AS(build_constrained(p.s, p.w, a, std::nan("")), LambdaOutOfRange);
}

TEST_CASE("constrained scheme in the planar geometry averages the two oracles") {
    // With A = W the subspace scheme is the consistent one, landing on (1,1);
    // the regret scheme lands on (0.5,0.5); their midpoint is (0.75,0.75).
    Planar p;
    GsrpScheme mid = build_constrained(p.s, p.w, p.w, 0.5);
    Vector xr = reconstruct(mid, p.x);
    CHECK(xr(0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(xr(1) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("modified subspace operator: endpoints and the alternative form") {
    std::mt19937_64 rng(6);
    Frame s{random_matrix(rng, 8, 3), unit_ip};
    Frame a{random_matrix(rng, 8, 3), unit_ip};
    auto sb = orthonormal_basis(s.synthesis, unit_ip);
    auto ab = orthonormal_basis(a.synthesis, unit_ip);
    Projector ps = orthogonal_projector(sb);
    Projector pas = oblique_projector(ab, sb);

    CHECK((modified_subspace_B(s, a, 0.0).matrix - ps.matrix).norm() < 1e-12);
    CHECK((modified_subspace_B(s, a, 1.0).matrix - pas.matrix).norm() < 1e-12);

    Projector b = modified_subspace_B(s, a, 0.3);
    CHECK((b.matrix * b.matrix - b.matrix).norm() <= 1e-10 * std::max(1.0, b.matrix.norm()));
    Matrix psperp = Matrix::Identity(8, 8) - ps.matrix;
    Matrix alt = ps.matrix + 0.3 * psperp * pas.matrix;
    CHECK((b.matrix - alt).norm() <= 1e-10 * std::max(1.0, b.matrix.norm()));

    // Nullspace is S-perp at every lambda.
    auto sperp = orthogonal_complement(sb);
    CHECK((b.matrix * sperp.basis).norm() < 1e-10);
}

TEST_CASE("constrained operator equals P_W composed with B") {
    std::mt19937_64 rng(7);
    Frame s{random_matrix(rng, 9, 3), unit_ip};
    Frame w{random_matrix(rng, 9, 4), unit_ip};
    Frame a{random_matrix(rng, 9, 3), unit_ip};
    const double lambda = 0.42;
    GsrpScheme con = build_constrained(s, w, a, lambda);
    Projector pw = orthogonal_projector(orthonormal_basis(w.synthesis, unit_ip));
    Projector b = modified_subspace_B(s, a, lambda);
    CHECK((con.op - pw.matrix * b.matrix).norm() < 1e-9 * std::max(1.0, con.op.norm()));
}

TEST_CASE("beta constraint level: degenerate cases and the equality property") {
    std::mt19937_64 rng(8);
    Frame s{random_matrix(rng, 8, 3), unit_ip};
    Frame w{random_matrix(rng, 8, 3), unit_ip};

    CHECK(beta_constraint_level(s, w, s, Vector::Zero(3)) == doctest::Approx(0.0));
    Vector c = random_vector(rng, 3);
    CHECK(beta_constraint_level(s, w, s, c) < 1e-9);  // A = S: both routes agree

    Frame a{random_matrix(rng, 8, 3), unit_ip};
    const double lambda = 0.4;
    const double beta = beta_constraint_level(s, w, a, c);
    GsrpScheme con = build_constrained(s, w, a, lambda);
    auto wb = orthonormal_basis(w.synthesis, unit_ip);
    Vector from_s = s.synthesis * (pseudoinverse(s.analysis() * s.synthesis) * c);
    Vector lhs = wb.project(from_s) - w.synthesis * (con.correction * c);
    CHECK(unit_ip.norm(lhs) == doctest::Approx(lambda * beta).epsilon(1e-9));
}

TEST_CASE("reconstructions always live in the reconstruction space") {
    std::mt19937_64 rng(9);
    Frame s{random_matrix(rng, 8, 3), unit_ip};
    Frame w{random_matrix(rng, 8, 3), unit_ip};
    Frame a{random_matrix(rng, 8, 3), unit_ip};
    auto wb = orthonormal_basis(w.synthesis, unit_ip);

    for (const GsrpScheme& scheme :
         {build_consistent(s, w), build_subspace(s, w, a), build_regret(s, w),
          build_constrained(s, w, a, 0.77)}) {
        Vector x = random_vector(rng, 8);
        Vector xr = reconstruct(scheme, x);
        const double leak = unit_ip.norm(xr - wb.project(xr));
        CHECK(leak <= 1e-9 * std::max(1.0, unit_ip.norm(xr)));
        CHECK(reconstruct(scheme, Vector::Zero(8)).norm() == 0.0);
        CHECK_THROWS_AS(reconstruct(scheme, Vector::Zero(5)), GridMismatch);
    }
}

TEST_CASE("regret scheme caps the regret norm") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 100; ++t) {
        Frame s{random_matrix(rng, 7, 3), unit_ip};
        Frame w{random_matrix(rng, 7, 2), unit_ip};
        GsrpScheme reg = build_regret(s, w);
        auto wb = orthonormal_basis(w.synthesis, unit_ip);
        Vector x = random_vector(rng, 7);
        CHECK(unit_ip.norm(wb.project(x) - reg.op * x) <=
              (1.0 + 1e-9) * unit_ip.norm(x));
    }
}
