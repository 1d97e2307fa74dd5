#include "gsrplab/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace gsrplab {

namespace {

using Rng = std::mt19937_64;

Matrix random_matrix(Rng& rng, int rows, int cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

Vector random_vector(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    return v;
}

struct Instance {
    Frame s, w, a;
    GridInnerProduct ip;
    int n = 0;
    double slack = 1e-8;  // widened on near-degenerate direct sums
};

/// Random triple of frames on an ambient grid of dimension 6..12, with
/// dim W = dim S = dim A so every scheme (including consistent) is buildable.
/// Instances whose (A,S) or (W,S) pairing is too ill-conditioned are
/// resampled; mildly ill-conditioned ones are kept with widened slack.
Instance random_instance(Rng& rng) {
    std::uniform_int_distribution<int> n_dist(6, 12);
    std::uniform_real_distribution<double> dt_dist(0.1, 2.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Instance inst;
        inst.n = n_dist(rng);
        std::uniform_int_distribution<int> d_dist(2, inst.n - 2);
        const int d = d_dist(rng);
        inst.ip = GridInnerProduct{dt_dist(rng)};
        inst.s = Frame{random_matrix(rng, inst.n, d), inst.ip};
        inst.w = Frame{random_matrix(rng, inst.n, d), inst.ip};
        inst.a = Frame{random_matrix(rng, inst.n, d), inst.ip};

        auto sb = orthonormal_basis(inst.s.synthesis, inst.ip);
        auto wb = orthonormal_basis(inst.w.synthesis, inst.ip);
        auto ab = orthonormal_basis(inst.a.synthesis, inst.ip);
        const double c_as = angle_cos(ab, sb);
        const double c_ws = angle_cos(wb, sb);
        const double worst = std::min(c_as, c_ws);
        if (worst < 1e-6) continue;
        if (worst < 1e-4) inst.slack = 1e-5;
        return inst;
    }
    throw DirectSumViolation("random_instance: could not draw a well-posed instance");
}

double rel(double err, double scale) { return err / std::max(1.0, scale); }

class Suite {
  public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void record(bool ok, const std::string& detail) {
        ++result_.trials;
        if (!ok) {
            ++result_.failures;
            if (result_.first_failure.empty())
                result_.first_failure = "trial " + std::to_string(result_.trials) + ": " + detail;
        }
    }

    SuiteResult done() { return std::move(result_); }

  private:
    SuiteResult result_;
};

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

SuiteResult suite_idempotence(int trials, Rng& rng) {
    Suite suite("projector idempotence");
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        auto sb = orthonormal_basis(inst.s.synthesis, inst.ip);
        auto ab = orthonormal_basis(inst.a.synthesis, inst.ip);
        Projector po = orthogonal_projector(sb);
        Projector pq = oblique_projector(ab, sb);
        const double eo = (po.matrix * po.matrix - po.matrix).norm();
        const double eq = (pq.matrix * pq.matrix - pq.matrix).norm();
        const double tol_o = 1e-10 * std::max(1.0, po.matrix.norm());
        const double tol_q = (inst.slack > 1e-8 ? 1e-7 : 1e-10) * std::max(1.0, pq.matrix.norm());
        suite.record(eo <= tol_o && eq <= tol_q, "||P^2-P|| = " + num(std::max(eo, eq)));
    }
    return suite.done();
}

SuiteResult suite_proposition1(int trials, Rng& rng) {
    Suite suite("shared-nullspace projection identities");
    const double lambdas[] = {-0.5, 0.0, 0.3, 1.0, 1.7};
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        auto sb = orthonormal_basis(inst.s.synthesis, inst.ip);
        auto ab = orthonormal_basis(inst.a.synthesis, inst.ip);
        auto wb = orthonormal_basis(inst.w.synthesis, inst.ip);
        Projector p1, p2;
        try {
            p1 = oblique_projector(ab, sb);  // nullspace S-perp
            p2 = oblique_projector(wb, sb);  // nullspace S-perp
        } catch (const DirectSumViolation&) {
            --t;  // this pair needs both (A,S) and (W,S) well-posed
            continue;
        }
        const double tol = inst.slack > 1e-8 ? 1e-5 : 1e-8;
        double worst = (p1.matrix * p2.matrix - p1.matrix).norm();
        worst = std::max(worst, (p2.matrix * p1.matrix - p2.matrix).norm());
        for (double l : lambdas) {
            Matrix p = l * p1.matrix + (1.0 - l) * p2.matrix;
            worst = std::max(worst, (p * p - p).norm());
        }
        suite.record(rel(worst, std::max(p1.matrix.norm(), p2.matrix.norm())) <= tol,
                     "identity residual " + num(worst));
    }
    return suite.done();
}

SuiteResult suite_complementarity(int trials, Rng& rng) {
    Suite suite("oblique complementarity P12 + P21 = I");
    std::uniform_int_distribution<int> n_dist(6, 12);
    for (int t = 0; t < trials; ++t) {
        const int n = n_dist(rng);
        std::uniform_int_distribution<int> d_dist(2, n - 2);
        const int d = d_dist(rng);
        GridInnerProduct ip{1.0};
        // Split the columns of one well-conditioned matrix so V1 (+) V2 = H.
        Matrix m = random_matrix(rng, n, n);
        auto v1 = orthonormal_basis(m.leftCols(d), ip);
        auto v2 = orthonormal_basis(m.rightCols(n - d), ip);
        Projector p12, p21;
        try {
            p12 = oblique_projector(v1, orthogonal_complement(v2));
            p21 = oblique_projector(v2, orthogonal_complement(v1));
        } catch (const DirectSumViolation&) {
            --t;
            continue;
        }
        const double err = (p12.matrix + p21.matrix - Matrix::Identity(n, n)).norm();
        suite.record(rel(err, p12.matrix.norm()) <= 1e-9, "||P12+P21-I|| = " + num(err));
    }
    return suite.done();
}

SuiteResult suite_angle_sandwiches(int trials, Rng& rng) {
    Suite suite("projection-norm angle sandwiches");
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        auto v1 = orthonormal_basis(inst.a.synthesis, inst.ip);
        auto v2 = orthonormal_basis(inst.s.synthesis, inst.ip);
        Vector x = v1.basis * random_vector(rng, v1.dim());
        const double xn = inst.ip.norm(x);
        if (!(xn > 0.0)) { --t; continue; }

        const double c = angle_cos(v1, v2);
        const double px = inst.ip.norm(v2.project(x));
        auto v2perp = orthogonal_complement(v2);
        const double s1_2perp = angle_sin(v1, v2perp);
        const double tol = inst.slack > 1e-8 ? 1e-5 : 1e-9;

        // cos(V1,V2)||x|| <= ||P2 x|| <= sin(V1,V2-perp)||x||
        bool ok = px >= c * xn - tol * xn && px <= s1_2perp * xn + tol * xn;

        // oblique_projector(v1, v2) has nullspace v2-perp, so the norm
        // sandwich reads ||P_{v2} x|| / sin(v1,v2perp) <= ||P x|| <=
        // ||P_{v2} x|| / cos(v1,v2).
        try {
            Projector pob = oblique_projector(v1, v2);
            Vector y = random_vector(rng, inst.n);
            const double py = inst.ip.norm(pob.matrix * y);
            const double pv = inst.ip.norm(v2.project(y));
            const double s1_v2perp = angle_sin(v1, v2perp);
            const double denom_lower = s1_v2perp > 0 ? pv / s1_v2perp : 0.0;
            const double upper = c > 1e-12 ? pv / c
                                           : std::numeric_limits<double>::infinity();
            ok = ok && py >= denom_lower - tol * std::max(1.0, denom_lower) &&
                 py <= upper + tol * std::max(1.0, upper);
        } catch (const DirectSumViolation&) {
            // the orthogonal-projection half was still exercised
        }
        suite.record(ok, "sandwich broken, cos=" + num(c));
    }
    return suite.done();
}

SuiteResult suite_pythagorean(int trials, Rng& rng) {
    Suite suite("Pythagorean error split");
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        GsrpScheme scheme;
        try {
            switch (t % 4) {
                case 0: scheme = build_consistent(inst.s, inst.w); break;
                case 1: scheme = build_subspace(inst.s, inst.w, inst.a); break;
                case 2: scheme = build_regret(inst.s, inst.w); break;
                default: scheme = build_constrained(inst.s, inst.w, inst.a, 0.37); break;
            }
        } catch (const DirectSumViolation&) { --t; continue; }
        Vector x = random_vector(rng, inst.n);
        ErrorReport rep = error_report(scheme, x);
        const double lhs = rep.absolute_error * rep.absolute_error;
        const double rhs = rep.optimal_error * rep.optimal_error +
                           rep.regret_error * rep.regret_error;
        suite.record(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, lhs),
                     "|E^2 - (opt^2+R^2)| = " + num(std::abs(lhs - rhs)));
    }
    return suite.done();
}

SuiteResult suite_table_rows(int trials, Rng& rng) {
    Suite suite("regret-bound sandwiches (all scheme rows)");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        const double lambda = l_dist(rng);
        GsrpScheme scheme;
        try {
            switch (t % 4) {
                case 0: scheme = build_consistent(inst.s, inst.w); break;
                case 1: scheme = build_subspace(inst.s, inst.w, inst.a); break;
                case 2: scheme = build_regret(inst.s, inst.w); break;
                default: scheme = build_constrained(inst.s, inst.w, inst.a, lambda); break;
            }
        } catch (const DirectSumViolation&) { --t; continue; }
        AngleSet angles;
        ProjectionSet proj;
        try {
            angles = angle_set(inst.s, inst.w, inst.a, lambda);
            proj = make_projections(inst.s, inst.w, inst.a, lambda);
        } catch (const DirectSumViolation&) { --t; continue; }
        Vector x = random_vector(rng, inst.n);
        BoundReport rep = regret_bounds(scheme, angles, x, proj);
        const double tol = inst.slack * std::max({1.0, rep.measured, std::isfinite(rep.upper) ? rep.upper : 0.0});
        suite.record(rep.measured >= rep.lower - tol && rep.measured <= rep.upper + tol,
                     scheme_name(scheme.tag) + std::string(" row: ") + num(rep.lower) + " / " +
                         num(rep.measured) + " / " + num(rep.upper));
    }
    return suite.done();
}

SuiteResult suite_subspace_input_row(int trials, Rng& rng) {
    Suite suite("constrained bounds for inputs in A");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        const double lambda = l_dist(rng);
        GsrpScheme con;
        AngleSet angles;
        ProjectionSet proj;
        try {
            con = build_constrained(inst.s, inst.w, inst.a, lambda);
            angles = angle_set(inst.s, inst.w, inst.a, lambda);
            proj = make_projections(inst.s, inst.w, inst.a, lambda);
        } catch (const DirectSumViolation&) { --t; continue; }
        Vector x = inst.a.synthesis * random_vector(rng, inst.a.size());
        if (!(inst.ip.norm(x) > 1e-8)) { --t; continue; }
        SubspaceInputBounds rep = subspace_input_bounds(angles, lambda, x, con, proj);
        const double tol = inst.slack * std::max(1.0, inst.ip.norm(x));
        const bool ok =
            rep.regret.measured >= rep.regret.lower - tol &&
            rep.regret.measured <= rep.regret.upper + tol &&
            rep.absolute.measured >= rep.absolute.lower - tol &&
            rep.absolute.measured <= rep.absolute.upper + tol;
        suite.record(ok, "regret " + num(rep.regret.lower) + "/" + num(rep.regret.measured) +
                             "/" + num(rep.regret.upper) + ", abs " + num(rep.absolute.lower) +
                             "/" + num(rep.absolute.measured) + "/" + num(rep.absolute.upper));
    }
    return suite.done();
}

SuiteResult suite_convexity(int trials, Rng& rng) {
    Suite suite("convex-combination error bounds");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        ConvexityCheck c;
        try {
            c = convexity_bound_check(inst.s, inst.w, inst.a, l_dist(rng),
                                      random_vector(rng, inst.n));
        } catch (const DirectSumViolation&) { --t; continue; }
        suite.record(c.holds, "E " + num(c.e_lhs) + " > " + num(c.e_rhs) + " or R " +
                                  num(c.r_lhs) + " > " + num(c.r_rhs));
    }
    return suite.done();
}

SuiteResult suite_constraint_equality(int trials, Rng& rng) {
    Suite suite("constraint attained at lambda * beta(c)");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        const double lambda = l_dist(rng);
        GsrpScheme con;
        double beta = 0;
        Vector c;
        try {
            con = build_constrained(inst.s, inst.w, inst.a, lambda);
            c = sample(inst.s, random_vector(rng, inst.n));
            beta = beta_constraint_level(inst.s, inst.w, inst.a, c);
        } catch (const DirectSumViolation&) { --t; continue; }

        auto sb = orthonormal_basis(inst.s.synthesis, inst.ip);
        auto wb = orthonormal_basis(inst.w.synthesis, inst.ip);
        Vector regret_rec = inst.s.synthesis *
                            (pseudoinverse(inst.s.analysis() * inst.s.synthesis) * c);
        Vector lhs = wb.project(regret_rec) - inst.w.synthesis * (con.correction * c);
        const double measured = inst.ip.norm(lhs);
        const double tol = (inst.slack > 1e-8 ? 1e-5 : 1e-9) * std::max(1.0, beta);
        suite.record(std::abs(measured - lambda * beta) <= tol,
                     "measured " + num(measured) + " vs lambda*beta " + num(lambda * beta));
    }
    return suite.done();
}

SuiteResult suite_modified_B(int trials, Rng& rng) {
    Suite suite("modified subspace operator identities");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        const double lambda = l_dist(rng);
        Projector b;
        try {
            b = modified_subspace_B(inst.s, inst.a, lambda);
        } catch (const DirectSumViolation&) { --t; continue; }
        auto sb = orthonormal_basis(inst.s.synthesis, inst.ip);
        auto ab = orthonormal_basis(inst.a.synthesis, inst.ip);
        auto sperp = orthogonal_complement(sb);
        Projector ps = orthogonal_projector(sb);
        Projector pas = oblique_projector(ab, sb);
        Matrix psperp = Matrix::Identity(inst.n, inst.n) - ps.matrix;
        Matrix alt = ps.matrix + lambda * psperp * pas.matrix;

        const double scale = std::max(1.0, b.matrix.norm());
        const double tol = (inst.slack > 1e-8 ? 1e-5 : 1e-10) * scale;
        double worst = (b.matrix * b.matrix - b.matrix).norm();
        worst = std::max(worst, (b.matrix - alt).norm());
        worst = std::max(worst, (b.matrix * sperp.basis).norm() * std::sqrt(inst.ip.weight));
        suite.record(worst <= tol, "identity residual " + num(worst));
    }
    return suite.done();
}

SuiteResult suite_b_angles(int trials, Rng& rng) {
    Suite suite("modified-subspace angle inequalities");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        BAngleReport rep;
        try {
            rep = b_angle_inequalities(inst.s, inst.a, l_dist(rng), inst.slack);
        } catch (const DirectSumViolation&) { --t; continue; }
        suite.record(rep.all_hold, "cos2 " + num(rep.cos2_lower) + "/" + num(rep.cos2_bs) + "/" +
                                       num(rep.cos2_upper) + ", sin2 " + num(rep.sin2_lower) +
                                       "/" + num(rep.sin2_bperp_s) + "/" + num(rep.sin2_upper));
    }
    return suite.done();
}

SuiteResult suite_safe_lambda(int trials, Rng& rng) {
    Suite suite("safe-lambda sqrt(2)/sqrt(3) caps");
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        AngleSet angles;
        GsrpScheme con;
        try {
            angles = angle_set(inst.s, inst.w, inst.a, 0.0);
            con = build_constrained(inst.s, inst.w, inst.a, safe_lambda(angles));
        } catch (const DirectSumViolation&) { --t; continue; }
        Vector x = random_vector(rng, inst.n);
        ErrorReport rep = error_report(con, x);
        const double xn = inst.ip.norm(x);
        const double g = 1.0 + (inst.slack > 1e-8 ? 1e-5 : 1e-9);
        suite.record(rep.regret_error <= std::sqrt(2.0) * xn * g &&
                         rep.absolute_error <= std::sqrt(3.0) * xn * g,
                     "R " + num(rep.regret_error) + ", E " + num(rep.absolute_error) +
                         " vs ||x|| " + num(xn));
    }
    return suite.done();
}

SuiteResult suite_regret_linearity(int trials, Rng& rng) {
    Suite suite("exact (1-lambda) regret linearity on A");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        const double lambda = l_dist(rng);
        GsrpScheme con;
        try {
            con = build_constrained(inst.s, inst.w, inst.a, lambda);
        } catch (const DirectSumViolation&) { --t; continue; }
        Vector x = inst.a.synthesis * random_vector(rng, inst.a.size());
        if (!(inst.ip.norm(x) > 1e-8)) { --t; continue; }
        auto sb = orthonormal_basis(inst.s.synthesis, inst.ip);
        auto wb = orthonormal_basis(inst.w.synthesis, inst.ip);
        Vector pw_psperp_x = wb.project(x - sb.project(x));
        const double expected = (1.0 - lambda) * inst.ip.norm(pw_psperp_x);
        const double measured = inst.ip.norm(wb.project(x) - con.op * x);
        const double tol = (inst.slack > 1e-8 ? 1e-5 : 1e-9) * std::max(1.0, inst.ip.norm(x));
        suite.record(std::abs(measured - expected) <= tol,
                     "measured " + num(measured) + " vs (1-l)||P_W P_Sperp x|| " + num(expected));
    }
    return suite.done();
}

SuiteResult suite_sample_consistency(int trials, Rng& rng) {
    Suite suite("sample consistency of the consistent scheme");
    for (int t = 0; t < trials; ++t) {
        Instance inst = random_instance(rng);
        GsrpScheme con;
        try {
            con = build_consistent(inst.s, inst.w);
        } catch (const DirectSumViolation&) { --t; continue; }
        Vector x = random_vector(rng, inst.n);
        Vector c_in = sample(inst.s, x);
        Vector c_out = sample(inst.s, con.op * x);
        const double err = (c_in - c_out).norm();
        const double tol = (inst.slack > 1e-8 ? 1e-5 : 1e-9) * std::max(1.0, c_in.norm());
        suite.record(err <= tol, "||S*(Tx) - S*x|| = " + num(err));
    }
    return suite.done();
}

} // namespace

bool PropertyReport::all_pass() const {
    return !suites.empty() &&
           std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.pass(); });
}

PropertyReport run_property_suites(int trials, std::uint64_t seed) {
    Rng rng(seed);
    PropertyReport report;
    report.suites.push_back(suite_idempotence(trials, rng));
    report.suites.push_back(suite_proposition1(trials, rng));
    report.suites.push_back(suite_complementarity(trials, rng));
    report.suites.push_back(suite_angle_sandwiches(trials, rng));
    report.suites.push_back(suite_pythagorean(trials, rng));
    report.suites.push_back(suite_table_rows(trials, rng));
    report.suites.push_back(suite_subspace_input_row(trials, rng));
    report.suites.push_back(suite_convexity(trials, rng));
    report.suites.push_back(suite_constraint_equality(trials, rng));
    report.suites.push_back(suite_modified_B(trials, rng));
    report.suites.push_back(suite_b_angles(trials, rng));
    report.suites.push_back(suite_safe_lambda(trials, rng));
    report.suites.push_back(suite_regret_linearity(trials, rng));
    report.suites.push_back(suite_sample_consistency(trials, rng));
    return report;
}

SuiteResult run_dual_formula_suite(int instances, std::uint64_t seed) {
    Rng rng(seed);
    Suite suite("Q-form vs projector-form operators");
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int t = 0; t < instances; ++t) {
        Instance inst = random_instance(rng);
        std::vector<GsrpScheme> schemes;
        try {
            schemes.push_back(build_consistent(inst.s, inst.w));
            schemes.push_back(build_subspace(inst.s, inst.w, inst.a));
            schemes.push_back(build_regret(inst.s, inst.w));
            schemes.push_back(build_constrained(inst.s, inst.w, inst.a, l_dist(rng)));
        } catch (const DirectSumViolation&) { --t; continue; }

        double worst = 0.0;
        const char* where = "";
        for (const GsrpScheme& sc : schemes) {
            Matrix q_form = inst.w.synthesis * sc.correction * inst.s.analysis();
            const double err = (q_form - sc.op).norm() / std::max(1.0, sc.op.norm());
            if (err > worst) { worst = err; where = scheme_name(sc.tag); }
        }
        const double tol = inst.slack > 1e-8 ? 1e-5 : 1e-9;
        suite.record(worst <= tol, std::string(where) + " relative gap " + num(worst));
    }
    return suite.done();
}

} // namespace gsrplab
