#include <doctest.h>

#include "foursym/automorphism.hpp"
#include "foursym/twistor4.hpp"

using namespace foursym;

namespace {

Eigen::MatrixXd rot2() {
    Eigen::MatrixXd J(2, 2);
    J << 0, -1, 1, 0;
    return J;
}

// Sphere-shaped automorphism Int(diag(-J0, 1)) on so(2n+1).
std::pair<LieAlgebraBasis, LinearAutomorphism> sphere_tau(int n) {
    const int d = 2 * n;
    const auto alg = make_algebra(d + 1, so_basis(d + 1));
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(d, d);
    for (int b = 0; b < n; ++b) J0.block<2, 2>(2 * b, 2 * b) = rot2();
    Eigen::MatrixXd conj = Eigen::MatrixXd::Zero(d + 1, d + 1);
    conj.topLeftCorner(d, d) = -J0;
    conj(d, d) = 1.0;
    return {alg, int_automorphism(alg, conj, 4)};
}

}  // namespace

TEST_CASE("so(3) rotation automorphism grades as (1,1,0,1)") {
    const auto [alg, tau] = sphere_tau(1);
    CHECK(power_residual(tau) < 1e-12);
    CHECK(automorphism_residual(alg, tau) < 1e-12);
    const Z4Grading gr = z4_decompose(alg, tau);
    CHECK(gr.dim_tilde(0) == 1);
    CHECK(gr.dim_tilde(1) == 1);
    CHECK(gr.dim_tilde(2) == 0);
    CHECK(gr.dim_tilde(-1) == 1);
}

TEST_CASE("sphere-shaped gradings of so(2n+1)") {
    for (int n = 1; n <= 3; ++n) {
        const auto [alg, tau] = sphere_tau(n);
        const Z4Grading gr = z4_decompose(alg, tau);
        CHECK(gr.dim_tilde(0) == n * n);
        CHECK(gr.dim_tilde(2) == n * n - n);
        CHECK(gr.dim_tilde(1) == n);
        CHECK(gr.dim_tilde(-1) == n);
        CHECK(static_cast<int>(gr.m.cols()) == 2 * n);
        const GradingReport rep = check_grading(alg, gr);
        CHECK(rep.bracket_residual < 1e-9);
        CHECK(rep.conjugation_residual < 1e-9);

        // tau^2 has eigenvalue +1 on tilde0 (+) tilde2 and -1 on tilde(+-1).
        const Eigen::MatrixXcd T2 = (tau.matrix * tau.matrix).cast<std::complex<double>>();
        CHECK((T2 * gr.tilde[0] - gr.tilde[0]).norm() < 1e-10);
        CHECK((T2 * gr.tilde[2] - gr.tilde[2]).norm() < 1e-10);
        CHECK((T2 * gr.tilde[1] + gr.tilde[1]).norm() < 1e-10);
        CHECK((T2 * gr.tilde[3] + gr.tilde[3]).norm() < 1e-10);

        // tau|m is an orthogonal anti-involution in the m basis.
        const int dm = static_cast<int>(gr.m.cols());
        CHECK((gr.tau_m * gr.tau_m + Eigen::MatrixXd::Identity(dm, dm)).norm() < 1e-9);
    }
}

TEST_CASE("corrupted grading is detected") {
    const auto [alg, tau] = sphere_tau(2);
    const Z4Grading gr = z4_decompose(alg, tau);
    auto tilde = gr.tilde;
    // Swap one basis vector between tilde1 and tilde2.
    const Eigen::VectorXcd c1 = tilde[1].col(0);
    tilde[1].col(0) = tilde[2].col(0);
    tilde[2].col(0) = c1;
    const Z4Grading bad = assemble_grading(std::move(tilde));
    const GradingReport rep = check_grading(alg, bad);
    CHECK(rep.bracket_residual > 0.1);
}

TEST_CASE("affine u(2) |x R^4 grading and commuting translations") {
    // h = u(2, L_i) inside so(4): the span of L_i, R_i, R_j, R_k.
    std::vector<Eigen::MatrixXd> h_basis = {
        left_mult_matrix(Quaternion::i()), right_mult_matrix(Quaternion::i()),
        right_mult_matrix(Quaternion::j()), right_mult_matrix(Quaternion::k())};
    const auto h_alg = make_algebra(4, h_basis);
    const auto aff = semidirect(h_alg, 4);
    CHECK(aff.dim() == 8);

    // tau = Int(-J^+_{1 ^ e}, 0) with e = j.
    Eigen::MatrixXd conj = Eigen::MatrixXd::Identity(5, 5);
    conj.topLeftCorner(4, 4) = -left_mult_matrix(Quaternion::j());
    const auto tau = int_automorphism(aff, conj, 4);
    const Z4Grading gr = z4_decompose(aff, tau);
    CHECK(gr.dim_tilde(0) == 3);
    CHECK(gr.dim_tilde(2) == 1);
    CHECK(gr.dim_tilde(1) == 2);
    CHECK(gr.dim_tilde(-1) == 2);

    const GradingReport rep = check_grading(aff, gr);
    CHECK(rep.bracket_residual < 1e-9);

    // [g_{+-1}, g_{+-1}] = 0: the translations commute.
    for (int k : {1, 3})
        for (int a = 0; a < gr.dim_tilde(k); ++a)
            for (int b = 0; b < gr.dim_tilde(k); ++b)
                CHECK(aff.bracket(Eigen::VectorXcd(gr.tilde[k].col(a)),
                                  Eigen::VectorXcd(gr.tilde[k].col(b)))
                          .norm() < 1e-12);
}

TEST_CASE("su(2) realified with the complex-Grassmannian automorphism") {
    const auto alg = make_algebra(4, su_basis_realified(2));
    using cd = std::complex<double>;
    Eigen::MatrixXcd conj_c = Eigen::MatrixXcd::Zero(2, 2);
    conj_c(0, 0) = cd(0, -1);  // l = 0 of p = 1
    conj_c(1, 1) = cd(-1, 0);  // r = 0 of q = 1
    const auto tau = int_automorphism(alg, realify(conj_c), 4);
    const Z4Grading gr = z4_decompose(alg, tau);
    CHECK(gr.dim_tilde(0) == 1);
    CHECK(gr.dim_tilde(2) == 0);
    CHECK(gr.dim_tilde(1) == 1);
    CHECK(gr.dim_tilde(-1) == 1);
}
