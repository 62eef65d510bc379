#include <doctest.h>

#include <set>

#include "foursym/bundle.hpp"

using namespace foursym;

namespace {

Eigen::MatrixXd rot2() {
    Eigen::MatrixXd J(2, 2);
    J << 0, -1, 1, 0;
    return J;
}

Eigen::MatrixXd block_J(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int b = 0; b < n; ++b) J.block<2, 2>(2 * b, 2 * b) = rot2();
    return J;
}

}  // namespace

TEST_CASE("sphere specs grade correctly for n = 1..3") {
    for (int n = 1; n <= 3; ++n) {
        const auto sp = sphere_spec(n, block_J(n));
        CHECK(sp.grading.dim_tilde(0) == n * n);
        CHECK(sp.grading.dim_tilde(2) == n * n - n);
        CHECK(sp.grading.dim_tilde(1) == n);
        CHECK(sp.grading.dim_tilde(-1) == n);
        CHECK(curvature_invariance_check(sp.pair.data, sp.pair.tau_m).first);
    }
}

TEST_CASE("H samples stabilize m") {
    const auto sp = sphere_spec(2, block_J(2));
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t)
        CHECK(sp.m_stabilization_residual(sp.sample_h(rng)) < 1e-8);
}

TEST_CASE("embedding is constant on G0 cosets and separates others") {
    const auto sp = sphere_spec(2, block_J(2));
    std::mt19937_64 rng(23);
    const TwistorPoint id_pt = embed(sp, Eigen::MatrixXd(Eigen::MatrixXd::Identity(5, 5)));

    // At the identity the twistor operator restricted to m is tau|m.
    Eigen::MatrixXd tau_on_m(4, 4);
    for (int c = 0; c < 4; ++c)
        tau_on_m.col(c) =
            sp.pair.m_coords(Eigen::VectorXd(id_pt.J_op * sp.pair.m_basis.col(c)));
    CHECK((tau_on_m - sp.pair.tau_m).norm() < 1e-9);

    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd g = sp.sample_group(rng);
        const Eigen::MatrixXd g0 = sp.sample_g0(rng);
        const TwistorPoint a = embed(sp, g);
        const TwistorPoint b = embed(sp, Eigen::MatrixXd(g * g0));
        CHECK(twistor_distance(a, b) < 1e-8);
    }

    // Distinct H cosets produce distinct fibre points.
    int distinct = 0;
    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd h1 = sp.sample_h(rng), h2 = sp.sample_h(rng);
        const Eigen::MatrixXd k = sp.ad_m(Eigen::MatrixXd(h2.inverse() * h1));
        const double comm = (k * sp.pair.tau_m - sp.pair.tau_m * k).norm();
        if (comm < 1e-6) continue;  // accidentally in G0
        const double d = twistor_distance(embed(sp, h1), embed(sp, h2));
        CHECK(d > 1e-6);
        ++distinct;
    }
    CHECK(distinct >= 15);
}

TEST_CASE("fibre orbits and their dimensions") {
    // n = 2: the fibre is Sigma^eps(R^4), dimension 2.
    const auto sp2 = sphere_spec(2, block_J(2));
    CHECK(orbit_dimension_estimate(sp2, 31) == 2);
    for (const auto& J : fibre_orbit(sp2, 25, 77)) {
        CHECK((J * J + Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-8);
        CHECK((J * J.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-8);
    }

    // n = 1: single point.
    const auto sp1 = sphere_spec(1, block_J(1));
    CHECK(orbit_dimension_estimate(sp1, 31) == 0);

    // Complex Grassmannian (1,1,0,0): dim h - dim g0 = 0.
    const auto cg = complex_grassmannian_spec(1, 1, 0, 0);
    CHECK(orbit_dimension_estimate(cg, 31) == 0);

    // Fibre dimension equals dim h - dim g0 throughout.
    const auto rg = real_grassmannian_spec(2, 2, rot2(), Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    const int dim_g0 = static_cast<int>(commutant_in_h(rg.pair.data.h_action, rg.pair.tau_m).cols());
    CHECK(orbit_dimension_estimate(rg, 31) == rg.pair.dim_h() - dim_g0);
}

TEST_CASE("J0 and -J0 give the same G0") {
    const auto sp_plus = sphere_spec(2, block_J(2));
    const auto sp_minus = sphere_spec(2, Eigen::MatrixXd(-block_J(2)));
    const Eigen::MatrixXd c1 = commutant_in_h(sp_plus.pair.data.h_action, sp_plus.pair.tau_m);
    const Eigen::MatrixXd c2 = commutant_in_h(sp_minus.pair.data.h_action, sp_minus.pair.tau_m);
    CHECK(c1.cols() == c2.cols());
    const Eigen::MatrixXd P1 = c1 * c1.transpose();
    const Eigen::MatrixXd P2 = c2 * c2.transpose();
    CHECK((P1 - P2).norm() < 1e-9);
}

TEST_CASE("family constructors validate their inputs") {
    CHECK_THROWS_AS(real_grassmannian_spec(1, 1, Eigen::MatrixXd::Ones(1, 1),
                                           Eigen::MatrixXd::Ones(1, 1)),
                    Error);
    CHECK_THROWS_AS(complex_grassmannian_spec(1, 1, 2, 0), Error);
    CHECK_THROWS_AS(sphere_spec(2, Eigen::MatrixXd(Eigen::MatrixXd::Identity(4, 4))), Error);

    // Real Grassmannian (2,1) with J1 a rotation: g0 = u(1).
    const auto rg = real_grassmannian_spec(2, 1, rot2(), Eigen::MatrixXd(Eigen::MatrixXd::Ones(1, 1)));
    CHECK(commutant_in_h(rg.pair.data.h_action, rg.pair.tau_m).cols() == 1);

    // (2,2) with J2 = diag(1,-1): g0 = u(1) (+) s(o(1) x o(1)).
    Eigen::MatrixXd J2(2, 2);
    J2 << 1, 0, 0, -1;
    const auto rg22 = real_grassmannian_spec(2, 2, rot2(), J2);
    CHECK(commutant_in_h(rg22.pair.data.h_action, rg22.pair.tau_m).cols() == 1);

    // (2,2,1,1): G^tau = S(U(1)^4), dimension 3.
    const auto cg = complex_grassmannian_spec(2, 2, 1, 1);
    CHECK(commutant_in_h(cg.pair.data.h_action, cg.pair.tau_m).cols() == 3);
}

TEST_CASE("component classification, complex family") {
    using cd = std::complex<double>;
    std::set<std::pair<int, int>> classes;
    for (int l = 0; l <= 1; ++l) {
        for (int r = 0; r <= 1; ++r) {
            Eigen::MatrixXcd J1(1, 1), J2(1, 1);
            J1(0, 0) = l == 1 ? cd(0, 1) : cd(0, -1);
            J2(0, 0) = r == 1 ? cd(1, 0) : cd(-1, 0);
            classes.insert(classify_component_complex(J1, J2));
        }
    }
    CHECK(classes.size() == 4);  // (p+1)(q+1)

    // Conjugated inputs classify identically.
    Eigen::MatrixXcd J1(2, 2), J2(2, 2);
    J1.setZero(); J2.setZero();
    J1(0, 0) = cd(0, 1); J1(1, 1) = cd(0, -1);
    J2(0, 0) = cd(1, 0); J2(1, 1) = cd(-1, 0);
    Eigen::MatrixXcd U(2, 2);
    U << cd(std::cos(0.3), 0), cd(-std::sin(0.3), 0), cd(std::sin(0.3), 0), cd(std::cos(0.3), 0);
    const auto c1 = classify_component_complex(J1, J2);
    const auto c2 = classify_component_complex(Eigen::MatrixXcd(U * J1 * U.adjoint()),
                                               Eigen::MatrixXcd(U * J2 * U.adjoint()));
    CHECK(c1 == c2);
    CHECK(c1 == std::pair<int, int>(1, 1));

    CHECK_THROWS_AS(classify_component_complex(J2, J2), Error);
}

TEST_CASE("component classification, real family p = q = 2") {
    // Exhaustive enumeration of block signatures x sign hits 2(p+q+2) = 12.
    std::set<RealComponentClass> classes;
    const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
    std::vector<Eigen::MatrixXd> antis = {rot2(), Eigen::MatrixXd(-rot2())};
    std::vector<Eigen::MatrixXd> syms;
    syms.push_back(I2);
    syms.push_back(Eigen::MatrixXd(-I2));
    Eigen::MatrixXd mixed(2, 2);
    mixed << 1, 0, 0, -1;
    syms.push_back(mixed);
    for (const auto& A : antis)
        for (const auto& S : syms) {
            classes.insert(classify_component_real(2, 2, A, S));   // sign +
            classes.insert(classify_component_real(2, 2, S, A));   // sign -
        }
    CHECK(classes.size() == 12);

    // The exceptional disconnected-G0 situation is flagged: p = 4, r = q/2.
    const auto cls = classify_component_real(4, 2, block_J(2), mixed);
    CHECK(cls.exceptional);
    const auto cls2 = classify_component_real(2, 2, rot2(), mixed);
    CHECK(!cls2.exceptional);
}

TEST_CASE("affine R^4 specs") {
    const auto aff = affine_r4_spec({1}, +1, Eigen::Vector4d(0, 0, 1, 0));
    CHECK(aff.g.dim() == 8);  // u(2) |x R^4
    CHECK(aff.grading.dim_tilde(1) == 2);
    CHECK(aff.grading.dim_tilde(-1) == 2);

    const auto aff2 = affine_r4_spec({1, 2}, +1, Eigen::Vector4d(0, 0, 0, 1));
    CHECK(aff2.g.dim() == 7);  // su(2) |x R^4

    const auto aff0 = affine_r4_spec({}, +1, Eigen::Vector4d(0, 0, 1, 0));
    CHECK(aff0.g.dim() == 10);  // so(4) |x R^4

    CHECK_THROWS_AS(affine_r4_spec({4}, +1, Eigen::Vector4d(0, 0, 1, 0)), Error);
}
