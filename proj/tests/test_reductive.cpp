#include <doctest.h>

#include <random>

#include "foursym/bundle.hpp"

using namespace foursym;

namespace {

Eigen::MatrixXd rot2() {
    Eigen::MatrixXd J(2, 2);
    J << 0, -1, 1, 0;
    return J;
}

// Euclidean model of the round-sphere isotropy data on R^d.
IsotropyData sphere_data(int d) {
    IsotropyData data;
    for (const auto& A : so_basis(d)) data.h_action.push_back(A);
    data.m_bracket_ad.assign(d, std::vector<Eigen::MatrixXd>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            // ad[v_i, v_j] = e_j e_i^T - e_i e_j^T on the unit sphere.
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
            M(j, i) += 1.0;
            M(i, j) -= 1.0;
            data.m_bracket_ad[i][j] = M;
        }
    return data;
}

// S^1 x S^3: h = so(3) acting on the last three coordinates of R^4,
// curvature only from the S^3 factor.
IsotropyData s1s3_data() {
    IsotropyData data;
    for (const auto& A3 : so_basis(3)) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
        A.bottomRightCorner(3, 3) = A3;
        data.h_action.push_back(A);
    }
    data.m_bracket_ad.assign(4, std::vector<Eigen::MatrixXd>(4, Eigen::MatrixXd::Zero(4, 4)));
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j) {
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
            M(j, i) += 1.0;
            M(i, j) -= 1.0;
            data.m_bracket_ad[i][j] = M;
        }
    return data;
}

Eigen::MatrixXd random_anti_involution(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0, 1);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            S(i, j) = g(rng);
            S(j, i) = -S(i, j);
        }
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(d, d);
    for (int b = 0; b < d / 2; ++b) J0.block<2, 2>(2 * b, 2 * b) = rot2();
    const Eigen::MatrixXd Q = expm(S);
    return Q * J0 * Q.transpose();
}

}  // namespace

TEST_CASE("tau_from_J0 succeeds for every J0 on the sphere") {
    const IsotropyData data = sphere_data(4);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd J0 = random_anti_involution(4, rng);
        const TauExtension ext = tau_from_J0(data, J0);
        CHECK(ext.automorphism_residual < 1e-9);
        // tau_h squares to the identity, tau_m to minus it.
        CHECK((ext.tau_h * ext.tau_h - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-9);
        CHECK((ext.tau_m * ext.tau_m + Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
        CHECK(curvature_invariance_check(data, J0).first);
    }
    CHECK(ad_m_kernel_dim(data) == 0);
}

TEST_CASE("S^1 x S^3 admits no invariant J0") {
    const IsotropyData data = s1s3_data();
    std::mt19937_64 rng(5);
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
        const Eigen::MatrixXd J0 = random_anti_involution(4, rng);
        try {
            tau_from_J0(data, J0);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::not_invariant);
            ++failures;
        }
    }
    CHECK(failures == 100);
}

TEST_CASE("non-anti-involutions are rejected") {
    const IsotropyData data = sphere_data(4);
    CHECK_THROWS_AS(tau_from_J0(data, Eigen::MatrixXd(Eigen::MatrixXd::Identity(4, 4))), Error);
    try {
        tau_from_J0(data, Eigen::MatrixXd(Eigen::MatrixXd::Identity(4, 4)));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_complex_structure);
    }
}

TEST_CASE("curvature invariance on the section-5 families") {
    // Sphere: always true.
    const IsotropyData sph = sphere_data(6);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t)
        CHECK(curvature_invariance_check(sph, random_anti_involution(6, rng)).first);

    // Complex Grassmannian p = q = 1: m is 2-dimensional, always true.
    const auto cg = complex_grassmannian_spec(1, 1, 0, 0);
    CHECK(curvature_invariance_check(cg.pair.data, cg.pair.tau_m).first);

    // Real Grassmannian p = q = 2: chi(O(2) x O(2)) members pass...
    const auto rg = real_grassmannian_spec(2, 2, rot2(), Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    CHECK(curvature_invariance_check(rg.pair.data, rg.pair.tau_m).first);
    // ...generic anti-involutions outside that subgroup do not.
    int false_count = 0;
    for (int t = 0; t < 10; ++t) {
        const auto [ok, res] = curvature_invariance_check(rg.pair.data,
                                                          random_anti_involution(4, rng));
        if (!ok) ++false_count;
    }
    CHECK(false_count >= 9);
}

TEST_CASE("tau_from_J0 agrees with the real-Grassmannian structure") {
    Eigen::MatrixXd J2 = Eigen::MatrixXd::Identity(2, 2);
    const auto rg = real_grassmannian_spec(2, 2, rot2(), J2);
    const TauExtension ext = tau_from_J0(rg.pair.data, rg.pair.tau_m);
    CHECK(ext.automorphism_residual < 1e-9);
}

TEST_CASE("compute_g0 dimensions") {
    // Sphere n = 2: g0 = u(2).
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(4, 4);
    J0.block<2, 2>(0, 0) = rot2();
    J0.block<2, 2>(2, 2) = rot2();
    const auto sp = sphere_spec(2, J0);
    const Eigen::MatrixXd g0 = compute_g0(sp.pair, sp.grading);
    CHECK(g0.cols() == 4);

    // Complex Grassmannian (2,1,1,0): g0 = s(u(1)^3).
    const auto cg = complex_grassmannian_spec(2, 1, 1, 0);
    CHECK(compute_g0(cg.pair, cg.grading).cols() == 2);

    // Abelian h commuting with tau|m: g0 = h.
    const IsotropyData sph = sphere_data(2);
    IsotropyData ab;
    ab.h_action = {rot2()};
    const Eigen::MatrixXd com = commutant_in_h(ab.h_action, rot2());
    CHECK(com.cols() == 1);
}

TEST_CASE("der_m dimensions") {
    // Sphere m: Der = so(2n).
    CHECK(der_m(sphere_data(4)).size() == 6);
    CHECK(der_m(sphere_data(6)).size() == 15);

    // Abelian bracket: Der = so(m).
    IsotropyData ab;
    ab.h_action = {rot2()};
    ab.m_bracket_ad.assign(2, std::vector<Eigen::MatrixXd>(2, Eigen::MatrixXd::Zero(2, 2)));
    CHECK(der_m(ab).size() == 1);

    // Real Grassmannian p = q = 2: Der(m) = s(o(2) (+) o(2)).
    const auto rg = real_grassmannian_spec(2, 2, rot2(), Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    const auto ders = der_m(rg.pair.data);
    CHECK(ders.size() == 2);
    for (const auto& A : ders) {
        CHECK((A + A.transpose()).norm() < 1e-10);
        // Membership: the derivation identity itself.
        const auto& M = rg.pair.data.m_bracket_ad;
        double worst = 0.0;
        const int dm = 4;
        for (int i = 0; i < dm; ++i)
            for (int j = 0; j < dm; ++j) {
                Eigen::MatrixXd E = A * M[i][j] - M[i][j] * A;
                for (int k = 0; k < dm; ++k) {
                    E -= A(k, i) * M[k][j];
                    E -= A(k, j) * M[i][k];
                }
                worst = std::max(worst, E.norm());
            }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("reductive pairs carry an invariant orthonormal metric") {
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(4, 4);
    J0.block<2, 2>(0, 0) = rot2();
    J0.block<2, 2>(2, 2) = rot2();
    for (const auto& spec :
         {sphere_spec(2, J0), complex_grassmannian_spec(1, 1, 0, 0),
          real_grassmannian_spec(2, 1, rot2(), Eigen::MatrixXd(Eigen::MatrixXd::Ones(1, 1)))}) {
        CHECK(spec.pair.invariance_residual < 1e-9);
        const int dm = spec.pair.dim_m();
        CHECK((spec.pair.tau_m * spec.pair.tau_m.transpose() -
               Eigen::MatrixXd::Identity(dm, dm)).norm() < 1e-9);
        for (const auto& A : spec.pair.data.h_action)
            CHECK((A + A.transpose()).norm() < 1e-9 * std::max(1.0, A.norm()));
    }
}

TEST_CASE("compute_g0 flags inconsistent gradings") {
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(4, 4);
    J0.block<2, 2>(0, 0) = rot2();
    J0.block<2, 2>(2, 2) = rot2();
    auto sp = sphere_spec(2, J0);
    ReductivePair broken = sp.pair;
    broken.tau_m = -broken.tau_m;  // same commutant, so this still matches...
    CHECK_NOTHROW(compute_g0(broken, sp.grading));
    // ...but a genuinely different J0 does not.
    Eigen::MatrixXd other = Eigen::MatrixXd::Zero(4, 4);
    other(0, 2) = -1; other(2, 0) = 1; other(1, 3) = -1; other(3, 1) = 1;
    broken.tau_m = other;
    CHECK_THROWS_AS(compute_g0(broken, sp.grading), Error);
}
