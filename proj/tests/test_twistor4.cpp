#include <doctest.h>

#include <random>

#include "foursym/twistor4.hpp"

using namespace foursym;

namespace {

std::mt19937_64 rng(12345);

Quaternion random_quaternion() {
    std::normal_distribution<double> g(0.0, 1.0);
    return {g(rng), g(rng), g(rng), g(rng)};
}

Quaternion random_unit() { return random_quaternion().normalized(); }

OrientedPlane random_plane() {
    return OrientedPlane::from_span(random_quaternion(), random_quaternion());
}

SpherePoint random_sphere_point() {
    Quaternion q = random_quaternion();
    q.w = 0.0;
    return SpherePoint(q.normalized());
}

}  // namespace

TEST_CASE("quaternion arithmetic basics") {
    const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    CHECK(distance(i * j, k) == 0.0);
    CHECK(distance(j * i, -k) == 0.0);
    CHECK(distance(i * i, -Quaternion::one()) == 0.0);

    // Conjugation is an anti-automorphism, |q|^2 = q conj(q).
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = random_quaternion(), b = random_quaternion();
        CHECK(distance((a * b).conj(), b.conj() * a.conj()) < 1e-12 * a.norm() * b.norm());
        CHECK(std::abs((a * a.conj()).w - a.norm2()) < 1e-12 * a.norm2());
    }
}

TEST_CASE("cross products") {
    const Quaternion one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(),
                     k = Quaternion::k();
    // Antisymmetry.
    for (int t = 0; t < 50; ++t) {
        const Quaternion q = random_quaternion();
        CHECK(cross_left(q, q).norm() < 1e-12 * q.norm2());
        CHECK(cross_right(q, q).norm() < 1e-12 * q.norm2());
    }
    CHECK(distance(cross_left(i, j), k) < 1e-15);
    CHECK(distance(cross_right(i, j), k) < 1e-15);
    CHECK(distance(cross_left(one, i), i) < 1e-15);
    CHECK(distance(cross_right(one, i), -i) < 1e-15);

    // Restriction to Im H is the classical R^3 cross product.
    for (int t = 0; t < 100; ++t) {
        Quaternion u = random_quaternion(), v = random_quaternion();
        u.w = v.w = 0.0;
        const Quaternion cl = cross_left(u, v);
        const Quaternion cr = cross_right(u, v);
        const Quaternion classical{0, u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z,
                                   u.x * v.y - u.y * v.x};
        CHECK(distance(cl, classical) < 1e-12 * (1 + u.norm() * v.norm()));
        CHECK(distance(cr, classical) < 1e-12 * (1 + u.norm() * v.norm()));
    }
}

TEST_CASE("j_plus and j_minus") {
    const OrientedPlane P1i(Quaternion::one(), Quaternion::i());
    CHECK((j_plus(P1i).matrix - left_mult_matrix(Quaternion::i())).norm() < 1e-14);
    CHECK(j_plus(P1i).chirality == +1);
    CHECK(chirality_of(j_plus(P1i).matrix) == +1);
    CHECK(chirality_of(j_minus(P1i).matrix) == -1);

    for (int t = 0; t < 200; ++t) {
        const OrientedPlane P = random_plane();
        const auto Jp = j_plus(P), Jm = j_minus(P);
        const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
        CHECK((Jp.matrix * Jp.matrix + I).norm() < 1e-12);
        CHECK((Jm.matrix * Jm.matrix + I).norm() < 1e-12);
        CHECK((Jp.matrix * Jp.matrix.transpose() - I).norm() < 1e-12);
        // J maps q to q'.
        CHECK(distance(Jp.apply(P.q), P.qp) < 1e-12);
        CHECK(distance(Jm.apply(P.q), P.qp) < 1e-12);
        // Identification with the cross products.
        CHECK((Jp.matrix - left_mult_matrix(cross_left(P.q, P.qp))).norm() < 1e-12);
        CHECK((Jm.matrix + right_mult_matrix(cross_right(P.q, P.qp))).norm() < 1e-12);
        CHECK(chirality_of(Jp.matrix) == +1);
        CHECK(chirality_of(Jm.matrix) == -1);
    }

    CHECK_THROWS_AS(OrientedPlane(Quaternion::one(), Quaternion(1e-3, 1, 0, 0)), Error);
}

TEST_CASE("rho and SO(2) invariance") {
    const OrientedPlane P1i(Quaternion::one(), Quaternion::i());
    CHECK(distance(rho(P1i, +1).u, Quaternion::i()) < 1e-14);
    CHECK(distance(rho(P1i, -1).u, -Quaternion::i()) < 1e-14);

    for (int t = 0; t < 100; ++t) {
        const OrientedPlane P = random_plane();
        std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
        const double th = ang(rng);
        const OrientedPlane Q(P.q * std::cos(th) + P.qp * std::sin(th),
                              P.q * -std::sin(th) + P.qp * std::cos(th));
        CHECK(distance(rho(P, +1).u, rho(Q, +1).u) < 1e-12);
        CHECK(distance(rho(P, -1).u, rho(Q, -1).u) < 1e-12);
        CHECK(plane_equivalent(P, Q));
    }
}

TEST_CASE("chi covering and equivariance") {
    CHECK((chi(Quaternion::one(), Quaternion::one()) - Eigen::Matrix4d::Identity()).norm() < 1e-15);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = random_unit(), b = random_unit();
        const Eigen::Matrix4d g = chi(a, b);
        CHECK(std::abs(g.determinant() - 1.0) < 1e-12);
        CHECK((chi(-a, -b) - g).norm() < 1e-14);

        const OrientedPlane P = random_plane();
        const OrientedPlane gP = transform_plane(g, P);
        const Quaternion lp = a * rho(P, +1).u * a.conj();
        const Quaternion lm = b * rho(P, -1).u * b.conj();
        CHECK(distance(rho(gP, +1).u, lp) < 1e-12);
        CHECK(distance(rho(gP, -1).u, lm) < 1e-12);
        // Conjugation equivariance of J+.
        const Eigen::Matrix4d lhs = g * j_plus(P).matrix * g.transpose();
        CHECK((lhs - j_plus(gP).matrix).norm() < 1e-11);
    }
}

TEST_CASE("hopf fibration") {
    const SpherePoint e(Quaternion::j());
    CHECK(distance(hopf(Quaternion::one(), e).u, e.u) < 1e-15);
    std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
    for (int t = 0; t < 100; ++t) {
        // The circle S^1(e) fixes e.
        const double th = ang(rng);
        const Quaternion c = Quaternion::one() * std::cos(th) + e.u * std::sin(th);
        CHECK(distance(hopf(c, e).u, e.u) < 1e-12);
        CHECK(std::abs(hopf(random_unit(), e).u.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("Grassmannian as a product of spheres") {
    const OrientedPlane P1i(Quaternion::one(), Quaternion::i());
    const auto [sp, sm] = gr2_to_s2s2(P1i);
    CHECK(distance(sp.u, Quaternion::i()) < 1e-14);
    CHECK(distance(sm.u, -Quaternion::i()) < 1e-14);

    for (int t = 0; t < 2000; ++t) {
        const OrientedPlane P = random_plane();
        const auto [a, b] = gr2_to_s2s2(P);
        const OrientedPlane Q = s2s2_to_gr2(a, b);
        CHECK(plane_equivalent(P, Q, 1e-10));
    }
    // Surjectivity: random targets have preimages.
    for (int t = 0; t < 2000; ++t) {
        const SpherePoint a = random_sphere_point(), b = random_sphere_point();
        const OrientedPlane P = s2s2_to_gr2(a, b);
        const auto [a2, b2] = gr2_to_s2s2(P);
        CHECK(distance(a.u, a2.u) < 1e-12);
        CHECK(distance(b.u, b2.u) < 1e-12);
    }
}
