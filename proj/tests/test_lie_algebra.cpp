#include <doctest.h>

#include <random>

#include "foursym/lie_algebra.hpp"

using namespace foursym;

namespace {

// so(3) basis with [L_i, L_j] = eps_{ijk} L_k.
std::vector<Eigen::MatrixXd> so3_levi_civita() {
    std::vector<Eigen::MatrixXd> b(3, Eigen::MatrixXd::Zero(3, 3));
    b[0](2, 1) = 1; b[0](1, 2) = -1;
    b[1](0, 2) = 1; b[1](2, 0) = -1;
    b[2](1, 0) = 1; b[2](0, 1) = -1;
    return b;
}

}  // namespace

TEST_CASE("structure constants of so(3) are the Levi-Civita symbol") {
    const auto alg = make_algebra(3, so3_levi_civita());
    CHECK(alg.closure_residual() < 1e-13);
    CHECK(alg.jacobi_residual() < 1e-13);
    const auto& c = alg.structure_constants();
    const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                              {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                              {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) CHECK(std::abs(c[k](i, j) - eps[i][j][k]) < 1e-13);
}

TEST_CASE("non-closing and dependent bases are rejected") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3);
    A(0, 1) = 1; A(1, 0) = -1;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, 3);
    B(0, 2) = 1;
    CHECK_THROWS_WITH_AS(make_algebra(3, {A, B}), doctest::Contains("closure"), Error);

    try {
        make_algebra(3, {A, B});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_closed);
    }

    CHECK_THROWS_AS(make_algebra(3, {A, Eigen::MatrixXd(2.0 * A)}), Error);
}

TEST_CASE("su(2) realified closes tightly") {
    const auto alg = make_algebra(4, su_basis_realified(2));
    CHECK(alg.dim() == 3);
    CHECK(alg.closure_residual() < 1e-12);
}

TEST_CASE("bracket and ad agree") {
    const auto alg = make_algebra(3, so3_levi_civita());
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0, 1);
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd x(3), y(3);
        for (int i = 0; i < 3; ++i) { x[i] = g(rng); y[i] = g(rng); }
        const Eigen::MatrixXd M = alg.realize(x) * alg.realize(y) - alg.realize(y) * alg.realize(x);
        CHECK((alg.realize(alg.bracket(x, y)) - M).norm() < 1e-12);
        CHECK((alg.ad_matrix(x) * y - alg.bracket(x, y)).norm() < 1e-12);
    }
    // Complex bracket extends the real one bilinearly.
    Eigen::VectorXcd xc(3), yc(3);
    xc << std::complex<double>(1, 2), std::complex<double>(0, -1), std::complex<double>(3, 0);
    yc << std::complex<double>(0, 1), std::complex<double>(2, 2), std::complex<double>(-1, 1);
    const Eigen::MatrixXcd Mc =
        alg.realize(xc) * alg.realize(yc) - alg.realize(yc) * alg.realize(xc);
    CHECK((alg.realize(alg.bracket(xc, yc)) - Mc).norm() < 1e-12);
}

TEST_CASE("Killing form of so(3)") {
    const auto alg = make_algebra(3, so3_levi_civita());
    // K = -2 Id for this normalization (tr(ad x ad y) = -2 <x, y>).
    CHECK((alg.killing_form() + 2.0 * Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("semidirect products") {
    const auto u2ish = make_algebra(3, so3_levi_civita());
    const auto aff = semidirect(u2ish, 3);
    CHECK(aff.dim() == 6);
    CHECK(aff.matrix_size() == 4);
    CHECK(aff.translation_flags().size() == 6);
    // [(A, 0), (0, v)] = (0, A v).
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6), y = Eigen::VectorXd::Zero(6);
    x[0] = 1.0;  // L_1 rotation
    y[4] = 1.0;  // e_2 translation
    const Eigen::VectorXd br = aff.bracket(x, y);
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(6);
    expect[5] = 1.0;  // L_1 e_2 = e_3
    CHECK((br - expect).norm() < 1e-13);
    // Translations commute.
    Eigen::VectorXd t1 = Eigen::VectorXd::Zero(6), t2 = Eigen::VectorXd::Zero(6);
    t1[3] = 1.0;
    t2[5] = 1.0;
    CHECK(aff.bracket(t1, t2).norm() < 1e-14);

    CHECK_THROWS_AS(semidirect(u2ish, 4), Error);

    // Trivial h: abelian R^n.
    const auto ab = semidirect(make_algebra(2, {}), 2);
    CHECK(ab.dim() == 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(ab.bracket(Eigen::VectorXd(Eigen::VectorXd::Unit(2, i)),
                             Eigen::VectorXd(Eigen::VectorXd::Unit(2, j)))
                      .norm() < 1e-15);
}

TEST_CASE("matrix exponential matches series and scaling") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0, 1);
    for (int t = 0; t < 30; ++t) {
        Eigen::MatrixXd X(4, 4);
        for (int i = 0; i < 16; ++i) X(i / 4, i % 4) = 0.7 * g(rng);
        // Taylor reference with 30 terms at a halved argument, squared.
        Eigen::MatrixXd T = Eigen::MatrixXd::Identity(4, 4);
        Eigen::MatrixXd term = T;
        const Eigen::MatrixXd Xh = X / 16.0;
        for (int k = 1; k <= 30; ++k) {
            term = term * Xh / k;
            T += term;
        }
        Eigen::MatrixXd ref = T;
        for (int s = 0; s < 4; ++s) ref = ref * ref;
        CHECK((expm(X) - ref).norm() < 1e-11 * std::max(1.0, ref.norm()));
    }
    // One-parameter subgroup property.
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3, 3);
    S(0, 1) = 1.2; S(1, 0) = -1.2; S(1, 2) = -0.4; S(2, 1) = 0.4;
    CHECK((expm(S) * expm(S) - expm(Eigen::MatrixXd(2.0 * S))).norm() < 1e-12);
}
