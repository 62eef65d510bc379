#include "foursym/bundle.hpp"

#include <cmath>

#include "foursym/twistor4.hpp"

namespace foursym {

namespace {

Eigen::MatrixXd sample_in_span(const LieAlgebraBasis& alg, const Eigen::MatrixXd& span_cols,
                               std::mt19937_64& rng, int factors, double scale) {
    std::normal_distribution<double> gauss(0.0, scale);
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(alg.matrix_size(), alg.matrix_size());
    for (int f = 0; f < factors; ++f) {
        Eigen::VectorXd c(span_cols.cols());
        for (int i = 0; i < c.size(); ++i) c[i] = gauss(rng);
        g = g * expm(alg.realize(Eigen::VectorXd(span_cols * c)));
    }
    return g;
}

}  // namespace

Eigen::MatrixXd FourSymmetricSpec::sample_group(std::mt19937_64& rng, int factors,
                                                double scale) const {
    return sample_in_span(g, Eigen::MatrixXd::Identity(g.dim(), g.dim()), rng, factors, scale);
}

Eigen::MatrixXd FourSymmetricSpec::sample_h(std::mt19937_64& rng, int factors, double scale) const {
    return sample_in_span(g, pair.h_basis, rng, factors, scale);
}

Eigen::MatrixXd FourSymmetricSpec::sample_g0(std::mt19937_64& rng, int factors,
                                             double scale) const {
    const Eigen::MatrixXd span = pair.h_basis * commutant_in_h(pair.data.h_action, pair.tau_m);
    return sample_in_span(g, span, rng, factors, scale);
}

Eigen::MatrixXd FourSymmetricSpec::ad_coeff(const Eigen::MatrixXd& g_elem) const {
    const int m = g.dim();
    Eigen::MatrixXd Ad(m, m);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(g_elem);
    for (int i = 0; i < m; ++i) {
        double res = 0.0;
        Ad.col(i) = g.project(Eigen::MatrixXd(g_elem * g.basis()[i] * lu.inverse()), &res);
        if (res > 1e-7)
            fail(Errc::projection_residual, "Ad(g) leaves the algebra span by " + std::to_string(res));
    }
    return Ad;
}

Eigen::MatrixXd FourSymmetricSpec::ad_m(const Eigen::MatrixXd& h_elem) const {
    const Eigen::MatrixXd Ad = ad_coeff(h_elem);
    const int dm = pair.dim_m();
    Eigen::MatrixXd out(dm, dm);
    for (int j = 0; j < dm; ++j)
        out.col(j) = pair.m_coords(Eigen::VectorXd(Ad * pair.m_basis.col(j)));
    return out;
}

double FourSymmetricSpec::m_stabilization_residual(const Eigen::MatrixXd& h_elem) const {
    const Eigen::MatrixXd Ad = ad_coeff(h_elem);
    double worst = 0.0;
    for (int j = 0; j < pair.dim_m(); ++j) {
        const Eigen::VectorXd img = Ad * pair.m_basis.col(j);
        worst = std::max(worst, pair.h_coords(img).norm() / std::max(1.0, img.norm()));
    }
    return worst;
}

TwistorPoint embed(const FourSymmetricSpec& spec, const Eigen::MatrixXd& g_elem) {
    const int m = spec.g.dim();
    const int dm = spec.pair.dim_m();
    // tau|m extended by zero on h, as an operator on coefficient space.
    Eigen::MatrixXd tau_hat = Eigen::MatrixXd::Zero(m, m);
    for (int c = 0; c < m; ++c) {
        const Eigen::VectorXd mc = spec.pair.m_coords(Eigen::VectorXd(Eigen::VectorXd::Unit(m, c)));
        tau_hat.col(c) = spec.pair.m_basis * (spec.pair.tau_m * mc);
    }
    (void)dm;
    const Eigen::MatrixXd Ad = spec.ad_coeff(g_elem);
    TwistorPoint tp;
    tp.base = g_elem;
    tp.J_op = Ad * tau_hat * Ad.inverse();
    return tp;
}

double twistor_distance(const TwistorPoint& a, const TwistorPoint& b) {
    return (a.J_op - b.J_op).norm();
}

std::vector<Eigen::MatrixXd> fibre_orbit(const FourSymmetricSpec& spec, int n_samples,
                                         unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<Eigen::MatrixXd> orbit;
    orbit.reserve(n_samples);
    for (int s = 0; s < n_samples; ++s) {
        const Eigen::MatrixXd h = spec.sample_h(rng);
        const Eigen::MatrixXd Adm = spec.ad_m(h);
        orbit.push_back(Adm * spec.pair.tau_m * Adm.inverse());
    }
    return orbit;
}

int orbit_dimension_estimate(const FourSymmetricSpec& spec, unsigned seed, int n_samples,
                             double radius, double sv_cutoff) {
    std::mt19937_64 rng(seed);
    const int dm = spec.pair.dim_m();
    Eigen::MatrixXd D(dm * dm, n_samples);
    for (int s = 0; s < n_samples; ++s) {
        const Eigen::MatrixXd h = spec.sample_h(rng, 1, radius);
        const Eigen::MatrixXd Adm = spec.ad_m(h);
        const Eigen::MatrixXd diff = Adm * spec.pair.tau_m * Adm.inverse() - spec.pair.tau_m;
        D.col(s) = Eigen::Map<const Eigen::VectorXd>(diff.data(), dm * dm);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] < 1e-12) return 0;
    int dim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > sv_cutoff * sv[0]) ++dim;
    return dim;
}

FourSymmetricSpec sphere_spec(int n, const Eigen::MatrixXd& J0) {
    if (n < 1) fail(Errc::out_of_range, "sphere needs n >= 1");
    const int d = 2 * n;
    if (J0.rows() != d || J0.cols() != d)
        fail(Errc::bad_input, "J0 must be 2n x 2n");
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    if ((J0 * J0 + I).norm() > 1e-9 || (J0 * J0.transpose() - I).norm() > 1e-9)
        fail(Errc::not_complex_structure, "J0 is not an orthogonal anti-involution");

    FourSymmetricSpec spec;
    spec.family = "sphere";
    spec.params = {static_cast<double>(n)};
    spec.g = make_algebra(d + 1, so_basis(d + 1));
    Eigen::MatrixXd conj = Eigen::MatrixXd::Zero(d + 1, d + 1);
    conj.topLeftCorner(d, d) = -J0;
    conj(d, d) = 1.0;
    spec.tau = int_automorphism(spec.g, conj, 4);
    spec.grading = z4_decompose(spec.g, spec.tau);
    spec.pair = make_reductive(spec.g, spec.grading);
    return spec;
}

FourSymmetricSpec real_grassmannian_spec(int p, int q, const Eigen::MatrixXd& J1,
                                         const Eigen::MatrixXd& J2) {
    if (p < 1 || q < 1 || (p * q) % 2 != 0)
        fail(Errc::parity_violation, "p q must be even");
    const Eigen::MatrixXd Ip = Eigen::MatrixXd::Identity(p, p);
    const Eigen::MatrixXd Iq = Eigen::MatrixXd::Identity(q, q);
    const double plus = std::max((J1 * J1 + Ip).norm(), (J2 * J2 - Iq).norm());
    const double minus = std::max((J1 * J1 - Ip).norm(), (J2 * J2 + Iq).norm());
    if (std::min(plus, minus) > 1e-9)
        fail(Errc::parity_violation, "(J1^2, J2^2) must be +-(-Id_p, Id_q)");
    if (minus < plus && q % 2 != 0)
        fail(Errc::parity_violation, "the -(-Id, Id) branch needs q even");

    FourSymmetricSpec spec;
    spec.family = "real_gr";
    spec.params = {static_cast<double>(p), static_cast<double>(q)};
    spec.g = make_algebra(p + q, so_basis(p + q));
    Eigen::MatrixXd conj = Eigen::MatrixXd::Zero(p + q, p + q);
    conj.topLeftCorner(p, p) = J1;
    conj.bottomRightCorner(q, q) = J2;
    spec.tau = int_automorphism(spec.g, conj, 4);
    spec.grading = z4_decompose(spec.g, spec.tau);
    spec.pair = make_reductive(spec.g, spec.grading);
    return spec;
}

FourSymmetricSpec complex_grassmannian_spec(int p, int q, int l, int r) {
    if (l < 0 || l > p || r < 0 || r > q)
        fail(Errc::out_of_range, "need 0 <= l <= p and 0 <= r <= q");
    const int N = p + q;
    using cd = std::complex<double>;
    Eigen::MatrixXcd conj_c = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < p; ++i) conj_c(i, i) = (i < l) ? cd(0, 1) : cd(0, -1);
    for (int j = 0; j < q; ++j) conj_c(p + j, p + j) = (j < r) ? cd(1, 0) : cd(-1, 0);

    FourSymmetricSpec spec;
    spec.family = "complex_gr";
    spec.params = {static_cast<double>(p), static_cast<double>(q), static_cast<double>(l),
                   static_cast<double>(r)};
    spec.g = make_algebra(2 * N, su_basis_realified(N));
    spec.tau = int_automorphism(spec.g, realify(conj_c), 4);
    spec.grading = z4_decompose(spec.g, spec.tau);
    spec.pair = make_reductive(spec.g, spec.grading);
    return spec;
}

FourSymmetricSpec affine_r4_spec(const std::vector<int>& isotropy, int eps,
                                 const Eigen::Vector4d& e) {
    for (int i : isotropy)
        if (i < 1 || i > 3) fail(Errc::out_of_range, "isotropy indices lie in {1,2,3}");
    if (std::abs(e[0]) > 1e-9 || std::abs(e.norm() - 1.0) > 1e-9)
        fail(Errc::bad_input, "reference e must be a unit imaginary quaternion");

    // h = commutant of the J^eps_{1 ^ e_i}, i in I, inside so(4).
    const auto so4 = so_basis(4);
    std::vector<Eigen::MatrixXd> gens;
    for (int i : isotropy) {
        Quaternion ei = i == 1 ? Quaternion::i() : (i == 2 ? Quaternion::j() : Quaternion::k());
        gens.push_back(eps > 0 ? left_mult_matrix(ei) : right_mult_matrix(ei));
    }
    Eigen::MatrixXd constraints(16 * gens.size(), so4.size());
    for (size_t b = 0; b < so4.size(); ++b) {
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            const Eigen::Matrix4d C = so4[b] * gens[gi] - gens[gi] * so4[b];
            constraints.block(16 * gi, b, 16, 1) = Eigen::Map<const Eigen::VectorXd>(C.data(), 16);
        }
    }
    std::vector<Eigen::MatrixXd> h_basis_mats;
    if (gens.empty()) {
        h_basis_mats = so4;
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-9 * sv[0]) ++rank;
        const Eigen::MatrixXd nsp = svd.matrixV().rightCols(svd.matrixV().cols() - rank);
        for (int c = 0; c < nsp.cols(); ++c) {
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
            for (size_t b = 0; b < so4.size(); ++b) M += nsp(b, c) * so4[b];
            h_basis_mats.push_back(M);
        }
    }

    FourSymmetricSpec spec;
    spec.family = "affine";
    spec.params = {static_cast<double>(eps)};
    for (int i : isotropy) spec.params.push_back(static_cast<double>(i));
    const LieAlgebraBasis h_alg = make_algebra(4, h_basis_mats);
    spec.g = semidirect(h_alg, 4);

    // tau = Int((-eps J^eps_{1 ^ e}, 0)) on the affine group.
    const Quaternion eq = from_vec4(e);
    const Eigen::Matrix4d Je = eps > 0 ? left_mult_matrix(eq) : right_mult_matrix(eq);
    Eigen::MatrixXd conj = Eigen::MatrixXd::Zero(5, 5);
    conj.topLeftCorner(4, 4) = -static_cast<double>(eps) * Je;
    conj(4, 4) = 1.0;
    spec.tau = int_automorphism(spec.g, conj, 4);
    spec.grading = z4_decompose(spec.g, spec.tau);
    spec.pair = make_reductive(spec.g, spec.grading);
    return spec;
}

std::pair<int, int> classify_component_complex(const Eigen::MatrixXcd& J1,
                                               const Eigen::MatrixXcd& J2) {
    const int p = static_cast<int>(J1.rows());
    const int q = static_cast<int>(J2.rows());
    const Eigen::MatrixXcd Ip = Eigen::MatrixXcd::Identity(p, p);
    const Eigen::MatrixXcd Iq = Eigen::MatrixXcd::Identity(q, q);
    if ((J1 * J1 + Ip).norm() > 1e-8 || (J2 * J2 - Iq).norm() > 1e-8 ||
        (J1 * J1.adjoint() - Ip).norm() > 1e-8 || (J2 * J2.adjoint() - Iq).norm() > 1e-8)
        fail(Errc::not_complex_structure,
             "need unitary J1, J2 with J1^2 = -Id and J2^2 = Id");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> e1(J1), e2(J2);
    int l = 0, r = 0;
    for (int i = 0; i < p; ++i)
        if (std::abs(e1.eigenvalues()[i] - std::complex<double>(0, 1)) < 1e-6) ++l;
    for (int i = 0; i < q; ++i)
        if (std::abs(e2.eigenvalues()[i] - std::complex<double>(1, 0)) < 1e-6) ++r;
    return {l, r};
}

int chirality_sign(const Eigen::MatrixXd& J) {
    const int n = static_cast<int>(J.rows());
    Eigen::MatrixXd frame(n, n);
    int placed = 0;
    for (int c = 0; c < n && placed < n; ++c) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, c);
        for (int k = 0; k < placed; ++k) v -= frame.col(k) * frame.col(k).dot(v);
        if (v.norm() < 0.5) continue;
        v.normalize();
        frame.col(placed++) = v;
        Eigen::VectorXd jv = J * v;
        for (int k = 0; k < placed; ++k) jv -= frame.col(k) * frame.col(k).dot(jv);
        frame.col(placed++) = jv.normalized();
    }
    return frame.determinant() > 0 ? +1 : -1;
}

RealComponentClass classify_component_real(int p, int q, const Eigen::MatrixXd& J1,
                                           const Eigen::MatrixXd& J2) {
    const Eigen::MatrixXd Ip = Eigen::MatrixXd::Identity(p, p);
    const Eigen::MatrixXd Iq = Eigen::MatrixXd::Identity(q, q);
    const bool plus = (J1 * J1 + Ip).norm() < 1e-8 && (J2 * J2 - Iq).norm() < 1e-8;
    const bool minus = (J1 * J1 - Ip).norm() < 1e-8 && (J2 * J2 + Iq).norm() < 1e-8;
    if (!plus && !minus)
        fail(Errc::not_complex_structure, "(J1^2, J2^2) must be +-(-Id_p, Id_q)");

    RealComponentClass cls;
    cls.sign = plus ? +1 : -1;
    const Eigen::MatrixXd& anti = plus ? J1 : J2;
    const Eigen::MatrixXd& sym = plus ? J2 : J1;
    cls.chirality = chirality_sign(anti);
    // Multiplicity of the +1 eigenvalue of the orthogonal symmetry.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
    int r = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] > 0.0) ++r;
    cls.signature = r;
    cls.exceptional = (p % 4 == 0) && (q % 2 == 0) && plus && (r == q / 2);
    return cls;
}

}  // namespace foursym
