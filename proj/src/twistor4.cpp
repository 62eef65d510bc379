#include "foursym/twistor4.hpp"

#include <cmath>
#include <ostream>

namespace foursym {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

SpherePoint::SpherePoint(const Quaternion& q, double tol) : u(q) {
    if (std::abs(q.re()) > tol)
        fail(Errc::bad_input, "sphere point has nonzero real part " + std::to_string(q.re()));
    if (std::abs(q.norm() - 1.0) > tol)
        fail(Errc::bad_input, "sphere point is not unit, |q| = " + std::to_string(q.norm()));
    u.w = 0.0;
    u = u.normalized();
}

OrientedPlane::OrientedPlane(const Quaternion& q_, const Quaternion& qp_, double tol) : q(q_), qp(qp_) {
    const double d1 = std::abs(q.norm() - 1.0);
    const double d2 = std::abs(qp.norm() - 1.0);
    const double d3 = std::abs(q.dot(qp));
    if (d1 > tol || d2 > tol || d3 > tol)
        fail(Errc::non_orthonormal, "plane pair deviates from orthonormality by " +
                                        std::to_string(std::max({d1, d2, d3})));
    q = q.normalized();
    qp = (qp - q * q.dot(qp)).normalized();
}

OrientedPlane OrientedPlane::from_span(const Quaternion& u, const Quaternion& v) {
    const double nu = u.norm();
    if (nu < 1e-14) fail(Errc::degenerate_plane, "first spanning vector vanishes");
    const Quaternion e1 = u / nu;
    const Quaternion r = v - e1 * e1.dot(v);
    const double nr = r.norm();
    if (nr < 1e-14 * std::max(1.0, v.norm()))
        fail(Errc::degenerate_plane, "spanning vectors are linearly dependent");
    return OrientedPlane(e1, r / nr, 1e-6);
}

Eigen::Vector4d to_vec4(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

Quaternion from_vec4(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

Quaternion AlmostComplexStructure4::apply(const Quaternion& v) const {
    return from_vec4(matrix * to_vec4(v));
}

Eigen::Matrix4d left_mult_matrix(const Quaternion& u) {
    Eigen::Matrix4d M;
    const Quaternion cols[4] = {u * Quaternion::one(), u * Quaternion::i(), u * Quaternion::j(),
                                u * Quaternion::k()};
    for (int c = 0; c < 4; ++c) M.col(c) = to_vec4(cols[c]);
    return M;
}

Eigen::Matrix4d right_mult_matrix(const Quaternion& u) {
    Eigen::Matrix4d M;
    const Quaternion cols[4] = {Quaternion::one() * u, Quaternion::i() * u, Quaternion::j() * u,
                                Quaternion::k() * u};
    for (int c = 0; c < 4; ++c) M.col(c) = to_vec4(cols[c]);
    return M;
}

Quaternion cross_left(const Quaternion& q, const Quaternion& qp) { return -((q * qp.conj()).im()); }

Quaternion cross_right(const Quaternion& q, const Quaternion& qp) { return -((q.conj() * qp).im()); }

int chirality_of(const Eigen::Matrix4d& J) {
    // Orientation of (v, Jv, w, Jw) with v = e0 and w any unit vector
    // orthogonal to span(v, Jv).
    const Eigen::Vector4d v = Eigen::Vector4d::Unit(0);
    const Eigen::Vector4d jv = J * v;
    Eigen::Vector4d w = Eigen::Vector4d::Zero();
    for (int c = 1; c < 4; ++c) {
        Eigen::Vector4d cand = Eigen::Vector4d::Unit(c);
        cand -= v * v.dot(cand) + jv * jv.dot(cand);
        if (cand.norm() > 0.5) {
            w = cand.normalized();
            break;
        }
    }
    Eigen::Matrix4d F;
    F.col(0) = v;
    F.col(1) = jv;
    F.col(2) = w;
    F.col(3) = J * w;
    return F.determinant() > 0 ? +1 : -1;
}

AlmostComplexStructure4 j_plus(const OrientedPlane& P) {
    const Quaternion u = cross_left(P.q, P.qp);
    AlmostComplexStructure4 J{left_mult_matrix(u), +1};
    return J;
}

AlmostComplexStructure4 j_minus(const OrientedPlane& P) {
    const Quaternion u = cross_right(P.q, P.qp);
    AlmostComplexStructure4 J{-right_mult_matrix(u), -1};
    return J;
}

SpherePoint rho(const OrientedPlane& P, int eps) {
    const Quaternion u = (eps >= 0) ? cross_left(P.q, P.qp) : cross_right(P.q, P.qp);
    return SpherePoint(u, 1e-7);
}

Eigen::Matrix4d chi(const Quaternion& a, const Quaternion& b) {
    if (std::abs(a.norm() - 1.0) > kOrthoTol || std::abs(b.norm() - 1.0) > kOrthoTol)
        fail(Errc::bad_input, "chi needs unit quaternions");
    return left_mult_matrix(a) * right_mult_matrix(b.conj());
}

SpherePoint hopf(const Quaternion& a, const SpherePoint& e) {
    return SpherePoint(a * e.u * a.conj() / a.norm2(), 1e-7);
}

std::pair<SpherePoint, SpherePoint> gr2_to_s2s2(const OrientedPlane& P) {
    return {rho(P, +1), rho(P, -1)};
}

Quaternion rotation_between(const SpherePoint& from, const SpherePoint& to) {
    const double c = from.dot(to);
    if (c > 1.0 - 1e-14) return Quaternion::one();
    if (c < -1.0 + 1e-12)
        fail(Errc::antipodal_step, "rotation between antipodal sphere points is ambiguous");
    // Axis from the Im H cross product, half-angle quaternion.
    const Quaternion axis = cross_left(from.u, to.u).normalized();
    const double theta = std::acos(std::clamp(c, -1.0, 1.0));
    return qexp(axis * (theta / 2.0));
}

namespace {
// Total variant: an antipodal target is reached by a half-turn around any
// orthogonal axis.
Quaternion rotation_onto(const SpherePoint& from, const SpherePoint& to) {
    if (from.dot(to) < -1.0 + 1e-12) {
        Quaternion axis = cross_left(from.u, Quaternion::j());
        if (axis.norm() < 1e-6) axis = cross_left(from.u, Quaternion::k());
        return qexp(axis.normalized() * (M_PI / 2.0));
    }
    return rotation_between(from, to);
}
}  // namespace

OrientedPlane s2s2_to_gr2(const SpherePoint& sp, const SpherePoint& sm) {
    // rho+ x rho- (g(1 ^ e)) = (a e a^-1, -b e b^-1) for g = L_a R_{conj b}.
    const SpherePoint e(Quaternion::i());
    const Quaternion a = rotation_onto(e, sp);
    const SpherePoint sm_neg(-sm.u);
    const Quaternion b = rotation_onto(e, sm_neg);
    const Quaternion g1 = a * Quaternion::one() * b.conj();
    const Quaternion ge = a * e.u * b.conj();
    return OrientedPlane(g1, ge, 1e-7);
}

bool plane_equivalent(const OrientedPlane& a, const OrientedPlane& b, double tol) {
    const Eigen::Vector4d a1 = to_vec4(a.q), a2 = to_vec4(a.qp);
    const Eigen::Vector4d b1 = to_vec4(b.q), b2 = to_vec4(b.qp);
    const Eigen::Matrix4d Pa = a1 * a1.transpose() + a2 * a2.transpose();
    const Eigen::Matrix4d Pb = b1 * b1.transpose() + b2 * b2.transpose();
    if ((Pa - Pb).norm() > tol) return false;
    // In-plane change of basis must rotate, not reflect.
    const double det = a.q.dot(b.q) * a.qp.dot(b.qp) - a.q.dot(b.qp) * a.qp.dot(b.q);
    return det > 0.0;
}

OrientedPlane transform_plane(const Eigen::Matrix4d& g, const OrientedPlane& P) {
    return OrientedPlane(from_vec4(g * to_vec4(P.q)), from_vec4(g * to_vec4(P.qp)), 1e-7);
}

}  // namespace foursym
