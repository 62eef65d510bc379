#pragma once

#include <Eigen/Dense>

#include "foursym/error.hpp"
#include "foursym/quaternion.hpp"

namespace foursym {

inline constexpr double kOrthoTol = 1e-9;
inline constexpr double kPlaneTol = 1e-10;

/// Unit imaginary quaternion, a point of S(Im H) = S^2.
struct SpherePoint {
    Quaternion u;

    SpherePoint() : u(0, 1, 0, 0) {}
    explicit SpherePoint(const Quaternion& q, double tol = kOrthoTol);

    double dot(const SpherePoint& o) const { return u.dot(o.u); }
};

/// Oriented plane of H given by an ordered orthonormal pair (q, q').
/// Two pairs describe the same plane iff related by an SO(2) rotation.
struct OrientedPlane {
    Quaternion q, qp;

    /// Validates near-orthonormality (tol), then applies one Gram-Schmidt pass.
    OrientedPlane(const Quaternion& q_, const Quaternion& qp_, double tol = kOrthoTol);

    /// Orthonormalizes an arbitrary independent spanning pair.
    static OrientedPlane from_span(const Quaternion& u, const Quaternion& v);
};

/// Orthogonal anti-involution of R^4 (J^2 = -Id) with its chirality sign.
struct AlmostComplexStructure4 {
    Eigen::Matrix4d matrix;
    int chirality;  // +1 or -1

    Quaternion apply(const Quaternion& v) const;
};

Eigen::Vector4d to_vec4(const Quaternion& q);
Quaternion from_vec4(const Eigen::Vector4d& v);

/// Matrix of x -> u*x in the basis (1, i, j, k).
Eigen::Matrix4d left_mult_matrix(const Quaternion& u);
/// Matrix of x -> x*u.
Eigen::Matrix4d right_mult_matrix(const Quaternion& u);

/// q x_L q' = -Im(q * conj(q')); bilinear, antisymmetric, pure imaginary.
Quaternion cross_left(const Quaternion& q, const Quaternion& qp);
/// q x_R q' = -Im(conj(q) * q').
Quaternion cross_right(const Quaternion& q, const Quaternion& qp);

/// Positive complex structure extending the plane's rotation: L_{q x_L q'}.
AlmostComplexStructure4 j_plus(const OrientedPlane& P);
/// Negative counterpart -R_{q x_R q'}.
AlmostComplexStructure4 j_minus(const OrientedPlane& P);

/// rho(P, +1) = q x_L q', rho(P, -1) = q x_R q'.
SpherePoint rho(const OrientedPlane& P, int eps);

/// Matrix of x -> a*x*conj(b); the 2-sheeted covering S^3 x S^3 -> SO(4).
Eigen::Matrix4d chi(const Quaternion& a, const Quaternion& b);

/// Hopf fibration value a*e*a^-1 for unit a.
SpherePoint hopf(const Quaternion& a, const SpherePoint& e);

std::pair<SpherePoint, SpherePoint> gr2_to_s2s2(const OrientedPlane& P);
OrientedPlane s2s2_to_gr2(const SpherePoint& sp, const SpherePoint& sm);

/// Chirality sign of an orthogonal anti-involution (orientation of an
/// adapted frame (v, Jv, w, Jw)); +1 for L_i.
int chirality_of(const Eigen::Matrix4d& J);

/// Planes compared through the rank-2 projector qq^T + q'q'^T plus the
/// orientation sign of the in-plane change of basis.
bool plane_equivalent(const OrientedPlane& a, const OrientedPlane& b, double tol = kPlaneTol);

/// Unit quaternion r with int_r(from) = to, rotating in span(from, to) by
/// the minimal angle. Throws antipodal_step when from = -to.
Quaternion rotation_between(const SpherePoint& from, const SpherePoint& to);

/// Image plane (g q, g q') for g in SO(4).
OrientedPlane transform_plane(const Eigen::Matrix4d& g, const OrientedPlane& P);

}  // namespace foursym
