#pragma once

#include <random>

#include "foursym/reductive.hpp"

namespace foursym {

/// A 4-symmetric space packaged for numerical work: algebra, order-four
/// automorphism, grading, reductive data and reproducible group samplers.
struct FourSymmetricSpec {
    LieAlgebraBasis g;
    LinearAutomorphism tau;
    Z4Grading grading;
    ReductivePair pair;
    std::string family;  // "sphere" | "real_gr" | "complex_gr" | "affine"
    std::vector<double> params;

    /// exp of Gaussian algebra elements (scale 0.5), products of <= 3.
    Eigen::MatrixXd sample_group(std::mt19937_64& rng, int factors = 3, double scale = 0.5) const;
    /// Same restricted to h, g0, or an arbitrary coefficient subspace.
    Eigen::MatrixXd sample_h(std::mt19937_64& rng, int factors = 3, double scale = 0.5) const;
    Eigen::MatrixXd sample_g0(std::mt19937_64& rng, int factors = 3, double scale = 0.5) const;

    /// Ad g on coefficient vectors (projection residual must stay small).
    Eigen::MatrixXd ad_coeff(const Eigen::MatrixXd& g_elem) const;
    /// Ad_m of an H element in the metric-orthonormal m basis.
    Eigen::MatrixXd ad_m(const Eigen::MatrixXd& h_elem) const;
    /// Residual of Ad(h) stabilizing m (spec invariant, < 1e-8 for H samples).
    double m_stabilization_residual(const Eigen::MatrixXd& h_elem) const;
};

struct TwistorPoint {
    Eigen::MatrixXd base;  // coset representative
    Eigen::MatrixXd J_op;  // Ad g . (tau|m extended by 0 on h) . Ad g^{-1}
};

/// The embedding g G0 -> g J0 g^{-1}, represented as an operator on
/// coefficient space. Constant on G0 cosets.
TwistorPoint embed(const FourSymmetricSpec& spec, const Eigen::MatrixXd& g_elem);

double twistor_distance(const TwistorPoint& a, const TwistorPoint& b);

/// Fibre samples h J0|m h^{-1} over the base point, as dm x dm matrices.
std::vector<Eigen::MatrixXd> fibre_orbit(const FourSymmetricSpec& spec, int n_samples,
                                         unsigned seed);

/// Local PCA dimension of the fibre orbit around J0 (200 samples in a ball
/// of radius 1e-3, singular values above 1e-6 of the largest count).
int orbit_dimension_estimate(const FourSymmetricSpec& spec, unsigned seed, int n_samples = 200,
                             double radius = 1e-3, double sv_cutoff = 1e-6);

/// S^{2n} = SO(2n+1)/SO(2n) with tau = Int(diag(-J0, 1)).
FourSymmetricSpec sphere_spec(int n, const Eigen::MatrixXd& J0);

/// Oriented real Grassmannian SO(p+q)/SO(p)xSO(q), tau = Int(diag(J1, J2)),
/// (J1^2, J2^2) = +-(-Id, Id). Throws ParityViolation when p q is odd.
FourSymmetricSpec real_grassmannian_spec(int p, int q, const Eigen::MatrixXd& J1,
                                         const Eigen::MatrixXd& J2);

/// Complex Grassmannian SU(p+q)/S(U(p)xU(q)) realized over R;
/// J1 = i I_{l,p-l}, J2 = I_{r,q-r} up to conjugation.
FourSymmetricSpec complex_grassmannian_spec(int p, int q, int l, int r);

/// Affine isometry family over R^4 = H: g = h_I (x| R^4 with tau =
/// Int(-eps J_{1 ^ e}, 0); `isotropy` lists indices in {1,2,3}, e is the
/// reference imaginary unit as a coefficient 4-vector.
FourSymmetricSpec affine_r4_spec(const std::vector<int>& isotropy, int eps,
                                 const Eigen::Vector4d& e);

/// Component label (l, r) of the C-linear family: eigenvalue multiplicities
/// l = dim ker(J1 - i), r = dim ker(J2 - 1).
std::pair<int, int> classify_component_complex(const Eigen::MatrixXcd& J1,
                                               const Eigen::MatrixXcd& J2);

struct RealComponentClass {
    int sign;        // +1: (J1^2, J2^2) = (-Id, Id); -1: the mirrored case
    int chirality;   // of the anti-involution factor
    int signature;   // dim ker(symmetry - Id) of the involution factor
    bool exceptional;  // p = 0 mod 4, q even, r = q/2 (disconnected G0)

    bool operator==(const RealComponentClass&) const = default;
    auto operator<=>(const RealComponentClass&) const = default;
};

RealComponentClass classify_component_real(int p, int q, const Eigen::MatrixXd& J1,
                                           const Eigen::MatrixXd& J2);

/// Chirality of J in Sigma(R^{2m}): orientation sign of an adapted frame
/// (v1, J v1, v2, J v2, ...).
int chirality_sign(const Eigen::MatrixXd& J);

}  // namespace foursym
