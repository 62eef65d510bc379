#pragma once

#include "foursym/automorphism.hpp"

namespace foursym {

/// The symmetric-pair data that every m-level computation needs: the adjoint
/// action of h on m and the curvature operators ad_m([v_i, v_j]). Everything
/// is expressed in a basis of m that is orthonormal for the invariant metric,
/// so so(m) is plain skew-symmetry.
struct IsotropyData {
    std::vector<Eigen::MatrixXd> h_action;                  // dh matrices, dm x dm
    std::vector<std::vector<Eigen::MatrixXd>> m_bracket_ad;  // ad_m([v_i, v_j])

    int dim_m() const { return h_action.empty() ? static_cast<int>(m_bracket_ad.size())
                                                : static_cast<int>(h_action[0].rows()); }
    int dim_h() const { return static_cast<int>(h_action.size()); }
};

/// Reductive split of an algebra carrying a Z4 grading, with the invariant
/// inner product on m built in (minus the Killing form on semisimple
/// directions, Euclidean on translation parts, symmetrized by tau|m).
struct ReductivePair {
    Eigen::MatrixXd m_basis;  // g.dim x dm, columns metric-orthonormal
    Eigen::MatrixXd h_basis;  // g.dim x dh
    IsotropyData data;
    Eigen::MatrixXd tau_m;        // tau|m, orthogonal anti-involution
    Eigen::MatrixXd metric_raw;   // inner product in the grading's m basis
    double invariance_residual = 0.0;  // worst ad_m(h) skewness / tau-invariance defect

    int dim_m() const { return static_cast<int>(m_basis.cols()); }
    int dim_h() const { return static_cast<int>(h_basis.cols()); }

    /// (h-coords, m-coords) of a coefficient vector.
    Eigen::VectorXd h_coords(const Eigen::VectorXd& x) const;
    Eigen::VectorXd m_coords(const Eigen::VectorXd& x) const;
    Eigen::VectorXcd h_coords(const Eigen::VectorXcd& x) const;
    Eigen::VectorXcd m_coords(const Eigen::VectorXcd& x) const;
    /// ad_m of the h-part of x.
    Eigen::MatrixXd ad_m_of_h(const Eigen::VectorXd& h_coords) const;
    Eigen::MatrixXcd ad_m_of_h(const Eigen::VectorXcd& h_coords) const;

  private:
    Eigen::PartialPivLU<Eigen::MatrixXd> split_;
    friend ReductivePair make_reductive(const LieAlgebraBasis& g_alg, const Z4Grading& grading);
};

/// Inner product on m before orthonormalization, in the grading's m columns.
Eigen::MatrixXd inner_product_m(const LieAlgebraBasis& g_alg, const Z4Grading& grading);

ReductivePair make_reductive(const LieAlgebraBasis& g_alg, const Z4Grading& grading);

struct TauExtension {
    Eigen::MatrixXd tau_h;  // in the h-action index basis
    Eigen::MatrixXd tau_m;
    double automorphism_residual = 0.0;
};

/// Extends J0 on m to an order-four map on h (+) m via least squares on the
/// conjugated h-action. Throws NotComplexStructure / NotInvariant /
/// NotAutomorphism.
TauExtension tau_from_J0(const IsotropyData& data, const Eigen::MatrixXd& J0, double tol = 1e-9);

/// ad_m([J0 v, J0 w]) = J0 ad_m([v, w]) J0^{-1} over basis pairs.
std::pair<bool, double> curvature_invariance_check(const IsotropyData& data,
                                                   const Eigen::MatrixXd& J0, double tol = 1e-8);

/// Commutant {a in h : [ad_m a, J0] = 0}; columns are h-action coefficients.
Eigen::MatrixXd commutant_in_h(const std::vector<Eigen::MatrixXd>& h_action,
                               const Eigen::MatrixXd& J0);

/// Same, cross-checked against the grading's g0. Throws InconsistentGrading.
Eigen::MatrixXd compute_g0(const ReductivePair& pair, const Z4Grading& grading, double tol = 1e-7);

/// Basis of Der(m) inside so(m): skew A with
/// [A, ad_m[v,v']] = ad_m[Av,v'] + ad_m[v,Av'].
std::vector<Eigen::MatrixXd> der_m(const IsotropyData& data, double cutoff = 1e-9);

/// ker(ad_m|h) must vanish for the constructions above; returns its dimension.
int ad_m_kernel_dim(const IsotropyData& data, double cutoff = 1e-9);

}  // namespace foursym
