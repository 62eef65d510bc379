#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "foursym/error.hpp"

namespace foursym {

/// Matrix Lie algebra given by a linearly independent basis of n x n real
/// matrices, with structure constants computed by least-squares projection.
/// Coefficient vectors below always refer to this basis.
class LieAlgebraBasis {
  public:
    LieAlgebraBasis() = default;

    int matrix_size() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }
    const std::vector<bool>& translation_flags() const { return translation_flags_; }
    double closure_residual() const { return closure_residual_; }
    double jacobi_residual() const { return jacobi_residual_; }

    /// c[i](j,k) with [X_j, X_k] = sum_i c[i](j,k) X_i.
    const std::vector<Eigen::MatrixXd>& structure_constants() const { return c_; }
    /// Complex copy kept for the complexified bracket hot path.
    const std::vector<Eigen::MatrixXcd>& structure_constants_cplx() const { return c_cplx_; }

    Eigen::MatrixXd realize(const Eigen::VectorXd& coeffs) const;
    Eigen::MatrixXcd realize(const Eigen::VectorXcd& coeffs) const;

    /// Least-squares coefficients of M over the basis; *residual (if given)
    /// receives ||M - realize(coeffs)|| / max(1, ||M||).
    Eigen::VectorXd project(const Eigen::MatrixXd& M, double* residual = nullptr) const;
    Eigen::VectorXcd project(const Eigen::MatrixXcd& M, double* residual = nullptr) const;

    Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    Eigen::VectorXcd bracket(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
    void bracket_into(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, Eigen::VectorXcd& out) const;
    void bracket_into(const Eigen::VectorXd& x, const Eigen::VectorXd& y, Eigen::VectorXd& out) const;

    /// Matrix of ad(x) acting on coefficient vectors.
    Eigen::MatrixXd ad_matrix(const Eigen::VectorXd& x) const;

    /// Killing form K(i,j) = tr(ad X_i ad X_j) on coefficients.
    Eigen::MatrixXd killing_form() const;

    friend LieAlgebraBasis make_algebra(int n, const std::vector<Eigen::MatrixXd>& basis,
                                        const std::vector<bool>& translation_flags, double tol);

  private:
    int n_ = 0;
    std::vector<Eigen::MatrixXd> basis_;
    std::vector<bool> translation_flags_;
    std::vector<Eigen::MatrixXd> c_;
    std::vector<Eigen::MatrixXcd> c_cplx_;
    double closure_residual_ = 0.0;
    double jacobi_residual_ = 0.0;
    Eigen::MatrixXd basis_flat_;  // n^2 x m
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> proj_;
};

/// Builds the algebra and verifies closure and the Jacobi identity.
/// Throws DependentBasis / NotClosed.
LieAlgebraBasis make_algebra(int n, const std::vector<Eigen::MatrixXd>& basis,
                             const std::vector<bool>& translation_flags = {}, double tol = 1e-9);

/// h |x R^n realized as (n+1)x(n+1) blocks [[A, v], [0, 0]]; the last n basis
/// vectors are the translations and carry translation flags.
LieAlgebraBasis semidirect(const LieAlgebraBasis& h_alg, int n);

/// Scaling-and-squaring matrix exponential with diagonal Pade(6),
/// squaring threshold ||X||_1 <= 0.5.
Eigen::MatrixXd expm(const Eigen::MatrixXd& X);

/// Standard bases.
std::vector<Eigen::MatrixXd> so_basis(int n);
/// su(n) realified: n x n complex anti-Hermitian traceless mapped to 2n x 2n
/// real matrices via A + iB -> [[A, -B], [B, A]].
std::vector<Eigen::MatrixXd> su_basis_realified(int n);
Eigen::MatrixXd realify(const Eigen::MatrixXcd& M);

}  // namespace foursym
