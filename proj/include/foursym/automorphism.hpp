#pragma once

#include <array>
#include <complex>

#include "foursym/lie_algebra.hpp"

namespace foursym {

/// Linear map on coefficient vectors with declared finite order (2 or 4).
struct LinearAutomorphism {
    Eigen::MatrixXd matrix;
    int order = 4;
};

/// tau = Int(g): X -> g X g^{-1} projected onto the basis.
LinearAutomorphism int_automorphism(const LieAlgebraBasis& g_alg, const Eigen::MatrixXd& g,
                                    int order);

/// ||tau^order - Id||.
double power_residual(const LinearAutomorphism& tau);
/// max over basis pairs of ||tau[X,Y] - [tau X, tau Y]||.
double automorphism_residual(const LieAlgebraBasis& g_alg, const LinearAutomorphism& tau);

/// Verifies both residuals against their tolerances.
void validate_automorphism(const LieAlgebraBasis& g_alg, const LinearAutomorphism& tau,
                           double power_tol = 1e-10, double auto_tol = 1e-9);

/// Eigenspace bases of the complexified order-four automorphism, with the
/// derived real split g = h (+) m, h = g0 (+) g2.
struct Z4Grading {
    /// tilde[k]: columns span the i^k eigenspace of tau over C (k = 3 is -1).
    std::array<Eigen::MatrixXcd, 4> tilde;
    Eigen::MatrixXd g0, g2, h, m;  // real bases (orthonormal columns)
    Eigen::MatrixXd tau_m;         // tau restricted to m, in the m column basis

    int dim() const { return static_cast<int>(g0.rows()); }
    int dim_tilde(int k) const { return static_cast<int>(tilde[(k % 4 + 4) % 4].cols()); }

    /// Splits x into its four graded components (exact linear solve).
    std::array<Eigen::VectorXcd, 4> split(const Eigen::VectorXcd& x) const;
    /// Component of x in tilde g_k.
    Eigen::VectorXcd component(const Eigen::VectorXcd& x, int k) const;

    Eigen::MatrixXcd component_extractor(int k) const;  // dim x dim projector
    const Eigen::PartialPivLU<Eigen::MatrixXcd>& splitter() const { return splitter_; }

    friend Z4Grading assemble_grading(std::array<Eigen::MatrixXcd, 4> tilde);

  private:
    Eigen::MatrixXcd concat_;                       // [B0 | B1 | B2 | B3]
    Eigen::PartialPivLU<Eigen::MatrixXcd> splitter_;
    std::array<int, 4> offsets_{};
};

/// Builds the derived real data from eigenspace bases without validating
/// them (check_grading does that). The bases must span C^dim jointly.
Z4Grading assemble_grading(std::array<Eigen::MatrixXcd, 4> tilde);

/// Kernel extraction of (tau - i^k Id) by SVD with relative cutoff 1e-9.
/// Throws GradingMismatch / ToleranceFailure.
Z4Grading z4_decompose(const LieAlgebraBasis& g_alg, const LinearAutomorphism& tau,
                       double tol = 1e-9);

struct GradingReport {
    double bracket_residual = 0.0;   // worst [g_k, g_l] component outside g_{k+l}
    double conjugation_residual = 0.0;  // worst distance of conj(g_k) from g_{-k}
    bool dims_consistent = true;
};

GradingReport check_grading(const LieAlgebraBasis& g_alg, const Z4Grading& grading);

}  // namespace foursym
