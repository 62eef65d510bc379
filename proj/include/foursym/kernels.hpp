#pragma once

#include "foursym/grid.hpp"
#include "foursym/lie_algebra.hpp"

namespace foursym {

/// Execution policy for the node-parallel kernels. The contract is
/// read-only sharing of inputs, a parallel-for over nodes writing disjoint
/// columns, and serial reduction for aggregates, so results are identical
/// (bitwise) with parallelism on or off.
struct ExecPolicy {
    bool parallel = true;
};

namespace kernels {

/// Finite-difference taps along one axis: absolute index + weight (1/h
/// included). Central differences inside, one-sided stencils of matching
/// order at non-periodic boundaries.
std::vector<std::vector<std::pair<int, double>>> stencil_taps(int n, double h, bool periodic,
                                                              StencilOrder order);

// Partial derivatives of node-major fields (one column per node).
void diff_u(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out, StencilOrder order,
            const ExecPolicy& pol);
void diff_v(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out, StencilOrder order,
            const ExecPolicy& pol);
void diff_u(const Grid2D& g, const Eigen::MatrixXcd& f, Eigen::MatrixXcd& out, StencilOrder order,
            const ExecPolicy& pol);
void diff_v(const Grid2D& g, const Eigen::MatrixXcd& f, Eigen::MatrixXcd& out, StencilOrder order,
            const ExecPolicy& pol);

/// out.col(n) = [x.col(n), y.col(n)] in the algebra.
void pairwise_bracket(const LieAlgebraBasis& alg, const Eigen::MatrixXd& x,
                      const Eigen::MatrixXd& y, Eigen::MatrixXd& out, const ExecPolicy& pol);
void pairwise_bracket(const LieAlgebraBasis& alg, const Eigen::MatrixXcd& x,
                      const Eigen::MatrixXcd& y, Eigen::MatrixXcd& out, const ExecPolicy& pol);

/// Fused zero-curvature residual d_u A_v - d_v A_u + [A_u, A_v] per node.
/// The _serial variant is the reference implementation the parallel one is
/// tested against; both share the per-node body.
void curvature_field(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXd& Au,
                     const Eigen::MatrixXd& Av, Eigen::MatrixXd& out, StencilOrder order,
                     const ExecPolicy& pol);
void curvature_field_serial(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXd& Au,
                            const Eigen::MatrixXd& Av, Eigen::MatrixXd& out, StencilOrder order);
void curvature_field(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXcd& Au,
                     const Eigen::MatrixXcd& Av, Eigen::MatrixXcd& out, StencilOrder order,
                     const ExecPolicy& pol);
void curvature_field_serial(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXcd& Au,
                            const Eigen::MatrixXcd& Av, Eigen::MatrixXcd& out, StencilOrder order);

/// Second derivatives (second-order accurate, one-sided at boundaries).
void diff2_u(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out,
             const ExecPolicy& pol);
void diff2_v(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out,
             const ExecPolicy& pol);

Eigen::VectorXd node_norms(const Eigen::MatrixXd& f);
Eigen::VectorXd node_norms(const Eigen::MatrixXcd& f);

}  // namespace kernels

}  // namespace foursym
