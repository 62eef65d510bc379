#pragma once

#include "foursym/automorphism.hpp"
#include "foursym/kernels.hpp"

namespace foursym {

/// Grid-sampled g-valued connection form; columns of Au/Av hold coefficients
/// over the algebra basis at each node.
struct DiscreteOneForm {
    Grid2D grid;
    Eigen::MatrixXd Au, Av;

    /// A_z = (A_u - i A_v)/2 per node.
    Eigen::MatrixXcd Az() const;
    Eigen::MatrixXcd Azbar() const;
};

/// Complexified variant used for extended forms.
struct ComplexOneForm {
    Grid2D grid;
    Eigen::MatrixXcd Au, Av;
};

/// Graded components of a one-form under a Z4 grading. z_part[k] holds the
/// tilde-g_k component of A_z (k = 3 is -1), zbar_part[k] the same for
/// A_zbar. In the (u0, u1, u2) notation of the second elliptic system,
/// u0 = z_part[0], u1 = z_part[3], u2 = z_part[2]; z_part[1] and
/// zbar_part[3] are the admissibility diagnostics (both vanish on lifts).
struct GradedForm {
    Grid2D grid;
    std::array<Eigen::MatrixXcd, 4> z_part, zbar_part;
    double reassembly_residual = 0.0;

    const Eigen::MatrixXcd& u0() const { return z_part[0]; }
    const Eigen::MatrixXcd& u1() const { return z_part[3]; }
    const Eigen::MatrixXcd& u2() const { return z_part[2]; }
    const Eigen::MatrixXcd& ub0() const { return zbar_part[0]; }
    const Eigen::MatrixXcd& ub1() const { return zbar_part[1]; }
    const Eigen::MatrixXcd& ub2() const { return zbar_part[2]; }
    /// alpha_1' piece (must vanish on admissible lifts).
    const Eigen::MatrixXcd& a1_prime() const { return z_part[1]; }
    /// alpha_{-1}'' piece.
    const Eigen::MatrixXcd& am1_dblprime() const { return zbar_part[3]; }
};

struct MaurerCartanResult {
    DiscreteOneForm form;
    ResidualReport projection;  // distance of F^{-1} dF from the algebra span
};

/// A_u = F^{-1} (d_u F) projected onto the algebra, central differences with
/// one-sided boundary stencils. Throws SingularFrame / ProjectionResidual.
MaurerCartanResult maurer_cartan(const Grid2D& grid, const std::vector<Eigen::MatrixXd>& frames,
                                 const LieAlgebraBasis& alg,
                                 StencilOrder order = StencilOrder::second,
                                 double proj_tol = 1e-6, const ExecPolicy& pol = {});

/// Splits both complex sides of the form by the grading; the reassembly
/// residual must stay at round-off. Throws BasisMismatch.
GradedForm grade_split(const DiscreteOneForm& form, const Z4Grading& grading,
                       const ExecPolicy& pol = {});
GradedForm grade_split_complex(const ComplexOneForm& form, const Z4Grading& grading,
                               const ExecPolicy& pol = {});

/// Rebuilds the plain form from all stored graded pieces.
ComplexOneForm reassemble(const GradedForm& gf);

/// Extended form: the z-side components weighted lambda^{-2}, lambda^{-1},
/// 1, lambda for k = 2, -1, 0, 1 and the mirrored weights on the zbar side.
/// lambda = 1 returns the reassembled form. Throws on lambda = 0.
ComplexOneForm extend(const GradedForm& gf, std::complex<double> lambda);

struct IntegrationResult {
    std::vector<Eigen::MatrixXd> frames;
    double plaquette_consistency = 0.0;  // max ||Id - holonomy|| over cells
};

/// Integrates dU = U alpha by midpoint exponential steps along row 0 and then
/// up each column. Requires a non-periodic grid and small curvature.
/// Throws CurvatureTooLarge.
IntegrationResult integrate_flat(const DiscreteOneForm& form, const LieAlgebraBasis& alg,
                                 const Eigen::MatrixXd& base, double max_curvature = 1e-2,
                                 const ExecPolicy& pol = {});

}  // namespace foursym
