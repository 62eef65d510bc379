#pragma once

#include "foursym/one_form.hpp"
#include "foursym/reductive.hpp"

namespace foursym {

/// Zero-curvature residual d_u A_v - d_v A_u + [A_u, A_v] per node.
ResidualReport curvature(const DiscreteOneForm& form, const LieAlgebraBasis& alg,
                         StencilOrder order = StencilOrder::second, const ExecPolicy& pol = {});
ResidualReport curvature(const ComplexOneForm& form, const LieAlgebraBasis& alg,
                         StencilOrder order = StencilOrder::second, const ExecPolicy& pol = {});

struct SystemResiduals {
    ResidualReport a, b, c;
    /// (c) + conj(c) must vanish: the equation is i * (real g0 value).
    double c_reality_defect = 0.0;
};

/// The three equations of the second elliptic system evaluated on the
/// graded data (u0, u1, u2).
SystemResiduals system_residuals(const GradedForm& gf, const LieAlgebraBasis& alg,
                                 StencilOrder order = StencilOrder::second,
                                 const ExecPolicy& pol = {});

/// Complex field w = d_zbar u2 + [ub0, u2] (g2-valued); its real part is the
/// vertical-harmonicity residual.
Eigen::MatrixXcd vh_complex_field(const GradedForm& gf, const LieAlgebraBasis& alg,
                                  StencilOrder order, const ExecPolicy& pol);

ResidualReport vertical_harmonicity(const GradedForm& gf, const LieAlgebraBasis& alg,
                                    const Z4Grading& grading,
                                    StencilOrder order = StencilOrder::second,
                                    const ExecPolicy& pol = {});

struct StarFormReport {
    ResidualReport residual;   // d(*alpha_2) + [alpha_0 ^ (*alpha_2)] norms
    double vh_agreement = 0.0;  // max || field - 4 Re(w) ||
};
StarFormReport star_form_residual(const GradedForm& gf, const LieAlgebraBasis& alg,
                                  StencilOrder order = StencilOrder::second,
                                  const ExecPolicy& pol = {});

struct LambdaFlatness {
    std::vector<std::complex<double>> lambdas;
    std::vector<ResidualReport> per_lambda;
    StarFormReport star;
};
LambdaFlatness lambda_flatness(const GradedForm& gf, const LieAlgebraBasis& alg,
                               const std::vector<std::complex<double>>& lambdas,
                               StencilOrder order = StencilOrder::second,
                               const ExecPolicy& pol = {});

/// Default sample set {2, 1, 1/2, e^{i pi/4}, e^{2 i pi/3}}.
std::vector<std::complex<double>> default_lambdas();

struct AdmissibilityReport {
    double max_a1_prime = 0.0;
    double max_am1_dblprime = 0.0;
    double min_am1_prime = 0.0;
    double tol_adm = 0.0;
    double floor_imm = 0.0;
    bool pass = false;
};

/// alpha_{-1}'' = alpha_1' = 0 and alpha_{-1}' bounded away from zero.
/// tol_adm = 10 h^2 max||alpha||, floor_imm = 1e-6 unless overridden.
AdmissibilityReport admissibility(const GradedForm& gf, double floor_imm = 1e-6,
                                  double tol_scale = 10.0);

struct HarmonicityResiduals {
    ResidualReport J_total;            // reductive G/G0 harmonic-map residual
    ResidualReport J_piece_2, J_piece_m1, J_piece_1;
    ResidualReport X;                  // G/H harmonic-map residual
    ResidualReport bracket_term;       // [alpha_2'', alpha_{-1}']
};
HarmonicityResiduals harmonicity_residuals(const GradedForm& gf, const LieAlgebraBasis& alg,
                                           const Z4Grading& grading,
                                           StencilOrder order = StencilOrder::second,
                                           const ExecPolicy& pol = {});

struct ExtrinsicVhReport {
    ResidualReport vertical;     // ||pr_perp(Tr nabla^2 J)|| in the frame gauge
    ResidualReport agreement;    // vs -8 ad_m(Re w) tau|m from the graded path
    double commutant_defect = 0.0;  // discarded term must commute with tau|m
};

/// Vertical part of the rough Laplacian of J = F (-tau|m) F^{-1}, computed
/// from the h-part of the Maurer-Cartan form in the frame gauge.
ExtrinsicVhReport extrinsic_vertical_laplacian(const DiscreteOneForm& alpha, const GradedForm& gf,
                                               const ReductivePair& pair,
                                               const LieAlgebraBasis& alg,
                                               StencilOrder order = StencilOrder::second,
                                               const ExecPolicy& pol = {});

struct BookkeepingCheck {
    double defect_m1 = 0.0;  // lambda^{-1} coefficient vs P_{-1} of the curvature
    double defect_0 = 0.0;
    double defect_p1 = 0.0;
    double defect_2 = 0.0;   // (C_{-2} + C_{+2}) vs P_2
    double star_vs_coeff = 0.0;  // star form vs 2 Im(C_{-2})
};

/// Laurent coefficients of curvature(extend(gf, .)) recovered from five
/// lambda samples by a Vandermonde solve, compared against the graded
/// projections of the plain curvature of the (u0, u1, u2) data.
BookkeepingCheck coefficient_bookkeeping(const GradedForm& gf, const LieAlgebraBasis& alg,
                                         const Z4Grading& grading,
                                         const std::vector<std::complex<double>>& lambdas,
                                         StencilOrder order = StencilOrder::second,
                                         const ExecPolicy& pol = {});

}  // namespace foursym
