#pragma once

#include <functional>

#include "foursym/bundle.hpp"
#include "foursym/one_form.hpp"
#include "foursym/residuals.hpp"
#include "foursym/twistor4.hpp"

namespace foursym {

/// Grid-sampled map into H with derived tangent fields and conformal data.
struct ImmersionGrid {
    Grid2D grid;
    Eigen::MatrixXd X;        // 4 x nodes, rows in the (1, i, j, k) basis
    Eigen::MatrixXd Xu, Xv;   // derived by stencils
    Eigen::VectorXd conf_factor;       // |X_u| per node
    double conformality_residual = 0;  // worst of <Xu,Xv> and |Xu|-|Xv| defects
    double immersion_floor = 0;        // min |X_u|

    Quaternion at(int i, int j) const { return from_vec4(X.col(grid.idx(i, j))); }
};

ImmersionGrid make_immersion(const Grid2D& grid,
                             const std::function<Quaternion(double, double)>& f,
                             StencilOrder order = StencilOrder::second);

/// Tangent-plane sphere map rho_eps(X_u ^ X_v) per node. Throws when the
/// immersion floor is violated.
std::vector<SpherePoint> rho_surface(const ImmersionGrid& X, int eps);

struct OmegaIsotropyReport {
    std::vector<int> indices;
    std::vector<ResidualReport> form_residuals;    // |omega_i(Xu, Xv)| / |Xu||Xv|
    std::vector<ResidualReport> sphere_residuals;  // |<rho_L, e_i>|
    bool pass = true;
    double tol = 0.0;
};
OmegaIsotropyReport omega_isotropy(const ImmersionGrid& X, const std::vector<int>& indices,
                                   int eps, double tol_scale = 10.0);

/// Tension field of rho_L as a sphere-valued map: Delta rho + |d rho|^2 rho.
ResidualReport rho_harmonicity(const ImmersionGrid& X, int eps);

/// Horizontal-lift sweep solving hopf(F, e) = rho node by node; throws
/// AntipodalStep when consecutive values are antipodal.
std::vector<Quaternion> hopf_lift(const Grid2D& grid, const std::vector<SpherePoint>& rho_values,
                                  const SpherePoint& e);

/// Conformal omega_I-isotropic immersion with its S^3 lift. For eps = +1 the
/// frame acts as L_a, for eps = -1 as R_{conj b}.
struct LiftedImmersion {
    ImmersionGrid X;
    std::vector<Quaternion> F;
    std::vector<int> isotropy;
    int eps = +1;
    SpherePoint e;
    double hopf_residual = 0.0;

    /// The remark's duality: (R_{conj a}, conj X) is a right lift of the
    /// conjugated surface.
    LiftedImmersion dual() const;
};

/// Lifts an immersion by rho_surface + hopf_lift with e = rho(0, 0).
LiftedImmersion lift_surface(const ImmersionGrid& X, const std::vector<int>& isotropy, int eps);

/// The Hamiltonian stationary test torus (e^{iu} + e^{iv} j)/sqrt(2) under
/// (z1, z2) -> z1 + z2 j, lifted, with isotropy {1}.
LiftedImmersion clifford_torus(int nu, int nv, double h);

/// (n+1) x (n+1) affine frames [[linear part, X], [0, 1]].
std::vector<Eigen::MatrixXd> affine_frames(const LiftedImmersion& lift);

struct LcOmegaVerdict {
    bool pass = false;
    bool flat = false;
    ResidualReport flatness;
    AdmissibilityReport adm;
    OmegaIsotropyReport isotropy;
    double hopf_residual = 0.0;
    double flat_tol = 0.0;
};

/// Maurer-Cartan form of (F, X) in the affine algebra of the declared
/// isotropy group: flat + alpha_{-1}'' = 0 + alpha_{-1}' bounded below.
LcOmegaVerdict lc_omega_check(const LiftedImmersion& lift,
                              StencilOrder order = StencilOrder::second,
                              const ExecPolicy& pol = {});

struct SurfaceReport {
    ResidualReport rho_tension;
    OmegaIsotropyReport isotropy;
    AdmissibilityReport adm;
    LambdaFlatness flatness;
    bool rho_harmonic = false;
    bool lambda_flat = false;
    double tol = 0.0;
};

/// End-to-end report: rho-harmonicity on the surface side, extended
/// flatness on the loop side, with matched scale-aware tolerances.
SurfaceReport surface_report(const LiftedImmersion& lift,
                             const std::vector<std::complex<double>>& lambdas = default_lambdas(),
                             StencilOrder order = StencilOrder::second, const ExecPolicy& pol = {});

// Analytic test surfaces (all conformal immersions on the given grid).
ImmersionGrid plane_surface(int nu, int nv, double h);
ImmersionGrid holomorphic_graph(int nu, int nv, double h);  // (z, z^2/2)
ImmersionGrid round_cylinder(int nu, int nv, double h, double radius);
ImmersionGrid catenoid_surface(int nu, int nv, double h);
/// Surface of revolution with profile phi (arc-length reparametrized
/// numerically); non-CMC profiles give rho-harmonicity failures.
ImmersionGrid revolution_surface(int nu, int nv, double h,
                                 const std::function<double(double)>& phi,
                                 const std::function<double(double)>& dphi);
ImmersionGrid rotated_torus(int nu, int nv, double h, double theta);
ImmersionGrid product_torus(int nu, int nv, double h, double r1, int a, int b);

}  // namespace foursym
