#include "foursym/surface.hpp"

#include <cmath>

namespace foursym {

ImmersionGrid make_immersion(const Grid2D& grid,
                             const std::function<Quaternion(double, double)>& f,
                             StencilOrder order) {
    ImmersionGrid im;
    im.grid = grid;
    im.X.resize(4, grid.nodes());
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) im.X.col(grid.idx(i, j)) = to_vec4(f(grid.u(i), grid.v(j)));

    const ExecPolicy pol;
    kernels::diff_u(grid, im.X, im.Xu, order, pol);
    kernels::diff_v(grid, im.X, im.Xv, order, pol);

    im.conf_factor = kernels::node_norms(im.Xu);
    const Eigen::VectorXd nv = kernels::node_norms(im.Xv);
    double worst = 0.0, floor = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.nodes(); ++k) {
        const double scale = std::max(1e-30, im.conf_factor[k] * nv[k]);
        worst = std::max(worst, std::abs(im.Xu.col(k).dot(im.Xv.col(k))) / scale);
        worst = std::max(worst, std::abs(im.conf_factor[k] - nv[k]) /
                                    std::max(1e-30, std::max(im.conf_factor[k], nv[k])));
        floor = std::min(floor, im.conf_factor[k]);
    }
    im.conformality_residual = worst;
    im.immersion_floor = floor;
    return im;
}

std::vector<SpherePoint> rho_surface(const ImmersionGrid& X, int eps) {
    if (X.immersion_floor <= 1e-6)
        fail(Errc::degenerate_plane, "immersion floor " + std::to_string(X.immersion_floor));
    std::vector<SpherePoint> out;
    out.reserve(X.grid.nodes());
    for (int k = 0; k < X.grid.nodes(); ++k) {
        const OrientedPlane P =
            OrientedPlane::from_span(from_vec4(X.Xu.col(k)), from_vec4(X.Xv.col(k)));
        out.push_back(rho(P, eps));
    }
    return out;
}

OmegaIsotropyReport omega_isotropy(const ImmersionGrid& X, const std::vector<int>& indices,
                                   int eps, double tol_scale) {
    OmegaIsotropyReport rep;
    rep.indices = indices;
    rep.tol = tol_scale * X.grid.h * X.grid.h;
    if (indices.empty()) return rep;  // vacuous

    const auto rhoL = rho_surface(X, eps);
    for (int idx : indices) {
        if (idx < 1 || idx > 3) fail(Errc::out_of_range, "omega index must lie in {1,2,3}");
        const Quaternion ei = idx == 1 ? Quaternion::i() : (idx == 2 ? Quaternion::j() : Quaternion::k());
        const Eigen::Matrix4d Ji = eps > 0 ? left_mult_matrix(ei) : right_mult_matrix(ei);
        Eigen::VectorXd form_res(X.grid.nodes()), sphere_res(X.grid.nodes());
        for (int k = 0; k < X.grid.nodes(); ++k) {
            const double scale = std::max(1e-30, X.Xu.col(k).norm() * X.Xv.col(k).norm());
            form_res[k] = std::abs(X.Xu.col(k).dot(Ji * X.Xv.col(k))) / scale;
            sphere_res[k] = std::abs(rhoL[k].u.dot(ei));
        }
        rep.form_residuals.push_back(make_report(X.grid, form_res));
        rep.sphere_residuals.push_back(make_report(X.grid, sphere_res));
        rep.pass = rep.pass && rep.form_residuals.back().max_interior < rep.tol &&
                   rep.sphere_residuals.back().max_interior < rep.tol;
    }
    return rep;
}

ResidualReport rho_harmonicity(const ImmersionGrid& X, int eps) {
    const auto rhoL = rho_surface(X, eps);
    const Grid2D& g = X.grid;
    Eigen::MatrixXd R(4, g.nodes());
    for (int k = 0; k < g.nodes(); ++k) R.col(k) = to_vec4(rhoL[k].u);

    const ExecPolicy pol;
    Eigen::MatrixXd Ruu, Rvv, Ru, Rv;
    kernels::diff2_u(g, R, Ruu, pol);
    kernels::diff2_v(g, R, Rvv, pol);
    kernels::diff_u(g, R, Ru, StencilOrder::second, pol);
    kernels::diff_v(g, R, Rv, StencilOrder::second, pol);

    Eigen::VectorXd tension(g.nodes());
    for (int k = 0; k < g.nodes(); ++k) {
        const double e2 = Ru.col(k).squaredNorm() + Rv.col(k).squaredNorm();
        tension[k] = (Ruu.col(k) + Rvv.col(k) + e2 * R.col(k)).norm();
    }
    return make_report(g, tension);
}

std::vector<Quaternion> hopf_lift(const Grid2D& grid, const std::vector<SpherePoint>& rho_values,
                                  const SpherePoint& e) {
    if (grid.periodic_u || grid.periodic_v)
        fail(Errc::bad_input, "the lift needs a simply connected (non-periodic) grid");
    if (static_cast<int>(rho_values.size()) != grid.nodes())
        fail(Errc::bad_input, "rho grid size mismatch");

    std::vector<Quaternion> F(grid.nodes());
    F[grid.idx(0, 0)] = rotation_between(e, rho_values[grid.idx(0, 0)]);
    for (int i = 1; i < grid.nu; ++i) {
        const int prev = grid.idx(i - 1, 0), cur = grid.idx(i, 0);
        F[cur] = (rotation_between(rho_values[prev], rho_values[cur]) * F[prev]).normalized();
    }
    for (int i = 0; i < grid.nu; ++i) {
        for (int j = 1; j < grid.nv; ++j) {
            const int prev = grid.idx(i, j - 1), cur = grid.idx(i, j);
            F[cur] = (rotation_between(rho_values[prev], rho_values[cur]) * F[prev]).normalized();
        }
    }
    return F;
}

LiftedImmersion lift_surface(const ImmersionGrid& X, const std::vector<int>& isotropy, int eps) {
    LiftedImmersion lift;
    lift.X = X;
    lift.isotropy = isotropy;
    lift.eps = eps;
    const auto rhoL = rho_surface(X, eps);
    lift.e = rhoL[X.grid.idx(0, 0)];
    lift.F = hopf_lift(X.grid, rhoL, lift.e);
    double worst = 0.0;
    for (int k = 0; k < X.grid.nodes(); ++k)
        worst = std::max(worst, distance(hopf(lift.F[k], lift.e).u, rhoL[k].u));
    lift.hopf_residual = worst;
    return lift;
}

LiftedImmersion LiftedImmersion::dual() const {
    LiftedImmersion d = *this;
    d.eps = -eps;
    d.X.X.bottomRows(3) *= -1.0;  // conjugate X
    d.X.Xu.bottomRows(3) *= -1.0;
    d.X.Xv.bottomRows(3) *= -1.0;
    return d;
}

namespace {
Quaternion torus_point(double u, double v) {
    constexpr double s = M_SQRT1_2;
    return {s * std::cos(u), s * std::sin(u), s * std::cos(v), s * std::sin(v)};
}
}  // namespace

LiftedImmersion clifford_torus(int nu, int nv, double h) {
    const Grid2D grid(nu, nv, h);
    return lift_surface(make_immersion(grid, torus_point), {1}, +1);
}

std::vector<Eigen::MatrixXd> affine_frames(const LiftedImmersion& lift) {
    std::vector<Eigen::MatrixXd> frames;
    frames.reserve(lift.X.grid.nodes());
    for (int k = 0; k < lift.X.grid.nodes(); ++k) {
        Eigen::MatrixXd U = Eigen::MatrixXd::Identity(5, 5);
        U.topLeftCorner(4, 4) = lift.eps > 0 ? chi(lift.F[k], Quaternion::one())
                                             : chi(Quaternion::one(), lift.F[k]);
        U.block<4, 1>(0, 4) = lift.X.X.col(k);
        frames.push_back(U);
    }
    return frames;
}

LcOmegaVerdict lc_omega_check(const LiftedImmersion& lift, StencilOrder order,
                              const ExecPolicy& pol) {
    const FourSymmetricSpec spec = affine_r4_spec(lift.isotropy, lift.eps, to_vec4(lift.e.u));
    const auto frames = affine_frames(lift);
    const MaurerCartanResult mc = maurer_cartan(lift.X.grid, frames, spec.g, order, 1e-5, pol);
    const GradedForm gf = grade_split(mc.form, spec.grading, pol);

    LcOmegaVerdict v;
    v.flatness = curvature(mc.form, spec.g, order, pol);
    v.adm = admissibility(gf);
    v.isotropy = omega_isotropy(lift.X, lift.isotropy, lift.eps);
    v.hopf_residual = lift.hopf_residual;

    double alpha_scale = 0.0;
    alpha_scale = std::max(kernels::node_norms(mc.form.Au).maxCoeff(),
                           kernels::node_norms(mc.form.Av).maxCoeff());
    const double h = lift.X.grid.h;
    v.flat_tol = 20.0 * h * h * (1.0 + alpha_scale) * (1.0 + alpha_scale);
    v.flat = v.flatness.max_interior < v.flat_tol;
    v.pass = v.flat && v.adm.pass && v.isotropy.pass && lift.hopf_residual < 1e-6;
    return v;
}

SurfaceReport surface_report(const LiftedImmersion& lift,
                             const std::vector<std::complex<double>>& lambdas, StencilOrder order,
                             const ExecPolicy& pol) {
    const FourSymmetricSpec spec = affine_r4_spec(lift.isotropy, lift.eps, to_vec4(lift.e.u));
    const auto frames = affine_frames(lift);
    const MaurerCartanResult mc = maurer_cartan(lift.X.grid, frames, spec.g, order, 1e-5, pol);
    const GradedForm gf = grade_split(mc.form, spec.grading, pol);

    SurfaceReport rep;
    rep.rho_tension = rho_harmonicity(lift.X, lift.eps);
    rep.isotropy = omega_isotropy(lift.X, lift.isotropy, lift.eps);
    rep.adm = admissibility(gf);
    rep.flatness = lambda_flatness(gf, spec.g, lambdas, order, pol);

    // Matched scale-aware tolerances on both sides of the equivalence.
    const double h = lift.X.grid.h;
    double alpha_scale = std::max(kernels::node_norms(mc.form.Au).maxCoeff(),
                                  kernels::node_norms(mc.form.Av).maxCoeff());
    rep.tol = 20.0 * h * h * (1.0 + alpha_scale) * (1.0 + alpha_scale);
    rep.rho_harmonic = rep.rho_tension.max_interior < rep.tol;
    double worst_lambda = 0.0;
    for (const auto& r : rep.flatness.per_lambda) worst_lambda = std::max(worst_lambda, r.max_interior);
    rep.lambda_flat = worst_lambda < rep.tol;
    return rep;
}

ImmersionGrid plane_surface(int nu, int nv, double h) {
    return make_immersion(Grid2D(nu, nv, h),
                          [](double u, double v) { return Quaternion(u, v, 0, 0); });
}

ImmersionGrid holomorphic_graph(int nu, int nv, double h) {
    // (z, z^2/2) under z1 + z2 j; conformal, harmonic, rho+ constant.
    return make_immersion(Grid2D(nu, nv, h), [](double u, double v) {
        const std::complex<double> z(u, v);
        const std::complex<double> w = 0.5 * z * z;
        return Quaternion(z.real(), z.imag(), w.real(), w.imag());
    });
}

ImmersionGrid round_cylinder(int nu, int nv, double h, double radius) {
    return make_immersion(Grid2D(nu, nv, h), [radius](double u, double v) {
        return Quaternion(0, radius * std::cos(u / radius), radius * std::sin(u / radius), v);
    });
}

ImmersionGrid catenoid_surface(int nu, int nv, double h) {
    // Centered so the waist sits mid-grid.
    const double u0 = 0.5 * (nu - 1) * h, v0 = 0.0;
    return make_immersion(Grid2D(nu, nv, h), [u0, v0](double u, double v) {
        return Quaternion(0, std::cosh(u - u0) * std::cos(v - v0),
                          std::cosh(u - u0) * std::sin(v - v0), u - u0);
    });
}

ImmersionGrid revolution_surface(int nu, int nv, double h,
                                 const std::function<double(double)>& phi,
                                 const std::function<double(double)>& dphi) {
    // psi with psi' = sqrt(phi^2 - phi'^2) accumulated by Simpson substeps.
    const Grid2D grid(nu, nv, h);
    std::vector<double> psi(nu, 0.0);
    auto rate = [&](double u) {
        const double p = phi(u), dp = dphi(u);
        const double s2 = p * p - dp * dp;
        if (s2 <= 0.0) fail(Errc::bad_input, "profile is not conformally parametrizable");
        return std::sqrt(s2);
    };
    const int sub = 16;
    for (int i = 1; i < nu; ++i) {
        double acc = 0.0;
        const double a = grid.u(i - 1);
        const double step = h / sub;
        for (int s = 0; s < sub; ++s)
            acc += step / 6.0 * (rate(a + s * step) + 4.0 * rate(a + (s + 0.5) * step) +
                                 rate(a + (s + 1) * step));
        psi[i] = psi[i - 1] + acc;
    }
    return make_immersion(grid, [&](double u, double v) {
        const int i = std::min(nu - 1, std::max(0, static_cast<int>(std::lround(u / h))));
        return Quaternion(0, phi(u) * std::cos(v), phi(u) * std::sin(v), psi[i]);
    });
}

ImmersionGrid rotated_torus(int nu, int nv, double h, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return make_immersion(Grid2D(nu, nv, h), [c, s](double u, double v) {
        return torus_point(c * u - s * v, s * u + c * v);
    });
}

ImmersionGrid product_torus(int nu, int nv, double h, double r1, int a, int b) {
    const double r2 = r1 * a / static_cast<double>(b);
    return make_immersion(Grid2D(nu, nv, h), [=](double u, double v) {
        return Quaternion(r1 * std::cos(a * u), r1 * std::sin(a * u), r2 * std::cos(b * v),
                          r2 * std::sin(b * v));
    });
}

}  // namespace foursym
