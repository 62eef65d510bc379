#include "foursym/one_form.hpp"

#include <cmath>

namespace foursym {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Eigen::MatrixXcd DiscreteOneForm::Az() const {
    return 0.5 * (Au.cast<std::complex<double>>() - kI * Av.cast<std::complex<double>>());
}

Eigen::MatrixXcd DiscreteOneForm::Azbar() const {
    return 0.5 * (Au.cast<std::complex<double>>() + kI * Av.cast<std::complex<double>>());
}

MaurerCartanResult maurer_cartan(const Grid2D& grid, const std::vector<Eigen::MatrixXd>& frames,
                                 const LieAlgebraBasis& alg, StencilOrder order, double proj_tol,
                                 const ExecPolicy& pol) {
    const int n = alg.matrix_size();
    const int nodes = grid.nodes();
    if (static_cast<int>(frames.size()) != nodes)
        fail(Errc::bad_input, "frame grid size mismatch");

    // Flatten frames into a node-major field so the stencil kernels apply.
    Eigen::MatrixXd F(n * n, nodes);
    for (int k = 0; k < nodes; ++k) {
        if (frames[k].rows() != n || frames[k].cols() != n)
            fail(Errc::bad_input, "frame matrix size mismatch");
        F.col(k) = Eigen::Map<const Eigen::VectorXd>(frames[k].data(), n * n);
    }
    Eigen::MatrixXd dFu, dFv;
    kernels::diff_u(grid, F, dFu, order, pol);
    kernels::diff_v(grid, F, dFv, order, pol);

    MaurerCartanResult res;
    res.form.grid = grid;
    res.form.Au.resize(alg.dim(), nodes);
    res.form.Av.resize(alg.dim(), nodes);
    Eigen::VectorXd proj_res(nodes);

    bool singular = false;
    double worst_rel = 0.0;
#pragma omp parallel for schedule(static) reduction(||: singular) reduction(max: worst_rel) if (pol.parallel)
    for (int k = 0; k < nodes; ++k) {
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(frames[k]);
        const double rcond = lu.rcond();
        if (!(rcond > 1e-12)) {
            singular = true;
            proj_res[k] = 0.0;
            continue;
        }
        const Eigen::MatrixXd Mu = lu.solve(Eigen::Map<const Eigen::MatrixXd>(dFu.col(k).data(), n, n));
        const Eigen::MatrixXd Mv = lu.solve(Eigen::Map<const Eigen::MatrixXd>(dFv.col(k).data(), n, n));
        double ru = 0.0, rv = 0.0;
        res.form.Au.col(k) = alg.project(Mu, &ru);
        res.form.Av.col(k) = alg.project(Mv, &rv);
        proj_res[k] = std::max(ru, rv);
        worst_rel = std::max(worst_rel, proj_res[k]);
    }
    if (singular) fail(Errc::singular_frame, "frame matrix is numerically singular");
    res.projection = make_report(grid, proj_res);
    if (worst_rel > proj_tol)
        fail(Errc::projection_residual, "frame derivative leaves the algebra span by " +
                                            std::to_string(worst_rel));
    return res;
}

namespace {

GradedForm split_sides(const Grid2D& grid, const Eigen::MatrixXcd& Az, const Eigen::MatrixXcd& Azb,
                       const Z4Grading& grading, const ExecPolicy& pol) {
    if (Az.rows() != grading.dim())
        fail(Errc::basis_mismatch, "form coefficients do not match the grading dimension");
    const int nodes = static_cast<int>(Az.cols());
    GradedForm gf;
    gf.grid = grid;
    for (int k = 0; k < 4; ++k) {
        gf.z_part[k].resize(Az.rows(), nodes);
        gf.zbar_part[k].resize(Az.rows(), nodes);
    }

    double worst = 0.0;
    const auto& lu = grading.splitter();
#pragma omp parallel for schedule(static) reduction(max: worst) if (pol.parallel)
    for (int c = 0; c < nodes; ++c) {
        for (int side = 0; side < 2; ++side) {
            const Eigen::VectorXcd x = side == 0 ? Az.col(c) : Azb.col(c);
            const Eigen::VectorXcd sol = lu.solve(x);
            Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(x.size());
            int off = 0;
            for (int k = 0; k < 4; ++k) {
                const int d = grading.dim_tilde(k);
                const Eigen::VectorXcd piece = grading.tilde[k] * sol.segment(off, d);
                off += d;
                if (side == 0)
                    gf.z_part[k].col(c) = piece;
                else
                    gf.zbar_part[k].col(c) = piece;
                sum += piece;
            }
            worst = std::max(worst, (sum - x).norm() / std::max(1.0, x.norm()));
        }
    }
    gf.reassembly_residual = worst;
    if (worst > 1e-10)
        fail(Errc::basis_mismatch, "graded reassembly residual " + std::to_string(worst));
    return gf;
}

}  // namespace

GradedForm grade_split(const DiscreteOneForm& form, const Z4Grading& grading,
                       const ExecPolicy& pol) {
    return split_sides(form.grid, form.Az(), form.Azbar(), grading, pol);
}

GradedForm grade_split_complex(const ComplexOneForm& form, const Z4Grading& grading,
                               const ExecPolicy& pol) {
    const Eigen::MatrixXcd Az = 0.5 * (form.Au - kI * form.Av);
    const Eigen::MatrixXcd Azb = 0.5 * (form.Au + kI * form.Av);
    return split_sides(form.grid, Az, Azb, grading, pol);
}

ComplexOneForm reassemble(const GradedForm& gf) { return extend(gf, 1.0); }

ComplexOneForm extend(const GradedForm& gf, std::complex<double> lambda) {
    if (std::abs(lambda) == 0.0) fail(Errc::bad_input, "lambda must be nonzero");
    const std::complex<double> li = 1.0 / lambda;
    // z side: tilde-g_k weights lambda^{e(k)} with e = (0, 1, -2, -1);
    // zbar side mirrored: e = (0, 1, 2, -1).
    const std::complex<double> wz[4] = {1.0, lambda, li * li, li};
    const std::complex<double> wzb[4] = {1.0, lambda, lambda * lambda, li};

    Eigen::MatrixXcd Az = Eigen::MatrixXcd::Zero(gf.z_part[0].rows(), gf.z_part[0].cols());
    Eigen::MatrixXcd Azb = Az;
    for (int k = 0; k < 4; ++k) {
        Az += wz[k] * gf.z_part[k];
        Azb += wzb[k] * gf.zbar_part[k];
    }
    ComplexOneForm out;
    out.grid = gf.grid;
    out.Au = Az + Azb;
    out.Av = kI * (Az - Azb);
    return out;
}

IntegrationResult integrate_flat(const DiscreteOneForm& form, const LieAlgebraBasis& alg,
                                 const Eigen::MatrixXd& base, double max_curvature,
                                 const ExecPolicy& pol) {
    const Grid2D& g = form.grid;
    if (g.periodic_u || g.periodic_v)
        fail(Errc::bad_input, "integration needs a simply connected (non-periodic) grid");

    Eigen::MatrixXd curv;
    kernels::curvature_field(g, alg, form.Au, form.Av, curv, StencilOrder::second, pol);
    const ResidualReport crep = make_report(g, kernels::node_norms(curv));
    if (crep.max_interior > max_curvature)
        fail(Errc::curvature_too_large, "curvature " + std::to_string(crep.max_interior) +
                                            " exceeds " + std::to_string(max_curvature));

    const double h = g.h;
    auto step = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return expm(alg.realize(Eigen::VectorXd(0.5 * h * (a + b))));
    };

    IntegrationResult out;
    out.frames.assign(g.nodes(), Eigen::MatrixXd());
    out.frames[g.idx(0, 0)] = base;
    for (int i = 1; i < g.nu; ++i)
        out.frames[g.idx(i, 0)] =
            out.frames[g.idx(i - 1, 0)] * step(form.Au.col(g.idx(i - 1, 0)), form.Au.col(g.idx(i, 0)));
#pragma omp parallel for schedule(static) if (pol.parallel)
    for (int i = 0; i < g.nu; ++i)
        for (int j = 1; j < g.nv; ++j)
            out.frames[g.idx(i, j)] = out.frames[g.idx(i, j - 1)] *
                                      step(form.Av.col(g.idx(i, j - 1)), form.Av.col(g.idx(i, j)));

    // Plaquette holonomy as the integrability defect.
    double worst = 0.0;
#pragma omp parallel for collapse(2) schedule(static) reduction(max: worst) if (pol.parallel)
    for (int j = 0; j < g.nv - 1; ++j) {
        for (int i = 0; i < g.nu - 1; ++i) {
            const Eigen::MatrixXd eu0 = step(form.Au.col(g.idx(i, j)), form.Au.col(g.idx(i + 1, j)));
            const Eigen::MatrixXd ev1 =
                step(form.Av.col(g.idx(i + 1, j)), form.Av.col(g.idx(i + 1, j + 1)));
            const Eigen::MatrixXd eu1 =
                step(form.Au.col(g.idx(i, j + 1)), form.Au.col(g.idx(i + 1, j + 1)));
            const Eigen::MatrixXd ev0 = step(form.Av.col(g.idx(i, j)), form.Av.col(g.idx(i, j + 1)));
            const Eigen::MatrixXd hol =
                eu0 * ev1 * eu1.inverse() * ev0.inverse();
            worst = std::max(worst,
                             (hol - Eigen::MatrixXd::Identity(hol.rows(), hol.cols())).norm());
        }
    }
    out.plaquette_consistency = worst;
    return out;
}

}  // namespace foursym
