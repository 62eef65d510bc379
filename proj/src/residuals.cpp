#include "foursym/residuals.hpp"

#include <cmath>

namespace foursym {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// d_zbar = (d_u + i d_v)/2 and d_z = (d_u - i d_v)/2 on complex fields.
Eigen::MatrixXcd dzbar(const Grid2D& g, const Eigen::MatrixXcd& f, StencilOrder order,
                       const ExecPolicy& pol) {
    Eigen::MatrixXcd fu, fv;
    kernels::diff_u(g, f, fu, order, pol);
    kernels::diff_v(g, f, fv, order, pol);
    return 0.5 * (fu + kI * fv);
}

Eigen::MatrixXcd dz(const Grid2D& g, const Eigen::MatrixXcd& f, StencilOrder order,
                    const ExecPolicy& pol) {
    Eigen::MatrixXcd fu, fv;
    kernels::diff_u(g, f, fu, order, pol);
    kernels::diff_v(g, f, fv, order, pol);
    return 0.5 * (fu - kI * fv);
}

}  // namespace

ResidualReport curvature(const DiscreteOneForm& form, const LieAlgebraBasis& alg,
                         StencilOrder order, const ExecPolicy& pol) {
    Eigen::MatrixXd R;
    kernels::curvature_field(form.grid, alg, form.Au, form.Av, R, order, pol);
    return make_report(form.grid, kernels::node_norms(R));
}

ResidualReport curvature(const ComplexOneForm& form, const LieAlgebraBasis& alg,
                         StencilOrder order, const ExecPolicy& pol) {
    Eigen::MatrixXcd R;
    kernels::curvature_field(form.grid, alg, form.Au, form.Av, R, order, pol);
    return make_report(form.grid, kernels::node_norms(R));
}

SystemResiduals system_residuals(const GradedForm& gf, const LieAlgebraBasis& alg,
                                 StencilOrder order, const ExecPolicy& pol) {
    const Grid2D& g = gf.grid;
    Eigen::MatrixXcd br1, br2, br3;

    // (a) dzbar u2 + [ub0, u2]
    kernels::pairwise_bracket(alg, gf.ub0(), gf.u2(), br1, pol);
    const Eigen::MatrixXcd Ra = dzbar(g, gf.u2(), order, pol) + br1;

    // (b) dzbar u1 + [ub0, u1] + [ub1, u2]
    kernels::pairwise_bracket(alg, gf.ub0(), gf.u1(), br1, pol);
    kernels::pairwise_bracket(alg, gf.ub1(), gf.u2(), br2, pol);
    const Eigen::MatrixXcd Rb = dzbar(g, gf.u1(), order, pol) + br1 + br2;

    // (c) -dzbar u0 + dz ub0 + [u0, ub0] + [u1, ub1] + [u2, ub2]
    kernels::pairwise_bracket(alg, gf.u0(), gf.ub0(), br1, pol);
    kernels::pairwise_bracket(alg, gf.u1(), gf.ub1(), br2, pol);
    kernels::pairwise_bracket(alg, gf.u2(), gf.ub2(), br3, pol);
    const Eigen::MatrixXcd Rc =
        -dzbar(g, gf.u0(), order, pol) + dz(g, gf.ub0(), order, pol) + br1 + br2 + br3;

    SystemResiduals out;
    out.a = make_report(g, kernels::node_norms(Ra));
    out.b = make_report(g, kernels::node_norms(Rb));
    out.c = make_report(g, kernels::node_norms(Rc));
    out.c_reality_defect = 0.5 * (Rc + Rc.conjugate()).colwise().norm().maxCoeff();
    return out;
}

Eigen::MatrixXcd vh_complex_field(const GradedForm& gf, const LieAlgebraBasis& alg,
                                  StencilOrder order, const ExecPolicy& pol) {
    Eigen::MatrixXcd br;
    kernels::pairwise_bracket(alg, gf.ub0(), gf.u2(), br, pol);
    return dzbar(gf.grid, gf.u2(), order, pol) + br;
}

ResidualReport vertical_harmonicity(const GradedForm& gf, const LieAlgebraBasis& alg,
                                    const Z4Grading& grading, StencilOrder order,
                                    const ExecPolicy& pol) {
    const Eigen::MatrixXcd w = vh_complex_field(gf, alg, order, pol);
    const Eigen::MatrixXd re = w.real();
    const Eigen::MatrixXd proj = grading.g2 * (grading.g2.transpose() * re);
    return make_report(gf.grid, kernels::node_norms(proj));
}

StarFormReport star_form_residual(const GradedForm& gf, const LieAlgebraBasis& alg,
                                  StencilOrder order, const ExecPolicy& pol) {
    const Grid2D& g = gf.grid;
    // alpha_2 evaluated on du, dv and the corresponding alpha_0 legs.
    const Eigen::MatrixXcd Bu = gf.u2() + gf.ub2();
    const Eigen::MatrixXcd Bv = kI * (gf.u2() - gf.ub2());
    const Eigen::MatrixXcd A0u = gf.u0() + gf.ub0();
    const Eigen::MatrixXcd A0v = kI * (gf.u0() - gf.ub0());

    Eigen::MatrixXcd dBu, dBv, br_u, br_v;
    kernels::diff_u(g, Bu, dBu, order, pol);
    kernels::diff_v(g, Bv, dBv, order, pol);
    kernels::pairwise_bracket(alg, A0u, Bu, br_u, pol);
    kernels::pairwise_bracket(alg, A0v, Bv, br_v, pol);
    const Eigen::MatrixXcd S = dBu + dBv + br_u + br_v;

    StarFormReport rep;
    rep.residual = make_report(g, kernels::node_norms(S));
    const Eigen::MatrixXcd w = vh_complex_field(gf, alg, order, pol);
    rep.vh_agreement = (S - 4.0 * w.real().cast<std::complex<double>>()).colwise().norm().maxCoeff();
    return rep;
}

std::vector<std::complex<double>> default_lambdas() {
    return {std::complex<double>(2.0, 0.0), std::complex<double>(1.0, 0.0),
            std::complex<double>(0.5, 0.0), std::polar(1.0, M_PI / 4.0),
            std::polar(1.0, 2.0 * M_PI / 3.0)};
}

LambdaFlatness lambda_flatness(const GradedForm& gf, const LieAlgebraBasis& alg,
                               const std::vector<std::complex<double>>& lambdas,
                               StencilOrder order, const ExecPolicy& pol) {
    LambdaFlatness out;
    out.lambdas = lambdas;
    for (const auto& l : lambdas) {
        if (std::abs(l) == 0.0) fail(Errc::bad_input, "lambda must be nonzero");
        out.per_lambda.push_back(curvature(extend(gf, l), alg, order, pol));
    }
    out.star = star_form_residual(gf, alg, order, pol);
    return out;
}

AdmissibilityReport admissibility(const GradedForm& gf, double floor_imm, double tol_scale) {
    AdmissibilityReport rep;
    rep.max_a1_prime = kernels::node_norms(gf.a1_prime()).maxCoeff();
    rep.max_am1_dblprime = kernels::node_norms(gf.am1_dblprime()).maxCoeff();
    rep.min_am1_prime = kernels::node_norms(gf.u1()).minCoeff();

    // Scale-aware tolerance: 10 h^2 times the largest node norm of alpha.
    double alpha_scale = 0.0;
    for (int k = 0; k < 4; ++k) {
        alpha_scale = std::max(alpha_scale, kernels::node_norms(gf.z_part[k]).maxCoeff());
        alpha_scale = std::max(alpha_scale, kernels::node_norms(gf.zbar_part[k]).maxCoeff());
    }
    rep.tol_adm = tol_scale * gf.grid.h * gf.grid.h * alpha_scale;
    rep.floor_imm = floor_imm;
    rep.pass = rep.max_a1_prime < rep.tol_adm && rep.max_am1_dblprime < rep.tol_adm &&
               rep.min_am1_prime > floor_imm;
    return rep;
}

HarmonicityResiduals harmonicity_residuals(const GradedForm& gf, const LieAlgebraBasis& alg,
                                           const Z4Grading& grading, StencilOrder order,
                                           const ExecPolicy& pol) {
    const Grid2D& g = gf.grid;
    const Eigen::MatrixXcd S1z = gf.z_part[1] + gf.z_part[2] + gf.z_part[3];
    const Eigen::MatrixXcd S1zb = gf.zbar_part[1] + gf.zbar_part[2] + gf.zbar_part[3];

    Eigen::MatrixXcd br0, brS;
    kernels::pairwise_bracket(alg, gf.ub0(), S1z, br0, pol);
    kernels::pairwise_bracket(alg, S1zb, S1z, brS, pol);
    const Eigen::MatrixXcd P1 = grading.component_extractor(1);
    const Eigen::MatrixXcd P2 = grading.component_extractor(2);
    const Eigen::MatrixXcd Pm1 = grading.component_extractor(-1);
    const Eigen::MatrixXcd Pg1 = P1 + P2 + Pm1;

    const Eigen::MatrixXcd rJ = dzbar(g, S1z, order, pol) + br0 + 0.5 * (Pg1 * brS);

    HarmonicityResiduals out;
    out.J_total = make_report(g, kernels::node_norms(rJ));
    out.J_piece_2 = make_report(g, kernels::node_norms(Eigen::MatrixXcd(P2 * rJ)));
    out.J_piece_m1 = make_report(g, kernels::node_norms(Eigen::MatrixXcd(Pm1 * rJ)));
    out.J_piece_1 = make_report(g, kernels::node_norms(Eigen::MatrixXcd(P1 * rJ)));

    const Eigen::MatrixXcd mz = gf.z_part[1] + gf.z_part[3];
    const Eigen::MatrixXcd hzb = gf.zbar_part[0] + gf.zbar_part[2];
    Eigen::MatrixXcd brX;
    kernels::pairwise_bracket(alg, hzb, mz, brX, pol);
    out.X = make_report(g, kernels::node_norms(Eigen::MatrixXcd(dzbar(g, mz, order, pol) + brX)));

    Eigen::MatrixXcd brT;
    kernels::pairwise_bracket(alg, gf.ub2(), gf.u1(), brT, pol);
    out.bracket_term = make_report(g, kernels::node_norms(brT));
    return out;
}

ExtrinsicVhReport extrinsic_vertical_laplacian(const DiscreteOneForm& alpha, const GradedForm& gf,
                                               const ReductivePair& pair,
                                               const LieAlgebraBasis& alg, StencilOrder order,
                                               const ExecPolicy& pol) {
    const Grid2D& g = alpha.grid;
    const int dm = pair.dim_m();
    const int nodes = g.nodes();
    const Eigen::MatrixXd A = -pair.tau_m;  // gauge representative of J
    if ((pair.tau_m * pair.tau_m + Eigen::MatrixXd::Identity(dm, dm)).norm() > 1e-8)
        fail(Errc::not_complex_structure, "tau|m is not an anti-involution");

    // ad_m of the h-part of alpha along u and v, flattened per node.
    Eigen::MatrixXd Hu(dm * dm, nodes), Hv(dm * dm, nodes);
#pragma omp parallel for schedule(static) if (pol.parallel)
    for (int k = 0; k < nodes; ++k) {
        const Eigen::MatrixXd hu = pair.ad_m_of_h(pair.h_coords(Eigen::VectorXd(alpha.Au.col(k))));
        const Eigen::MatrixXd hv = pair.ad_m_of_h(pair.h_coords(Eigen::VectorXd(alpha.Av.col(k))));
        Hu.col(k) = Eigen::Map<const Eigen::VectorXd>(hu.data(), dm * dm);
        Hv.col(k) = Eigen::Map<const Eigen::VectorXd>(hv.data(), dm * dm);
    }

    auto commutator_field = [&](const Eigen::MatrixXd& Hs, const Eigen::MatrixXd& Ps,
                                Eigen::MatrixXd& out_field) {
        out_field.resize(dm * dm, nodes);
#pragma omp parallel for schedule(static) if (pol.parallel)
        for (int k = 0; k < nodes; ++k) {
            const Eigen::Map<const Eigen::MatrixXd> H(Hs.col(k).data(), dm, dm);
            const Eigen::Map<const Eigen::MatrixXd> P(Ps.col(k).data(), dm, dm);
            const Eigen::MatrixXd C = H * P - P * H;
            out_field.col(k) = Eigen::Map<const Eigen::VectorXd>(C.data(), dm * dm);
        }
    };

    // P_s = [H_s, A]  (dA_m = 0: the gauge representative of J is constant).
    Eigen::MatrixXd Pu(dm * dm, nodes), Pv(dm * dm, nodes);
#pragma omp parallel for schedule(static) if (pol.parallel)
    for (int k = 0; k < nodes; ++k) {
        const Eigen::Map<const Eigen::MatrixXd> hu(Hu.col(k).data(), dm, dm);
        const Eigen::Map<const Eigen::MatrixXd> hv(Hv.col(k).data(), dm, dm);
        const Eigen::MatrixXd pu = hu * A - A * hu;
        const Eigen::MatrixXd pv = hv * A - A * hv;
        Pu.col(k) = Eigen::Map<const Eigen::VectorXd>(pu.data(), dm * dm);
        Pv.col(k) = Eigen::Map<const Eigen::VectorXd>(pv.data(), dm * dm);
    }

    Eigen::MatrixXd dPu, dPv, HPu, HPv;
    kernels::diff_u(g, Pu, dPu, order, pol);
    kernels::diff_v(g, Pv, dPv, order, pol);
    commutator_field(Hu, Pu, HPu);
    commutator_field(Hv, Pv, HPv);
    const Eigen::MatrixXd Lap = dPu + dPv + HPu + HPv;

    // Orthogonal projection onto Ant(J) inside so(m), then norms; the
    // agreement column compares with -8 ad_m(Re w) tau|m from the graded path.
    const Eigen::MatrixXcd w = vh_complex_field(gf, alg, order, pol);
    ExtrinsicVhReport rep;
    Eigen::VectorXd vert(nodes), agree(nodes);
    double comm_defect = 0.0;
#pragma omp parallel for schedule(static) reduction(max: comm_defect) if (pol.parallel)
    for (int k = 0; k < nodes; ++k) {
        const Eigen::Map<const Eigen::MatrixXd> L(Lap.col(k).data(), dm, dm);
        const Eigen::MatrixXd S = 0.5 * (L - L.transpose());
        const Eigen::MatrixXd pr = 0.5 * (S + A * S * A);
        vert[k] = pr.norm();

        const Eigen::VectorXd rew = w.col(k).real();
        const Eigen::MatrixXd target =
            -8.0 * pair.ad_m_of_h(pair.h_coords(rew)) * pair.tau_m;
        agree[k] = (pr - target).norm();

        // The discarded piece of the proof: [ad ub2, ad u2 . tau] must
        // commute with tau|m.
        const Eigen::MatrixXcd B = pair.ad_m_of_h(pair.h_coords(Eigen::VectorXcd(gf.ub2().col(k))));
        const Eigen::MatrixXcd C = pair.ad_m_of_h(pair.h_coords(Eigen::VectorXcd(gf.u2().col(k)))) *
                                   pair.tau_m.cast<std::complex<double>>();
        const Eigen::MatrixXcd T = B * C - C * B;
        const Eigen::MatrixXcd tc = pair.tau_m.cast<std::complex<double>>();
        comm_defect = std::max(comm_defect, (T * tc - tc * T).norm());
    }
    rep.vertical = make_report(g, vert);
    rep.agreement = make_report(g, agree);
    rep.commutant_defect = comm_defect;
    return rep;
}

BookkeepingCheck coefficient_bookkeeping(const GradedForm& gf, const LieAlgebraBasis& alg,
                                         const Z4Grading& grading,
                                         const std::vector<std::complex<double>>& lambdas,
                                         StencilOrder order, const ExecPolicy& pol) {
    if (lambdas.size() < 5) fail(Errc::bad_input, "need at least 5 lambda samples");
    const Grid2D& g = gf.grid;
    const int m = static_cast<int>(gf.z_part[0].rows());
    const int nodes = g.nodes();

    // The identity concerns the (u0, u1, u2) data: drop the admissibility
    // diagnostics before extending.
    GradedForm sys = gf;
    sys.z_part[1].setZero();
    sys.zbar_part[3].setZero();

    const int ns = static_cast<int>(lambdas.size());
    Eigen::MatrixXcd V(ns, 5);
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < 5; ++t) V(s, t) = std::pow(lambdas[s], t);  // row scaled by lambda^2

    std::vector<Eigen::MatrixXcd> R(ns);
    for (int s = 0; s < ns; ++s) {
        const ComplexOneForm ext = extend(sys, lambdas[s]);
        kernels::curvature_field(g, alg, ext.Au, ext.Av, R[s], order, pol);
        R[s] *= lambdas[s] * lambdas[s];
    }

    // Solve for the five Laurent coefficients at every node/component.
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> vdm(V);
    std::array<Eigen::MatrixXcd, 5> C;
    for (auto& Ce : C) Ce.resize(m, nodes);
    Eigen::MatrixXcd rhs(ns, m);
    for (int k = 0; k < nodes; ++k) {
        for (int s = 0; s < ns; ++s) rhs.row(s) = R[s].col(k).transpose();
        const Eigen::MatrixXcd sol = vdm.solve(rhs);  // 5 x m
        for (int e = 0; e < 5; ++e) C[e].col(k) = sol.row(e).transpose();
    }

    const ComplexOneForm plain = extend(sys, 1.0);
    Eigen::MatrixXcd R1;
    kernels::curvature_field(g, alg, plain.Au, plain.Av, R1, order, pol);

    auto proj = [&](int grade) { return Eigen::MatrixXcd(grading.component_extractor(grade) * R1); };
    BookkeepingCheck out;
    out.defect_m1 = (C[1] - proj(-1)).colwise().norm().maxCoeff();
    out.defect_0 = (C[2] - proj(0)).colwise().norm().maxCoeff();
    out.defect_p1 = (C[3] - proj(1)).colwise().norm().maxCoeff();
    out.defect_2 = (C[0] + C[4] - proj(2)).colwise().norm().maxCoeff();

    // The remark's form equals twice the imaginary part of the lambda^{-2}
    // coefficient (both are 4 Re(dzbar u2 + [ub0, u2]) in disguise).
    {
        const Eigen::MatrixXcd Bu = sys.u2() + sys.ub2();
        const Eigen::MatrixXcd Bv = kI * (sys.u2() - sys.ub2());
        const Eigen::MatrixXcd A0u = sys.u0() + sys.ub0();
        const Eigen::MatrixXcd A0v = kI * (sys.u0() - sys.ub0());
        Eigen::MatrixXcd dBu, dBv, bru, brv;
        kernels::diff_u(g, Bu, dBu, order, pol);
        kernels::diff_v(g, Bv, dBv, order, pol);
        kernels::pairwise_bracket(alg, A0u, Bu, bru, pol);
        kernels::pairwise_bracket(alg, A0v, Bv, brv, pol);
        const Eigen::MatrixXcd twoImC = 2.0 * C[0].imag().cast<std::complex<double>>();
        out.star_vs_coeff = (dBu + dBv + bru + brv - twoImC).colwise().norm().maxCoeff();
    }
    return out;
}

}  // namespace foursym
