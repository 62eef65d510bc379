#include "foursym/automorphism.hpp"

#include <cmath>

namespace foursym {

namespace {

// Orthonormal basis of the column span, rank decided by the relative cutoff.
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& cols, double cutoff = 1e-9) {
    if (cols.cols() == 0) return Eigen::MatrixXd(cols.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff * sv[0]) ++rank;
    return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& M, double cutoff) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = sv.size() ? sv[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff * scale) ++rank;
    return svd.matrixV().rightCols(sv.size() - rank);
}

// Largest principal-angle defect between equal-dimension subspaces given by
// orthonormal-ish column bases.
double subspace_distance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    if (A.cols() != B.cols()) return 1.0;
    if (A.cols() == 0) return 0.0;
    const Eigen::MatrixXcd Pa = A * (A.adjoint() * A).inverse() * A.adjoint();
    const Eigen::MatrixXcd Pb = B * (B.adjoint() * B).inverse() * B.adjoint();
    return (Pa - Pb).norm();
}

}  // namespace

LinearAutomorphism int_automorphism(const LieAlgebraBasis& g_alg, const Eigen::MatrixXd& g,
                                    int order) {
    const int m = g_alg.dim();
    Eigen::MatrixXd T(m, m);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(g);
    for (int i = 0; i < m; ++i) {
        const Eigen::MatrixXd conj = g * g_alg.basis()[i] * lu.inverse();
        double res = 0.0;
        T.col(i) = g_alg.project(conj, &res);
        if (res > 1e-8)
            fail(Errc::not_invariant,
                 "conjugation leaves the algebra, projection residual " + std::to_string(res));
    }
    return {T, order};
}

double power_residual(const LinearAutomorphism& tau) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(tau.matrix.rows(), tau.matrix.cols());
    for (int k = 0; k < tau.order; ++k) P = tau.matrix * P;
    return (P - Eigen::MatrixXd::Identity(P.rows(), P.cols())).norm();
}

double automorphism_residual(const LieAlgebraBasis& g_alg, const LinearAutomorphism& tau) {
    const int m = g_alg.dim();
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd ti = tau.matrix.col(i);
        const Eigen::VectorXd ei = Eigen::VectorXd::Unit(m, i);
        for (int j = i + 1; j < m; ++j) {
            const Eigen::VectorXd tj = tau.matrix.col(j);
            const Eigen::VectorXd ej = Eigen::VectorXd::Unit(m, j);
            const Eigen::VectorXd lhs = tau.matrix * g_alg.bracket(ei, ej);
            const Eigen::VectorXd rhs = g_alg.bracket(ti, tj);
            worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
        }
    }
    return worst;
}

void validate_automorphism(const LieAlgebraBasis& g_alg, const LinearAutomorphism& tau,
                           double power_tol, double auto_tol) {
    const double pr = power_residual(tau);
    if (pr > power_tol)
        fail(Errc::tolerance_failure, "tau^order deviates from identity by " + std::to_string(pr));
    const double ar = automorphism_residual(g_alg, tau);
    if (ar > auto_tol)
        fail(Errc::not_automorphism, "automorphism residual " + std::to_string(ar));
}

std::array<Eigen::VectorXcd, 4> Z4Grading::split(const Eigen::VectorXcd& x) const {
    const Eigen::VectorXcd sol = splitter_.solve(x);
    std::array<Eigen::VectorXcd, 4> parts;
    for (int k = 0; k < 4; ++k) {
        const int d = dim_tilde(k);
        parts[k] = tilde[k] * sol.segment(offsets_[k], d);
    }
    return parts;
}

Eigen::VectorXcd Z4Grading::component(const Eigen::VectorXcd& x, int k) const {
    return split(x)[(k % 4 + 4) % 4];
}

Eigen::MatrixXcd Z4Grading::component_extractor(int k) const {
    k = (k % 4 + 4) % 4;
    const Eigen::MatrixXcd inv = splitter_.inverse();
    return tilde[k] * inv.middleRows(offsets_[k], dim_tilde(k));
}

Z4Grading assemble_grading(std::array<Eigen::MatrixXcd, 4> tilde) {
    const int m = static_cast<int>(tilde[0].rows());
    int total = 0;
    for (int k = 0; k < 4; ++k) total += static_cast<int>(tilde[k].cols());
    if (total != m)
        fail(Errc::grading_mismatch, "eigenspace dimensions sum to " + std::to_string(total) +
                                         ", expected " + std::to_string(m));

    Z4Grading gr;
    gr.tilde = std::move(tilde);
    gr.concat_.resize(m, m);
    int off = 0;
    for (int k = 0; k < 4; ++k) {
        gr.offsets_[k] = off;
        gr.concat_.middleCols(off, gr.tilde[k].cols()) = gr.tilde[k];
        off += static_cast<int>(gr.tilde[k].cols());
    }
    gr.splitter_.compute(gr.concat_);

    // Real forms: g0 and g2 are the real points of tilde0 / tilde2; m is the
    // real span of tilde1 (+) tilde3.
    auto real_points = [&](const Eigen::MatrixXcd& B) {
        Eigen::MatrixXd cols(m, 2 * B.cols());
        cols << B.real(), B.imag();
        return span_basis(cols);
    };
    gr.g0 = real_points(gr.tilde[0]);
    gr.g2 = real_points(gr.tilde[2]);
    Eigen::MatrixXd hm(m, gr.g0.cols() + gr.g2.cols());
    hm << gr.g0, gr.g2;
    gr.h = hm;
    Eigen::MatrixXd mcols(m, 2 * gr.tilde[1].cols() + 2 * gr.tilde[3].cols());
    mcols << gr.tilde[1].real(), gr.tilde[1].imag(), gr.tilde[3].real(), gr.tilde[3].imag();
    gr.m = span_basis(mcols);

    if (static_cast<int>(gr.g0.cols()) != gr.dim_tilde(0) ||
        static_cast<int>(gr.g2.cols()) != gr.dim_tilde(2) ||
        static_cast<int>(gr.m.cols()) != gr.dim_tilde(1) + gr.dim_tilde(3))
        fail(Errc::grading_mismatch, "real forms do not match eigenspace dimensions");

    // tau on m reconstructed from the eigenvalue pattern: i on tilde1,
    // -i on tilde3.
    const std::complex<double> ik[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k < 4; ++k)
        for (int c = 0; c < gr.tilde[k].cols(); ++c) D(gr.offsets_[k] + c, gr.offsets_[k] + c) = ik[k];
    const Eigen::MatrixXcd tau_full = gr.concat_ * D * gr.splitter_.inverse();
    gr.tau_m = gr.m.transpose() * tau_full.real() * gr.m;
    return gr;
}

Z4Grading z4_decompose(const LieAlgebraBasis& g_alg, const LinearAutomorphism& tau, double tol) {
    validate_automorphism(g_alg, tau);
    const int m = g_alg.dim();
    const Eigen::MatrixXcd T = tau.matrix.cast<std::complex<double>>();
    const std::complex<double> ik[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

    std::array<Eigen::MatrixXcd, 4> tilde;
    for (int k = 0; k < 4; ++k)
        tilde[k] = kernel_basis(T - ik[k] * Eigen::MatrixXcd::Identity(m, m), 1e-9);
    Z4Grading gr = assemble_grading(std::move(tilde));

    const double stab = (tau.matrix * gr.m - gr.m * gr.tau_m).norm();
    if (stab > 1e-7)
        fail(Errc::grading_mismatch, "tau does not stabilize m, defect " + std::to_string(stab));

    const GradingReport rep = check_grading(g_alg, gr);
    if (rep.bracket_residual > tol)
        fail(Errc::tolerance_failure,
             "graded bracket closure residual " + std::to_string(rep.bracket_residual));
    if (rep.conjugation_residual > 1e-7)
        fail(Errc::grading_mismatch,
             "conj(g_k) != g_{-k}, defect " + std::to_string(rep.conjugation_residual));
    return gr;
}

GradingReport check_grading(const LieAlgebraBasis& g_alg, const Z4Grading& grading) {
    GradingReport rep;
    int total = 0;
    for (int k = 0; k < 4; ++k) total += grading.dim_tilde(k);
    rep.dims_consistent = (total == g_alg.dim());

    rep.conjugation_residual = std::max(
        subspace_distance(grading.tilde[1].conjugate(), grading.tilde[3]),
        std::max(subspace_distance(grading.tilde[0].conjugate(), grading.tilde[0]),
                 subspace_distance(grading.tilde[2].conjugate(), grading.tilde[2])));

    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            const auto& Bk = grading.tilde[k];
            const auto& Bl = grading.tilde[l];
            for (int a = 0; a < Bk.cols(); ++a) {
                for (int b = 0; b < Bl.cols(); ++b) {
                    const Eigen::VectorXcd w = g_alg.bracket(Eigen::VectorXcd(Bk.col(a)),
                                                             Eigen::VectorXcd(Bl.col(b)));
                    const Eigen::VectorXcd inside = grading.component(w, k + l);
                    const double res = (w - inside).norm() / std::max(1.0, w.norm());
                    worst = std::max(worst, res);
                }
            }
        }
    }
    rep.bracket_residual = worst;
    return rep;
}

}  // namespace foursym
