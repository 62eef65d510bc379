#include "foursym/lie_algebra.hpp"

#include <cmath>

namespace foursym {

Eigen::MatrixXd LieAlgebraBasis::realize(const Eigen::VectorXd& coeffs) const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < dim(); ++i) M += coeffs[i] * basis_[i];
    return M;
}

Eigen::MatrixXcd LieAlgebraBasis::realize(const Eigen::VectorXcd& coeffs) const {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n_, n_);
    for (int i = 0; i < dim(); ++i) M += coeffs[i] * basis_[i];
    return M;
}

Eigen::VectorXd LieAlgebraBasis::project(const Eigen::MatrixXd& M, double* residual) const {
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(M.data(), n_ * n_);
    Eigen::VectorXd x = proj_.solve(rhs);
    if (residual) *residual = (basis_flat_ * x - rhs).norm() / std::max(1.0, rhs.norm());
    return x;
}

Eigen::VectorXcd LieAlgebraBasis::project(const Eigen::MatrixXcd& M, double* residual) const {
    double rr = 0.0, ri = 0.0;
    const Eigen::VectorXd re = project(Eigen::MatrixXd(M.real()), &rr);
    const Eigen::VectorXd im = project(Eigen::MatrixXd(M.imag()), &ri);
    if (residual) *residual = std::hypot(rr, ri);
    return re + std::complex<double>(0, 1) * im;
}

Eigen::VectorXd LieAlgebraBasis::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out(dim());
    bracket_into(x, y, out);
    return out;
}

void LieAlgebraBasis::bracket_into(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                   Eigen::VectorXd& out) const {
    out.resize(dim());
    for (int k = 0; k < dim(); ++k) out[k] = x.dot(c_[k] * y);
}

Eigen::VectorXcd LieAlgebraBasis::bracket(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
    Eigen::VectorXcd out(dim());
    bracket_into(x, y, out);
    return out;
}

void LieAlgebraBasis::bracket_into(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                                   Eigen::VectorXcd& out) const {
    out.resize(dim());
    for (int k = 0; k < dim(); ++k) out[k] = x.transpose() * (c_cplx_[k] * y);
}

Eigen::MatrixXd LieAlgebraBasis::ad_matrix(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd A(dim(), dim());
    // (ad x)_{kj} = sum_i x_i c[k](i, j)
    for (int k = 0; k < dim(); ++k) A.row(k) = x.transpose() * c_[k];
    return A;
}

Eigen::MatrixXd LieAlgebraBasis::killing_form() const {
    std::vector<Eigen::MatrixXd> ad(dim());
    for (int i = 0; i < dim(); ++i) ad[i] = ad_matrix(Eigen::VectorXd::Unit(dim(), i));
    Eigen::MatrixXd K(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j <= i; ++j) K(i, j) = K(j, i) = (ad[i] * ad[j]).trace();
    return K;
}

LieAlgebraBasis make_algebra(int n, const std::vector<Eigen::MatrixXd>& basis,
                             const std::vector<bool>& translation_flags, double tol) {
    if (basis.empty() && translation_flags.empty()) {
        // Degenerate zero algebra; only useful as the h of a semidirect sum.
        LieAlgebraBasis g;
        g.n_ = n;
        g.basis_flat_.resize(n * n, 0);
        return g;
    }
    const int m = static_cast<int>(basis.size());
    LieAlgebraBasis g;
    g.n_ = n;
    g.basis_ = basis;
    g.translation_flags_ = translation_flags;
    if (!translation_flags.empty() && static_cast<int>(translation_flags.size()) != m)
        fail(Errc::bad_input, "translation_flags size mismatch");

    g.basis_flat_.resize(n * n, m);
    for (int i = 0; i < m; ++i) {
        if (basis[i].rows() != n || basis[i].cols() != n)
            fail(Errc::bad_input, "basis matrix " + std::to_string(i) + " is not n x n");
        g.basis_flat_.col(i) = Eigen::Map<const Eigen::VectorXd>(basis[i].data(), n * n);
    }
    g.proj_.compute(g.basis_flat_);
    if (g.proj_.rank() < m) fail(Errc::dependent_basis, "basis matrices are linearly dependent");

    // Structure constants by least squares; closure residual is the worst
    // relative defect over basis pairs.
    std::vector<Eigen::MatrixXd> cs(m, Eigen::MatrixXd::Zero(m, m));
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const Eigen::MatrixXd br = basis[i] * basis[j] - basis[j] * basis[i];
            double res = 0.0;
            const Eigen::VectorXd x = g.project(br, &res);
            worst = std::max(worst, res);
            for (int k = 0; k < m; ++k) cs[k](i, j) = x[k];
        }
    }
    g.closure_residual_ = worst;
    if (worst > tol)
        fail(Errc::not_closed, "bracket closure residual " + std::to_string(worst) +
                                   " exceeds tolerance " + std::to_string(tol));
    g.c_ = std::move(cs);
    g.c_cplx_.resize(m);
    for (int k = 0; k < m; ++k) g.c_cplx_[k] = g.c_[k].cast<std::complex<double>>();

    // Jacobi identity on structure constants.
    double jac = 0.0;
    for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd ei = Eigen::VectorXd::Unit(m, i);
        for (int j = i + 1; j < m; ++j) {
            const Eigen::VectorXd ej = Eigen::VectorXd::Unit(m, j);
            const Eigen::VectorXd bij = g.bracket(ei, ej);
            for (int k = j + 1; k < m; ++k) {
                const Eigen::VectorXd ek = Eigen::VectorXd::Unit(m, k);
                const Eigen::VectorXd r = g.bracket(bij, ek) + g.bracket(g.bracket(ej, ek), ei) +
                                          g.bracket(g.bracket(ek, ei), ej);
                jac = std::max(jac, r.norm());
            }
        }
    }
    g.jacobi_residual_ = jac;
    if (jac > tol)
        fail(Errc::not_closed, "Jacobi residual " + std::to_string(jac) + " exceeds tolerance");
    return g;
}

LieAlgebraBasis semidirect(const LieAlgebraBasis& h_alg, int n) {
    if (h_alg.matrix_size() != n)
        fail(Errc::action_mismatch, "h acts on R^" + std::to_string(h_alg.matrix_size()) +
                                        ", expected R^" + std::to_string(n));
    std::vector<Eigen::MatrixXd> basis;
    std::vector<bool> flags;
    for (const auto& A : h_alg.basis()) {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 1, n + 1);
        B.topLeftCorner(n, n) = A;
        basis.push_back(B);
        flags.push_back(false);
    }
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 1, n + 1);
        B(j, n) = 1.0;
        basis.push_back(B);
        flags.push_back(true);
    }
    return make_algebra(n + 1, basis, flags);
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& X) {
    const int n = static_cast<int>(X.rows());
    const double norm1 = X.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    Eigen::MatrixXd A = X;
    if (norm1 > 0.5) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / 0.5))));
        A /= std::pow(2.0, squarings);
    }
    // Diagonal Pade(6): p(A) p(-A)^{-1} with p the degree-6 numerator.
    static const double b[7] = {1.0, 1.0 / 2, 5.0 / 44, 1.0 / 66, 1.0 / 792, 1.0 / 15840, 1.0 / 665280};
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd A2 = A * A;
    const Eigen::MatrixXd A4 = A2 * A2;
    const Eigen::MatrixXd A6 = A4 * A2;
    const Eigen::MatrixXd even = b[0] * I + b[2] * A2 + b[4] * A4 + b[6] * A6;
    const Eigen::MatrixXd odd = A * (b[1] * I + b[3] * A2 + b[5] * A4);
    Eigen::MatrixXd E = (even - odd).partialPivLu().solve(even + odd);
    for (int s = 0; s < squarings; ++s) E = E * E;
    return E;
}

std::vector<Eigen::MatrixXd> so_basis(int n) {
    std::vector<Eigen::MatrixXd> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
            M(i, j) = 1.0;
            M(j, i) = -1.0;
            basis.push_back(M);
        }
    return basis;
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& M) {
    const int n = static_cast<int>(M.rows());
    Eigen::MatrixXd R(2 * n, 2 * n);
    R.topLeftCorner(n, n) = M.real();
    R.topRightCorner(n, n) = -M.imag();
    R.bottomLeftCorner(n, n) = M.imag();
    R.bottomRightCorner(n, n) = M.real();
    return R;
}

std::vector<Eigen::MatrixXd> su_basis_realified(int n) {
    using cd = std::complex<double>;
    std::vector<Eigen::MatrixXd> basis;
    // Off-diagonal pairs: E_ij - E_ji and i(E_ij + E_ji).
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
            A(i, j) = 1.0;
            A(j, i) = -1.0;
            basis.push_back(realify(A));
            Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
            B(i, j) = cd(0, 1);
            B(j, i) = cd(0, 1);
            basis.push_back(realify(B));
        }
    }
    // Traceless diagonals i(E_kk - E_{k+1,k+1}).
    for (int k = 0; k + 1 < n; ++k) {
        Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
        D(k, k) = cd(0, 1);
        D(k + 1, k + 1) = cd(0, -1);
        basis.push_back(realify(D));
    }
    return basis;
}

}  // namespace foursym
