#include "foursym/kernels.hpp"

namespace foursym::kernels {

std::vector<std::vector<std::pair<int, double>>> stencil_taps(int n, double h, bool periodic,
                                                              StencilOrder order) {
    std::vector<std::vector<std::pair<int, double>>> taps(n);
    auto wrap = [n](int i) { return (i % n + n) % n; };
    const double ih = 1.0 / h;

    for (int i = 0; i < n; ++i) {
        auto& t = taps[i];
        if (order == StencilOrder::second) {
            if (periodic || (i >= 1 && i <= n - 2)) {
                t = {{periodic ? wrap(i - 1) : i - 1, -0.5 * ih},
                     {periodic ? wrap(i + 1) : i + 1, 0.5 * ih}};
            } else if (i == 0) {
                t = {{0, -1.5 * ih}, {1, 2.0 * ih}, {2, -0.5 * ih}};
            } else {
                t = {{n - 1, 1.5 * ih}, {n - 2, -2.0 * ih}, {n - 3, 0.5 * ih}};
            }
        } else {
            const double tw = ih / 12.0;
            if (periodic || (i >= 2 && i <= n - 3)) {
                t = {{periodic ? wrap(i - 2) : i - 2, tw},
                     {periodic ? wrap(i - 1) : i - 1, -8.0 * tw},
                     {periodic ? wrap(i + 1) : i + 1, 8.0 * tw},
                     {periodic ? wrap(i + 2) : i + 2, -tw}};
            } else if (i == 0) {
                t = {{0, -25 * tw}, {1, 48 * tw}, {2, -36 * tw}, {3, 16 * tw}, {4, -3 * tw}};
            } else if (i == 1) {
                t = {{0, -3 * tw}, {1, -10 * tw}, {2, 18 * tw}, {3, -6 * tw}, {4, tw}};
            } else if (i == n - 2) {
                t = {{n - 1, 3 * tw}, {n - 2, 10 * tw}, {n - 3, -18 * tw}, {n - 4, 6 * tw}, {n - 5, -tw}};
            } else {
                t = {{n - 1, 25 * tw}, {n - 2, -48 * tw}, {n - 3, 36 * tw}, {n - 4, -16 * tw}, {n - 5, 3 * tw}};
            }
        }
    }
    return taps;
}

namespace {

template <typename Mat>
void diff_axis(const Grid2D& g, const Mat& f, Mat& out, StencilOrder order, bool along_u,
               bool parallel) {
    const int n = along_u ? g.nu : g.nv;
    const bool per = along_u ? g.periodic_u : g.periodic_v;
    if ((order == StencilOrder::second && n < 3) || (order == StencilOrder::fourth && n < 5))
        fail(Errc::bad_input, "grid too small for the requested stencil order");
    const auto taps = stencil_taps(n, g.h, per, order);
    out.resize(f.rows(), f.cols());

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (int j = 0; j < g.nv; ++j) {
        for (int i = 0; i < g.nu; ++i) {
            auto col = out.col(g.idx(i, j));
            col.setZero();
            const auto& t = taps[along_u ? i : j];
            for (const auto& [p, w] : t) col += w * f.col(along_u ? g.idx(p, j) : g.idx(i, p));
        }
    }
}

template <typename Scalar>
const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>& struct_consts(
    const LieAlgebraBasis& alg);
template <>
const std::vector<Eigen::MatrixXd>& struct_consts<double>(const LieAlgebraBasis& alg) {
    return alg.structure_constants();
}
template <>
const std::vector<Eigen::MatrixXcd>& struct_consts<std::complex<double>>(
    const LieAlgebraBasis& alg) {
    return alg.structure_constants_cplx();
}

template <typename Mat>
void bracket_nodes(const LieAlgebraBasis& alg, const Mat& x, const Mat& y, Mat& out,
                   bool parallel) {
    using Scalar = typename Mat::Scalar;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const auto& c = struct_consts<Scalar>(alg);
    out.resize(x.rows(), x.cols());
    const int nodes = static_cast<int>(x.cols());
    const int m = static_cast<int>(x.rows());

#pragma omp parallel if (parallel)
    {
        Vec tmp(m);
#pragma omp for schedule(static)
        for (int nIdx = 0; nIdx < nodes; ++nIdx) {
            for (int k = 0; k < m; ++k) {
                tmp.noalias() = c[k] * y.col(nIdx);
                out(k, nIdx) = x.col(nIdx).transpose() * tmp;
            }
        }
    }
}

template <typename Mat>
void curvature_impl(const Grid2D& g, const LieAlgebraBasis& alg, const Mat& Au, const Mat& Av,
                    Mat& out, StencilOrder order, bool parallel) {
    Mat dAv_du, dAu_dv, br;
    diff_axis(g, Av, dAv_du, order, true, parallel);
    diff_axis(g, Au, dAu_dv, order, false, parallel);
    bracket_nodes(alg, Au, Av, br, parallel);
    out = dAv_du - dAu_dv + br;
}

}  // namespace

void diff_u(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out, StencilOrder order,
            const ExecPolicy& pol) {
    diff_axis(g, f, out, order, true, pol.parallel);
}
void diff_v(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out, StencilOrder order,
            const ExecPolicy& pol) {
    diff_axis(g, f, out, order, false, pol.parallel);
}
void diff_u(const Grid2D& g, const Eigen::MatrixXcd& f, Eigen::MatrixXcd& out, StencilOrder order,
            const ExecPolicy& pol) {
    diff_axis(g, f, out, order, true, pol.parallel);
}
void diff_v(const Grid2D& g, const Eigen::MatrixXcd& f, Eigen::MatrixXcd& out, StencilOrder order,
            const ExecPolicy& pol) {
    diff_axis(g, f, out, order, false, pol.parallel);
}

void pairwise_bracket(const LieAlgebraBasis& alg, const Eigen::MatrixXd& x,
                      const Eigen::MatrixXd& y, Eigen::MatrixXd& out, const ExecPolicy& pol) {
    bracket_nodes(alg, x, y, out, pol.parallel);
}
void pairwise_bracket(const LieAlgebraBasis& alg, const Eigen::MatrixXcd& x,
                      const Eigen::MatrixXcd& y, Eigen::MatrixXcd& out, const ExecPolicy& pol) {
    bracket_nodes(alg, x, y, out, pol.parallel);
}

void curvature_field(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXd& Au,
                     const Eigen::MatrixXd& Av, Eigen::MatrixXd& out, StencilOrder order,
                     const ExecPolicy& pol) {
    curvature_impl(g, alg, Au, Av, out, order, pol.parallel);
}
void curvature_field_serial(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXd& Au,
                            const Eigen::MatrixXd& Av, Eigen::MatrixXd& out, StencilOrder order) {
    curvature_impl(g, alg, Au, Av, out, order, false);
}
void curvature_field(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXcd& Au,
                     const Eigen::MatrixXcd& Av, Eigen::MatrixXcd& out, StencilOrder order,
                     const ExecPolicy& pol) {
    curvature_impl(g, alg, Au, Av, out, order, pol.parallel);
}
void curvature_field_serial(const Grid2D& g, const LieAlgebraBasis& alg, const Eigen::MatrixXcd& Au,
                            const Eigen::MatrixXcd& Av, Eigen::MatrixXcd& out, StencilOrder order) {
    curvature_impl(g, alg, Au, Av, out, order, false);
}

namespace {

std::vector<std::vector<std::pair<int, double>>> stencil2_taps(int n, double h, bool periodic) {
    std::vector<std::vector<std::pair<int, double>>> taps(n);
    auto wrap = [n](int i) { return (i % n + n) % n; };
    const double ih2 = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        auto& t = taps[i];
        if (periodic || (i >= 1 && i <= n - 2)) {
            t = {{periodic ? wrap(i - 1) : i - 1, ih2}, {i, -2.0 * ih2},
                 {periodic ? wrap(i + 1) : i + 1, ih2}};
        } else if (i == 0) {
            t = {{0, 2 * ih2}, {1, -5 * ih2}, {2, 4 * ih2}, {3, -ih2}};
        } else {
            t = {{n - 1, 2 * ih2}, {n - 2, -5 * ih2}, {n - 3, 4 * ih2}, {n - 4, -ih2}};
        }
    }
    return taps;
}

void diff2_axis(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out, bool along_u,
                bool parallel) {
    const int n = along_u ? g.nu : g.nv;
    const bool per = along_u ? g.periodic_u : g.periodic_v;
    if (n < 4 && !per) fail(Errc::bad_input, "grid too small for second derivatives");
    const auto taps = stencil2_taps(n, g.h, per);
    out.resize(f.rows(), f.cols());
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (int j = 0; j < g.nv; ++j) {
        for (int i = 0; i < g.nu; ++i) {
            auto col = out.col(g.idx(i, j));
            col.setZero();
            const auto& t = taps[along_u ? i : j];
            for (const auto& [p, w] : t) col += w * f.col(along_u ? g.idx(p, j) : g.idx(i, p));
        }
    }
}

}  // namespace

void diff2_u(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out,
             const ExecPolicy& pol) {
    diff2_axis(g, f, out, true, pol.parallel);
}
void diff2_v(const Grid2D& g, const Eigen::MatrixXd& f, Eigen::MatrixXd& out,
             const ExecPolicy& pol) {
    diff2_axis(g, f, out, false, pol.parallel);
}

Eigen::VectorXd node_norms(const Eigen::MatrixXd& f) { return f.colwise().norm(); }
Eigen::VectorXd node_norms(const Eigen::MatrixXcd& f) { return f.colwise().norm(); }

}  // namespace foursym::kernels
