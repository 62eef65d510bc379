#pragma once

#include <Eigen/Dense>

#include "foursym/error.hpp"

namespace foursym {

enum class StencilOrder { second, fourth };

/// Uniform rectangular grid with the same spacing in u and v. Node (i, j)
/// lives at flat index j*nu + i; fields are stored column-per-node.
struct Grid2D {
    int nu = 0, nv = 0;
    double h = 0.0;
    bool periodic_u = false, periodic_v = false;

    Grid2D() = default;
    Grid2D(int nu_, int nv_, double h_, bool pu = false, bool pv = false)
        : nu(nu_), nv(nv_), h(h_), periodic_u(pu), periodic_v(pv) {
        if (nu < 3 || nv < 3) fail(Errc::bad_input, "grid needs at least 3 nodes per axis");
        if (h <= 0.0) fail(Errc::bad_input, "grid spacing must be positive");
    }

    int nodes() const { return nu * nv; }
    int idx(int i, int j) const { return j * nu + i; }
    double u(int i) const { return i * h; }
    double v(int j) const { return j * h; }

    /// Interior in the stencil sense: periodic axes have no boundary.
    bool is_interior(int i, int j, int width = 1) const {
        const bool ui = periodic_u || (i >= width && i < nu - width);
        const bool vi = periodic_v || (j >= width && j < nv - width);
        return ui && vi;
    }
};

/// Per-node residual norms plus aggregates over interior nodes (boundary
/// nodes are excluded from aggregates so stencil downgrades do not pollute
/// convergence-order estimates).
struct ResidualReport {
    Grid2D grid;
    Eigen::VectorXd per_node;
    double max_interior = 0.0;
    double l2_interior = 0.0;  // sqrt(h^2 sum r^2), a discrete L2 norm

    bool below_floor(double floor = 1e-12) const { return max_interior < floor; }
};

ResidualReport make_report(const Grid2D& grid, const Eigen::VectorXd& per_node,
                           int boundary_skip = 1);

/// log2(coarse/fine) on max norms; +inf when both sit below the round-off
/// floor (already converged past measurability).
double convergence_order(const ResidualReport& coarse, const ResidualReport& fine,
                         double floor = 1e-12);

}  // namespace foursym
