#include "foursym/grid.hpp"

#include <cmath>
#include <limits>

namespace foursym {

ResidualReport make_report(const Grid2D& grid, const Eigen::VectorXd& per_node, int boundary_skip) {
    ResidualReport rep;
    rep.grid = grid;
    rep.per_node = per_node;
    double mx = 0.0, sum2 = 0.0;
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) {
            if (!grid.is_interior(i, j, boundary_skip)) continue;
            const double r = per_node[grid.idx(i, j)];
            mx = std::max(mx, r);
            sum2 += r * r;
        }
    }
    rep.max_interior = mx;
    rep.l2_interior = std::sqrt(sum2) * grid.h;
    return rep;
}

double convergence_order(const ResidualReport& coarse, const ResidualReport& fine, double floor) {
    if (coarse.max_interior < floor && fine.max_interior < floor)
        return std::numeric_limits<double>::infinity();
    if (fine.max_interior <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(coarse.max_interior / fine.max_interior);
}

}  // namespace foursym
