#include "carbongrid/polytope.hpp"

#include <cmath>
#include <limits>

#include "carbongrid/errors.hpp"
#include "carbongrid/simplex.hpp"

namespace carbongrid::polytope {

namespace {

constexpr double kFixedWidth = 1e-12;

/// Reduced row: coefficients on the free dims, rhs shifted by the pinned
/// contribution.
void reduce_row(const BoxReduction& box, const Eigen::VectorXd& row_full, double rhs_full,
                Eigen::VectorXd& row_red, double& rhs_red) {
    row_red.resize(box.reduced_dim());
    double shift = 0.0;
    int r = 0;
    for (int dim = 0; dim < box.full_dim(); ++dim) {
        if (box.is_free(dim)) {
            row_red[r++] = row_full[dim];
        } else {
            shift += row_full[dim] * box.lower[dim];
        }
    }
    rhs_red = rhs_full - shift;
}

double tangential_norm(const Eigen::VectorXd& row, const Eigen::VectorXd* normal) {
    if (!normal) {
        return row.norm();
    }
    const Eigen::VectorXd tangential = row - row.dot(*normal) * (*normal);
    return tangential.norm();
}

/// Inradius LP: maximize r such that every row (and box wall) keeps distance
/// r from the point, measured within the affine subspace selected by
/// `normal` (facet mode) or the whole free subspace (no equality row).
Center radius_lp(const Rows& rows, const BoxReduction& box,
                 const std::optional<int>& equality_row, const Eigen::VectorXd* normal) {
    const int d = box.reduced_dim();
    const int r = static_cast<int>(rows.m.rows());
    const int n_box = 2 * d;

    SimplexProblem lp;
    const int n_rows = r + n_box;
    const int n_var = d + 1 + n_rows;  // point, radius, slacks
    lp.a = Eigen::MatrixXd::Zero(n_rows, n_var);
    lp.b = Eigen::VectorXd::Zero(n_rows);
    lp.cost = Eigen::VectorXd::Zero(n_var);
    lp.lower = Eigen::VectorXd::Zero(n_var);
    lp.upper = Eigen::VectorXd::Zero(n_var);

    Eigen::VectorXd row_red;
    double rhs_red = 0.0;
    for (int i = 0; i < r; ++i) {
        reduce_row(box, rows.m.row(i), rows.k[i], row_red, rhs_red);
        const bool is_eq = equality_row && *equality_row == i;
        lp.a.row(i).head(d) = row_red.transpose();
        lp.a(i, d) = is_eq ? 0.0 : tangential_norm(row_red, normal);
        lp.a(i, d + 1 + i) = 1.0;
        lp.b[i] = rhs_red;
        lp.upper[d + 1 + i] = is_eq ? 0.0 : std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < d; ++i) {
        const int dim = box.free_dims[static_cast<size_t>(i)];
        Eigen::VectorXd wall = Eigen::VectorXd::Zero(d);
        wall[i] = 1.0;
        const double weight = tangential_norm(wall, normal);
        const int up_row = r + 2 * i;
        const int lo_row = r + 2 * i + 1;
        lp.a(up_row, i) = 1.0;
        lp.a(up_row, d) = weight;
        lp.a(up_row, d + 1 + up_row) = 1.0;
        lp.b[up_row] = box.upper[dim];
        lp.upper[d + 1 + up_row] = std::numeric_limits<double>::infinity();
        lp.a(lo_row, i) = -1.0;
        lp.a(lo_row, d) = weight;
        lp.a(lo_row, d + 1 + lo_row) = 1.0;
        lp.b[lo_row] = -box.lower[dim];
        lp.upper[d + 1 + lo_row] = std::numeric_limits<double>::infinity();
    }

    for (int i = 0; i < d; ++i) {
        const int dim = box.free_dims[static_cast<size_t>(i)];
        const double margin = box.upper[dim] - box.lower[dim];
        lp.lower[i] = box.lower[dim] - margin;  // roomy; the rows constrain the point
        lp.upper[i] = box.upper[dim] + margin;
    }
    lp.lower[d] = 0.0;
    lp.upper[d] = box.diagonal() + 1.0;  // caps degenerate all-parallel cases
    lp.cost[d] = -1.0;  // maximize the radius

    const SimplexSolution sol = solve_simplex(lp);
    Center out;
    if (sol.status != LpStatus::Optimal) {
        return out;
    }
    out.feasible = true;
    out.point = box.lift(sol.x.head(d));
    out.radius = sol.x[d];
    return out;
}

} // namespace

bool BoxReduction::is_free(int dim) const {
    return upper[dim] - lower[dim] > kFixedWidth;
}

Eigen::VectorXd BoxReduction::lift(const Eigen::VectorXd& reduced) const {
    Eigen::VectorXd full = lower;  // pinned dims sit at lower == upper
    for (int i = 0; i < reduced_dim(); ++i) {
        full[free_dims[static_cast<size_t>(i)]] = reduced[i];
    }
    return full;
}

Eigen::VectorXd BoxReduction::project(const Eigen::VectorXd& full) const {
    Eigen::VectorXd reduced(reduced_dim());
    for (int i = 0; i < reduced_dim(); ++i) {
        reduced[i] = full[free_dims[static_cast<size_t>(i)]];
    }
    return reduced;
}

double BoxReduction::diagonal() const {
    double sum = 0.0;
    for (int dim : free_dims) {
        const double width = upper[dim] - lower[dim];
        sum += width * width;
    }
    return std::sqrt(sum);
}

BoxReduction reduce_box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
    if (lower.size() != upper.size()) {
        throw ContractError("box bounds have mismatched dimensions");
    }
    BoxReduction box;
    box.lower = lower;
    box.upper = upper;
    for (int dim = 0; dim < static_cast<int>(lower.size()); ++dim) {
        if (lower[dim] > upper[dim]) {
            throw ContractError("box has lower > upper in dimension " + std::to_string(dim));
        }
        if (box.is_free(dim)) {
            box.free_dims.push_back(dim);
        }
    }
    return box;
}

LpPoint maximize(const Rows& rows, const BoxReduction& box, const Eigen::VectorXd& objective,
                 const Eigen::VectorXd* lower_override, const Eigen::VectorXd* upper_override) {
    const int d = box.reduced_dim();
    const int r = static_cast<int>(rows.m.rows());

    SimplexProblem lp;
    lp.a = Eigen::MatrixXd::Zero(r, d + r);
    lp.b = Eigen::VectorXd::Zero(r);
    lp.cost = Eigen::VectorXd::Zero(d + r);
    lp.lower = Eigen::VectorXd::Zero(d + r);
    lp.upper = Eigen::VectorXd::Zero(d + r);

    Eigen::VectorXd row_red;
    double rhs_red = 0.0;
    for (int i = 0; i < r; ++i) {
        reduce_row(box, rows.m.row(i), rows.k[i], row_red, rhs_red);
        lp.a.row(i).head(d) = row_red.transpose();
        lp.a(i, d + i) = 1.0;  // slack
        lp.b[i] = rhs_red;
        lp.upper[d + i] = std::numeric_limits<double>::infinity();
    }
    Eigen::VectorXd obj_red;
    double unused = 0.0;
    reduce_row(box, objective, 0.0, obj_red, unused);
    lp.cost.head(d) = -obj_red;  // simplex minimizes

    for (int i = 0; i < d; ++i) {
        const int dim = box.free_dims[static_cast<size_t>(i)];
        lp.lower[i] = lower_override ? (*lower_override)[dim] : box.lower[dim];
        lp.upper[i] = upper_override ? (*upper_override)[dim] : box.upper[dim];
    }

    const SimplexSolution sol = solve_simplex(lp);
    LpPoint out;
    if (sol.status != LpStatus::Optimal) {
        return out;
    }
    out.feasible = true;
    out.point = box.lift(sol.x.head(d));
    out.value = objective.dot(out.point);
    return out;
}

Center chebyshev_center(const Rows& rows, const BoxReduction& box) {
    if (box.reduced_dim() == 0) {
        // fully pinned box: the single point is its own center
        Center out;
        const Eigen::VectorXd point = box.lower;
        out.feasible =
            rows.m.rows() == 0 || (rows.k - rows.m * point).minCoeff() >= -1e-9;
        out.point = point;
        out.radius = 0.0;
        return out;
    }
    return radius_lp(rows, box, std::nullopt, nullptr);
}

Center facet_center(const Rows& rows, const BoxReduction& box, int facet) {
    Eigen::VectorXd facet_red;
    double facet_rhs = 0.0;
    reduce_row(box, rows.m.row(facet), rows.k[facet], facet_red, facet_rhs);
    const double facet_norm = facet_red.norm();
    if (facet_norm < 1e-12) {
        return {};
    }
    const Eigen::VectorXd normal = facet_red / facet_norm;
    return radius_lp(rows, box, facet, &normal);
}

} // namespace carbongrid::polytope
