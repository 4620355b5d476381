#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace carbongrid::polytope {

/// Inequality rows m x <= k over the full load space.
struct Rows {
    Eigen::MatrixXd m;
    Eigen::VectorXd k;
};

/// Splits a box into free dimensions (lower < upper) and pinned ones.
/// Geometry runs in the free subspace; pinned coordinates are substituted.
struct BoxReduction {
    std::vector<int> free_dims;
    Eigen::VectorXd lower;  // full-length box bounds
    Eigen::VectorXd upper;

    int full_dim() const { return static_cast<int>(lower.size()); }
    int reduced_dim() const { return static_cast<int>(free_dims.size()); }
    bool is_free(int dim) const;

    Eigen::VectorXd lift(const Eigen::VectorXd& reduced) const;
    Eigen::VectorXd project(const Eigen::VectorXd& full) const;

    /// Euclidean diagonal of the box over the free dimensions.
    double diagonal() const;
};

BoxReduction reduce_box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

struct LpPoint {
    bool feasible = false;
    double value = 0.0;
    Eigen::VectorXd point;  // full space
};

/// max objective . x over {rows, box}; per-dimension overrides widen the box
/// when a box side itself is under a redundancy test.
LpPoint maximize(const Rows& rows, const BoxReduction& box, const Eigen::VectorXd& objective,
                 const Eigen::VectorXd* lower_override = nullptr,
                 const Eigen::VectorXd* upper_override = nullptr);

struct Center {
    bool feasible = false;
    Eigen::VectorXd point;  // full space
    double radius = 0.0;    // in the free subspace
};

/// Chebyshev center of {rows, box} within the free subspace.
Center chebyshev_center(const Rows& rows, const BoxReduction& box);

/// Relative-interior point of the facet `rows[facet] == k[facet]`; rows
/// parallel to the facet normal are ignored when maximizing the inradius.
Center facet_center(const Rows& rows, const BoxReduction& box, int facet);

} // namespace carbongrid::polytope
