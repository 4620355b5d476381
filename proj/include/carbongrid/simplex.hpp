#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace carbongrid {

/// Linear program in computational form:
///   min cost' x   s.t.   a x = b,   lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +infinity. Variables
/// with lower == upper are fixed and never priced.
struct SimplexProblem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd cost;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct SimplexSolution {
    LpStatus status = LpStatus::Optimal;
    Eigen::VectorXd x;
    Eigen::VectorXd y;              // row duals, y = B^-T c_B
    Eigen::VectorXd reduced_costs;  // cost - a' y, zero on basic variables
    std::vector<int> basis;         // basic variable per row
    std::vector<char> at_upper;     // nonbasic bound side
    double objective = 0.0;
    int iterations = 0;
    int infeasible_row = -1;        // row whose artificial could not be removed
};

/// Two-phase revised primal simplex with Bland's anti-cycling rule.
/// Deterministic: identical inputs give identical pivots and bases.
SimplexSolution solve_simplex(const SimplexProblem& problem);

} // namespace carbongrid
