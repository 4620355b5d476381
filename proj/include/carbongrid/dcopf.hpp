#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "carbongrid/canonical.hpp"
#include "carbongrid/case_io.hpp"

namespace carbongrid {

struct CostModel {
    enum class Kind { Linear, Quadratic };
    Kind kind = Kind::Linear;
    Eigen::VectorXd linear;     // $/MWh
    Eigen::VectorXd quadratic;  // $/MWh^2, all zero when kind == Linear

    /// Linear model from the generators' linear coefficients.
    static CostModel linear_from(const Network& net);
    /// Quadratic model from the full polynomial coefficients.
    static CostModel quadratic_from(const Network& net);
    /// Quadratic when any second-order coefficient is nonzero, else Linear.
    static CostModel from_network(const Network& net);

    double evaluate(const Eigen::VectorXd& p_gen) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& p_gen) const;
    void validate(int num_gens) const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

/// One DCOPF solve: primal dispatch, canonical-row multipliers and the
/// active constraint set. `basis` is the solver's terminal set of
/// independent active rows (balance+ plus one row per nonbasic variable for
/// the LP path; the working set for the QP path).
struct DispatchSolution {
    SolveStatus status = SolveStatus::Optimal;
    Eigen::VectorXd p_gen;
    double objective = 0.0;
    Eigen::VectorXd flows;
    Eigen::VectorXd duals;        // one multiplier per canonical row, >= 0
    std::vector<int> active_set;  // tight canonical rows (balance+ included once)
    std::vector<int> basis;
    bool primal_degenerate = false;  // more tight rows than basis rows
    bool dual_degenerate = false;    // an alternative optimum exists
    std::string diagnostic;
    int iterations = 0;
};

DispatchSolution solve_dcopf(const Network& net, const Eigen::VectorXd& load,
                             const CostModel& cost);
DispatchSolution solve_dcopf(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                             const CostModel& cost);

/// Per-row slack audit of a claimed solution.
struct ConstraintCheck {
    int row = 0;
    std::string name;
    double slack = 0.0;   // rhs - a*x; negative = violated
    bool active = false;  // |slack| within the activity tolerance
    bool violated = false;
};

struct ViolationReport {
    std::vector<ConstraintCheck> rows;   // every canonical row, in row order
    std::vector<ConstraintCheck> violations() const;
    double balance_residual = 0.0;       // 1'P_gen - 1'P_load
    bool clean() const { return violations().empty(); }
};

ViolationReport verify_solution(const Network& net, const Eigen::VectorXd& load,
                                const DispatchSolution& sol);
ViolationReport verify_solution(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                                const DispatchSolution& sol);

} // namespace carbongrid
