#include "carbongrid/dcopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "carbongrid/errors.hpp"
#include "carbongrid/simplex.hpp"
#include "qp.hpp"

namespace carbongrid {

CostModel CostModel::linear_from(const Network& net) {
    CostModel cost;
    cost.kind = Kind::Linear;
    cost.linear.resize(net.num_generators());
    cost.quadratic = Eigen::VectorXd::Zero(net.num_generators());
    for (int g = 0; g < net.num_generators(); ++g) {
        cost.linear[g] = net.generators[g].cost_linear;
    }
    return cost;
}

CostModel CostModel::quadratic_from(const Network& net) {
    CostModel cost;
    cost.kind = Kind::Quadratic;
    cost.linear.resize(net.num_generators());
    cost.quadratic.resize(net.num_generators());
    for (int g = 0; g < net.num_generators(); ++g) {
        cost.linear[g] = net.generators[g].cost_linear;
        cost.quadratic[g] = net.generators[g].cost_quadratic;
    }
    return cost;
}

CostModel CostModel::from_network(const Network& net) {
    for (const Generator& gen : net.generators) {
        if (gen.cost_quadratic != 0.0) {
            return quadratic_from(net);
        }
    }
    return linear_from(net);
}

double CostModel::evaluate(const Eigen::VectorXd& p_gen) const {
    double value = linear.dot(p_gen);
    if (kind == Kind::Quadratic) {
        value += quadratic.dot(p_gen.cwiseProduct(p_gen));
    }
    return value;
}

Eigen::VectorXd CostModel::gradient(const Eigen::VectorXd& p_gen) const {
    if (kind == Kind::Quadratic) {
        return linear + 2.0 * quadratic.cwiseProduct(p_gen);
    }
    return linear;
}

void CostModel::validate(int num_gens) const {
    if (linear.size() != num_gens || quadratic.size() != num_gens) {
        throw ContractError("cost model dimension does not match the generator count");
    }
    for (int g = 0; g < num_gens; ++g) {
        if (quadratic[g] < 0.0) {
            throw ContractError("quadratic cost coefficients must be nonnegative");
        }
        if (kind == Kind::Linear && quadratic[g] != 0.0) {
            throw ContractError("linear cost model carries a nonzero quadratic term");
        }
    }
}

namespace {

void check_inputs(const Network& net, const Eigen::VectorXd& load, const CostModel& cost) {
    if (load.size() != net.num_loads()) {
        throw ContractError("load vector has dimension " + std::to_string(load.size()) +
                            ", expected " + std::to_string(net.num_loads()));
    }
    for (Eigen::Index i = 0; i < load.size(); ++i) {
        if (load[i] < 0.0) {
            throw ContractError("load entries must be nonnegative");
        }
    }
    cost.validate(net.num_generators());
}

/// Tight canonical rows at `p_gen`; balance is reported once as balance+.
std::vector<int> tight_rows(const CanonicalForm& canon, const Eigen::VectorXd& rhs,
                            const Eigen::VectorXd& p_gen) {
    std::vector<int> active;
    active.push_back(CanonicalForm::kBalancePlus);
    for (int row = 2; row < canon.rows(); ++row) {
        const double slack = rhs[row] - canon.a.row(row).dot(p_gen);
        if (slack <= activity_tolerance(rhs[row])) {
            active.push_back(row);
        }
    }
    return active;
}

DispatchSolution solve_linear(const CanonicalForm& canon, const Network& net,
                              const Eigen::VectorXd& load, const CostModel& cost) {
    const int n_gen = canon.num_gens;
    const int n_line = canon.num_lines;

    // compact computational form: variables [P_gen; line slacks]
    SimplexProblem lp;
    const int n_var = n_gen + n_line;
    lp.a = Eigen::MatrixXd::Zero(1 + n_line, n_var);
    lp.b = Eigen::VectorXd::Zero(1 + n_line);
    lp.cost = Eigen::VectorXd::Zero(n_var);
    lp.lower = Eigen::VectorXd::Zero(n_var);
    lp.upper = Eigen::VectorXd::Zero(n_var);

    lp.a.row(0).head(n_gen).setOnes();
    lp.b[0] = load.sum();
    for (int l = 0; l < n_line; ++l) {
        lp.a.row(1 + l).head(n_gen) = canon.isf_gen.row(l);
        lp.a(1 + l, n_gen + l) = -1.0;
        lp.b[1 + l] = canon.isf_load.row(l).dot(load) + net.branches[l].flow_min;
    }
    for (int g = 0; g < n_gen; ++g) {
        lp.cost[g] = cost.linear[g];
        lp.lower[g] = net.generators[g].p_min;
        lp.upper[g] = net.generators[g].p_max;
    }
    for (int l = 0; l < n_line; ++l) {
        lp.lower[n_gen + l] = 0.0;
        lp.upper[n_gen + l] = net.branches[l].flow_max - net.branches[l].flow_min;
    }

    const SimplexSolution lp_sol = solve_simplex(lp);

    DispatchSolution out;
    out.iterations = lp_sol.iterations;
    if (lp_sol.status == LpStatus::Infeasible) {
        out.status = SolveStatus::Infeasible;
        if (lp_sol.infeasible_row == 0) {
            out.diagnostic = "power balance cannot be satisfied within generator limits";
        } else if (lp_sol.infeasible_row > 0) {
            const Branch& br = net.branches[lp_sol.infeasible_row - 1];
            out.diagnostic = "no feasible flow pattern: line " +
                             std::to_string(net.buses[br.from_bus].id) + "-" +
                             std::to_string(net.buses[br.to_bus].id) +
                             " cannot be kept within its limits";
        } else {
            out.diagnostic = "infeasible";
        }
        return out;
    }
    if (lp_sol.status == LpStatus::Unbounded) {
        out.status = SolveStatus::Unbounded;
        out.diagnostic = "dispatch polytope is unbounded";
        return out;
    }

    out.status = SolveStatus::Optimal;
    out.p_gen = lp_sol.x.head(n_gen);
    out.flows = canon.flows(out.p_gen, load);
    out.objective = cost.linear.dot(out.p_gen);

    // map computational-form duals onto the canonical rows
    out.duals = Eigen::VectorXd::Zero(canon.rows());
    const double y_bal = lp_sol.y[0];
    out.duals[CanonicalForm::kBalancePlus] = std::max(-y_bal, 0.0);
    out.duals[CanonicalForm::kBalanceMinus] = std::max(y_bal, 0.0);
    for (int l = 0; l < n_line; ++l) {
        const double y = lp_sol.y[1 + l];
        out.duals[canon.flow_upper_row(l)] = std::max(-y, 0.0);
        out.duals[canon.flow_lower_row(l)] = std::max(y, 0.0);
    }
    for (int g = 0; g < n_gen; ++g) {
        const double rc = lp_sol.reduced_costs[g];
        out.duals[canon.gen_upper_row(g)] = std::max(-rc, 0.0);
        out.duals[canon.gen_lower_row(g)] = std::max(rc, 0.0);
    }

    // terminal basis: balance+ plus the bound row of every nonbasic variable
    out.basis.push_back(CanonicalForm::kBalancePlus);
    std::vector<char> is_basic(n_var, 0);
    for (int idx : lp_sol.basis) {
        if (idx < n_var) {
            is_basic[idx] = 1;
        }
    }
    for (int g = 0; g < n_gen; ++g) {
        if (!is_basic[g]) {
            out.basis.push_back(lp_sol.at_upper[g] ? canon.gen_upper_row(g)
                                                   : canon.gen_lower_row(g));
        }
    }
    for (int l = 0; l < n_line; ++l) {
        if (!is_basic[n_gen + l]) {
            out.basis.push_back(lp_sol.at_upper[n_gen + l] ? canon.flow_upper_row(l)
                                                           : canon.flow_lower_row(l));
        }
    }
    std::sort(out.basis.begin(), out.basis.end());
    if (static_cast<int>(out.basis.size()) != n_gen) {
        throw NumericalError("terminal simplex basis does not define " +
                             std::to_string(n_gen) + " active rows");
    }

    const Eigen::VectorXd rhs = canon.rhs(load);
    out.active_set = tight_rows(canon, rhs, out.p_gen);
    out.primal_degenerate = static_cast<int>(out.active_set.size()) > n_gen;

    const double dual_tol = 1e-9 * (1.0 + cost.linear.cwiseAbs().maxCoeff());
    for (int j = 0; j < n_var; ++j) {
        if (!is_basic[j] && lp.lower[j] < lp.upper[j] &&
            std::abs(lp_sol.reduced_costs.size() > j ? lp_sol.reduced_costs[j] : 0.0) <=
                dual_tol) {
            out.dual_degenerate = true;
            break;
        }
    }
    return out;
}

DispatchSolution solve_quadratic(const CanonicalForm& canon, const Network& net,
                                 const Eigen::VectorXd& load, const CostModel& cost) {
    // feasible vertex (and independent working set) from the linear part
    CostModel warm;
    warm.kind = CostModel::Kind::Linear;
    warm.linear = cost.linear;
    warm.quadratic = Eigen::VectorXd::Zero(canon.num_gens);
    DispatchSolution start = solve_linear(canon, net, load, warm);
    if (start.status != SolveStatus::Optimal) {
        return start;
    }

    const Eigen::VectorXd rhs = canon.rhs(load);
    const Eigen::VectorXd hessian = 2.0 * cost.quadratic;
    const detail::QpResult qp = detail::solve_qp_active_set(canon, rhs, hessian, cost.linear,
                                                            start.p_gen, start.basis);

    DispatchSolution out;
    out.iterations = start.iterations + qp.iterations;
    if (qp.status == LpStatus::Unbounded) {
        out.status = SolveStatus::Unbounded;
        out.diagnostic = "quadratic dispatch is unbounded along a zero-curvature ray";
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.p_gen = qp.x;
    out.flows = canon.flows(out.p_gen, load);
    out.objective = cost.evaluate(out.p_gen);
    out.duals = qp.row_multipliers;
    out.basis = qp.working_set;
    out.active_set = tight_rows(canon, rhs, out.p_gen);

    std::vector<int> active_ineq(out.active_set.begin() + 1, out.active_set.end());
    std::vector<int> basis_ineq;
    for (int row : out.basis) {
        if (row != CanonicalForm::kBalancePlus) {
            basis_ineq.push_back(row);
        }
    }
    out.primal_degenerate = active_ineq.size() > basis_ineq.size();
    const double mult_tol = 1e-9 * (1.0 + cost.linear.cwiseAbs().maxCoeff());
    for (int row : basis_ineq) {
        if (out.duals[row] <= mult_tol) {
            out.dual_degenerate = true;  // weakly active constraint
            break;
        }
    }
    return out;
}

} // namespace

DispatchSolution solve_dcopf(const Network& net, const Eigen::VectorXd& load,
                             const CostModel& cost) {
    net.validate();
    check_inputs(net, load, cost);

    // fast capacity screen with an explicit diagnostic
    double cap_max = 0.0;
    double cap_min = 0.0;
    for (const Generator& gen : net.generators) {
        cap_max += gen.p_max;
        cap_min += gen.p_min;
    }
    const double total_load = load.sum();
    if (total_load > cap_max + 1e-9 * (1.0 + cap_max)) {
        DispatchSolution out;
        out.status = SolveStatus::Infeasible;
        std::ostringstream msg;
        msg << "capacity deficit: total load " << total_load << " MW exceeds total capacity "
            << cap_max << " MW";
        out.diagnostic = msg.str();
        return out;
    }
    if (total_load < cap_min - 1e-9 * (1.0 + std::abs(cap_min))) {
        DispatchSolution out;
        out.status = SolveStatus::Infeasible;
        out.diagnostic = "total load below the aggregate minimum generation";
        return out;
    }

    const CanonicalForm canon = build_canonical(net);
    if (cost.kind == CostModel::Kind::Quadratic) {
        return solve_quadratic(canon, net, load, cost);
    }
    return solve_linear(canon, net, load, cost);
}

DispatchSolution solve_dcopf(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                             const CostModel& cost) {
    return solve_dcopf(net.network, load, cost);
}

std::vector<ConstraintCheck> ViolationReport::violations() const {
    std::vector<ConstraintCheck> out;
    for (const ConstraintCheck& check : rows) {
        if (check.violated) {
            out.push_back(check);
        }
    }
    return out;
}

ViolationReport verify_solution(const Network& net, const Eigen::VectorXd& load,
                                const DispatchSolution& sol) {
    if (sol.status != SolveStatus::Optimal) {
        throw ContractError("verify_solution requires an Optimal dispatch");
    }
    const CanonicalForm canon = build_canonical(net);
    const Eigen::VectorXd rhs = canon.rhs(load);

    ViolationReport report;
    report.balance_residual = sol.p_gen.sum() - load.sum();
    for (int row = 0; row < canon.rows(); ++row) {
        ConstraintCheck check;
        check.row = row;
        check.name = canon.row_name(row, net);
        check.slack = rhs[row] - canon.a.row(row).dot(sol.p_gen);
        const double tol = activity_tolerance(rhs[row]);
        check.active = std::abs(check.slack) <= tol;
        check.violated = check.slack < -tol;
        report.rows.push_back(std::move(check));
    }
    return report;
}

ViolationReport verify_solution(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                                const DispatchSolution& sol) {
    return verify_solution(net.network, load, sol);
}

} // namespace carbongrid
