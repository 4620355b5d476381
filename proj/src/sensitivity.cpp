#include "carbongrid/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "carbongrid/errors.hpp"

namespace carbongrid {

namespace {

/// Picks an independent set of `size` rows: the preferred rows when they
/// already form a nonsingular square basis, otherwise a lexicographic greedy
/// scan over the candidates.
std::vector<int> select_row_basis(const Eigen::MatrixXd& a, const std::vector<int>& preferred,
                                  const std::vector<int>& candidates, int size) {
    const auto rank_of = [&a](const std::vector<int>& rows) {
        Eigen::MatrixXd sub(rows.size(), a.cols());
        for (size_t i = 0; i < rows.size(); ++i) {
            sub.row(static_cast<Eigen::Index>(i)) = a.row(rows[i]);
        }
        return Eigen::FullPivLU<Eigen::MatrixXd>(sub).rank();
    };

    if (static_cast<int>(preferred.size()) == size &&
        rank_of(preferred) == static_cast<Eigen::Index>(size)) {
        return preferred;
    }

    std::vector<int> sorted(candidates);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<int> picked;
    for (int row : sorted) {
        if (static_cast<int>(picked.size()) == size) {
            break;
        }
        picked.push_back(row);
        if (rank_of(picked) != static_cast<Eigen::Index>(picked.size())) {
            picked.pop_back();
        }
    }
    if (static_cast<int>(picked.size()) != size) {
        throw DegeneracyError(
            "active rows do not contain a nonsingular basis; the optimum is degenerate and "
            "requires boundary handling");
    }
    return picked;
}

Eigen::MatrixXd jacobian_linear(const CanonicalForm& canon, const DispatchSolution& sol) {
    const int n = canon.num_gens;
    const std::vector<int> rows = select_row_basis(canon.a, sol.basis, sol.active_set, n);

    Eigen::MatrixXd a_basis(n, n);
    Eigen::MatrixXd u_basis(n, canon.num_loads);
    for (int i = 0; i < n; ++i) {
        a_basis.row(i) = canon.a.row(rows[i]);
        u_basis.row(i) = canon.u.row(rows[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a_basis);
    if (!lu.isInvertible()) {
        throw DegeneracyError("active-constraint basis is singular");
    }
    return lu.solve(u_basis);
}

Eigen::MatrixXd jacobian_quadratic(const CanonicalForm& canon, const CostModel& cost,
                                   const DispatchSolution& sol) {
    const int n = canon.num_gens;
    const int k = static_cast<int>(sol.basis.size());
    if (k == 0) {
        throw ContractError("quadratic sensitivity requires a working set");
    }
    Eigen::MatrixXd a_w(k, n);
    Eigen::MatrixXd u_w(k, canon.num_loads);
    for (int i = 0; i < k; ++i) {
        a_w.row(i) = canon.a.row(sol.basis[i]);
        u_w.row(i) = canon.u.row(sol.basis[i]);
    }

    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
    kkt.topLeftCorner(n, n) = (2.0 * cost.quadratic).asDiagonal();
    kkt.topRightCorner(n, k) = a_w.transpose();
    kkt.bottomLeftCorner(k, n) = a_w;

    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + k, canon.num_loads);
    rhs.bottomRows(k) = u_w;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) {
        throw DegeneracyError(
            "bordered KKT system is singular; degenerate optimum requires boundary handling");
    }
    return lu.solve(rhs).topRows(n);
}

} // namespace

Eigen::MatrixXd jacobian_from_active_set(const CanonicalForm& canon, const CostModel& cost,
                                         const DispatchSolution& sol) {
    if (sol.status != SolveStatus::Optimal) {
        throw ContractError("jacobian_from_active_set requires an Optimal dispatch");
    }
    if (cost.kind == CostModel::Kind::Quadratic) {
        return jacobian_quadratic(canon, cost, sol);
    }
    return jacobian_linear(canon, sol);
}

Eigen::MatrixXd jacobian_from_active_set(const EnrichedNetwork& net, const CostModel& cost,
                                         const DispatchSolution& sol) {
    return jacobian_from_active_set(build_canonical(net), cost, sol);
}

SensitivityResult lmce_exact(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                             const CostModel& cost) {
    const DispatchSolution sol = solve_dcopf(net, load, cost);
    if (sol.status == SolveStatus::Infeasible) {
        throw InfeasibleError("lmce_exact: " + sol.diagnostic);
    }
    if (sol.status != SolveStatus::Optimal) {
        throw NumericalError("lmce_exact: solver returned a non-optimal status");
    }
    const CanonicalForm canon = build_canonical(net);
    SensitivityResult result;
    result.jacobian = jacobian_from_active_set(canon, cost, sol);
    result.lmce = result.jacobian.transpose() * net.network.intensity_vector();
    result.at_boundary = sol.primal_degenerate || sol.dual_degenerate;
    result.active_set = sol.basis;
    return result;
}

bool FiniteDifferenceResult::any_one_sided() const {
    return std::any_of(one_sided.begin(), one_sided.end(), [](char c) { return c != 0; });
}

double default_fd_step(const Eigen::VectorXd& load) {
    const double scale = load.size() > 0 ? load.cwiseAbs().maxCoeff() : 0.0;
    return std::max(0.1, 1e-4 * scale);
}

FiniteDifferenceResult lmce_finite_difference(const EnrichedNetwork& net,
                                              const Eigen::VectorXd& load, const CostModel& cost,
                                              double step) {
    const double h = step > 0.0 ? step : default_fd_step(load);
    const Eigen::VectorXd intensities = net.network.intensity_vector();

    const auto total_emissions = [&](const Eigen::VectorXd& d) -> std::optional<double> {
        // negative perturbed loads are infeasible by contract
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (d[i] < 0.0) {
                return std::nullopt;
            }
        }
        const DispatchSolution sol = solve_dcopf(net, d, cost);
        if (sol.status != SolveStatus::Optimal) {
            return std::nullopt;
        }
        return intensities.dot(sol.p_gen);
    };

    const auto base = total_emissions(load);
    FiniteDifferenceResult result;
    result.step = h;
    result.values.resize(load.size());
    result.one_sided.assign(load.size(), 0);

    for (Eigen::Index i = 0; i < load.size(); ++i) {
        Eigen::VectorXd up = load;
        Eigen::VectorXd down = load;
        up[i] += h;
        down[i] -= h;
        const auto r_up = total_emissions(up);
        const auto r_down = total_emissions(down);
        if (r_up && r_down) {
            result.values[i] = (*r_up - *r_down) / (2.0 * h);
        } else if (r_up && base) {
            result.values[i] = (*r_up - *base) / h;
            result.one_sided[i] = 1;
        } else if (r_down && base) {
            result.values[i] = (*base - *r_down) / h;
            result.one_sided[i] = 1;
        } else {
            throw InfeasibleError("finite-difference oracle: both perturbations of load entry " +
                                  std::to_string(i) + " are infeasible");
        }
    }
    return result;
}

LmpVector lmp_exact(const EnrichedNetwork& net, const Eigen::VectorXd& load,
                    const CostModel& cost) {
    if (cost.kind != CostModel::Kind::Linear) {
        throw ContractError("lmp_exact is defined for linear cost models");
    }
    const DispatchSolution sol = solve_dcopf(net, load, cost);
    if (sol.status == SolveStatus::Infeasible) {
        throw InfeasibleError("lmp_exact: " + sol.diagnostic);
    }
    const CanonicalForm canon = build_canonical(net);
    const Eigen::MatrixXd jac = jacobian_from_active_set(canon, cost, sol);
    LmpVector lmp;
    lmp.values = jac.transpose() * cost.linear;
    lmp.at_boundary = sol.primal_degenerate || sol.dual_degenerate;
    return lmp;
}

Eigen::VectorXd dual_lmp(const EnrichedNetwork& net, const DispatchSolution& sol) {
    if (sol.status != SolveStatus::Optimal) {
        throw ContractError("dual_lmp requires an Optimal dispatch");
    }
    const CanonicalForm canon = build_canonical(net);
    const double balance = sol.duals[CanonicalForm::kBalanceMinus] -
                           sol.duals[CanonicalForm::kBalancePlus];
    Eigen::VectorXd congestion(canon.num_lines);
    for (int l = 0; l < canon.num_lines; ++l) {
        congestion[l] =
            sol.duals[canon.flow_lower_row(l)] - sol.duals[canon.flow_upper_row(l)];
    }
    return Eigen::VectorXd::Constant(canon.num_loads, balance) +
           canon.isf_load.transpose() * congestion;
}

} // namespace carbongrid
