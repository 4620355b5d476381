#include "carbongrid/simplex.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "carbongrid/errors.hpp"

namespace carbongrid {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;

enum VarState : char { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

/// Revised simplex working state over the structural + artificial columns.
struct Tableau {
    int m = 0;  // rows
    int n = 0;  // structural variables
    const SimplexProblem* problem = nullptr;

    Eigen::VectorXd x;        // n + m values
    Eigen::VectorXd lower;    // n + m
    Eigen::VectorXd upper;    // n + m
    Eigen::VectorXd cost;     // n + m, swapped between phases
    std::vector<char> state;  // n + m
    std::vector<int> basis;   // m
    std::vector<double> art_sign;
    Eigen::MatrixXd binv;
    int iterations = 0;
    int updates_since_refactor = 0;

    Eigen::VectorXd column(int j) const {
        if (j < n) {
            return problem->a.col(j);
        }
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
        e[j - n] = art_sign[j - n];
        return e;
    }

    void refactor() {
        Eigen::MatrixXd b_mat(m, m);
        for (int i = 0; i < m; ++i) {
            b_mat.col(i) = column(basis[i]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(b_mat);
        if (!lu.isInvertible()) {
            throw NumericalError("simplex basis matrix is singular");
        }
        binv = lu.inverse();
        updates_since_refactor = 0;
        refresh_basic_values();
    }

    void refresh_basic_values() {
        Eigen::VectorXd rhs = problem->b;
        for (int j = 0; j < n + m; ++j) {
            if (state[j] != kBasic && x[j] != 0.0) {
                rhs -= column(j) * x[j];
            }
        }
        const Eigen::VectorXd xb = binv * rhs;
        for (int i = 0; i < m; ++i) {
            x[basis[i]] = xb[i];
        }
    }

    double dual_tolerance() const {
        double scale = 0.0;
        for (int j = 0; j < n + m; ++j) {
            scale = std::max(scale, std::abs(cost[j]));
        }
        return 1e-9 * (1.0 + scale);
    }

    /// Returns true when the current phase reached its optimum; throws on
    /// iteration blowup. Bland's rule in both the entering and leaving step.
    void run_phase(int iteration_cap) {
        const double dual_tol = dual_tolerance();
        while (true) {
            if (++iterations > iteration_cap) {
                throw NumericalError("simplex iteration limit reached after " +
                                     std::to_string(iterations) + " pivots");
            }
            if (updates_since_refactor >= 64) {
                refactor();
            }

            Eigen::VectorXd cb(m);
            for (int i = 0; i < m; ++i) {
                cb[i] = cost[basis[i]];
            }
            const Eigen::VectorXd y = binv.transpose() * cb;

            // entering: smallest-index improving nonbasic variable
            int entering = -1;
            double entering_rc = 0.0;
            for (int j = 0; j < n + m; ++j) {
                if (state[j] == kBasic || lower[j] >= upper[j]) {
                    continue;
                }
                const double rc = cost[j] - y.dot(column(j));
                if ((state[j] == kAtLower && rc < -dual_tol) ||
                    (state[j] == kAtUpper && rc > dual_tol)) {
                    entering = j;
                    entering_rc = rc;
                    break;
                }
            }
            (void)entering_rc;
            if (entering < 0) {
                return;  // phase optimal
            }

            const double dir = state[entering] == kAtLower ? 1.0 : -1.0;
            const Eigen::VectorXd w = binv * column(entering);

            // ratio test: x_basis[i] moves at rate -dir*w[i] per unit step
            double t_min = std::numeric_limits<double>::infinity();
            const double range = upper[entering] - lower[entering];
            if (std::isfinite(range)) {
                t_min = range;  // bound flip
            }
            struct Candidate {
                double t;
                int var;
                int row;  // -1 = bound flip
                char blocked_at;
            };
            std::vector<Candidate> candidates;
            for (int i = 0; i < m; ++i) {
                const double delta = -dir * w[i];
                if (delta < -kPivotTol) {
                    const double t = (x[basis[i]] - lower[basis[i]]) / (-delta);
                    candidates.push_back({t, basis[i], i, kAtLower});
                } else if (delta > kPivotTol && std::isfinite(upper[basis[i]])) {
                    const double t = (upper[basis[i]] - x[basis[i]]) / delta;
                    candidates.push_back({t, basis[i], i, kAtUpper});
                }
            }
            for (const Candidate& c : candidates) {
                t_min = std::min(t_min, c.t);
            }
            if (!std::isfinite(t_min)) {
                status = LpStatus::Unbounded;
                return;
            }
            t_min = std::max(t_min, 0.0);

            // leaving: smallest variable index among blockers at t_min
            const double tie_tol = 1e-9 * (1.0 + std::abs(t_min));
            int leave_row = -1;
            int leave_var = std::numeric_limits<int>::max();
            char leave_state = kAtLower;
            for (const Candidate& c : candidates) {
                if (c.t <= t_min + tie_tol && c.var < leave_var) {
                    leave_var = c.var;
                    leave_row = c.row;
                    leave_state = c.blocked_at;
                }
            }
            const bool flip = std::isfinite(range) && range <= t_min + tie_tol &&
                              entering < leave_var;

            if (!flip && std::abs(w[leave_row]) < kPivotTol) {
                refactor();
                continue;  // retry the iteration with a fresh inverse
            }

            // move the entering variable and adjust the basic values
            const double step = flip ? range : t_min;
            x[entering] += dir * step;
            for (int i = 0; i < m; ++i) {
                x[basis[i]] -= dir * w[i] * step;
            }

            if (flip) {
                state[entering] = state[entering] == kAtLower ? kAtUpper : kAtLower;
                x[entering] = state[entering] == kAtUpper ? upper[entering] : lower[entering];
                continue;
            }

            // basis exchange
            const double pivot = w[leave_row];
            const int leaving = basis[leave_row];
            x[leaving] = leave_state == kAtLower ? lower[leaving] : upper[leaving];
            state[leaving] = leave_state;
            basis[leave_row] = entering;
            state[entering] = kBasic;

            binv.row(leave_row) /= pivot;
            for (int i = 0; i < m; ++i) {
                if (i != leave_row && w[i] != 0.0) {
                    binv.row(i) -= w[i] * binv.row(leave_row);
                }
            }
            ++updates_since_refactor;
        }
    }

    LpStatus status = LpStatus::Optimal;
};

} // namespace

SimplexSolution solve_simplex(const SimplexProblem& problem) {
    const int m = static_cast<int>(problem.a.rows());
    const int n = static_cast<int>(problem.a.cols());
    if (problem.b.size() != m || problem.cost.size() != n || problem.lower.size() != n ||
        problem.upper.size() != n) {
        throw ContractError("simplex problem dimensions are inconsistent");
    }
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(problem.lower[j])) {
            throw ContractError("simplex requires finite lower bounds");
        }
        if (problem.lower[j] > problem.upper[j]) {
            throw ContractError("simplex variable has lower > upper");
        }
    }

    if (m == 0) {
        // pure box problem: each variable sits at its cost-preferred bound
        SimplexSolution out;
        out.x = problem.lower;
        out.y.resize(0);
        out.reduced_costs = problem.cost;
        out.at_upper.assign(n, 0);
        for (int j = 0; j < n; ++j) {
            if (problem.cost[j] < 0.0) {
                if (!std::isfinite(problem.upper[j])) {
                    out.status = LpStatus::Unbounded;
                    return out;
                }
                out.x[j] = problem.upper[j];
                out.at_upper[j] = 1;
            }
        }
        out.status = LpStatus::Optimal;
        out.objective = problem.cost.dot(out.x);
        return out;
    }

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.problem = &problem;
    tab.x = Eigen::VectorXd::Zero(n + m);
    tab.lower = Eigen::VectorXd::Zero(n + m);
    tab.upper = Eigen::VectorXd::Zero(n + m);
    tab.cost = Eigen::VectorXd::Zero(n + m);
    tab.state.assign(n + m, kAtLower);
    tab.art_sign.assign(m, 1.0);

    tab.lower.head(n) = problem.lower;
    tab.upper.head(n) = problem.upper;
    for (int j = 0; j < n; ++j) {
        tab.x[j] = problem.lower[j];
    }

    // phase-1 artificial start
    Eigen::VectorXd residual = problem.b - problem.a * tab.x.head(n);
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        tab.art_sign[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
        tab.x[n + i] = std::abs(residual[i]);
        tab.lower[n + i] = 0.0;
        tab.upper[n + i] = std::numeric_limits<double>::infinity();
        tab.cost[n + i] = 1.0;
        tab.basis[i] = n + i;
        tab.state[n + i] = kBasic;
    }
    tab.binv = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        tab.binv(i, i) = tab.art_sign[i];
    }

    const int iteration_cap = 2000 + 60 * (m + n);
    tab.run_phase(iteration_cap);

    SimplexSolution out;
    out.iterations = tab.iterations;
    if (tab.status == LpStatus::Unbounded) {
        // phase 1 is bounded below by zero; an unbounded ray here means a bug
        throw NumericalError("phase-1 subproblem reported unbounded");
    }

    double infeasibility = 0.0;
    int worst_row = -1;
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] >= n && tab.x[tab.basis[i]] > infeasibility) {
            infeasibility = tab.x[tab.basis[i]];
            worst_row = tab.basis[i] - n;
        }
    }
    if (infeasibility > kFeasTol * (1.0 + problem.b.cwiseAbs().maxCoeff())) {
        out.status = LpStatus::Infeasible;
        out.infeasible_row = worst_row;
        out.x = tab.x.head(n);
        out.objective = infeasibility;
        return out;
    }

    // drive zero-valued artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) {
            continue;
        }
        int replacement = -1;
        for (int j = 0; j < n; ++j) {
            if (tab.state[j] == kBasic || tab.lower[j] >= tab.upper[j]) {
                continue;
            }
            if (std::abs(tab.binv.row(i).dot(tab.column(j))) > 1e-8) {
                replacement = j;
                break;
            }
        }
        if (replacement < 0) {
            // linearly dependent row; pin its artificial at zero
            tab.lower[tab.basis[i]] = tab.upper[tab.basis[i]] = 0.0;
            continue;
        }
        const Eigen::VectorXd w = tab.binv * tab.column(replacement);
        const int leaving = tab.basis[i];
        tab.state[leaving] = kAtLower;
        tab.x[leaving] = 0.0;
        tab.basis[i] = replacement;
        tab.state[replacement] = kBasic;
        tab.binv.row(i) /= w[i];
        for (int r = 0; r < m; ++r) {
            if (r != i && w[r] != 0.0) {
                tab.binv.row(r) -= w[r] * tab.binv.row(i);
            }
        }
        tab.refresh_basic_values();
    }

    // phase 2: real costs; artificials pinned at zero
    tab.cost.head(n) = problem.cost;
    for (int i = 0; i < m; ++i) {
        tab.cost[n + i] = 0.0;
        tab.lower[n + i] = 0.0;
        tab.upper[n + i] = 0.0;
        if (tab.state[n + i] != kBasic) {
            tab.x[n + i] = 0.0;
        }
    }
    tab.refactor();
    tab.run_phase(iteration_cap);
    if (tab.status == LpStatus::Unbounded) {
        out.status = LpStatus::Unbounded;
        out.x = tab.x.head(n);
        return out;
    }

    tab.refactor();  // tighten the final values

    Eigen::VectorXd cb(m);
    for (int i = 0; i < m; ++i) {
        cb[i] = tab.cost[tab.basis[i]];
    }
    out.status = LpStatus::Optimal;
    out.x = tab.x.head(n);
    out.y = tab.binv.transpose() * cb;
    out.reduced_costs = problem.cost - problem.a.transpose() * out.y;
    out.basis = tab.basis;
    out.at_upper.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        if (tab.state[j] == kAtUpper) {
            out.at_upper[j] = 1;
        }
        if (tab.state[j] == kBasic) {
            out.reduced_costs[j] = 0.0;
        }
    }
    out.objective = problem.cost.dot(out.x);
    out.iterations = tab.iterations;
    return out;
}

} // namespace carbongrid
