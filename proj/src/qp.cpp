#include "qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/Eigenvalues>

#include "carbongrid/errors.hpp"

namespace carbongrid::detail {

namespace {

constexpr double kDirTol = 1e-11;

struct EqpStep {
    bool is_ray = false;
    Eigen::VectorXd direction;     // zero when the working set pins a vertex
    Eigen::VectorXd multipliers;   // valid when direction ~ 0
};

/// Null-space solve of the equality-constrained subproblem
///   min 1/2 p'Hp + g'p   s.t.  A_w p = 0.
/// Semidefinite reduced Hessians yield either a pseudo-inverse step or a
/// descent ray along a zero-curvature direction.
EqpStep solve_eqp(const Eigen::MatrixXd& a_w, const Eigen::VectorXd& hessian_diag,
                  const Eigen::VectorXd& gradient) {
    const int n = static_cast<int>(gradient.size());
    const int k = static_cast<int>(a_w.rows());
    EqpStep step;

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a_w.transpose());
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd z = q.rightCols(n - k);

    if (n - k == 0) {
        step.direction = Eigen::VectorXd::Zero(n);
        step.multipliers = qr.solve(-gradient);
        return step;
    }

    const Eigen::MatrixXd reduced_h =
        z.transpose() * hessian_diag.asDiagonal() * z;
    const Eigen::VectorXd g_z = z.transpose() * gradient;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced_h);
    const Eigen::VectorXd& values = eig.eigenvalues();
    const Eigen::MatrixXd& vectors = eig.eigenvectors();
    const double curvature_cut = 1e-10 * std::max(1.0, values.cwiseAbs().maxCoeff());
    const double slope_tol = 1e-9 * (1.0 + gradient.cwiseAbs().maxCoeff());

    // zero-curvature direction with usable slope -> unbounded subproblem ray
    for (int i = 0; i < values.size(); ++i) {
        if (values[i] <= curvature_cut) {
            const double slope = vectors.col(i).dot(g_z);
            if (std::abs(slope) > slope_tol) {
                step.is_ray = true;
                step.direction = -(slope > 0 ? 1.0 : -1.0) * (z * vectors.col(i));
                return step;
            }
        }
    }

    Eigen::VectorXd inv = Eigen::VectorXd::Zero(values.size());
    for (int i = 0; i < values.size(); ++i) {
        if (values[i] > curvature_cut) {
            inv[i] = 1.0 / values[i];
        }
    }
    const Eigen::VectorXd p_z = -(vectors * (inv.asDiagonal() * (vectors.transpose() * g_z)));
    step.direction = z * p_z;
    if (step.direction.cwiseAbs().maxCoeff() <= kDirTol * (1.0 + gradient.cwiseAbs().maxCoeff())) {
        step.direction.setZero();
        step.multipliers = qr.solve(-(gradient));
    }
    return step;
}

} // namespace

QpResult solve_qp_active_set(const CanonicalForm& canon, const Eigen::VectorXd& rhs,
                             const Eigen::VectorXd& hessian_diag, const Eigen::VectorXd& linear,
                             const Eigen::VectorXd& x0, const std::vector<int>& w0) {
    const int n = canon.num_gens;
    const int m = canon.rows();
    QpResult out;
    out.x = x0;

    // working set: balance+ always first, inequality rows after
    std::vector<int> working;
    working.push_back(CanonicalForm::kBalancePlus);
    for (int row : w0) {
        if (row != CanonicalForm::kBalancePlus && row != CanonicalForm::kBalanceMinus) {
            working.push_back(row);
        }
    }

    const int iteration_cap = 200 + 10 * m;
    Eigen::VectorXd multipliers;
    for (int iter = 0;; ++iter) {
        if (iter > iteration_cap) {
            throw NumericalError("active-set QP iteration limit reached");
        }
        out.iterations = iter;

        Eigen::MatrixXd a_w(static_cast<int>(working.size()), n);
        for (size_t i = 0; i < working.size(); ++i) {
            a_w.row(static_cast<int>(i)) = canon.a.row(working[i]);
        }
        const Eigen::VectorXd gradient = hessian_diag.cwiseProduct(out.x) + linear;
        const EqpStep step = solve_eqp(a_w, hessian_diag, gradient);

        if (!step.is_ray && step.direction.isZero(0.0)) {
            // at the subproblem minimizer; check inequality multipliers
            multipliers = step.multipliers;
            int drop = -1;
            const double mult_tol = 1e-9 * (1.0 + gradient.cwiseAbs().maxCoeff());
            for (size_t i = 1; i < working.size(); ++i) {
                if (multipliers[static_cast<int>(i)] < -mult_tol) {
                    drop = static_cast<int>(i);
                    break;  // smallest working-set position = deterministic
                }
            }
            if (drop < 0) {
                break;  // optimal
            }
            working.erase(working.begin() + drop);
            continue;
        }

        // ratio test toward the nearest blocking inequality row
        const Eigen::VectorXd& p = step.direction;
        double alpha = step.is_ray ? std::numeric_limits<double>::infinity() : 1.0;
        int blocking = -1;
        const Eigen::VectorXd ap_all = canon.a * p;
        const Eigen::VectorXd ax_all = canon.a * out.x;
        for (int row = 2; row < m; ++row) {
            if (std::find(working.begin(), working.end(), row) != working.end()) {
                continue;
            }
            const double rate = ap_all[row];
            if (rate > 1e-11) {
                const double room = rhs[row] - ax_all[row];
                const double t = std::max(room, 0.0) / rate;
                if (t < alpha - 1e-12) {
                    alpha = t;
                    blocking = row;
                } else if (t <= alpha + 1e-12 && blocking >= 0 && row < blocking) {
                    blocking = row;  // deterministic tie on the smaller row index
                }
            }
        }
        if (!std::isfinite(alpha)) {
            out.status = LpStatus::Unbounded;
            return out;
        }
        out.x += alpha * p;
        if (blocking >= 0 && (step.is_ray || alpha < 1.0 - 1e-12)) {
            working.push_back(blocking);
        }
    }

    out.balance_dual = multipliers.size() > 0 ? multipliers[0] : 0.0;
    out.row_multipliers = Eigen::VectorXd::Zero(m);
    for (size_t i = 1; i < working.size(); ++i) {
        out.row_multipliers[working[i]] = std::max(multipliers[static_cast<int>(i)], 0.0);
    }
    if (out.balance_dual >= 0.0) {
        out.row_multipliers[CanonicalForm::kBalancePlus] = out.balance_dual;
    } else {
        out.row_multipliers[CanonicalForm::kBalanceMinus] = -out.balance_dual;
    }
    out.working_set = working;
    std::sort(out.working_set.begin(), out.working_set.end());
    return out;
}

} // namespace carbongrid::detail
