#include "carbongrid/isf.hpp"

#include <Eigen/LU>

#include "carbongrid/errors.hpp"

namespace carbongrid {

IsfMatrix build_isf_matrix(const Network& net) {
    net.validate();
    const int n = net.num_buses();
    const int l = net.num_branches();
    const int slack = net.slack_bus;

    Eigen::MatrixXd b_bus = Eigen::MatrixXd::Zero(n, n);
    for (const Branch& br : net.branches) {
        const double b = 1.0 / br.reactance;
        b_bus(br.from_bus, br.from_bus) += b;
        b_bus(br.to_bus, br.to_bus) += b;
        b_bus(br.from_bus, br.to_bus) -= b;
        b_bus(br.to_bus, br.from_bus) -= b;
    }

    // Reduced susceptance matrix with the slack row/column removed.
    Eigen::MatrixXd b_red(n - 1, n - 1);
    auto reduced = [slack](int i) { return i < slack ? i : i - 1; };
    for (int i = 0; i < n; ++i) {
        if (i == slack) continue;
        for (int j = 0; j < n; ++j) {
            if (j == slack) continue;
            b_red(reduced(i), reduced(j)) = b_bus(i, j);
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(b_red);
    if (n > 1 && lu.rank() < n - 1) {
        throw NumericalError("reduced susceptance matrix is singular");
    }

    // Branch incidence scaled by susceptance, restricted to non-slack buses.
    Eigen::MatrixXd bf_red = Eigen::MatrixXd::Zero(l, n - 1);
    for (int k = 0; k < l; ++k) {
        const Branch& br = net.branches[k];
        const double b = 1.0 / br.reactance;
        if (br.from_bus != slack) bf_red(k, reduced(br.from_bus)) = b;
        if (br.to_bus != slack) bf_red(k, reduced(br.to_bus)) = -b;
    }

    IsfMatrix isf;
    isf.slack_bus = slack;
    isf.entries = Eigen::MatrixXd::Zero(l, n);
    if (n > 1) {
        // S_red = Bf_red * B_red^{-1}; one factorization, L back-solves.
        const Eigen::MatrixXd s_red = lu.solve(bf_red.transpose()).transpose();
        for (int j = 0; j < n; ++j) {
            if (j == slack) continue;
            isf.entries.col(j) = s_red.col(reduced(j));
        }
    }
    return isf;
}

} // namespace carbongrid
