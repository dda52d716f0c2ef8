// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "colopred/nnls.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "colopred/errors.hpp"

namespace colopred {

namespace {

// Least-squares solve restricted to the passive columns.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(passive.size()));
    for (std::size_t c = 0; c < passive.size(); ++c) {
        sub.col(static_cast<Eigen::Index>(c)) = a.col(passive[c]);
    }
    return sub.colPivHouseholderQr().solve(b);
}

NnlsSolution make_solution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::VectorXd x,
                           int iterations, bool converged) {
    // Weights are nonnegative by contract; stray negatives from the step
    // arithmetic are clamped to exact zero.
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x(j) < 0.0) x(j) = 0.0;
    }
    NnlsSolution out;
    out.residual_norm = (b - a * x).norm();
    out.weights = std::move(x);
    for (Eigen::Index j = 0; j < out.weights.size(); ++j) {
        if (out.weights(j) > 0.0) out.active_set.push_back(static_cast<int>(j));
    }
    out.iterations = iterations;
    out.converged = converged;
    return out;
}

} // namespace

NnlsSolution solve_nnls(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                        const NnlsOptions& options) {
    if (matrix.cols() < 1) {
        throw ValidationError("nnls needs at least one column");
    }
    if (matrix.rows() != rhs.size()) {
        throw ValidationError("nnls dimension mismatch: matrix has " +
                              std::to_string(matrix.rows()) + " rows, rhs has " +
                              std::to_string(rhs.size()));
    }
    if (options.row_weights.size() != 0 && options.row_weights.size() != rhs.size()) {
        throw ValidationError("nnls row weight vector length does not match the rhs");
    }

    Eigen::MatrixXd a = matrix;
    Eigen::VectorXd b = rhs;
    if (options.row_weights.size() != 0) {
        const Eigen::VectorXd s = options.row_weights.cwiseMax(0.0).cwiseSqrt();
        a = s.asDiagonal() * a;
        b = s.cwiseProduct(b);
    }

    const int p = static_cast<int>(a.cols());
    const double tol = options.kkt_tol * std::max(1.0, (a.transpose() * b).cwiseAbs().maxCoeff());
    const int max_outer = std::max(1, options.max_iterations_per_column * p);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
    std::vector<bool> in_passive(static_cast<std::size_t>(p), false);
    std::vector<int> passive;

    int outer = 0;
    while (true) {
        // Dual vector; the most positive component enters the passive set
        // (lowest index on ties).
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        int enter = -1;
        double best = tol;
        for (int j = 0; j < p; ++j) {
            if (!in_passive[static_cast<std::size_t>(j)] && w(j) > best) {
                best = w(j);
                enter = j;
            }
        }
        if (enter < 0) {
            return make_solution(a, b, std::move(x), outer, true);
        }
        if (++outer > max_outer) {
            throw NnlsConvergenceError(
                "nnls did not converge within " + std::to_string(max_outer) + " iterations",
                make_solution(a, b, std::move(x), outer, false));
        }

        in_passive[static_cast<std::size_t>(enter)] = true;
        passive.insert(std::upper_bound(passive.begin(), passive.end(), enter), enter);

        // Inner loop: step toward the unconstrained optimum on the passive
        // set, dropping variables that the step drives to the bound.
        while (true) {
            const Eigen::VectorXd z = passive_solve(a, b, passive);
            bool all_positive = true;
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < passive.size(); ++c) {
                const double zc = z(static_cast<Eigen::Index>(c));
                if (zc <= 0.0) {
                    all_positive = false;
                    const double xc = x(passive[c]);
                    const double t = xc / (xc - zc);
                    alpha = std::min(alpha, t);
                }
            }
            if (all_positive) {
                x.setZero();
                for (std::size_t c = 0; c < passive.size(); ++c) {
                    x(passive[c]) = z(static_cast<Eigen::Index>(c));
                }
                break;
            }

            for (std::size_t c = 0; c < passive.size(); ++c) {
                const int j = passive[c];
                x(j) += alpha * (z(static_cast<Eigen::Index>(c)) - x(j));
            }
            std::vector<int> still_passive;
            for (int j : passive) {
                if (x(j) > 0.0 && std::abs(x(j)) > 1e-15) {
                    still_passive.push_back(j);
                } else {
                    x(j) = 0.0;
                    in_passive[static_cast<std::size_t>(j)] = false;
                }
            }
            passive = std::move(still_passive);
            if (passive.empty()) break;
        }
    }
}

} // namespace colopred
