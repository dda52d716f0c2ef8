// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

namespace colopred {

struct NnlsOptions {
    // KKT tolerance, scaled by max(1, ||A^T b||_inf).
    double kkt_tol = 1e-10;
    // Outer iteration cap as a multiple of the column count.
    int max_iterations_per_column = 10;
    // Optional diagonal row weights (least squares in the weighted norm);
    // empty means all ones.
    Eigen::VectorXd row_weights;
};

// Solution of min ||b - A x|| subject to x >= 0. Weights are exactly
// nonnegative and the residual never exceeds ||b|| (x = 0 is feasible).
// With row weights, the residual is reported in the weighted norm.
struct NnlsSolution {
    Eigen::VectorXd weights;
    double residual_norm = 0.0;
    std::vector<int> active_set; // indices with weights > 0
    int iterations = 0;
    bool converged = true;
};

// The active-set iteration hit its cap; carries the best iterate found.
class NnlsConvergenceError : public std::runtime_error {
public:
    NnlsConvergenceError(std::string message, NnlsSolution best)
        : std::runtime_error(std::move(message)), best_iterate(std::move(best)) {}

    NnlsSolution best_iterate;
};

// Lawson-Hanson style active-set solve of the nonnegative least-squares
// problem. Deterministic: ties for the entering variable go to the lowest
// column index. Throws ValidationError on dimension mismatch and
// NnlsConvergenceError when the iteration cap is exceeded.
NnlsSolution solve_nnls(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                        const NnlsOptions& options = {});

} // namespace colopred
