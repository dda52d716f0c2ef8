// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "colopred/dataset.hpp"

namespace colopred {

// Row indices of the per-scenario statistics matrices. Rows 0-6 characterize
// the sample distribution; rows 7-8 are the slowdown of the percentile row
// against the owning workload's single test.
namespace stat_row {
inline constexpr int kMean = 0;
inline constexpr int kMedian = 1;
inline constexpr int kPercentile = 2;
inline constexpr int kStdDev = 3;
inline constexpr int kRelDev = 4;
inline constexpr int kStdErr = 5;
inline constexpr int kRange = 6;
inline constexpr int kAbsSlowdown = 7;
inline constexpr int kRelSlowdown = 8;
inline constexpr int kCount = 9;
} // namespace stat_row

// Marks a relative quantity (rel. deviation or rel. slowdown) that was set to
// zero because its denominator was zero. All indices zero-based.
struct DivisionGuard {
    int scenario = 0;
    int param = 0;
    int row = 0;
};

// Per-scenario statistical characterization of a dataset: one 9 x l matrix
// per scenario, plus the percentile level used for the percentile row.
struct StatTensor {
    double percentile_q = 0.9;
    std::vector<Eigen::MatrixXd> slices;
    std::vector<DivisionGuard> guards;

    int scenario_count() const { return static_cast<int>(slices.size()); }
    const Eigen::MatrixXd& slice(int scenario) const { return slices.at(scenario); }
};

// Nearest-rank percentile: the ceil(q * k)-th smallest element (1-based).
// Requires a nonempty sample and q in (0, 1).
double percentile(std::span<const double> sample, double q);

// Distribution rows (0-6) for one k x l sample matrix, k >= 2. A zero mean
// makes the relative deviation 0; when `guards` is given such cells are
// recorded with the provided scenario index.
Eigen::MatrixXd scenario_stats(const Eigen::MatrixXd& samples, double q = 0.9,
                               std::vector<DivisionGuard>* guards = nullptr, int scenario = 0);

// Full 9-row characterization of every scenario. Slowdown rows compare each
// scenario against the single test of its owning workload and are exactly
// zero on the single tests themselves.
StatTensor build_sstat(const MeasurementDataset& ds, double q = 0.9);

} // namespace colopred
