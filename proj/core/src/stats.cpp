// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "colopred/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "colopred/errors.hpp"

namespace colopred {

double percentile(std::span<const double> sample, double q) {
    if (sample.empty()) {
        throw ValidationError("percentile of an empty sample is undefined");
    }
    if (!(q > 0.0 && q < 1.0)) {
        throw ValidationError("percentile level must lie in (0, 1)");
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double k = static_cast<double>(sorted.size());
    // Nudge below the product so that e.g. 0.9 * 10 does not round to just
    // above 9.0 and shift the rank.
    auto rank = static_cast<std::size_t>(std::ceil(q * k - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

Eigen::MatrixXd scenario_stats(const Eigen::MatrixXd& samples, double q,
                               std::vector<DivisionGuard>* guards, int scenario) {
    const auto k = samples.rows();
    const auto l = samples.cols();
    if (k < 2) {
        throw ValidationError("scenario statistics need k >= 2 repeats (sample standard "
                              "deviation undefined)");
    }

    Eigen::MatrixXd stats(7, l);
    std::vector<double> column(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < l; ++j) {
        for (Eigen::Index i = 0; i < k; ++i) column[static_cast<std::size_t>(i)] = samples(i, j);
        std::sort(column.begin(), column.end());

        const double mean = samples.col(j).mean();
        const double median = (k % 2 == 1)
                                  ? column[static_cast<std::size_t>(k / 2)]
                                  : 0.5 * (column[static_cast<std::size_t>(k / 2 - 1)] +
                                           column[static_cast<std::size_t>(k / 2)]);
        const double stddev =
            std::sqrt((samples.col(j).array() - mean).square().sum() / static_cast<double>(k - 1));

        stats(stat_row::kMean, j) = mean;
        stats(stat_row::kMedian, j) = median;
        stats(stat_row::kPercentile, j) = percentile(column, q);
        stats(stat_row::kStdDev, j) = stddev;
        if (mean != 0.0) {
            stats(stat_row::kRelDev, j) = stddev / mean;
        } else {
            stats(stat_row::kRelDev, j) = 0.0;
            if (guards) guards->push_back({scenario, static_cast<int>(j), stat_row::kRelDev});
        }
        stats(stat_row::kStdErr, j) = stddev / std::sqrt(static_cast<double>(k));
        stats(stat_row::kRange, j) = column.back() - column.front();
    }
    return stats;
}

StatTensor build_sstat(const MeasurementDataset& ds, double q) {
    StatTensor out;
    out.percentile_q = q;
    out.slices.reserve(static_cast<std::size_t>(ds.scenario_count()));

    for (int r = 0; r < ds.scenario_count(); ++r) {
        Eigen::MatrixXd slice(stat_row::kCount, ds.param_count());
        slice.topRows(7) = scenario_stats(ds.samples(r), q, &out.guards, r);
        slice.row(stat_row::kAbsSlowdown).setZero();
        slice.row(stat_row::kRelSlowdown).setZero();
        out.slices.push_back(std::move(slice));
    }

    // Slowdown rows: percentile shift of each scenario against the single
    // test of its block. Exactly zero on the single tests (r == s).
    for (int w = 0; w < ds.workload_count(); ++w) {
        const ScenarioBlock blk = ds.block(w);
        const Eigen::MatrixXd& single = out.slices[static_cast<std::size_t>(blk.single_test)];
        for (int r = blk.begin + 1; r < blk.end; ++r) {
            Eigen::MatrixXd& slice = out.slices[static_cast<std::size_t>(r)];
            for (int j = 0; j < ds.param_count(); ++j) {
                const double base = single(stat_row::kPercentile, j);
                const double shift = slice(stat_row::kPercentile, j) - base;
                slice(stat_row::kAbsSlowdown, j) = shift;
                if (base != 0.0) {
                    slice(stat_row::kRelSlowdown, j) = shift / base;
                } else {
                    slice(stat_row::kRelSlowdown, j) = 0.0;
                    out.guards.push_back({r, j, stat_row::kRelSlowdown});
                }
            }
        }
    }
    return out;
}

} // namespace colopred
