// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace colopred {

// Scenario indices belonging to one workload: the half-open range
// [begin, end) plus the index of the workload's single test, which is always
// the first scenario of the block. All indices are zero-based.
struct ScenarioBlock {
    int begin = 0;
    int end = 0;
    int single_test = 0;

    int size() const { return end - begin; }
};

// Measurement data for n workloads across m scenarios.
//
// The sample tensor is held as one k x l matrix per scenario (k measurement
// repeats of l parameters; parameter column 0 is response time in
// milliseconds by convention). The n x m scenario matrix encodes each
// scenario as an integer column of per-workload run multiplicities, and the
// scenarios are grouped into contiguous per-workload blocks whose first
// entry is the workload's single test (a unit column).
//
// Values are immutable after construction; add_scenario and add_workload
// return extended copies. Safe to share across concurrent readers.
class MeasurementDataset {
public:
    // Validates every structural invariant and throws ValidationError naming
    // the violated one. `owners` assigns each scenario to its workload and
    // must be grouped contiguously in workload order.
    MeasurementDataset(std::vector<std::string> workload_names,
                       std::vector<std::string> param_names,
                       std::vector<std::string> param_units,
                       std::vector<int> owners,
                       Eigen::MatrixXi scenario_matrix,
                       std::vector<Eigen::MatrixXd> samples);

    int workload_count() const { return static_cast<int>(workload_names_.size()); }
    int repeat_count() const { return repeats_; }
    int param_count() const { return static_cast<int>(param_names_.size()); }
    int scenario_count() const { return static_cast<int>(samples_.size()); }

    const std::vector<std::string>& workload_names() const { return workload_names_; }
    const std::vector<std::string>& param_names() const { return param_names_; }
    const std::vector<std::string>& param_units() const { return param_units_; }
    const Eigen::MatrixXi& scenario_matrix() const { return scenario_matrix_; }
    const std::vector<int>& owners() const { return owners_; }

    const Eigen::MatrixXd& samples(int scenario) const { return samples_.at(scenario); }
    int owner(int scenario) const { return owners_.at(scenario); }

    // Zero-based block starts, length n + 1; block_starts()[n] == m.
    const std::vector<int>& block_starts() const { return block_starts_; }

    // Scenario range and single-test index for one workload.
    ScenarioBlock block(int workload) const;

    // Index of a workload by name, or -1 when absent.
    int workload_index(std::string_view name) const;

    // Returns a copy with `scenario_samples` (k x l) appended at the end of
    // the workload's block under the given encoding. The encoding must run
    // the workload itself at least once.
    MeasurementDataset add_scenario(int workload, const Eigen::VectorXi& encoding,
                                    const Eigen::MatrixXd& scenario_samples) const;

    // Returns a copy extended by a new workload whose block holds exactly the
    // given single test (k x l).
    MeasurementDataset add_workload(std::string name, const Eigen::MatrixXd& single_test) const;

private:
    std::vector<std::string> workload_names_;
    std::vector<std::string> param_names_;
    std::vector<std::string> param_units_;
    std::vector<int> owners_;       // length m
    std::vector<int> block_starts_; // length n + 1
    Eigen::MatrixXi scenario_matrix_;
    std::vector<Eigen::MatrixXd> samples_;
    int repeats_ = 0;

    void validate() const;
};

// Reads a dataset directory (meta.json, scenarios.csv, samples/<id>.csv).
// Throws ParseError for malformed files and ValidationError for invariant
// violations. Deterministic: the same directory always yields the same value.
MeasurementDataset load_dataset(const std::filesystem::path& dir);

// Writes the dataset directory format. Reals are written as shortest
// round-trip decimal text, so load(save(ds)) reproduces every field exactly.
void save_dataset(const MeasurementDataset& ds, const std::filesystem::path& dir);

} // namespace colopred
