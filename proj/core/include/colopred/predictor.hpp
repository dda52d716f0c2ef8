// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "colopred/dataset.hpp"
#include "colopred/nnls.hpp"
#include "colopred/stats.hpp"

namespace colopred {

// A hypothetical colocation scenario: per-workload run multiplicities in the
// style of a scenario-matrix column (the target's own run included), plus the
// index of the workload whose performance is questioned.
struct QuestionVector {
    Eigen::VectorXi multiplicities;
    int target = 0;
};

// The questioned workload has no combined measurement scenarios to fit
// against; only its single test is available.
class NoCombinedScenariosError : public std::runtime_error {
public:
    NoCombinedScenariosError(std::string message, int workload)
        : std::runtime_error(std::move(message)), workload(workload) {}

    int workload;
};

// Every fitted weight came out zero: the measured scenarios do not overlap
// the questioned one. Carries the question so callers can report which
// encodings are missing.
class ZeroSolutionError : public std::runtime_error {
public:
    ZeroSolutionError(std::string message, Eigen::VectorXi question)
        : std::runtime_error(std::move(message)), question(std::move(question)) {}

    Eigen::VectorXi question;
};

// Fit model for one workload: the scenario-matrix columns of its block
// without the single test, and the original scenario index of each column.
struct FitModel {
    Eigen::MatrixXd matrix;
    std::vector<int> scenarios;
};

// One fitted scenario's share of the prediction.
struct Contribution {
    int scenario = 0;
    double weight = 0.0;
    double penalty = 1.0;
};

struct Prediction {
    // Per parameter: base + sum_j penalty_j * weight_j * abs_slowdown_j.
    Eigen::VectorXd percentile_estimate;
    // Single-test percentile row of the target (or of the matched workload).
    Eigen::VectorXd base;
    NnlsSolution fit;
    std::vector<Contribution> contributions;
    std::optional<int> matched_workload;
    std::vector<std::string> flags;
    Eigen::VectorXi question;
    int target = 0;
    double percentile_q = 0.9;
    double gamma = 0.1;

    double residual_norm() const { return fit.residual_norm; }
};

struct SimilarityWeights {
    double mean = 1.0;
    double median = 1.0;
    double stddev = 1.0;
};

struct PredictorOptions {
    // Penalization strength; 0 disables penalization (every alpha becomes 1).
    double gamma = 0.1;
    double epsilon = 1e-9;
    NnlsOptions nnls;
};

// M1 for the target workload: its block columns without the single test.
// Throws NoCombinedScenariosError when the block holds only the single test.
FitModel build_fit_model(const MeasurementDataset& ds, int target);

// Safety penalization coefficient for one scenario, always >= 1:
// 1 + gamma * range / max(percentile, epsilon), both taken on the
// response-time parameter.
double penalization(const StatTensor& sstat, int scenario, double gamma, double epsilon = 1e-9);

// Scale-normalized distance between two stat slices over the mean, median
// and standard-deviation rows; 0 means identical, lower is more similar.
double similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                  const SimilarityWeights& weights = {}, double epsilon = 1e-9);

// Prediction for an already measured workload. A question equal to the
// target's single-test encoding returns the base percentile directly.
Prediction predict_q1(const MeasurementDataset& ds, const StatTensor& sstat,
                      const QuestionVector& question, const PredictorOptions& options = {});

struct NewWorkloadPrediction {
    Prediction prediction;
    MeasurementDataset dataset; // extended by the new workload's single test
    StatTensor sstat;           // extended to match
    int matched_workload = 0;
};

// Prediction for a new workload with only a single test available: matches
// the most similar measured workload, answers the question with the match
// substituted for the new workload, and extends the dataset and tensor.
// `question.multiplicities` has n + 1 entries with the new workload last.
NewWorkloadPrediction predict_q2(const MeasurementDataset& ds, const StatTensor& sstat,
                                 const Eigen::MatrixXd& new_single_test, std::string new_name,
                                 const QuestionVector& question,
                                 const PredictorOptions& options = {});

// JSON view of a prediction with names resolved against the dataset.
nlohmann::json prediction_to_json(const Prediction& prediction, const MeasurementDataset& ds);

} // namespace colopred
