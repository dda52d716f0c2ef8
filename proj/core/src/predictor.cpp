// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "colopred/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "colopred/errors.hpp"

namespace colopred {

namespace {

void validate_question(const QuestionVector& question, int n) {
    if (question.target < 0 || question.target >= n) {
        throw ValidationError("question target index out of range");
    }
    if (question.multiplicities.size() != n) {
        throw ValidationError("question must have one multiplicity per workload");
    }
    if (question.multiplicities.minCoeff() < 0) {
        throw ValidationError("question multiplicities must be >= 0");
    }
    if (question.multiplicities(question.target) < 1) {
        throw ValidationError("question must run the target workload at least once");
    }
}

bool is_single_test_encoding(const QuestionVector& question) {
    return question.multiplicities(question.target) == 1 && question.multiplicities.sum() == 1;
}

} // namespace

FitModel build_fit_model(const MeasurementDataset& ds, int target) {
    const ScenarioBlock blk = ds.block(target);
    if (blk.size() < 2) {
        throw NoCombinedScenariosError("workload '" + ds.workload_names()[target] +
                                           "' has no combined measurements to fit against",
                                       target);
    }
    FitModel model;
    model.matrix.resize(ds.workload_count(), blk.size() - 1);
    for (int r = blk.begin + 1; r < blk.end; ++r) {
        model.matrix.col(r - blk.begin - 1) = ds.scenario_matrix().col(r).cast<double>();
        model.scenarios.push_back(r);
    }
    return model;
}

double penalization(const StatTensor& sstat, int scenario, double gamma, double epsilon) {
    if (gamma < 0.0) {
        throw ValidationError("penalization gamma must be >= 0");
    }
    const Eigen::MatrixXd& slice = sstat.slice(scenario);
    const double range = slice(stat_row::kRange, 0);
    const double perc = slice(stat_row::kPercentile, 0);
    return 1.0 + gamma * range / std::max(perc, epsilon);
}

double similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                  const SimilarityWeights& weights, double epsilon) {
    if (a.cols() != b.cols()) {
        throw ValidationError("similarity requires stat slices over the same parameters");
    }
    if (a.rows() <= stat_row::kStdDev || b.rows() <= stat_row::kStdDev) {
        throw ValidationError("similarity requires the mean, median and deviation rows");
    }
    const std::pair<int, double> rows[] = {{stat_row::kMean, weights.mean},
                                           {stat_row::kMedian, weights.median},
                                           {stat_row::kStdDev, weights.stddev}};
    double f = 0.0;
    for (const auto& [row, w] : rows) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double av = a(row, j);
            const double bv = b(row, j);
            f += w * std::abs(av - bv) / std::max({std::abs(av), std::abs(bv), epsilon});
        }
    }
    return f;
}

Prediction predict_q1(const MeasurementDataset& ds, const StatTensor& sstat,
                      const QuestionVector& question, const PredictorOptions& options) {
    validate_question(question, ds.workload_count());
    if (sstat.scenario_count() != ds.scenario_count()) {
        throw ValidationError("stat tensor does not match the dataset");
    }

    Prediction out;
    out.question = question.multiplicities;
    out.target = question.target;
    out.percentile_q = sstat.percentile_q;
    out.gamma = options.gamma;

    const ScenarioBlock blk = ds.block(question.target);
    out.base = sstat.slice(blk.single_test).row(stat_row::kPercentile).transpose();

    if (is_single_test_encoding(question)) {
        out.percentile_estimate = out.base;
        return out;
    }

    const FitModel model = build_fit_model(ds, question.target);
    out.fit = solve_nnls(model.matrix, question.multiplicities.cast<double>(), options.nnls);

    if (out.fit.active_set.empty()) {
        throw ZeroSolutionError(
            "no measured scenario of workload '" + ds.workload_names()[question.target] +
                "' matches the question; add a combined measurement covering it, or treat the "
                "target as a new workload with its single test removed",
            question.multiplicities);
    }

    out.percentile_estimate = out.base;
    for (std::size_t c = 0; c < model.scenarios.size(); ++c) {
        const int scenario = model.scenarios[c];
        const double weight = out.fit.weights(static_cast<Eigen::Index>(c));
        const double alpha = penalization(sstat, scenario, options.gamma, options.epsilon);
        out.contributions.push_back({scenario, weight, alpha});
        if (weight > 0.0) {
            out.percentile_estimate +=
                alpha * weight *
                sstat.slice(scenario).row(stat_row::kAbsSlowdown).transpose();
        }
    }
    return out;
}

NewWorkloadPrediction predict_q2(const MeasurementDataset& ds, const StatTensor& sstat,
                                 const Eigen::MatrixXd& new_single_test, std::string new_name,
                                 const QuestionVector& question,
                                 const PredictorOptions& options) {
    const int n = ds.workload_count();
    if (new_single_test.rows() != ds.repeat_count() ||
        new_single_test.cols() != ds.param_count()) {
        throw ValidationError("new single test must be a k x l matrix with the dataset's k and l");
    }
    if (question.multiplicities.size() != n + 1 || question.target != n) {
        throw ValidationError("a new-workload question has n + 1 multiplicities with the new "
                              "workload last");
    }
    if (question.multiplicities(n) < 1) {
        throw ValidationError("question must run the new workload at least once");
    }

    Eigen::MatrixXd new_stats(stat_row::kCount, ds.param_count());
    new_stats.topRows(7) = scenario_stats(new_single_test, sstat.percentile_q);
    new_stats.row(stat_row::kAbsSlowdown).setZero();
    new_stats.row(stat_row::kRelSlowdown).setZero();

    // Most similar measured workload by single-test statistics; ties go to
    // the lowest index.
    int matched = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double f = similarity(sstat.slice(ds.block(i).single_test), new_stats);
        if (f < best) {
            best = f;
            matched = i;
        }
    }

    QuestionVector substituted;
    substituted.target = matched;
    substituted.multiplicities = question.multiplicities.head(n);
    substituted.multiplicities(matched) += question.multiplicities(n);

    NewWorkloadPrediction out{predict_q1(ds, sstat, substituted, options),
                              ds.add_workload(std::move(new_name), new_single_test),
                              sstat,
                              matched};
    out.prediction.matched_workload = matched;
    out.prediction.question = question.multiplicities;
    out.prediction.target = question.target;
    out.sstat.slices.push_back(std::move(new_stats));
    return out;
}

nlohmann::json prediction_to_json(const Prediction& prediction, const MeasurementDataset& ds) {
    nlohmann::json question = nlohmann::json::object();
    for (int i = 0; i < prediction.question.size(); ++i) {
        if (prediction.question(i) > 0) {
            question[ds.workload_names().at(static_cast<std::size_t>(i))] = prediction.question(i);
        }
    }
    nlohmann::json contributions = nlohmann::json::array();
    for (const auto& c : prediction.contributions) {
        contributions.push_back({{"scenario_id", c.scenario + 1},
                                 {"weight", c.weight},
                                 {"penalty", c.penalty}});
    }
    nlohmann::json out{
        {"target", ds.workload_names().at(static_cast<std::size_t>(prediction.target))},
        {"question", question},
        {"percentile_q", prediction.percentile_q},
        {"gamma", prediction.gamma},
        {"estimate", std::vector<double>(prediction.percentile_estimate.begin(),
                                         prediction.percentile_estimate.end())},
        {"base", std::vector<double>(prediction.base.begin(), prediction.base.end())},
        {"residual_norm", prediction.fit.residual_norm},
        {"contributions", contributions},
        {"flags", prediction.flags},
    };
    if (prediction.matched_workload) {
        out["matched_workload"] =
            ds.workload_names().at(static_cast<std::size_t>(*prediction.matched_workload));
    }
    return out;
}

} // namespace colopred
