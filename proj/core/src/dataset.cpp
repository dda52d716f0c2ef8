// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "colopred/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "colopred/errors.hpp"
#include "internal/text.hpp"

namespace colopred {

namespace {

void check_name(const std::string& name, const char* what) {
    if (name.empty()) {
        throw ValidationError(std::string(what) + " name must not be empty");
    }
    if (name.find_first_of(",\r\n") != std::string::npos) {
        throw ValidationError(std::string(what) + " name '" + name +
                              "' must not contain commas or line breaks");
    }
}

std::vector<int> compute_block_starts(int n, const std::vector<int>& owners) {
    std::vector<int> starts(n + 1, 0);
    int current = 0;
    for (std::size_t r = 0; r < owners.size(); ++r) {
        int w = owners[r];
        if (w < 0 || w >= n) {
            throw ValidationError("scenario " + std::to_string(r + 1) +
                                  " has owner index out of range");
        }
        if (w < current) {
            throw ValidationError("scenarios of workload " + std::to_string(w + 1) +
                                  " are not contiguous in workload order");
        }
        while (current < w) {
            ++current;
            starts[current] = static_cast<int>(r);
        }
    }
    while (current < n) {
        ++current;
        starts[current] = static_cast<int>(owners.size());
    }
    return starts;
}

} // namespace

MeasurementDataset::MeasurementDataset(std::vector<std::string> workload_names,
                                       std::vector<std::string> param_names,
                                       std::vector<std::string> param_units,
                                       std::vector<int> owners,
                                       Eigen::MatrixXi scenario_matrix,
                                       std::vector<Eigen::MatrixXd> samples)
    : workload_names_(std::move(workload_names)),
      param_names_(std::move(param_names)),
      param_units_(std::move(param_units)),
      owners_(std::move(owners)),
      scenario_matrix_(std::move(scenario_matrix)),
      samples_(std::move(samples)) {
    if (samples_.empty()) {
        throw ValidationError("dataset must contain at least one scenario");
    }
    repeats_ = static_cast<int>(samples_.front().rows());
    block_starts_ = compute_block_starts(workload_count(), owners_);
    validate();
}

void MeasurementDataset::validate() const {
    const int n = workload_count();
    const int l = param_count();
    const int m = scenario_count();

    if (n < 1) {
        throw ValidationError("dataset must contain at least one workload");
    }
    if (l < 1) {
        throw ValidationError("dataset must measure at least one parameter (l >= 1)");
    }
    if (repeats_ < 2) {
        throw ValidationError("dataset needs k >= 2 measurement repeats, got k = " +
                              std::to_string(repeats_));
    }
    if (param_units_.size() != static_cast<std::size_t>(l)) {
        throw ValidationError("param_units length does not match parameter count");
    }
    for (const auto& name : workload_names_) check_name(name, "workload");
    for (const auto& name : param_names_) check_name(name, "parameter");
    {
        std::set<std::string> unique(workload_names_.begin(), workload_names_.end());
        if (unique.size() != workload_names_.size()) {
            throw ValidationError("workload names must be unique");
        }
    }

    if (scenario_matrix_.rows() != n || scenario_matrix_.cols() != m) {
        throw ValidationError("scenario matrix shape must be n x m");
    }
    if (owners_.size() != static_cast<std::size_t>(m)) {
        throw ValidationError("owner list length does not match scenario count");
    }

    for (int r = 0; r < m; ++r) {
        const auto& slice = samples_[r];
        if (slice.rows() != repeats_ || slice.cols() != l) {
            throw ValidationError("scenario " + std::to_string(r + 1) +
                                  " samples must be a k x l matrix with the dataset's k and l");
        }
        if (!slice.allFinite()) {
            throw ValidationError("scenario " + std::to_string(r + 1) +
                                  " contains non-finite sample values");
        }
        if (scenario_matrix_.col(r).minCoeff() < 0) {
            throw ValidationError("scenario " + std::to_string(r + 1) +
                                  " encoding has a negative multiplicity");
        }
    }

    // Per-block structure: every workload owns at least its single test, the
    // block's first column is a unit column for the owner, and the owner runs
    // in every scenario of its block.
    for (int w = 0; w < n; ++w) {
        const int begin = block_starts_[w];
        const int end = block_starts_[w + 1];
        if (end - begin < 1) {
            throw ValidationError("workload '" + workload_names_[w] +
                                  "' has no scenarios (p_i >= 1 required)");
        }
        const Eigen::VectorXi single = scenario_matrix_.col(begin);
        if (single(w) != 1 || single.sum() != 1) {
            throw ValidationError("first scenario of workload '" + workload_names_[w] +
                                  "' (scenario " + std::to_string(begin + 1) +
                                  ") must be its single test: a unit column");
        }
        for (int r = begin; r < end; ++r) {
            if (scenario_matrix_(w, r) < 1) {
                throw ValidationError("scenario " + std::to_string(r + 1) +
                                      " in the block of workload '" + workload_names_[w] +
                                      "' does not run the workload itself");
            }
        }
    }
}

ScenarioBlock MeasurementDataset::block(int workload) const {
    if (workload < 0 || workload >= workload_count()) {
        throw ValidationError("workload index " + std::to_string(workload + 1) +
                              " out of range 1.." + std::to_string(workload_count()));
    }
    return ScenarioBlock{block_starts_[workload], block_starts_[workload + 1],
                         block_starts_[workload]};
}

int MeasurementDataset::workload_index(std::string_view name) const {
    for (std::size_t i = 0; i < workload_names_.size(); ++i) {
        if (workload_names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

MeasurementDataset MeasurementDataset::add_scenario(int workload, const Eigen::VectorXi& encoding,
                                                    const Eigen::MatrixXd& scenario_samples) const {
    const int n = workload_count();
    if (workload < 0 || workload >= n) {
        throw ValidationError("workload index out of range");
    }
    if (encoding.size() != n) {
        throw ValidationError("scenario encoding must have one entry per workload");
    }
    if (encoding(workload) < 1) {
        throw ValidationError("scenario encoding must run workload '" +
                              workload_names_[workload] + "' at least once");
    }
    if (scenario_samples.rows() != repeats_ || scenario_samples.cols() != param_count()) {
        throw ValidationError("scenario samples must be a k x l matrix with the dataset's k and l");
    }

    const int insert_at = block_starts_[workload + 1];
    const int m = scenario_count();

    Eigen::MatrixXi matrix(n, m + 1);
    matrix.leftCols(insert_at) = scenario_matrix_.leftCols(insert_at);
    matrix.col(insert_at) = encoding;
    matrix.rightCols(m - insert_at) = scenario_matrix_.rightCols(m - insert_at);

    std::vector<Eigen::MatrixXd> slices = samples_;
    slices.insert(slices.begin() + insert_at, scenario_samples);
    std::vector<int> owners = owners_;
    owners.insert(owners.begin() + insert_at, workload);

    return MeasurementDataset(workload_names_, param_names_, param_units_, std::move(owners),
                              std::move(matrix), std::move(slices));
}

MeasurementDataset MeasurementDataset::add_workload(std::string name,
                                                    const Eigen::MatrixXd& single_test) const {
    if (workload_index(name) >= 0) {
        throw ValidationError("workload '" + name + "' already exists");
    }
    if (single_test.rows() != repeats_ || single_test.cols() != param_count()) {
        throw ValidationError("single test must be a k x l matrix with the dataset's k and l");
    }
    const int n = workload_count();
    const int m = scenario_count();

    Eigen::MatrixXi matrix = Eigen::MatrixXi::Zero(n + 1, m + 1);
    matrix.topLeftCorner(n, m) = scenario_matrix_;
    matrix(n, m) = 1;

    std::vector<std::string> names = workload_names_;
    names.push_back(std::move(name));
    std::vector<Eigen::MatrixXd> slices = samples_;
    slices.push_back(single_test);
    std::vector<int> owners = owners_;
    owners.push_back(n);

    return MeasurementDataset(std::move(names), param_names_, param_units_, std::move(owners),
                              std::move(matrix), std::move(slices));
}

// ---------------------------------------------------------------------------
// Directory format
// ---------------------------------------------------------------------------

namespace {

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

Eigen::MatrixXd read_samples_csv(const std::filesystem::path& path,
                                 const std::vector<std::string>& param_names, int k) {
    const auto lines = read_lines(path);
    const std::string file = path.string();
    if (lines.empty()) {
        throw ParseError(file + ": empty samples file");
    }
    const auto header = text::split_fields(lines[0]);
    if (header != param_names) {
        throw ParseError(file + ":1: sample header does not match the dataset parameter names");
    }
    if (static_cast<int>(lines.size()) - 1 != k) {
        throw ValidationError(file + ": expected k = " + std::to_string(k) + " sample rows, got " +
                              std::to_string(lines.size() - 1) +
                              " (k is fixed per dataset)");
    }
    const int l = static_cast<int>(param_names.size());
    Eigen::MatrixXd out(k, l);
    for (int i = 0; i < k; ++i) {
        const auto fields = text::split_fields(lines[i + 1]);
        if (static_cast<int>(fields.size()) != l) {
            throw ParseError(text::location(file, i + 2) + ": expected " + std::to_string(l) +
                             " fields, got " + std::to_string(fields.size()));
        }
        for (int j = 0; j < l; ++j) {
            out(i, j) = text::parse_double(fields[j], file, i + 2);
        }
    }
    return out;
}

} // namespace

MeasurementDataset load_dataset(const std::filesystem::path& dir) {
    const auto meta = read_json_file(dir / "meta.json");
    const std::string meta_file = (dir / "meta.json").string();

    int n = 0, k = 0, l = 0, m = 0;
    std::vector<std::string> workload_names, param_names, param_units;
    try {
        n = meta.at("n").get<int>();
        k = meta.at("k").get<int>();
        l = meta.at("l").get<int>();
        m = meta.at("m").get<int>();
        workload_names = meta.at("workload_names").get<std::vector<std::string>>();
        param_units = meta.at("param_units").get<std::vector<std::string>>();
        if (meta.contains("param_names")) {
            param_names = meta.at("param_names").get<std::vector<std::string>>();
        } else {
            for (int j = 0; j < l; ++j) param_names.push_back("p" + std::to_string(j));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(meta_file + ": " + e.what());
    }
    if (static_cast<int>(workload_names.size()) != n) {
        throw ValidationError(meta_file + ": workload_names length does not match n");
    }
    if (static_cast<int>(param_units.size()) != l ||
        static_cast<int>(param_names.size()) != l) {
        throw ValidationError(meta_file + ": parameter metadata length does not match l");
    }

    const auto scen_path = dir / "scenarios.csv";
    const std::string scen_file = scen_path.string();
    const auto lines = read_lines(scen_path);
    if (lines.empty()) {
        throw ParseError(scen_file + ": empty file");
    }
    {
        std::vector<std::string> expected = {"scenario_id", "owner"};
        expected.insert(expected.end(), workload_names.begin(), workload_names.end());
        if (text::split_fields(lines[0]) != expected) {
            throw ParseError(scen_file +
                             ":1: header must be scenario_id,owner,<workload names in order>");
        }
    }
    if (static_cast<int>(lines.size()) - 1 != m) {
        throw ValidationError(scen_file + ": expected m = " + std::to_string(m) +
                              " scenario rows, got " + std::to_string(lines.size() - 1));
    }

    Eigen::MatrixXi matrix(n, m);
    std::vector<int> owners(m);
    for (int r = 0; r < m; ++r) {
        const int line_no = r + 2;
        const auto fields = text::split_fields(lines[r + 1]);
        if (static_cast<int>(fields.size()) != n + 2) {
            throw ParseError(text::location(scen_file, line_no) + ": expected " +
                             std::to_string(n + 2) + " fields, got " +
                             std::to_string(fields.size()));
        }
        const long long id = text::parse_int(fields[0], scen_file, line_no);
        if (id != r + 1) {
            throw ParseError(text::location(scen_file, line_no) +
                             ": scenario_id values must be 1-based and contiguous");
        }
        auto owner_it = std::find(workload_names.begin(), workload_names.end(), fields[1]);
        if (owner_it == workload_names.end()) {
            throw ParseError(text::location(scen_file, line_no) + ": unknown owner workload '" +
                             fields[1] + "'");
        }
        owners[r] = static_cast<int>(owner_it - workload_names.begin());
        for (int i = 0; i < n; ++i) {
            const long long mult = text::parse_int(fields[i + 2], scen_file, line_no);
            if (mult < 0) {
                throw ValidationError(text::location(scen_file, line_no) +
                                      ": multiplicities must be >= 0");
            }
            matrix(i, r) = static_cast<int>(mult);
        }
    }

    std::vector<Eigen::MatrixXd> samples;
    samples.reserve(m);
    for (int r = 0; r < m; ++r) {
        samples.push_back(
            read_samples_csv(dir / "samples" / (std::to_string(r + 1) + ".csv"), param_names, k));
    }

    return MeasurementDataset(std::move(workload_names), std::move(param_names),
                              std::move(param_units), std::move(owners), std::move(matrix),
                              std::move(samples));
}

void save_dataset(const MeasurementDataset& ds, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "samples");

    nlohmann::ordered_json meta;
    meta["n"] = ds.workload_count();
    meta["k"] = ds.repeat_count();
    meta["l"] = ds.param_count();
    meta["m"] = ds.scenario_count();
    meta["workload_names"] = ds.workload_names();
    meta["param_names"] = ds.param_names();
    meta["param_units"] = ds.param_units();
    {
        std::ofstream out(dir / "meta.json");
        out << meta.dump(2) << "\n";
    }

    {
        std::ofstream out(dir / "scenarios.csv");
        out << "scenario_id,owner";
        for (const auto& name : ds.workload_names()) out << "," << name;
        out << "\n";
        for (int r = 0; r < ds.scenario_count(); ++r) {
            out << (r + 1) << "," << ds.workload_names()[ds.owner(r)];
            for (int i = 0; i < ds.workload_count(); ++i) {
                out << "," << ds.scenario_matrix()(i, r);
            }
            out << "\n";
        }
    }

    for (int r = 0; r < ds.scenario_count(); ++r) {
        std::ofstream out(dir / "samples" / (std::to_string(r + 1) + ".csv"));
        for (int j = 0; j < ds.param_count(); ++j) {
            out << (j ? "," : "") << ds.param_names()[j];
        }
        out << "\n";
        const auto& slice = ds.samples(r);
        for (int i = 0; i < ds.repeat_count(); ++i) {
            for (int j = 0; j < ds.param_count(); ++j) {
                out << (j ? "," : "") << text::format_double(slice(i, j));
            }
            out << "\n";
        }
    }
}

} // namespace colopred
