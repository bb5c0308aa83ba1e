#ifndef CMOPBENCH_EXPERIMENT_HPP
#define CMOPBENCH_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cmopbench/delta.hpp"
#include "cmopbench/evolve.hpp"
#include "cmopbench/problems.hpp"
#include "cmopbench/runtimes.hpp"
#include "cmopbench/targets.hpp"

namespace cmopbench {

/// Observes a run: updates the indicator state per evaluation and records a
/// step-trace row whenever the scaled indicator value improves.
class IndicatorObserver : public EvalSink {
public:
    IndicatorObserver(int num_objectives, ScaleFactors scales, double tau_star = 1.0);

    void on_evaluation(const Evaluation& e) override;

    const StepTrace& steps() const noexcept { return steps_; }
    StepTrace take_steps() { return std::move(steps_); }
    const AnytimeIndicator& state() const noexcept { return state_; }

private:
    AnytimeIndicator state_;
    ScaleFactors scales_;
    StepTrace steps_;
};

/// Whole-experiment description. Defaults follow the standard parameter
/// table: 30 runs, dimensions {5, 10, 30}, budget 12000*D per run.
struct ExperimentConfig {
    std::vector<std::string> problems;
    std::vector<int> dimensions{5, 10, 30};
    std::vector<AlgorithmConfig> algorithms;
    int runs = 30;
    std::uint64_t master_seed = 1;
    std::filesystem::path output_dir = "out";
    bool write_run_traces = true;
    int workers = 0;  // 0 resolves to the hardware concurrency

    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

/// `<problem>_D<dimension>` — the per-dimension instance identifier used in
/// seeds, file names and reports.
std::string instance_name(const std::string& problem, int dimension);

/// One (instance, algorithm, run) unit of work.
struct ExperimentCell {
    std::string instance;
    std::string problem;
    int dimension = 0;
    std::string algorithm;
    int run_index = 0;
    std::uint64_t seed = 0;
};

struct ExperimentReport {
    std::size_t total_cells = 0;
    std::size_t executed_cells = 0;
    std::size_t skipped_cells = 0;
    std::vector<std::string> failures;  // "<instance>__<alg>__run<k>: message"

    bool complete() const noexcept { return failures.empty(); }
};

/// Runs every (problem, dimension, algorithm, run) cell, writing step
/// traces, runtime records, optional full traces and the manifest under the
/// output directory. Completed cells are skipped unless force is set.
/// Throws ConfigError before any execution when the config references
/// unknown problems or algorithms.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ProblemRegistry& registry, bool force = false);

/// In-memory view of a result store, loaded from manifest + CSV files.
struct StoreInstance {
    std::string name;
    std::string problem;
    int dimension = 0;
    ProblemMeta meta;
    TargetSet targets;
    ScaleFactors scales;
    std::uint64_t budget = 0;
};

struct StoreCellData {
    ExperimentCell cell;
    StepTrace steps;
    RuntimeRecord record;
};

class ResultStore {
public:
    static ResultStore load(const std::filesystem::path& directory);

    const std::filesystem::path& directory() const noexcept { return directory_; }
    const std::vector<StoreInstance>& instances() const noexcept { return instances_; }
    const std::vector<std::string>& algorithms() const noexcept { return algorithms_; }
    int runs() const noexcept { return runs_; }

    const StoreInstance& instance(const std::string& name) const;
    std::vector<RuntimeRecord> records(const std::string& instance,
                                       const std::string& algorithm) const;
    std::vector<StepTrace> step_traces(const std::string& instance,
                                       const std::string& algorithm) const;

private:
    std::filesystem::path directory_;
    std::vector<StoreInstance> instances_;
    std::vector<std::string> algorithms_;
    int runs_ = 0;
};

} // namespace cmopbench

#endif
