#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmopbench/csv.hpp"
#include "cmopbench/errors.hpp"
#include "cmopbench/experiment.hpp"
#include "cmopbench/indicators.hpp"
#include "cmopbench/reports.hpp"
#include "cmopbench/rng.hpp"
#include "cmopbench/version.hpp"

namespace {

using namespace cmopbench;

int cmd_problems_list(const ProblemRegistry& registry) {
    for (const auto& name : registry.names()) {
        Problem probe = registry.make(name, 5);
        const ProblemMeta& meta = probe.meta();
        std::cout << name << "  M=" << meta.num_objectives << "  I=" << meta.num_constraints
                  << "  hv_ref=" << csv::format_double(meta.front_hypervolume) << "\n";
    }
    return 0;
}

int cmd_targets(const ProblemRegistry& registry, const std::string& problem,
                int dimension) {
    Problem instance = registry.make(problem, dimension);
    TargetSet targets = make_targets(instance.meta());
    std::string text = "index,epsilon,value,class\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Target& t = targets.targets[i];
        csv::append_u64(text, i);
        text.push_back(',');
        csv::append_double(text, t.epsilon);
        text.push_back(',');
        csv::append_double(text, t.value);
        text += t.cls == TargetClass::front_approximation ? ",plus\n" : ",minus\n";
    }
    std::cout << text;
    return 0;
}

int cmd_run(const ProblemRegistry& registry, const std::string& config_path,
            const std::optional<std::string>& out_dir, std::optional<std::uint64_t> seed,
            std::optional<int> workers, bool force) {
    ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
    if (out_dir.has_value()) config.output_dir = *out_dir;
    if (seed.has_value()) config.master_seed = *seed;
    if (workers.has_value()) config.workers = *workers;
    ExperimentReport report = run_experiment(config, registry, force);
    std::cout << "cells: " << report.total_cells << "  executed: " << report.executed_cells
              << "  skipped: " << report.skipped_cells << "\n";
    if (!report.complete()) {
        nlohmann::json summary;
        summary["error"] = "incomplete";
        summary["message"] = "some cells failed; see the manifest";
        summary["failures"] = report.failures;
        std::cerr << summary.dump() << "\n";
        return 2;
    }
    return 0;
}

int cmd_erd(const std::string& store_dir, const std::string& grouping) {
    ResultStore store = ResultStore::load(store_dir);
    ErdGrouping mode = ErdGrouping::both;
    if (grouping == "per-problem") mode = ErdGrouping::per_problem;
    if (grouping == "per-suite") mode = ErdGrouping::per_suite;
    auto files = emit_erd_reports(store, mode);
    for (const auto& file : files) std::cout << file.string() << "\n";
    return 0;
}

int cmd_delta(const std::string& store_dir) {
    ResultStore store = ResultStore::load(store_dir);
    auto files = emit_delta_reports(store);
    for (const auto& file : files) std::cout << file.string() << "\n";
    return 0;
}

// Monte-Carlo cross-check of the exact hypervolume sweep, exposed for
// audits: samples points on the problem's true front, measures the
// dominated area both ways and reports the agreement.
int cmd_oracle(const ProblemRegistry& registry, const std::string& problem, int dimension,
               std::size_t front_points, std::size_t mc_samples, std::uint64_t seed) {
    Problem instance = registry.make(problem, dimension);
    const ProblemMeta& meta = instance.meta();
    if (meta.num_objectives != 2) {
        throw ConfigError("oracle: built-in front sampling supports bi-objective problems");
    }
    // The built-in fronts all lie on f2 = 1 - f1 (normalized) with
    // problem-specific feasible sub-ranges; sample by scanning f1 and
    // keeping feasible parameterizations x = (x1, 0, ..., 0).
    std::vector<std::vector<double>> front;
    front.reserve(front_points);
    for (std::size_t i = 0; i < front_points; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(front_points - 1);
        double x1 = meta.bounds.lower[0] + t * (meta.bounds.upper[0] - meta.bounds.lower[0]);
        std::vector<double> x(meta.dimension, 0.0);
        x[0] = x1;
        Evaluation e = instance.evaluate(x);
        if (e.feasible()) front.push_back(e.objectives);
    }
    double sweep = hypervolume(front, 2);

    RngStream rng(seed);
    std::size_t dominated = 0;
    // Staircase lookup over the nondominated subset, sorted by f1.
    Front2d archive;
    for (const auto& p : front) {
        if (p[0] < 1.0 && p[1] < 1.0) archive.insert(p[0], p[1]);
    }
    std::vector<std::pair<double, double>> staircase(archive.points().begin(),
                                                     archive.points().end());
    for (std::size_t s = 0; s < mc_samples; ++s) {
        double u = rng.uniform(), w = rng.uniform();
        auto it = std::upper_bound(staircase.begin(), staircase.end(), u,
                                   [](double value, const auto& p) { return value < p.first; });
        if (it == staircase.begin()) continue;
        if (std::prev(it)->second <= w) ++dominated;
    }
    double estimate = static_cast<double>(dominated) / static_cast<double>(mc_samples);
    double stderr_mc =
        std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(mc_samples));

    nlohmann::json result;
    result["problem"] = problem;
    result["dimension"] = dimension;
    result["declared_hv"] = meta.front_hypervolume;
    result["sweep_hv"] = sweep;
    result["mc_estimate"] = estimate;
    result["mc_standard_error"] = stderr_mc;
    result["front_points"] = front.size();
    result["mc_samples"] = mc_samples;
    result["agreement_sigma"] =
        stderr_mc > 0.0 ? std::fabs(sweep - estimate) / stderr_mc : 0.0;
    std::cout << result.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmarking toolkit for constrained multiobjective optimizers"};
    app.set_version_flag("--version", cmopbench::kVersion);
    app.require_subcommand(1);

    ProblemRegistry registry = ProblemRegistry::with_builtins();

    auto* problems = app.add_subcommand("problems", "Problem registry queries");
    problems->require_subcommand(1);
    problems->add_subcommand("list", "List registered problems");

    std::string target_problem;
    int target_dimension = 5;
    auto* targets_cmd = app.add_subcommand("targets", "Emit the target precision values");
    targets_cmd->add_option("problem", target_problem, "Registered problem name")
        ->required();
    targets_cmd->add_option("--dimension", target_dimension,
                            "Instance dimension (targets do not depend on it)");

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> master_seed;
    std::optional<int> workers;
    bool force = false;
    auto* run_cmd = app.add_subcommand("run", "Execute an experiment config");
    run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
    run_cmd->add_option("--seed", master_seed, "Master seed (overrides the config)");
    run_cmd->add_option("--workers", workers, "Parallel workers (0 = hardware)");
    run_cmd->add_flag("--force", force, "Recompute cells even when files exist");

    std::string erd_store, erd_grouping = "all";
    auto* erd_cmd = app.add_subcommand("erd", "Emit runtime-distribution reports");
    erd_cmd->add_option("--out", erd_store, "Result store directory")->required();
    erd_cmd->add_option("--group", erd_grouping, "per-problem | per-suite | all")
        ->check(CLI::IsMember({"per-problem", "per-suite", "all"}));

    std::string delta_store;
    auto* delta_cmd = app.add_subcommand("delta", "Emit differentiation reports");
    delta_cmd->add_option("--out", delta_store, "Result store directory")->required();

    std::string oracle_problem;
    int oracle_dimension = 5;
    std::size_t oracle_front_points = 10000;
    std::size_t oracle_samples = 1000000;
    std::uint64_t oracle_seed = 12345;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Monte-Carlo cross-check of the hypervolume sweep");
    oracle_cmd->add_option("--problem", oracle_problem, "Registered problem name")
        ->required();
    oracle_cmd->add_option("--dimension", oracle_dimension, "Instance dimension");
    oracle_cmd->add_option("--front-points", oracle_front_points, "Front sample size");
    oracle_cmd->add_option("--samples", oracle_samples, "Monte-Carlo sample count");
    oracle_cmd->add_option("--seed", oracle_seed, "Sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (problems->parsed()) return cmd_problems_list(registry);
        if (targets_cmd->parsed()) {
            return cmd_targets(registry, target_problem, target_dimension);
        }
        if (run_cmd->parsed()) {
            return cmd_run(registry, config_path, out_dir, master_seed, workers, force);
        }
        if (erd_cmd->parsed()) return cmd_erd(erd_store, erd_grouping);
        if (delta_cmd->parsed()) return cmd_delta(delta_store);
        if (oracle_cmd->parsed()) {
            return cmd_oracle(registry, oracle_problem, oracle_dimension,
                              oracle_front_points, oracle_samples, oracle_seed);
        }
    } catch (const cmopbench::Error& e) {
        nlohmann::json summary;
        summary["error"] = e.kind();
        summary["message"] = e.what();
        std::cerr << summary.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json summary;
        summary["error"] = "internal";
        summary["message"] = e.what();
        std::cerr << summary.dump() << "\n";
        return 1;
    }
    return 0;
}
