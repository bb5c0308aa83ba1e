#include "cmopbench/delta.hpp"

#include <algorithm>
#include <cmath>

#include "cmopbench/errors.hpp"

namespace cmopbench {

namespace {

std::vector<double> pooled_log_runtimes(std::span<const RuntimeRecord> records,
                                        const TargetSet& targets, TargetClass cls,
                                        std::uint64_t budget) {
    std::vector<double> pool;
    for (const auto& record : records) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (targets.targets[i].cls != cls) continue;
            std::uint64_t runtime = record.runtimes[i].value_or(budget);
            pool.push_back(std::log(static_cast<double>(runtime)));
        }
    }
    std::sort(pool.begin(), pool.end());
    return pool;
}

double class_delta(std::span<const RuntimeRecord> a, std::span<const RuntimeRecord> b,
                   const TargetSet& targets, TargetClass cls, std::uint64_t budget) {
    auto pool_a = pooled_log_runtimes(a, targets, cls, budget);
    auto pool_b = pooled_log_runtimes(b, targets, cls, budget);
    if (pool_a.empty()) return 0.0;
    const double log_budget = std::log(static_cast<double>(budget));
    double total = 0.0;
    for (std::size_t i = 0; i < pool_a.size(); ++i) {
        total += std::fabs(pool_a[i] - pool_b[i]) / log_budget;
    }
    return total / static_cast<double>(pool_a.size());
}

} // namespace

DeltaResult delta_pair(std::span<const RuntimeRecord> records_a,
                       std::span<const RuntimeRecord> records_b,
                       const TargetSet& targets, std::uint64_t budget) {
    if (budget < 2) throw ConfigError("delta: budget must be at least 2");
    if (records_a.empty() || records_a.size() != records_b.size()) {
        throw MismatchError("delta: record sets must be nonempty and of equal run count");
    }
    for (const auto* set : {&records_a, &records_b}) {
        for (const auto& record : *set) {
            if (record.runtimes.size() != targets.size()) {
                throw MismatchError("delta: record does not match the target set");
            }
            for (const auto& runtime : record.runtimes) {
                if (runtime.has_value() && (*runtime < 1 || *runtime > budget)) {
                    throw MismatchError("delta: runtime outside [1, budget]");
                }
            }
        }
    }
    DeltaResult result;
    result.budget = budget;
    const std::size_t runs = records_a.size();
    result.n_plus = targets.count_front() * runs;
    result.n_minus = targets.count_feasibility() * runs;
    result.n = result.n_plus + result.n_minus;
    result.delta_plus = class_delta(records_a, records_b, targets,
                                    TargetClass::front_approximation, budget);
    result.delta_minus = class_delta(records_a, records_b, targets,
                                     TargetClass::constraint_satisfaction, budget);
    result.delta = (static_cast<double>(result.n_minus) * result.delta_minus +
                    static_cast<double>(result.n_plus) * result.delta_plus) /
                   static_cast<double>(result.n);
    return result;
}

std::vector<DeltaTableRow> delta_matrix(std::span<const ProblemRecords> grid,
                                        std::span<const std::string> algorithms) {
    std::vector<DeltaTableRow> rows;
    for (const auto& problem : grid) {
        auto find_records = [&](const std::string& algorithm)
            -> std::span<const RuntimeRecord> {
            for (const auto& entry : problem.algorithms) {
                if (entry.algorithm == algorithm) return entry.records;
            }
            throw MismatchError("delta matrix: missing runs for (" + problem.problem +
                                ", " + algorithm + ")");
        };
        for (std::size_t i = 0; i < algorithms.size(); ++i) {
            for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
                DeltaTableRow row;
                row.problem = problem.problem;
                row.algorithm_a = algorithms[i];
                row.algorithm_b = algorithms[j];
                row.result = delta_pair(find_records(algorithms[i]),
                                        find_records(algorithms[j]), problem.targets,
                                        problem.budget);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace cmopbench
