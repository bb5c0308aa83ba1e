#include "cmopbench/runtimes.hpp"

#include <algorithm>

#include "cmopbench/errors.hpp"

namespace cmopbench {

std::size_t RuntimeRecord::reached_count() const noexcept {
    std::size_t n = 0;
    for (const auto& r : runtimes) {
        if (r.has_value()) ++n;
    }
    return n;
}

RuntimeRecord extract_runtimes(const StepTrace& trace, const TargetSet& targets,
                               std::uint64_t budget) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].eval_index <= trace[i - 1].eval_index) {
            throw SequenceError("step trace is not sorted by eval_index");
        }
    }
    RuntimeRecord record;
    record.budget = budget;
    record.runtimes.assign(targets.size(), std::nullopt);
    // Targets are ordered easiest first (strictly decreasing value) and the
    // trace values are nonincreasing, so one forward walk unlocks targets
    // in order.
    std::size_t next_target = 0;
    for (const StepPoint& step : trace) {
        if (step.eval_index > budget) break;
        while (next_target < targets.size() &&
               step.value <= targets.targets[next_target].value) {
            record.runtimes[next_target] = step.eval_index;
            ++next_target;
        }
        if (next_target == targets.size()) break;
    }
    return record;
}

double Erd::final_proportion() const noexcept {
    return steps.empty() ? 0.0 : steps.back().second;
}

double Erd::proportion_at(std::uint64_t eval_count) const noexcept {
    double p = 0.0;
    for (const auto& [t, proportion] : steps) {
        if (t > eval_count) break;
        p = proportion;
    }
    return p;
}

Erd build_erd(std::span<const RuntimeRecord> records) {
    Erd erd;
    if (records.empty()) return erd;
    const std::size_t target_count = records.front().runtimes.size();
    std::vector<std::uint64_t> pooled;
    for (const auto& record : records) {
        if (record.runtimes.size() != target_count) {
            throw MismatchError("ERD aggregation: records disagree on target count");
        }
        for (const auto& runtime : record.runtimes) {
            if (runtime.has_value()) pooled.push_back(*runtime);
        }
    }
    erd.denominator = target_count * records.size();
    std::sort(pooled.begin(), pooled.end());
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
        erd.steps.emplace_back(pooled[i],
                               static_cast<double>(j) / static_cast<double>(erd.denominator));
        i = j;
    }
    return erd;
}

std::vector<std::pair<std::uint64_t, double>> feasibility_fractions(
    std::span<const StepTrace> traces, double tau_star) {
    std::vector<std::uint64_t> crossings;
    for (const auto& trace : traces) {
        for (const StepPoint& step : trace) {
            if (step.value <= tau_star) {
                crossings.push_back(step.eval_index);
                break;
            }
        }
    }
    std::sort(crossings.begin(), crossings.end());
    std::vector<std::pair<std::uint64_t, double>> fractions;
    const double denom = static_cast<double>(traces.size());
    for (std::size_t i = 0; i < crossings.size();) {
        std::size_t j = i;
        while (j < crossings.size() && crossings[j] == crossings[i]) ++j;
        fractions.emplace_back(crossings[i], static_cast<double>(j) / denom);
        i = j;
    }
    return fractions;
}

} // namespace cmopbench
