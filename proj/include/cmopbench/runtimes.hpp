#ifndef CMOPBENCH_RUNTIMES_HPP
#define CMOPBENCH_RUNTIMES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmopbench/targets.hpp"

namespace cmopbench {

/// One row of an indicator step trace: the indicator value right after the
/// given evaluation. Only improvements are stored.
struct StepPoint {
    std::uint64_t eval_index;
    double value;
};

using StepTrace = std::vector<StepPoint>;

/// First-hit evaluation counts for every target of one run; absent when the
/// target was never reached within the budget.
struct RuntimeRecord {
    std::string problem;
    std::string algorithm;
    int run_index = 0;
    std::uint64_t budget = 0;
    std::vector<std::optional<std::uint64_t>> runtimes;  // indexed like TargetSet::targets

    std::size_t reached_count() const noexcept;
};

/// For each target, the smallest eval_index whose indicator value is at or
/// below the target value. Throws SequenceError when the trace is not
/// sorted by eval_index.
RuntimeRecord extract_runtimes(const StepTrace& trace, const TargetSet& targets,
                               std::uint64_t budget);

/// Empirical runtime distribution: right-continuous step function over the
/// pooled (target, run) pairs. Abscissas are raw evaluation counts; the
/// division by D and the log scale are applied at presentation time.
struct Erd {
    std::vector<std::pair<std::uint64_t, double>> steps;  // (T, proportion), T ascending
    std::size_t denominator = 0;                          // targets x runs

    double final_proportion() const noexcept;
    double proportion_at(std::uint64_t eval_count) const noexcept;
};

/// Pools the runtimes of all records. Records must share the target count;
/// a mismatch throws MismatchError. Missing runtimes are never counted.
Erd build_erd(std::span<const RuntimeRecord> records);

/// Fraction of runs whose indicator has crossed tau_star, per budget:
/// a step function (T, fraction) over the runs' first crossing times.
std::vector<std::pair<std::uint64_t, double>> feasibility_fractions(
    std::span<const StepTrace> traces, double tau_star);

} // namespace cmopbench

#endif
