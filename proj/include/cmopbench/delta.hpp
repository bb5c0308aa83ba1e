#ifndef CMOPBENCH_DELTA_HPP
#define CMOPBENCH_DELTA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cmopbench/runtimes.hpp"
#include "cmopbench/targets.hpp"

namespace cmopbench {

/// Normalized area between two algorithms' runtime distributions on one
/// problem, with its split into constraint-satisfaction and
/// front-approximation parts. All three values lie in [0, 1] and
/// delta == (n_minus * delta_minus + n_plus * delta_plus) / n exactly.
struct DeltaResult {
    double delta = 0.0;
    double delta_plus = 0.0;   // front-approximation targets
    double delta_minus = 0.0;  // constraint-satisfaction targets
    std::size_t n = 0;         // (target, run) pairs
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::uint64_t budget = 0;
};

/// Differentiation score between two record sets over the same targets and
/// equal run counts. Missing runtimes count as the full budget. Pooled
/// runtimes per target class are rank-matched, which equals the area
/// between the aggregated distributions and reduces to the per-target
/// segment sum for single runs.
/// Throws MismatchError on shape disagreements and ConfigError for
/// budget < 2.
DeltaResult delta_pair(std::span<const RuntimeRecord> records_a,
                       std::span<const RuntimeRecord> records_b,
                       const TargetSet& targets, std::uint64_t budget);

/// One matrix cell: a problem and an unordered algorithm pair.
struct DeltaTableRow {
    std::string problem;
    std::string algorithm_a;
    std::string algorithm_b;
    DeltaResult result;
};

/// Per-problem records of one algorithm, as consumed by delta_matrix.
struct AlgorithmRecords {
    std::string algorithm;
    std::vector<RuntimeRecord> records;
};

struct ProblemRecords {
    std::string problem;
    TargetSet targets;
    std::uint64_t budget = 0;
    std::vector<AlgorithmRecords> algorithms;
};

/// Every unordered algorithm pair on every problem. Requires a complete
/// grid; a missing (problem, algorithm) cell throws MismatchError naming
/// the absent cell.
std::vector<DeltaTableRow> delta_matrix(std::span<const ProblemRecords> grid,
                                        std::span<const std::string> algorithms);

} // namespace cmopbench

#endif
