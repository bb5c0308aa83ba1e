#ifndef CMOPBENCH_REPORTS_HPP
#define CMOPBENCH_REPORTS_HPP

#include <filesystem>
#include <vector>

#include "cmopbench/experiment.hpp"

namespace cmopbench {

enum class ErdGrouping { per_problem, per_suite, both };

/// Writes one ERD plot (SVG) per group with one curve per algorithm plus
/// companion CSVs holding the exact plotted points, into
/// `<store>/reports/`. Groups are single problem instances (per-problem)
/// or all instances sharing a dimension (per-suite). Returns the created
/// files. Empty groups are skipped with a warning on stderr.
std::vector<std::filesystem::path> emit_erd_reports(const ResultStore& store,
                                                    ErdGrouping grouping);

/// Writes the per-problem differentiation table, the per-suite dot CSV and
/// a strip/box SVG per suite. Throws ConfigError when the store holds
/// fewer than two algorithms.
std::vector<std::filesystem::path> emit_delta_reports(const ResultStore& store);

} // namespace cmopbench

#endif
