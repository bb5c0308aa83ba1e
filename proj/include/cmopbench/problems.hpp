#ifndef CMOPBENCH_PROBLEMS_HPP
#define CMOPBENCH_PROBLEMS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cmopbench/types.hpp"

namespace cmopbench {

/// A concrete constrained multiobjective problem: immutable metadata plus a
/// pure evaluation function writing raw objectives and constraint values.
class Problem {
public:
    using EvalFn =
        std::function<void(std::span<const double> x, std::span<double> objectives_raw,
                           std::span<double> constraints)>;

    Problem(ProblemMeta meta, EvalFn fn);

    const ProblemMeta& meta() const noexcept { return meta_; }

    /// Evaluates x, normalizes the objectives and derives the overall
    /// violation. Throws DomainError when x is outside the box or the
    /// evaluation yields non-finite values.
    Evaluation evaluate(std::span<const double> x, std::uint64_t eval_index = 1) const;

private:
    ProblemMeta meta_;
    EvalFn fn_;
};

/// Factory producing a problem instance for a requested search-space
/// dimension.
using ProblemFactory = std::function<Problem(int dimension)>;

/// Name-keyed collection of problem factories. Experiment configs address
/// problems through it.
class ProblemRegistry {
public:
    /// Registry preloaded with the built-in problems.
    static ProblemRegistry with_builtins();

    ProblemRegistry() = default;

    /// Throws ConflictError when the name is already taken.
    void add(const std::string& name, ProblemFactory factory);

    bool contains(const std::string& name) const;

    /// Throws LookupError for unknown names.
    Problem make(const std::string& name, int dimension) const;

    /// Registered names, sorted.
    std::vector<std::string> names() const;

private:
    std::map<std::string, ProblemFactory> factories_;
};

inline constexpr const char* kLinTrunc = "LIN-TRUNC";
inline constexpr const char* kDelayedFeas = "DELAYED-FEAS";
inline constexpr const char* kHole = "HOLE";

/// Built-in problem instance; throws LookupError for unknown ids and
/// ConfigError for dimensions below 2.
Problem make_builtin(const std::string& problem_id, int dimension);

/// Convenience wrapper: dimension inferred from x.
Evaluation evaluate_builtin(const std::string& problem_id, std::span<const double> x);

} // namespace cmopbench

#endif
