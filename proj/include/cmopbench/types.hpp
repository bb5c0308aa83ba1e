#ifndef CMOPBENCH_TYPES_HPP
#define CMOPBENCH_TYPES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cmopbench {

/// Axis-aligned box search space.
struct BoxBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    BoxBounds() = default;
    BoxBounds(std::vector<double> lo, std::vector<double> hi);

    /// Same interval [lo, hi] in every coordinate.
    static BoxBounds uniform(std::size_t dimension, double lo, double hi);

    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const noexcept;
    void clamp(std::span<double> x) const noexcept;
};

/// Static description of a problem: sizes, box, normalization anchors and
/// the hypervolume of the true normalized Pareto front.
struct ProblemMeta {
    std::string name;
    int dimension = 0;        // D
    int num_objectives = 0;   // M, 2 or 3
    int num_constraints = 0;  // I
    BoxBounds bounds;
    std::vector<double> ideal;  // per-objective best value on the feasible front
    std::vector<double> nadir;  // per-objective worst Pareto-optimal value
    double front_hypervolume = 0.0;  // in (0, 1], w.r.t. reference (1,...,1)

    /// Throws ConfigError if any invariant is broken.
    void validate() const;
};

/// One solution together with everything derived from it. Objectives are
/// normalized eagerly; the raw values are kept for audit.
struct Evaluation {
    std::vector<double> x;
    std::vector<double> objectives_raw;  // f before normalization
    std::vector<double> objectives;      // (f - ideal) / (nadir - ideal)
    std::vector<double> constraints;     // g, satisfied iff <= 0
    double violation = 0.0;              // sum of positive constraint parts
    std::uint64_t eval_index = 0;        // 1-based position in the run

    bool feasible() const noexcept { return violation == 0.0; }
};

/// Complete record of a single algorithm run.
struct RunTrace {
    ProblemMeta problem;
    std::string algorithm;
    int run_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;  // maximal number of function evaluations
    std::vector<Evaluation> evaluations;
};

/// Receives evaluations in order as an engine produces them.
class EvalSink {
public:
    virtual ~EvalSink() = default;
    virtual void on_evaluation(const Evaluation& e) = 0;
};

} // namespace cmopbench

#endif
