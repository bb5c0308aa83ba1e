#ifndef CMOPBENCH_TARGETS_HPP
#define CMOPBENCH_TARGETS_HPP

#include <cstdint>
#include <vector>

#include "cmopbench/indicators.hpp"
#include "cmopbench/problems.hpp"
#include "cmopbench/rng.hpp"
#include "cmopbench/types.hpp"

namespace cmopbench {

/// Power-of-ten factors that bring the distance and violation magnitudes of
/// a problem to a comparable scale, derived from a 100-point uniform sample.
struct ScaleFactors {
    double d_scale = 1.0;
    double v_scale = 1.0;
    int sample_size = 100;
    std::uint64_t sample_seed = 0;
};

/// Samples 100 uniform solutions and sets each scale to
/// 10^ceil(log10(median)) of the sampled distances / violations.
/// A zero median maps to scale 1.
ScaleFactors compute_scales(const Problem& problem, RngStream& rng);

enum class TargetClass {
    front_approximation,     // tau+ : reached only by improving the front
    constraint_satisfaction  // tau- : reached while approaching feasibility
};

struct Target {
    double epsilon;    // offset above the reference level
    double value;      // tau_ref + epsilon
    TargetClass cls;
};

/// The 102 target precision values of one problem, ordered easiest first
/// (strictly decreasing value). The first 51 measure constraint
/// satisfaction, the remaining 51 front approximation.
struct TargetSet {
    double tau_ref = 0.0;   // -front_hypervolume
    double tau_star = 1.0;
    std::vector<Target> targets;

    std::size_t size() const noexcept { return targets.size(); }
    std::size_t count_front() const noexcept;
    std::size_t count_feasibility() const noexcept;
};

/// Builds the target set from the problem's front hypervolume:
/// tau_ref = -hv, epsilon in {10^k} (front) and {1 + 10^k} (feasibility)
/// for k = -5, -4.9, ..., 0. Throws ConfigError when hv is not declared.
TargetSet make_targets(const ProblemMeta& meta);

/// Indicator value with the distance branch divided by d_scale and the
/// violation branch divided by v_scale; the hypervolume branch is unscaled.
double scaled_indicator(const AnytimeIndicator& state, const ScaleFactors& scales);

} // namespace cmopbench

#endif
