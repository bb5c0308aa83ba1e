#include "cmopbench/targets.hpp"

#include <algorithm>
#include <cmath>

#include "cmopbench/errors.hpp"

namespace cmopbench {

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double power_of_ten_scale(double median) {
    if (!(median > 0.0)) return 1.0;
    return std::pow(10.0, std::ceil(std::log10(median)));
}

} // namespace

ScaleFactors compute_scales(const Problem& problem, RngStream& rng) {
    ScaleFactors scales;
    scales.sample_seed = rng.seed();
    auto sample = uniform_init(problem.meta().bounds,
                               static_cast<std::size_t>(scales.sample_size), rng);
    std::vector<double> distances, violations;
    distances.reserve(sample.size());
    violations.reserve(sample.size());
    for (const auto& x : sample) {
        Evaluation e = problem.evaluate(x);
        distances.push_back(distance_to_box(e.objectives));
        violations.push_back(e.violation);
    }
    scales.d_scale = power_of_ten_scale(median_of(std::move(distances)));
    scales.v_scale = power_of_ten_scale(median_of(std::move(violations)));
    return scales;
}

std::size_t TargetSet::count_front() const noexcept {
    std::size_t n = 0;
    for (const auto& t : targets) {
        if (t.cls == TargetClass::front_approximation) ++n;
    }
    return n;
}

std::size_t TargetSet::count_feasibility() const noexcept {
    return targets.size() - count_front();
}

TargetSet make_targets(const ProblemMeta& meta) {
    if (!(meta.front_hypervolume > 0.0)) {
        throw ConfigError(meta.name + ": front hypervolume required to build targets");
    }
    TargetSet set;
    set.tau_ref = -meta.front_hypervolume;
    set.tau_star = 1.0;
    set.targets.reserve(102);
    // 51 exponents k = 0, -0.1, ..., -5; easiest targets first.
    for (int j = 0; j <= 50; ++j) {
        double k = -static_cast<double>(j) / 10.0;
        double epsilon = 1.0 + std::pow(10.0, k);
        set.targets.push_back({epsilon, set.tau_ref + epsilon,
                               TargetClass::constraint_satisfaction});
    }
    for (int j = 0; j <= 50; ++j) {
        double k = -static_cast<double>(j) / 10.0;
        double epsilon = std::pow(10.0, k);
        set.targets.push_back({epsilon, set.tau_ref + epsilon,
                               TargetClass::front_approximation});
    }
    return set;
}

double scaled_indicator(const AnytimeIndicator& state, const ScaleFactors& scales) {
    if (state.count() == 0) throw PreconditionError("indicator: no evaluations ingested");
    if (!state.has_feasible()) {
        return state.min_violation() / scales.v_scale + state.tau_star();
    }
    double base = state.front_nonempty() ? -state.front_hypervolume()
                                         : state.min_distance() / scales.d_scale;
    return std::min(base, state.tau_star());
}

} // namespace cmopbench
