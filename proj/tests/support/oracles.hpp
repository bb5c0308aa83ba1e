#ifndef CMOPBENCH_TEST_ORACLES_HPP
#define CMOPBENCH_TEST_ORACLES_HPP

// Independent reference implementations used only by tests. They favor
// directness over speed and deliberately avoid the library's incremental
// code paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "cmopbench/delta.hpp"
#include "cmopbench/evolve.hpp"
#include "cmopbench/indicators.hpp"
#include "cmopbench/rng.hpp"
#include "cmopbench/types.hpp"

namespace cmopbench::test {

/// Strip-sweep dominated area for bi-objective points w.r.t. (1,1),
/// written independently of Front2d: for every distinct x cut, the covered
/// height is 1 minus the best f2 among points left of the strip.
inline double oracle_hv2(std::span<const std::vector<double>> points) {
    std::vector<std::pair<double, double>> kept;
    for (const auto& p : points) {
        if (p[0] < 1.0 && p[1] < 1.0) kept.emplace_back(p[0], p[1]);
    }
    if (kept.empty()) return 0.0;
    std::sort(kept.begin(), kept.end());
    std::vector<double> cuts;
    for (const auto& [x, y] : kept) cuts.push_back(x);
    cuts.push_back(1.0);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double area = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        double best_f2 = std::numeric_limits<double>::infinity();
        for (const auto& [x, y] : kept) {
            if (x <= cuts[s]) best_f2 = std::min(best_f2, y);
        }
        if (best_f2 < 1.0) area += (cuts[s + 1] - cuts[s]) * (1.0 - best_f2);
    }
    return area;
}

/// Batch recomputation of the feasibility-aware indicator over a full
/// prefix, from first principles: feasible archive only, negated dominated
/// area when the reference is strictly dominated, distance to the interest
/// region otherwise, violation offset when nothing is feasible.
inline double batch_indicator(std::span<const Evaluation> prefix, double tau_star = 1.0) {
    std::vector<std::vector<double>> feasible;
    double min_violation = std::numeric_limits<double>::infinity();
    for (const Evaluation& e : prefix) {
        if (e.feasible()) {
            feasible.push_back(e.objectives);
        } else {
            min_violation = std::min(min_violation, e.violation);
        }
    }
    if (feasible.empty()) return min_violation + tau_star;
    bool dominates_reference = false;
    for (const auto& p : feasible) {
        bool all = true;
        for (double c : p) all = all && c < 1.0;
        if (all) {
            dominates_reference = true;
            break;
        }
    }
    double base;
    if (dominates_reference) {
        base = feasible.front().size() == 2 ? -oracle_hv2(feasible)
                                            : -hypervolume(feasible, 3);
    } else {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : feasible) {
            double sq = 0.0;
            for (double c : p) {
                double excess = c < 0.0 ? -c : (c > 1.0 ? c - 1.0 : 0.0);
                sq += excess * excess;
            }
            best = std::min(best, std::sqrt(sq));
        }
        base = best;
    }
    return std::min(base, tau_star);
}

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Monte-Carlo dominated-volume estimate w.r.t. reference (1,...,1). The
/// sampling box extends below 0 when points do, so negative coordinates
/// contribute their full rectangles.
inline McEstimate mc_hypervolume(std::span<const std::vector<double>> points,
                                 int num_objectives, std::size_t samples, RngStream& rng) {
    double lo = 0.0;
    for (const auto& p : points) {
        for (double c : p) lo = std::min(lo, c);
    }
    double box_volume = std::pow(1.0 - lo, num_objectives);
    // Pruning keeps the check cheap without changing the dominated set.
    std::vector<std::vector<double>> kept;
    for (const auto& p : points) {
        bool inside = true;
        for (double c : p) inside = inside && c < 1.0;
        if (!inside) continue;
        bool dominated = false;
        for (const auto& q : kept) {
            bool le = true;
            for (std::size_t m = 0; m < q.size(); ++m) le = le && q[m] <= p[m];
            if (le) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end());
    std::vector<double> z(num_objectives);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (int m = 0; m < num_objectives; ++m) z[m] = rng.uniform(lo, 1.0);
        for (const auto& p : kept) {
            if (p[0] > z[0]) break;  // sorted by first coordinate
            bool le = true;
            for (int m = 1; m < num_objectives; ++m) le = le && p[m] <= z[m];
            if (le) {
                ++hits;
                break;
            }
        }
    }
    McEstimate estimate;
    double fraction = static_cast<double>(hits) / static_cast<double>(samples);
    estimate.value = fraction * box_volume;
    estimate.standard_error =
        std::sqrt(fraction * (1.0 - fraction) / static_cast<double>(samples)) * box_volume;
    return estimate;
}

/// Textbook front peeling by repeated scans; cubic on purpose.
inline std::vector<std::vector<std::size_t>> brute_force_fronts(
    std::size_t count, const std::function<Outcome(std::size_t, std::size_t)>& compare) {
    std::vector<bool> assigned(count, false);
    std::vector<std::vector<std::size_t>> fronts;
    std::size_t placed = 0;
    while (placed < count) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < count; ++i) {
            if (assigned[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < count && !dominated; ++j) {
                if (j == i || assigned[j]) continue;
                dominated = compare(j, i) == Outcome::first_better;
            }
            if (!dominated) front.push_back(i);
        }
        for (std::size_t i : front) assigned[i] = true;
        placed += front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

/// Target-by-target segment sum for single-run records: the direct
/// definition the rank-matched computation must reduce to.
inline DeltaResult direct_single_run_delta(const RuntimeRecord& a, const RuntimeRecord& b,
                                           const TargetSet& targets, std::uint64_t budget) {
    const double log_budget = std::log(static_cast<double>(budget));
    double sum_plus = 0.0, sum_minus = 0.0;
    std::size_t n_plus = 0, n_minus = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        double ta = static_cast<double>(a.runtimes[i].value_or(budget));
        double tb = static_cast<double>(b.runtimes[i].value_or(budget));
        double segment = std::fabs(std::log(ta) - std::log(tb)) / log_budget;
        if (targets.targets[i].cls == TargetClass::front_approximation) {
            sum_plus += segment;
            ++n_plus;
        } else {
            sum_minus += segment;
            ++n_minus;
        }
    }
    DeltaResult result;
    result.budget = budget;
    result.n_plus = n_plus;
    result.n_minus = n_minus;
    result.n = n_plus + n_minus;
    result.delta_plus = n_plus > 0 ? sum_plus / static_cast<double>(n_plus) : 0.0;
    result.delta_minus = n_minus > 0 ? sum_minus / static_cast<double>(n_minus) : 0.0;
    result.delta = (static_cast<double>(n_minus) * result.delta_minus +
                    static_cast<double>(n_plus) * result.delta_plus) /
                   static_cast<double>(result.n);
    return result;
}

/// Random evaluation stream in normalized objective space for indicator
/// tests; when force_feasible is set at least one feasible solution is
/// guaranteed.
inline std::vector<Evaluation> random_stream(std::size_t count, int num_objectives,
                                             double feasible_prob, RngStream& rng,
                                             bool force_feasible = false) {
    std::vector<Evaluation> stream;
    stream.reserve(count);
    for (std::size_t t = 1; t <= count; ++t) {
        Evaluation e;
        e.objectives.resize(num_objectives);
        for (auto& c : e.objectives) c = rng.uniform(-0.25, 1.5);
        e.objectives_raw = e.objectives;
        e.violation = rng.uniform() < feasible_prob ? 0.0 : rng.uniform(1e-6, 5.0);
        e.constraints = {e.violation > 0.0 ? e.violation : -1.0};
        e.eval_index = t;
        stream.push_back(std::move(e));
    }
    if (force_feasible) {
        bool any = false;
        for (const auto& e : stream) any = any || e.feasible();
        if (!any) {
            std::size_t pick = rng.uniform_index(stream.size());
            stream[pick].violation = 0.0;
            stream[pick].constraints = {-1.0};
        }
    }
    return stream;
}

} // namespace cmopbench::test

#endif
