#ifndef CMOPBENCH_INDICATORS_HPP
#define CMOPBENCH_INDICATORS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cmopbench/types.hpp"

namespace cmopbench {

/// Sum of the positive constraint parts; zero iff feasible.
/// Throws DomainError on non-finite input.
double overall_violation(std::span<const double> g);

/// Component-wise (f - ideal) / (nadir - ideal).
/// Throws ConfigError when sizes mismatch or nadir <= ideal somewhere.
std::vector<double> normalize_objectives(std::span<const double> objectives_raw,
                                         std::span<const double> ideal,
                                         std::span<const double> nadir);

/// Euclidean distance of one normalized objective vector to the box [0,1]^M.
double distance_to_box(std::span<const double> point);

/// Smallest distance of any point in the set to [0,1]^M.
/// Throws PreconditionError on an empty set.
double distance_to_roi(std::span<const std::vector<double>> points);

/// Exact hypervolume w.r.t. reference point (1,...,1). Points that do not
/// strictly dominate the reference contribute nothing. Supports 2 and 3
/// objectives; anything else throws ConfigError.
double hypervolume(std::span<const std::vector<double>> points, int num_objectives);

/// Best objective value seen so far (single-objective semantics).
double indicator_sop(std::span<const double> objective_values);

/// Best objective-plus-violation value seen so far.
double indicator_csop(std::span<const double> objective_values,
                      std::span<const double> violations);

/// Negated hypervolume when some point strictly dominates the reference,
/// distance to the region of interest otherwise.
double indicator_mop(std::span<const std::vector<double>> points);

/// Nondominated archive of bi-objective points strictly dominating (1,1),
/// with the dominated area maintained incrementally on insertion.
class Front2d {
public:
    /// Inserts a point; returns false when it is weakly dominated (or a
    /// duplicate) and the archive is unchanged. Callers must pass points
    /// with both coordinates strictly below 1.
    bool insert(double f1, double f2);

    double area() const noexcept { return area_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const std::map<double, double>& points() const noexcept { return points_; }
    void clear();

private:
    std::map<double, double> points_;  // f1 -> f2, f2 strictly decreasing in f1
    double area_ = 0.0;
};

/// Incremental best-so-far state of the feasibility-aware quality indicator
/// over one run. Ingest evaluations in order; `value()` is the current
/// indicator level and never increases.
class AnytimeIndicator {
public:
    explicit AnytimeIndicator(int num_objectives, double tau_star = 1.0);

    /// Throws SequenceError unless e.eval_index == count() + 1.
    void ingest(const Evaluation& e);

    /// Current indicator value; PreconditionError before the first ingest.
    double value() const;

    std::uint64_t count() const noexcept { return count_; }
    bool has_feasible() const noexcept { return has_feasible_; }
    /// True when some feasible point strictly dominates the reference point.
    bool front_nonempty() const noexcept;
    double min_violation() const noexcept { return min_violation_; }
    double min_distance() const noexcept { return min_distance_; }
    double front_hypervolume() const noexcept;
    double tau_star() const noexcept { return tau_star_; }
    int num_objectives() const noexcept { return num_objectives_; }

    /// Copy of the archive (feasible nondominated points strictly inside
    /// the reference box). Mostly for tests and audits.
    std::vector<std::vector<double>> front_points() const;

private:
    void ingest_feasible_point(std::span<const double> f);

    int num_objectives_;
    double tau_star_;
    std::uint64_t count_ = 0;
    bool has_feasible_ = false;
    double min_violation_;
    double min_distance_;
    Front2d front2_;
    std::vector<std::array<double, 3>> front3_;
    double front3_volume_ = 0.0;
};

} // namespace cmopbench

#endif
