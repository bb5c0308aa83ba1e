#include "cmopbench/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmopbench/errors.hpp"

namespace cmopbench {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool strictly_dominates_reference(std::span<const double> p) {
    for (double c : p) {
        if (!(c < 1.0)) return false;
    }
    return true;
}
} // namespace

double overall_violation(std::span<const double> g) {
    double total = 0.0;
    for (double gi : g) {
        if (!std::isfinite(gi)) throw DomainError("constraint value is not finite");
        if (gi > 0.0) total += gi;
    }
    return total;
}

std::vector<double> normalize_objectives(std::span<const double> objectives_raw,
                                         std::span<const double> ideal,
                                         std::span<const double> nadir) {
    if (objectives_raw.size() != ideal.size() || ideal.size() != nadir.size()) {
        throw ConfigError("normalize: objective/ideal/nadir lengths differ");
    }
    std::vector<double> out(objectives_raw.size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        double range = nadir[m] - ideal[m];
        if (!(range > 0.0)) {
            throw ConfigError("normalize: nadir must exceed ideal in every objective");
        }
        out[m] = (objectives_raw[m] - ideal[m]) / range;
    }
    return out;
}

double distance_to_box(std::span<const double> point) {
    double sq = 0.0;
    for (double c : point) {
        double excess = c < 0.0 ? -c : (c > 1.0 ? c - 1.0 : 0.0);
        sq += excess * excess;
    }
    return std::sqrt(sq);
}

double distance_to_roi(std::span<const std::vector<double>> points) {
    if (points.empty()) throw PreconditionError("distance_to_roi: empty point set");
    double best = kInf;
    for (const auto& p : points) best = std::min(best, distance_to_box(p));
    return best;
}

bool Front2d::insert(double f1, double f2) {
    auto it = points_.lower_bound(f1);
    if (it != points_.begin() && std::prev(it)->second <= f2) return false;
    if (it != points_.end() && it->first == f1 && it->second <= f2) return false;

    // Sweep right over points dominated by (f1, f2), accumulating the area
    // newly covered in each vertical strip.
    double cursor = f1;
    double cover = (it == points_.begin()) ? 1.0 : std::prev(it)->second;
    while (it != points_.end() && it->second >= f2) {
        area_ += (it->first - cursor) * (cover - f2);
        cursor = it->first;
        cover = it->second;
        it = points_.erase(it);
    }
    double next_x = (it == points_.end()) ? 1.0 : it->first;
    area_ += (next_x - cursor) * (cover - f2);
    points_.emplace_hint(it, f1, f2);
    return true;
}

void Front2d::clear() {
    points_.clear();
    area_ = 0.0;
}

namespace {

double swept_volume_3d(std::vector<std::array<double, 3>> points) {
    if (points.empty()) return 0.0;
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a[2] < b[2]; });
    Front2d slice;
    double volume = 0.0;
    double z = points.front()[2];
    for (const auto& p : points) {
        if (p[2] > z) {
            volume += slice.area() * (p[2] - z);
            z = p[2];
        }
        slice.insert(p[0], p[1]);
    }
    volume += slice.area() * (1.0 - z);
    return volume;
}

} // namespace

double hypervolume(std::span<const std::vector<double>> points, int num_objectives) {
    if (num_objectives != 2 && num_objectives != 3) {
        throw ConfigError("hypervolume supports 2 or 3 objectives only");
    }
    if (num_objectives == 2) {
        Front2d front;
        for (const auto& p : points) {
            if (p.size() != 2) throw ConfigError("hypervolume: point has wrong length");
            if (strictly_dominates_reference(p)) front.insert(p[0], p[1]);
        }
        return front.area();
    }
    std::vector<std::array<double, 3>> kept;
    for (const auto& p : points) {
        if (p.size() != 3) throw ConfigError("hypervolume: point has wrong length");
        if (strictly_dominates_reference(p)) kept.push_back({p[0], p[1], p[2]});
    }
    return swept_volume_3d(std::move(kept));
}

double indicator_sop(std::span<const double> objective_values) {
    if (objective_values.empty()) {
        throw PreconditionError("indicator_sop: empty sequence");
    }
    return *std::min_element(objective_values.begin(), objective_values.end());
}

double indicator_csop(std::span<const double> objective_values,
                      std::span<const double> violations) {
    if (objective_values.empty() || objective_values.size() != violations.size()) {
        throw PreconditionError("indicator_csop: empty or mismatched sequences");
    }
    double best = kInf;
    for (std::size_t i = 0; i < objective_values.size(); ++i) {
        best = std::min(best, objective_values[i] + violations[i]);
    }
    return best;
}

double indicator_mop(std::span<const std::vector<double>> points) {
    if (points.empty()) throw PreconditionError("indicator_mop: empty point set");
    bool dominates = false;
    for (const auto& p : points) {
        if (strictly_dominates_reference(p)) {
            dominates = true;
            break;
        }
    }
    if (dominates) {
        return -hypervolume(points, static_cast<int>(points.front().size()));
    }
    return distance_to_roi(points);
}

AnytimeIndicator::AnytimeIndicator(int num_objectives, double tau_star)
    : num_objectives_(num_objectives),
      tau_star_(tau_star),
      min_violation_(kInf),
      min_distance_(kInf) {
    if (num_objectives != 2 && num_objectives != 3) {
        throw ConfigError("indicator supports 2 or 3 objectives only");
    }
}

bool AnytimeIndicator::front_nonempty() const noexcept {
    return num_objectives_ == 2 ? !front2_.empty() : !front3_.empty();
}

double AnytimeIndicator::front_hypervolume() const noexcept {
    return num_objectives_ == 2 ? front2_.area() : front3_volume_;
}

void AnytimeIndicator::ingest_feasible_point(std::span<const double> f) {
    min_distance_ = std::min(min_distance_, distance_to_box(f));
    if (!strictly_dominates_reference(f)) return;
    if (num_objectives_ == 2) {
        front2_.insert(f[0], f[1]);
        return;
    }
    std::array<double, 3> p{f[0], f[1], f[2]};
    for (const auto& q : front3_) {
        if (q[0] <= p[0] && q[1] <= p[1] && q[2] <= p[2]) return;  // weakly dominated
    }
    std::erase_if(front3_, [&](const auto& q) {
        return p[0] <= q[0] && p[1] <= q[1] && p[2] <= q[2];
    });
    front3_.push_back(p);
    front3_volume_ = swept_volume_3d(front3_);
}

void AnytimeIndicator::ingest(const Evaluation& e) {
    if (e.eval_index != count_ + 1) {
        throw SequenceError("indicator: expected eval_index " + std::to_string(count_ + 1) +
                            ", got " + std::to_string(e.eval_index));
    }
    if (e.objectives.size() != static_cast<std::size_t>(num_objectives_)) {
        throw ConfigError("indicator: evaluation has wrong objective count");
    }
    count_ = e.eval_index;
    if (e.feasible()) {
        has_feasible_ = true;
        ingest_feasible_point(e.objectives);
    } else {
        min_violation_ = std::min(min_violation_, e.violation);
    }
}

double AnytimeIndicator::value() const {
    if (count_ == 0) throw PreconditionError("indicator: no evaluations ingested");
    if (!has_feasible_) return min_violation_ + tau_star_;
    double base = front_nonempty() ? -front_hypervolume() : min_distance_;
    return std::min(base, tau_star_);
}

std::vector<std::vector<double>> AnytimeIndicator::front_points() const {
    std::vector<std::vector<double>> out;
    if (num_objectives_ == 2) {
        out.reserve(front2_.size());
        for (const auto& [f1, f2] : front2_.points()) out.push_back({f1, f2});
    } else {
        out.reserve(front3_.size());
        for (const auto& p : front3_) out.push_back({p[0], p[1], p[2]});
    }
    return out;
}

} // namespace cmopbench
