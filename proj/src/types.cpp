#include "cmopbench/types.hpp"

#include <cmath>

#include "cmopbench/errors.hpp"

namespace cmopbench {

BoxBounds::BoxBounds(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) {
        throw ConfigError("box bounds: lower and upper must have equal length");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) {
            throw ConfigError("box bounds: lower[" + std::to_string(i) +
                              "] must be strictly below upper[" + std::to_string(i) + "]");
        }
    }
}

BoxBounds BoxBounds::uniform(std::size_t dimension, double lo, double hi) {
    return BoxBounds(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

bool BoxBounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
}

void BoxBounds::clamp(std::span<double> x) const noexcept {
    for (std::size_t i = 0; i < x.size() && i < lower.size(); ++i) {
        if (x[i] < lower[i]) x[i] = lower[i];
        if (x[i] > upper[i]) x[i] = upper[i];
    }
}

void ProblemMeta::validate() const {
    if (name.empty()) throw ConfigError("problem meta: empty name");
    if (dimension < 1) throw ConfigError(name + ": dimension must be positive");
    if (num_objectives != 2 && num_objectives != 3) {
        throw ConfigError(name + ": only 2 or 3 objectives are supported");
    }
    if (num_constraints < 1) throw ConfigError(name + ": at least one constraint required");
    if (bounds.dimension() != static_cast<std::size_t>(dimension)) {
        throw ConfigError(name + ": bounds dimension does not match D");
    }
    if (ideal.size() != static_cast<std::size_t>(num_objectives) ||
        nadir.size() != static_cast<std::size_t>(num_objectives)) {
        throw ConfigError(name + ": ideal/nadir length must equal M");
    }
    for (int m = 0; m < num_objectives; ++m) {
        if (!(ideal[m] < nadir[m])) {
            throw ConfigError(name + ": ideal must be strictly below nadir in every objective");
        }
    }
    if (!(front_hypervolume > 0.0 && front_hypervolume <= 1.0)) {
        throw ConfigError(name + ": front hypervolume must lie in (0, 1]");
    }
}

} // namespace cmopbench
