#include "cmopbench/problems.hpp"

#include <cmath>

#include "cmopbench/errors.hpp"
#include "cmopbench/indicators.hpp"

namespace cmopbench {

Problem::Problem(ProblemMeta meta, EvalFn fn) : meta_(std::move(meta)), fn_(std::move(fn)) {
    meta_.validate();
    if (!fn_) throw ConfigError(meta_.name + ": missing evaluation function");
}

Evaluation Problem::evaluate(std::span<const double> x, std::uint64_t eval_index) const {
    if (x.size() != static_cast<std::size_t>(meta_.dimension)) {
        throw DomainError(meta_.name + ": search vector has wrong dimension");
    }
    if (!meta_.bounds.contains(x)) {
        throw DomainError(meta_.name + ": search vector outside the box bounds");
    }
    Evaluation e;
    e.x.assign(x.begin(), x.end());
    e.objectives_raw.resize(meta_.num_objectives);
    e.constraints.resize(meta_.num_constraints);
    fn_(x, e.objectives_raw, e.constraints);
    for (double f : e.objectives_raw) {
        if (!std::isfinite(f)) throw DomainError(meta_.name + ": non-finite objective value");
    }
    e.objectives = normalize_objectives(e.objectives_raw, meta_.ideal, meta_.nadir);
    e.violation = overall_violation(e.constraints);
    e.eval_index = eval_index;
    return e;
}

namespace {

// Shared objective pair of the built-ins: f1 = x1, f2 = 1 - x1 + sum of
// squares of the remaining coordinates.
void desk_objectives(std::span<const double> x, std::span<double> f) {
    double tail = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
    f[0] = x[0];
    f[1] = 1.0 - x[0] + tail;
}

void require_dimension(const char* name, int dimension) {
    if (dimension < 2) {
        throw ConfigError(std::string(name) + ": dimension must be at least 2");
    }
}

Problem make_lin_trunc(int dimension) {
    require_dimension(kLinTrunc, dimension);
    ProblemMeta meta;
    meta.name = kLinTrunc;
    meta.dimension = dimension;
    meta.num_objectives = 2;
    meta.num_constraints = 1;
    std::vector<double> lo(dimension, -1.0), hi(dimension, 1.0);
    lo[0] = 0.0;
    meta.bounds = BoxBounds(std::move(lo), std::move(hi));
    meta.ideal = {0.5, 0.0};
    meta.nadir = {1.0, 0.5};
    meta.front_hypervolume = 0.5;
    return Problem(meta, [](std::span<const double> x, std::span<double> f,
                            std::span<double> g) {
        desk_objectives(x, f);
        g[0] = 0.5 - x[0];
    });
}

Problem make_delayed_feas(int dimension) {
    require_dimension(kDelayedFeas, dimension);
    ProblemMeta meta;
    meta.name = kDelayedFeas;
    meta.dimension = dimension;
    meta.num_objectives = 2;
    meta.num_constraints = 1;
    meta.bounds = BoxBounds::uniform(dimension, 0.0, 1.0);
    meta.ideal = {0.0, 0.0};
    meta.nadir = {1.0, 1.0};
    meta.front_hypervolume = 0.5;
    return Problem(meta, [](std::span<const double> x, std::span<double> f,
                            std::span<double> g) {
        desk_objectives(x, f);
        double spread = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            spread += (x[i] - 0.5) * (x[i] - 0.5);
        }
        g[0] = 0.22 - spread / static_cast<double>(x.size() - 1);
    });
}

Problem make_hole(int dimension) {
    require_dimension(kHole, dimension);
    ProblemMeta meta;
    meta.name = kHole;
    meta.dimension = dimension;
    meta.num_objectives = 2;
    meta.num_constraints = 1;
    meta.bounds = BoxBounds::uniform(dimension, 0.0, 1.0);
    meta.ideal = {0.0, 0.0};
    meta.nadir = {1.0, 1.0};
    // Full diagonal front dominates area 0.5; the circular exclusion of
    // radius 0.2 around (0.5, 0.5) cuts a gap of width 0.4/sqrt(2) out of
    // the diagonal, losing a right triangle of area 0.04.
    meta.front_hypervolume = 0.46;
    return Problem(meta, [](std::span<const double> x, std::span<double> f,
                            std::span<double> g) {
        desk_objectives(x, f);
        double df1 = f[0] - 0.5;
        double df2 = f[1] - 0.5;
        g[0] = 0.04 - df1 * df1 - df2 * df2;
    });
}

} // namespace

Problem make_builtin(const std::string& problem_id, int dimension) {
    if (problem_id == kLinTrunc) return make_lin_trunc(dimension);
    if (problem_id == kDelayedFeas) return make_delayed_feas(dimension);
    if (problem_id == kHole) return make_hole(dimension);
    throw LookupError("unknown problem '" + problem_id + "'");
}

Evaluation evaluate_builtin(const std::string& problem_id, std::span<const double> x) {
    return make_builtin(problem_id, static_cast<int>(x.size())).evaluate(x);
}

ProblemRegistry ProblemRegistry::with_builtins() {
    ProblemRegistry registry;
    for (const char* id : {kLinTrunc, kDelayedFeas, kHole}) {
        registry.add(id, [name = std::string(id)](int d) { return make_builtin(name, d); });
    }
    return registry;
}

void ProblemRegistry::add(const std::string& name, ProblemFactory factory) {
    if (!factory) throw ConfigError("registry: null factory for '" + name + "'");
    auto [it, inserted] = factories_.emplace(name, std::move(factory));
    if (!inserted) throw ConflictError("problem '" + name + "' is already registered");
}

bool ProblemRegistry::contains(const std::string& name) const {
    return factories_.count(name) != 0;
}

Problem ProblemRegistry::make(const std::string& name, int dimension) const {
    auto it = factories_.find(name);
    if (it == factories_.end()) throw LookupError("unknown problem '" + name + "'");
    Problem problem = it->second(dimension);
    if (problem.meta().name != name) {
        throw ConfigError("registry: factory for '" + name + "' produced problem '" +
                          problem.meta().name + "'");
    }
    return problem;
}

std::vector<std::string> ProblemRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(factories_.size());
    for (const auto& [name, factory] : factories_) out.push_back(name);
    return out;
}

} // namespace cmopbench
