#include "cmopbench/evolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "cmopbench/errors.hpp"

namespace cmopbench {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSbxEps = 1e-14;
} // namespace

AlgorithmConfig AlgorithmConfig::by_name(const std::string& name) {
    AlgorithmConfig config;
    config.name = name;
    if (name == kCdpEa) {
        config.kind = AlgorithmKind::cdp_ea;
    } else if (name == kMoeadIeps) {
        config.kind = AlgorithmKind::moead_ieps;
    } else if (name == kTwoArchive) {
        config.kind = AlgorithmKind::two_archive;
    } else {
        throw LookupError("unknown algorithm '" + name + "'");
    }
    return config;
}

int AlgorithmConfig::resolved_population(int num_objectives) const {
    return population > 0 ? population : 100 * num_objectives;
}

int AlgorithmConfig::resolved_generations(int dimension, int num_objectives) const {
    return generations > 0 ? generations : 120 * dimension / num_objectives;
}

std::uint64_t AlgorithmConfig::budget(int dimension, int num_objectives) const {
    return static_cast<std::uint64_t>(resolved_population(num_objectives)) *
           static_cast<std::uint64_t>(resolved_generations(dimension, num_objectives));
}

Outcome pareto_compare(std::span<const double> a, std::span<const double> b) {
    bool a_not_worse = true, b_not_worse = true;
    bool a_better_somewhere = false, b_better_somewhere = false;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] < b[m]) {
            a_better_somewhere = true;
            b_not_worse = false;
        } else if (b[m] < a[m]) {
            b_better_somewhere = true;
            a_not_worse = false;
        }
    }
    if (a_not_worse && a_better_somewhere) return Outcome::first_better;
    if (b_not_worse && b_better_somewhere) return Outcome::second_better;
    return Outcome::incomparable;
}

Outcome cdp_compare(std::span<const double> f_a, double v_a, std::span<const double> f_b,
                    double v_b) {
    if (v_a == 0.0 && v_b == 0.0) return pareto_compare(f_a, f_b);
    if (v_a == v_b) return Outcome::incomparable;
    return v_a < v_b ? Outcome::first_better : Outcome::second_better;
}

Outcome cdp_compare(const Evaluation& a, const Evaluation& b) {
    return cdp_compare(a.objectives, a.violation, b.objectives, b.violation);
}

double tchebycheff(std::span<const double> objectives, std::span<const double> weight,
                   std::span<const double> z_star) {
    double worst = 0.0;
    for (std::size_t m = 0; m < objectives.size(); ++m) {
        worst = std::max(worst, weight[m] * std::fabs(objectives[m] - z_star[m]));
    }
    return worst;
}

Outcome eps_compare(double v_a, double v_b, double agg_a, double agg_b, double epsilon) {
    if ((v_a <= epsilon && v_b <= epsilon) || v_a == v_b) {
        if (agg_a < agg_b) return Outcome::first_better;
        if (agg_b < agg_a) return Outcome::second_better;
        return Outcome::incomparable;
    }
    return v_a < v_b ? Outcome::first_better : Outcome::second_better;
}

EpsilonSchedule::EpsilonSchedule(double decay, double feasible_ratio_limit,
                                 int control_generation, double initial_epsilon)
    : decay_(decay),
      feasible_ratio_limit_(feasible_ratio_limit),
      control_generation_(control_generation),
      epsilon_(control_generation <= 0 ? 0.0 : initial_epsilon) {}

double EpsilonSchedule::initial_level(std::span<const double> violations,
                                      double theta_fraction) {
    if (violations.empty()) throw PreconditionError("epsilon schedule: empty population");
    std::vector<double> sorted(violations.begin(), violations.end());
    std::sort(sorted.begin(), sorted.end());
    auto rank = static_cast<std::size_t>(
        std::ceil(theta_fraction * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

void EpsilonSchedule::observe_violation(double v) noexcept {
    if (v > max_violation_) max_violation_ = v;
}

void EpsilonSchedule::advance(double feasible_ratio) {
    ++generation_;
    if (generation_ >= control_generation_) {
        epsilon_ = 0.0;
    } else if (feasible_ratio < feasible_ratio_limit_) {
        epsilon_ *= (1.0 - decay_);
    } else {
        epsilon_ = (1.0 + decay_) * max_violation_;
    }
}

namespace {

double sbx_spread(double u, double beta_bound, double eta) {
    double alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
    if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

} // namespace

void sbx(std::span<const double> parent1, std::span<const double> parent2,
         const BoxBounds& bounds, const OperatorParams& params, RngStream& rng,
         std::vector<double>& child1, std::vector<double>& child2) {
    child1.assign(parent1.begin(), parent1.end());
    child2.assign(parent2.begin(), parent2.end());
    if (rng.uniform() > params.crossover_prob) return;
    const double eta = params.crossover_eta;
    for (std::size_t i = 0; i < parent1.size(); ++i) {
        if (rng.uniform() > 0.5) continue;
        const double y1 = parent1[i], y2 = parent2[i];
        if (std::fabs(y1 - y2) <= kSbxEps) continue;
        const double lo = std::min(y1, y2), hi = std::max(y1, y2);
        const double yl = bounds.lower[i], yu = bounds.upper[i];
        const double u = rng.uniform();
        double beta = 1.0 + 2.0 * (lo - yl) / (hi - lo);
        double c_low = 0.5 * ((lo + hi) - sbx_spread(u, beta, eta) * (hi - lo));
        beta = 1.0 + 2.0 * (yu - hi) / (hi - lo);
        double c_high = 0.5 * ((lo + hi) + sbx_spread(u, beta, eta) * (hi - lo));
        c_low = std::clamp(c_low, yl, yu);
        c_high = std::clamp(c_high, yl, yu);
        if (rng.uniform() <= 0.5) std::swap(c_low, c_high);
        child1[i] = c_low;
        child2[i] = c_high;
    }
}

void polynomial_mutation(std::vector<double>& x, const BoxBounds& bounds,
                         const OperatorParams& params, RngStream& rng) {
    const double prob = params.resolved_mutation_prob(static_cast<int>(x.size()));
    const double eta = params.mutation_eta;
    const double mut_pow = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.uniform() > prob) continue;
        const double yl = bounds.lower[i], yu = bounds.upper[i];
        const double range = yu - yl;
        const double y = x[i];
        const double r = rng.uniform();
        double deltaq;
        if (r <= 0.5) {
            double xy = 1.0 - (y - yl) / range;
            double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, mut_pow) - 1.0;
        } else {
            double xy = 1.0 - (yu - y) / range;
            double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, mut_pow);
        }
        x[i] = std::clamp(y + deltaq * range, yl, yu);
    }
}

std::vector<double> de_crossover(std::span<const double> base, std::span<const double> a,
                                 std::span<const double> b, const BoxBounds& bounds,
                                 const OperatorParams& params, RngStream& rng) {
    std::vector<double> child(base.begin(), base.end());
    const std::size_t forced = rng.uniform_index(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (i == forced || rng.uniform() < params.de_crossover_rate) {
            child[i] = base[i] + params.de_scale * (a[i] - b[i]);
        }
    }
    bounds.clamp(child);
    return child;
}

std::vector<std::vector<std::size_t>> nondominated_sort(
    std::size_t count, const std::function<Outcome(std::size_t, std::size_t)>& compare) {
    std::vector<std::vector<std::size_t>> dominates(count);
    std::vector<std::size_t> dominated_by(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            switch (compare(i, j)) {
            case Outcome::first_better:
                dominates[i].push_back(j);
                ++dominated_by[j];
                break;
            case Outcome::second_better:
                dominates[j].push_back(i);
                ++dominated_by[i];
                break;
            case Outcome::incomparable:
                break;
            }
        }
    }
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < count; ++i) {
        if (dominated_by[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominates[i]) {
                if (--dominated_by[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<std::vector<double>> simplex_weights(int count, int num_objectives) {
    if (count < 1) throw ConfigError("weights: count must be positive");
    std::vector<std::vector<double>> weights;
    weights.reserve(static_cast<std::size_t>(count));
    if (num_objectives == 2) {
        if (count == 1) return {{0.5, 0.5}};
        for (int j = 0; j < count; ++j) {
            double w = static_cast<double>(j) / static_cast<double>(count - 1);
            weights.push_back({w, 1.0 - w});
        }
        return weights;
    }
    if (num_objectives != 3) throw ConfigError("weights: 2 or 3 objectives supported");
    // Smallest lattice resolution reaching the requested count; when the
    // lattice is larger, the lexicographic prefix is kept.
    int h = 1;
    while ((h + 1) * (h + 2) / 2 < count) ++h;
    for (int i = 0; i <= h && static_cast<int>(weights.size()) < count; ++i) {
        for (int j = 0; j + i <= h && static_cast<int>(weights.size()) < count; ++j) {
            int k = h - i - j;
            weights.push_back({static_cast<double>(i) / h, static_cast<double>(j) / h,
                               static_cast<double>(k) / h});
        }
    }
    return weights;
}

namespace {

struct Individual {
    std::vector<double> x;
    std::vector<double> f;  // normalized objectives
    double v = 0.0;
};

using Pool = std::vector<Individual>;
using PoolComparator = Outcome (*)(const Pool&, std::size_t, std::size_t);

Outcome pool_cdp(const Pool& pool, std::size_t i, std::size_t j) {
    return cdp_compare(pool[i].f, pool[i].v, pool[j].f, pool[j].v);
}

Outcome pool_pareto(const Pool& pool, std::size_t i, std::size_t j) {
    return pareto_compare(pool[i].f, pool[j].f);
}

/// Counts evaluations, streams them to the sink and optionally keeps the
/// full trace.
class RunSession {
public:
    RunSession(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed,
               EvalSink* sink, bool keep_evaluations)
        : problem_(problem), sink_(sink), keep_(keep_evaluations) {
        trace_.problem = problem.meta();
        trace_.algorithm = config.name;
        trace_.seed = seed;
        trace_.budget =
            config.budget(problem.meta().dimension, problem.meta().num_objectives);
        if (keep_) trace_.evaluations.reserve(trace_.budget);
    }

    std::uint64_t budget() const noexcept { return trace_.budget; }
    std::uint64_t used() const noexcept { return used_; }

    Individual evaluate(const std::vector<double>& x) {
        if (used_ >= trace_.budget) {
            throw ConfigError("engine attempted to exceed the evaluation budget");
        }
        Evaluation e = problem_.evaluate(x, ++used_);
        if (sink_ != nullptr) sink_->on_evaluation(e);
        Individual individual{e.x, e.objectives, e.violation};
        if (keep_) trace_.evaluations.push_back(std::move(e));
        return individual;
    }

    RunTrace take_trace() { return std::move(trace_); }

private:
    const Problem& problem_;
    EvalSink* sink_;
    bool keep_;
    std::uint64_t used_ = 0;
    RunTrace trace_;
};

Pool evaluate_initial_population(RunSession& session, const BoxBounds& bounds, int count,
                                 RngStream& rng) {
    auto points = uniform_init(bounds, static_cast<std::size_t>(count), rng);
    Pool population;
    population.reserve(points.size());
    for (auto& x : points) population.push_back(session.evaluate(x));
    return population;
}

double perpendicular_distance(std::span<const double> point,
                              std::span<const double> unit_direction) {
    double dot = 0.0, norm_sq = 0.0;
    for (std::size_t m = 0; m < point.size(); ++m) {
        dot += point[m] * unit_direction[m];
        norm_sq += point[m] * point[m];
    }
    double perp_sq = norm_sq - dot * dot;
    return perp_sq > 0.0 ? std::sqrt(perp_sq) : 0.0;
}

std::vector<std::vector<double>> unit_directions(
    const std::vector<std::vector<double>>& weights) {
    std::vector<std::vector<double>> dirs = weights;
    for (auto& d : dirs) {
        double norm = std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
        if (norm <= 0.0) norm = 1.0;
        for (double& c : d) c /= norm;
    }
    return dirs;
}

std::size_t associate_direction(std::span<const double> point,
                                const std::vector<std::vector<double>>& dirs,
                                double* distance_out = nullptr) {
    std::size_t best = 0;
    double best_dist = kInf;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        double dist = perpendicular_distance(point, dirs[d]);
        if (dist < best_dist) {
            best_dist = dist;
            best = d;
        }
    }
    if (distance_out != nullptr) *distance_out = best_dist;
    return best;
}

/// Reference-direction niching over a boundary front: fills the least
/// crowded direction with its closest remaining candidate, deterministic
/// tie breaks by front position.
std::vector<std::size_t> niche_select(const Pool& pool,
                                      std::span<const std::size_t> selected,
                                      std::span<const std::size_t> boundary,
                                      std::size_t slots,
                                      const std::vector<std::vector<double>>& dirs) {
    std::vector<std::size_t> counts(dirs.size(), 0);
    for (std::size_t idx : selected) ++counts[associate_direction(pool[idx].f, dirs)];

    struct Candidate {
        double distance;
        std::size_t order;
        std::size_t index;
    };
    std::vector<std::vector<Candidate>> per_direction(dirs.size());
    for (std::size_t pos = 0; pos < boundary.size(); ++pos) {
        double dist = 0.0;
        std::size_t d = associate_direction(pool[boundary[pos]].f, dirs, &dist);
        per_direction[d].push_back({dist, pos, boundary[pos]});
    }
    for (auto& bucket : per_direction) {
        std::sort(bucket.begin(), bucket.end(), [](const Candidate& a, const Candidate& b) {
            return a.distance != b.distance ? a.distance < b.distance : a.order < b.order;
        });
    }
    std::vector<std::size_t> taken(dirs.size(), 0);
    std::vector<std::size_t> chosen;
    chosen.reserve(slots);
    while (chosen.size() < slots) {
        std::size_t best_dir = dirs.size();
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            if (taken[d] == per_direction[d].size()) continue;
            if (best_dir == dirs.size() || counts[d] < counts[best_dir]) best_dir = d;
        }
        if (best_dir == dirs.size()) break;
        chosen.push_back(per_direction[best_dir][taken[best_dir]].index);
        ++taken[best_dir];
        ++counts[best_dir];
    }
    return chosen;
}

std::vector<std::size_t> crowding_select(const Pool& pool,
                                         std::span<const std::size_t> front,
                                         std::size_t slots) {
    const std::size_t n = front.size();
    const std::size_t m_count = pool[front[0]].f.size();
    std::vector<double> crowding(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < m_count; ++m) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pool[front[a]].f[m] < pool[front[b]].f[m];
        });
        double span = pool[front[order.back()]].f[m] - pool[front[order.front()]].f[m];
        crowding[order.front()] = kInf;
        crowding[order.back()] = kInf;
        if (span <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            crowding[order[k]] +=
                (pool[front[order[k + 1]]].f[m] - pool[front[order[k - 1]]].f[m]) / span;
        }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return crowding[a] > crowding[b]; });
    std::vector<std::size_t> chosen;
    chosen.reserve(slots);
    for (std::size_t k = 0; k < slots && k < n; ++k) chosen.push_back(front[order[k]]);
    return chosen;
}

/// Front-by-front truncation to `cap`; the boundary front is resolved by
/// crowding distance or reference-direction niching.
Pool select_by_fronts(Pool pool, std::size_t cap, PoolComparator compare, bool use_crowding,
                      const std::vector<std::vector<double>>& dirs) {
    if (pool.size() <= cap) return pool;
    auto fronts = nondominated_sort(
        pool.size(), [&](std::size_t i, std::size_t j) { return compare(pool, i, j); });
    std::vector<std::size_t> selected;
    selected.reserve(cap);
    for (const auto& front : fronts) {
        if (selected.size() + front.size() <= cap) {
            selected.insert(selected.end(), front.begin(), front.end());
            if (selected.size() == cap) break;
            continue;
        }
        std::size_t slots = cap - selected.size();
        std::vector<std::size_t> boundary_choice =
            use_crowding ? crowding_select(pool, front, slots)
                         : niche_select(pool, selected, front, slots, dirs);
        selected.insert(selected.end(), boundary_choice.begin(), boundary_choice.end());
        break;
    }
    Pool next;
    next.reserve(selected.size());
    for (std::size_t idx : selected) next.push_back(std::move(pool[idx]));
    return next;
}

std::size_t tournament_pick(const Pool& population, RngStream& rng) {
    std::size_t i = rng.uniform_index(population.size());
    std::size_t j = rng.uniform_index(population.size());
    switch (pool_cdp(population, i, j)) {
    case Outcome::first_better:
        return i;
    case Outcome::second_better:
        return j;
    case Outcome::incomparable:
        break;
    }
    return rng.uniform() < 0.5 ? i : j;
}

void update_z_star(std::vector<double>& z_star, std::span<const double> f) {
    for (std::size_t m = 0; m < z_star.size(); ++m) {
        if (f[m] < z_star[m]) z_star[m] = f[m];
    }
}

double feasible_fraction(const Pool& population) {
    std::size_t feasible = 0;
    for (const auto& ind : population) {
        if (ind.v == 0.0) ++feasible;
    }
    return static_cast<double>(feasible) / static_cast<double>(population.size());
}

} // namespace

RunTrace run_cdp_ea(const Problem& problem, const AlgorithmConfig& config,
                    std::uint64_t seed, EvalSink* sink, bool keep_evaluations) {
    const ProblemMeta& meta = problem.meta();
    const int pop_size = config.resolved_population(meta.num_objectives);
    const int generations = config.resolved_generations(meta.dimension, meta.num_objectives);
    RunSession session(problem, config, seed, sink, keep_evaluations);
    RngStream rng(seed);

    Pool population = evaluate_initial_population(session, meta.bounds, pop_size, rng);
    const bool use_crowding = meta.num_objectives == 2;
    const auto dirs = unit_directions(simplex_weights(pop_size, meta.num_objectives));

    std::vector<double> c1, c2;
    for (int gen = 1; gen < generations; ++gen) {
        const std::size_t combined_size = 2 * population.size();
        Pool combined = population;
        combined.reserve(combined_size);
        while (combined.size() < combined_size) {
            const Individual& pa = population[tournament_pick(population, rng)];
            const Individual& pb = population[tournament_pick(population, rng)];
            sbx(pa.x, pb.x, meta.bounds, config.op, rng, c1, c2);
            polynomial_mutation(c1, meta.bounds, config.op, rng);
            combined.push_back(session.evaluate(c1));
            if (combined.size() < combined_size) {
                polynomial_mutation(c2, meta.bounds, config.op, rng);
                combined.push_back(session.evaluate(c2));
            }
        }
        population = select_by_fronts(std::move(combined), pop_size, pool_cdp, use_crowding,
                                      dirs);
    }
    return session.take_trace();
}

RunTrace run_moead_ieps(const Problem& problem, const AlgorithmConfig& config,
                        std::uint64_t seed, EvalSink* sink, bool keep_evaluations) {
    const ProblemMeta& meta = problem.meta();
    const int pop_size = config.resolved_population(meta.num_objectives);
    const int generations = config.resolved_generations(meta.dimension, meta.num_objectives);
    const DecompositionParams& dp = config.decomposition;
    RunSession session(problem, config, seed, sink, keep_evaluations);
    RngStream rng(seed);

    const auto weights = simplex_weights(pop_size, meta.num_objectives);
    const std::size_t neighborhood =
        std::min<std::size_t>(static_cast<std::size_t>(dp.neighborhood), weights.size());
    std::vector<std::vector<std::size_t>> neighbors(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        std::vector<std::size_t> order(weights.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double da = 0.0, db = 0.0;
            for (std::size_t m = 0; m < weights[i].size(); ++m) {
                da += (weights[a][m] - weights[i][m]) * (weights[a][m] - weights[i][m]);
                db += (weights[b][m] - weights[i][m]) * (weights[b][m] - weights[i][m]);
            }
            return da < db;
        });
        neighbors[i].assign(order.begin(), order.begin() + neighborhood);
    }

    std::vector<double> z_star(meta.num_objectives, kInf);
    Pool population = evaluate_initial_population(session, meta.bounds, pop_size, rng);
    std::vector<double> init_violations;
    init_violations.reserve(population.size());
    for (const auto& ind : population) {
        update_z_star(z_star, ind.f);
        init_violations.push_back(ind.v);
    }
    const int control_generation =
        static_cast<int>(std::floor(dp.control_fraction * generations));
    EpsilonSchedule schedule(
        dp.eps_decay, dp.feasible_ratio_limit, control_generation,
        EpsilonSchedule::initial_level(init_violations, dp.theta_fraction));
    for (double v : init_violations) schedule.observe_violation(v);

    std::vector<std::size_t> all_indices(population.size());
    std::iota(all_indices.begin(), all_indices.end(), std::size_t{0});

    for (int gen = 1; gen < generations; ++gen) {
        schedule.advance(feasible_fraction(population));
        for (std::size_t i = 0; i < population.size(); ++i) {
            const bool local = rng.uniform() < dp.mating_prob;
            std::span<const std::size_t> pool =
                local ? std::span<const std::size_t>(neighbors[i])
                      : std::span<const std::size_t>(all_indices);
            std::size_t r1 = pool[rng.uniform_index(pool.size())];
            std::size_t r2 = pool[rng.uniform_index(pool.size())];
            std::size_t r3 = pool[rng.uniform_index(pool.size())];
            if (pool.size() >= 3) {
                while (r2 == r1) r2 = pool[rng.uniform_index(pool.size())];
                while (r3 == r1 || r3 == r2) r3 = pool[rng.uniform_index(pool.size())];
            }

            std::vector<double> child_x =
                de_crossover(population[r1].x, population[r2].x, population[r3].x,
                             meta.bounds, config.op, rng);
            polynomial_mutation(child_x, meta.bounds, config.op, rng);
            Individual child = session.evaluate(child_x);
            update_z_star(z_star, child.f);
            schedule.observe_violation(child.v);

            int replaced = 0;
            for (std::size_t pos : rng.permutation(pool.size())) {
                if (replaced >= dp.max_replacements) break;
                std::size_t j = pool[pos];
                double agg_child = tchebycheff(child.f, weights[j], z_star);
                double agg_incumbent = tchebycheff(population[j].f, weights[j], z_star);
                if (eps_compare(child.v, population[j].v, agg_child, agg_incumbent,
                                schedule.epsilon()) == Outcome::first_better) {
                    population[j] = child;
                    ++replaced;
                }
            }
        }
    }
    return session.take_trace();
}

RunTrace run_two_archive(const Problem& problem, const AlgorithmConfig& config,
                         std::uint64_t seed, EvalSink* sink, bool keep_evaluations) {
    const ProblemMeta& meta = problem.meta();
    const int pop_size = config.resolved_population(meta.num_objectives);
    const int generations = config.resolved_generations(meta.dimension, meta.num_objectives);
    const auto cap = static_cast<std::size_t>(pop_size);
    RunSession session(problem, config, seed, sink, keep_evaluations);
    RngStream rng(seed);

    const auto weights = simplex_weights(pop_size, meta.num_objectives);
    const auto dirs = unit_directions(weights);
    std::vector<double> z_star(meta.num_objectives, kInf);

    // Convergence archive: every feasible member ranked by Pareto
    // dominance; infeasible candidates ranked by nondominated sorting of
    // (violation, aggregation to the associated direction) fill what is
    // left.
    auto update_convergence = [&](Pool pool) {
        std::vector<std::size_t> feasible, infeasible;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            (pool[i].v == 0.0 ? feasible : infeasible).push_back(i);
        }
        if (feasible.size() >= cap) {
            Pool feasible_pool;
            feasible_pool.reserve(feasible.size());
            for (std::size_t idx : feasible) feasible_pool.push_back(std::move(pool[idx]));
            return select_by_fronts(std::move(feasible_pool), cap, pool_pareto, false, dirs);
        }
        Pool archive;
        archive.reserve(cap);
        std::vector<std::size_t> kept = feasible;
        for (std::size_t idx : feasible) archive.push_back(pool[idx]);
        if (infeasible.empty()) return archive;

        std::vector<std::array<double, 2>> keys(infeasible.size());
        for (std::size_t k = 0; k < infeasible.size(); ++k) {
            const Individual& ind = pool[infeasible[k]];
            std::size_t d = associate_direction(ind.f, dirs);
            keys[k] = {ind.v, tchebycheff(ind.f, weights[d], z_star)};
        }
        auto fronts =
            nondominated_sort(infeasible.size(), [&](std::size_t a, std::size_t b) {
                return pareto_compare(keys[a], keys[b]);
            });
        std::size_t slots = cap - archive.size();
        for (const auto& front : fronts) {
            if (slots == 0) break;
            if (front.size() <= slots) {
                for (std::size_t k : front) {
                    archive.push_back(pool[infeasible[k]]);
                    kept.push_back(infeasible[k]);
                }
                slots -= front.size();
                continue;
            }
            std::vector<std::size_t> boundary;
            boundary.reserve(front.size());
            for (std::size_t k : front) boundary.push_back(infeasible[k]);
            for (std::size_t idx : niche_select(pool, kept, boundary, slots, dirs)) {
                archive.push_back(pool[idx]);
            }
            break;
        }
        return archive;
    };

    auto update_diversity = [&](Pool pool) {
        return select_by_fronts(std::move(pool), cap, pool_pareto, false, dirs);
    };

    Pool initial = evaluate_initial_population(session, meta.bounds, pop_size, rng);
    for (const auto& ind : initial) update_z_star(z_star, ind.f);
    Pool convergence = update_convergence(initial);
    Pool diversity = update_diversity(std::move(initial));

    std::vector<double> c1, c2;
    for (int gen = 1; gen < generations; ++gen) {
        auto ca_fronts = nondominated_sort(
            convergence.size(),
            [&](std::size_t i, std::size_t j) { return pool_cdp(convergence, i, j); });
        const double ca_quality = static_cast<double>(ca_fronts.front().size()) /
                                  static_cast<double>(convergence.size());
        Pool offspring;
        offspring.reserve(cap);
        while (offspring.size() < cap) {
            const Individual& p1 = convergence[rng.uniform_index(convergence.size())];
            const Individual& p2 = (rng.uniform() < ca_quality || diversity.empty())
                                       ? convergence[rng.uniform_index(convergence.size())]
                                       : diversity[rng.uniform_index(diversity.size())];
            sbx(p1.x, p2.x, meta.bounds, config.op, rng, c1, c2);
            polynomial_mutation(c1, meta.bounds, config.op, rng);
            Individual child1 = session.evaluate(c1);
            update_z_star(z_star, child1.f);
            offspring.push_back(std::move(child1));
            if (offspring.size() < cap) {
                polynomial_mutation(c2, meta.bounds, config.op, rng);
                Individual child2 = session.evaluate(c2);
                update_z_star(z_star, child2.f);
                offspring.push_back(std::move(child2));
            }
        }
        Pool ca_pool = convergence;
        ca_pool.insert(ca_pool.end(), offspring.begin(), offspring.end());
        convergence = update_convergence(std::move(ca_pool));
        Pool da_pool = std::move(diversity);
        da_pool.insert(da_pool.end(), std::make_move_iterator(offspring.begin()),
                       std::make_move_iterator(offspring.end()));
        diversity = update_diversity(std::move(da_pool));
    }
    return session.take_trace();
}

RunTrace run_algorithm(const Problem& problem, const AlgorithmConfig& config,
                       std::uint64_t seed, EvalSink* sink, bool keep_evaluations) {
    switch (config.kind) {
    case AlgorithmKind::cdp_ea:
        return run_cdp_ea(problem, config, seed, sink, keep_evaluations);
    case AlgorithmKind::moead_ieps:
        return run_moead_ieps(problem, config, seed, sink, keep_evaluations);
    case AlgorithmKind::two_archive:
        return run_two_archive(problem, config, seed, sink, keep_evaluations);
    }
    throw ConfigError("unknown algorithm kind");
}

} // namespace cmopbench
