#ifndef CMOPBENCH_EVOLVE_HPP
#define CMOPBENCH_EVOLVE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cmopbench/problems.hpp"
#include "cmopbench/rng.hpp"
#include "cmopbench/types.hpp"

namespace cmopbench {

inline constexpr const char* kCdpEa = "CDP-EA";
inline constexpr const char* kMoeadIeps = "MOEAD-IEPS";
inline constexpr const char* kTwoArchive = "TWO-ARCH";

struct OperatorParams {
    double crossover_prob = 1.0;   // SBX pair probability
    double crossover_eta = 30.0;   // SBX distribution index
    double mutation_eta = 20.0;    // polynomial mutation distribution index
    double mutation_prob = -1.0;   // per-variable rate; negative means 1/D
    double de_scale = 0.5;         // differential weight F
    double de_crossover_rate = 1.0;

    double resolved_mutation_prob(int dimension) const {
        return mutation_prob < 0.0 ? 1.0 / static_cast<double>(dimension) : mutation_prob;
    }
};

struct DecompositionParams {
    int neighborhood = 30;
    double mating_prob = 0.9;           // pick mates from the neighborhood
    int max_replacements = 2;
    double eps_decay = 0.1;             // multiplicative step of the comparison level
    double feasible_ratio_limit = 0.95; // switches decay to expansion
    double control_fraction = 0.8;      // generation fraction after which eps is 0
    double theta_fraction = 0.05;       // rank used for the initial level
};

enum class AlgorithmKind { cdp_ea, moead_ieps, two_archive };

/// Run parameters of one algorithm. Zero population/generations resolve to
/// the defaults 100*M and 120*D/M, which keep the budget at 12000*D.
struct AlgorithmConfig {
    std::string name;
    AlgorithmKind kind = AlgorithmKind::cdp_ea;
    int population = 0;
    int generations = 0;
    OperatorParams op;
    DecompositionParams decomposition;

    static AlgorithmConfig by_name(const std::string& name);

    int resolved_population(int num_objectives) const;
    int resolved_generations(int dimension, int num_objectives) const;
    std::uint64_t budget(int dimension, int num_objectives) const;
};

/// Outcome of a pairwise comparison.
enum class Outcome { first_better, second_better, incomparable };

/// Plain Pareto comparison on objective vectors (minimization, weak
/// dominance with at least one strict coordinate).
Outcome pareto_compare(std::span<const double> a, std::span<const double> b);

/// Constrained domination: feasible beats infeasible, infeasible compared
/// by violation, feasible pairs by Pareto dominance.
Outcome cdp_compare(std::span<const double> f_a, double v_a, std::span<const double> f_b,
                    double v_b);
Outcome cdp_compare(const Evaluation& a, const Evaluation& b);

/// Weighted Tchebycheff aggregation max_m w_m |f_m - z_m|.
double tchebycheff(std::span<const double> objectives, std::span<const double> weight,
                   std::span<const double> z_star);

/// Comparison under a violation tolerance: inside the tolerance (or at
/// equal violation) the aggregation decides, otherwise the violation does.
Outcome eps_compare(double v_a, double v_b, double agg_a, double agg_b, double epsilon);

/// Adaptive comparison level: decays while the population is mostly
/// infeasible, expands above the latest violation maximum otherwise, and is
/// clamped to zero from the control generation on.
class EpsilonSchedule {
public:
    EpsilonSchedule(double decay, double feasible_ratio_limit, int control_generation,
                    double initial_epsilon);

    /// Level for the initial population: violation of the ceil(fraction*n)-th
    /// least-violating member.
    static double initial_level(std::span<const double> violations, double theta_fraction);

    double epsilon() const noexcept { return epsilon_; }
    int generation() const noexcept { return generation_; }
    double max_violation() const noexcept { return max_violation_; }

    void observe_violation(double v) noexcept;

    /// Advances the generation counter and recomputes the level from the
    /// feasible ratio of the current population.
    void advance(double feasible_ratio);

private:
    double decay_;
    double feasible_ratio_limit_;
    int control_generation_;
    double epsilon_;
    double max_violation_ = 0.0;
    int generation_ = 0;
};

/// Simulated binary crossover (bounded). Children are clamped to the box.
void sbx(std::span<const double> parent1, std::span<const double> parent2,
         const BoxBounds& bounds, const OperatorParams& params, RngStream& rng,
         std::vector<double>& child1, std::vector<double>& child2);

/// Bounded polynomial mutation, in place.
void polynomial_mutation(std::vector<double>& x, const BoxBounds& bounds,
                         const OperatorParams& params, RngStream& rng);

/// base + F * (a - b), per-variable with rate CR, clamped to the box.
std::vector<double> de_crossover(std::span<const double> base, std::span<const double> a,
                                 std::span<const double> b, const BoxBounds& bounds,
                                 const OperatorParams& params, RngStream& rng);

/// Front peeling under an arbitrary comparator. compare(i, j) must return
/// first_better when i dominates j. Returns indices grouped per front.
std::vector<std::vector<std::size_t>> nondominated_sort(
    std::size_t count, const std::function<Outcome(std::size_t, std::size_t)>& compare);

/// Uniformly spread weight vectors on the unit simplex; for three
/// objectives a simplex lattice trimmed to the requested count.
std::vector<std::vector<double>> simplex_weights(int count, int num_objectives);

/// Runs one algorithm on one problem. Every evaluation is streamed to the
/// sink in eval_index order; the trace's evaluation list is filled only
/// when keep_evaluations is set. Evaluation count is population x
/// generations exactly.
RunTrace run_algorithm(const Problem& problem, const AlgorithmConfig& config,
                       std::uint64_t seed, EvalSink* sink = nullptr,
                       bool keep_evaluations = true);

RunTrace run_cdp_ea(const Problem& problem, const AlgorithmConfig& config,
                    std::uint64_t seed, EvalSink* sink = nullptr,
                    bool keep_evaluations = true);
RunTrace run_moead_ieps(const Problem& problem, const AlgorithmConfig& config,
                        std::uint64_t seed, EvalSink* sink = nullptr,
                        bool keep_evaluations = true);
RunTrace run_two_archive(const Problem& problem, const AlgorithmConfig& config,
                         std::uint64_t seed, EvalSink* sink = nullptr,
                         bool keep_evaluations = true);

} // namespace cmopbench

#endif
