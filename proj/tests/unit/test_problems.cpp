#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmopbench/errors.hpp"
#include "cmopbench/problems.hpp"
#include "cmopbench/rng.hpp"
#include "support/oracles.hpp"

using namespace cmopbench;

namespace {

// Dense sample of the true normalized front: x = (x1, 0, ..., 0) scanning
// the feasible first-coordinate range.
std::vector<std::vector<double>> sample_front(const Problem& problem, std::size_t count) {
    const ProblemMeta& meta = problem.meta();
    std::vector<std::vector<double>> front;
    front.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(count - 1);
        std::vector<double> x(meta.dimension, 0.0);
        x[0] = meta.bounds.lower[0] + t * (meta.bounds.upper[0] - meta.bounds.lower[0]);
        Evaluation e = problem.evaluate(x);
        if (e.feasible()) front.push_back(e.objectives);
    }
    return front;
}

} // namespace

TEST_CASE("LIN-TRUNC spot values") {
    Evaluation e = evaluate_builtin(kLinTrunc, std::vector<double>{1.0, 0.0, 0.0});
    CHECK(e.objectives_raw[0] == 1.0);
    CHECK(e.objectives_raw[1] == 0.0);
    CHECK(e.objectives[0] == 1.0);
    CHECK(e.objectives[1] == 0.0);
    CHECK(e.constraints[0] == -0.5);
    CHECK(e.violation == 0.0);
    CHECK(e.feasible());

    Evaluation infeasible = evaluate_builtin(kLinTrunc, std::vector<double>{0.25, 0.0, 0.0});
    CHECK(infeasible.constraints[0] == doctest::Approx(0.25));
    CHECK(infeasible.violation == doctest::Approx(0.25));
    CHECK_FALSE(infeasible.feasible());
}

TEST_CASE("HOLE center is infeasible") {
    Evaluation e = evaluate_builtin(kHole, std::vector<double>{0.5, 0.0, 0.0, 0.0});
    CHECK(e.objectives_raw[0] == 0.5);
    CHECK(e.objectives_raw[1] == 0.5);
    CHECK(e.constraints[0] == doctest::Approx(0.04));
    CHECK_FALSE(e.feasible());
}

TEST_CASE("evaluation guards the domain") {
    CHECK_THROWS_AS(evaluate_builtin("NOPE", std::vector<double>{0.5, 0.5}), LookupError);
    CHECK_THROWS_AS(evaluate_builtin(kHole, std::vector<double>{1.5, 0.0}), DomainError);
    CHECK_THROWS_AS(make_builtin(kHole, 1), ConfigError);
}

TEST_CASE("registry lists builtins, rejects duplicates, evaluates by name") {
    ProblemRegistry registry = ProblemRegistry::with_builtins();
    auto names = registry.names();
    REQUIRE(names.size() == 3);
    CHECK(names[0] == kDelayedFeas);
    CHECK(names[1] == kHole);
    CHECK(names[2] == kLinTrunc);
    CHECK_THROWS_AS(
        registry.add(kHole, [](int d) { return make_builtin(kHole, d); }),
        ConflictError);
    CHECK_THROWS_AS(registry.make("missing", 5), LookupError);

    std::vector<double> x{0.75, 0.25, -0.5};
    Evaluation direct = evaluate_builtin(kLinTrunc, x);
    Evaluation via_registry = registry.make(kLinTrunc, 3).evaluate(x);
    CHECK(direct.objectives_raw == via_registry.objectives_raw);
    CHECK(direct.constraints == via_registry.constraints);

    registry.add("custom", [](int d) {
        ProblemMeta meta = make_builtin(kHole, d).meta();
        meta.name = "custom";
        return Problem(meta, [](std::span<const double> x_in, std::span<double> f,
                                std::span<double> g) {
            f[0] = x_in[0];
            f[1] = 1.0 - x_in[0];
            g[0] = -1.0;
        });
    });
    CHECK(registry.contains("custom"));
    CHECK(registry.names().size() == 4);
}

TEST_CASE("declared fronts evaluate feasible and lie on f2 = 1 - f1") {
    for (const char* name : {kLinTrunc, kDelayedFeas, kHole}) {
        Problem problem = make_builtin(name, 5);
        const ProblemMeta& meta = problem.meta();
        RngStream rng(17);
        std::size_t checked = 0;
        for (int i = 0; i < 2000; ++i) {
            std::vector<double> x(meta.dimension, 0.0);
            x[0] = rng.uniform(meta.bounds.lower[0], meta.bounds.upper[0]);
            Evaluation e = problem.evaluate(x);
            if (!e.feasible()) continue;  // HOLE gap, LIN-TRUNC x1 < 0.5
            ++checked;
            CHECK(std::fabs(e.objectives[1] - (1.0 - e.objectives[0])) < 1e-12);
        }
        CHECK(checked > 500);
    }
}

TEST_CASE("random feasible evaluations never dominate the declared front") {
    for (const char* name : {kLinTrunc, kDelayedFeas, kHole}) {
        Problem problem = make_builtin(name, 5);
        RngStream rng(23);
        auto points = uniform_init(problem.meta().bounds, 5000, rng);
        for (const auto& x : points) {
            Evaluation e = problem.evaluate(x);
            if (!e.feasible()) continue;
            CHECK(e.objectives[1] >= 1.0 - e.objectives[0] - 1e-12);
        }
    }
}

TEST_CASE("declared hypervolumes match the Monte-Carlo dominated-area oracle") {
    RngStream rng(31);
    for (const char* name : {kLinTrunc, kDelayedFeas, kHole}) {
        Problem problem = make_builtin(name, 4);
        auto front = sample_front(problem, 20001);
        auto mc = test::mc_hypervolume(front, 2, 1000000, rng);
        double declared = problem.meta().front_hypervolume;
        INFO(name);
        CHECK(std::fabs(mc.value - declared) < 3.0 * mc.standard_error + 1e-4);
        CHECK(std::fabs(mc.value - declared) < 0.003);
    }
}

TEST_CASE("uniform sampling on DELAYED-FEAS is essentially never feasible at D=10") {
    Problem problem = make_builtin(kDelayedFeas, 10);
    RngStream rng(41);
    int clean_trials = 0;
    for (int trial = 0; trial < 10; ++trial) {
        auto points = uniform_init(problem.meta().bounds, 200, rng);
        bool any_feasible = false;
        for (const auto& x : points) {
            any_feasible = any_feasible || problem.evaluate(x).feasible();
        }
        if (!any_feasible) ++clean_trials;
    }
    CHECK(clean_trials >= 9);
}
