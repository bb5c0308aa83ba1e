#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmopbench/errors.hpp"
#include "cmopbench/experiment.hpp"
#include "cmopbench/problems.hpp"
#include "cmopbench/runtimes.hpp"
#include "support/oracles.hpp"

using namespace cmopbench;

namespace {

TargetSet three_targets() {
    // Synthetic set: values 0.9, 0.3, -0.5 from easy to hard.
    TargetSet set;
    set.tau_ref = -1.0;
    set.targets = {{1.9, 0.9, TargetClass::constraint_satisfaction},
                   {1.3, 0.3, TargetClass::front_approximation},
                   {0.5, -0.5, TargetClass::front_approximation}};
    return set;
}

} // namespace

TEST_CASE("runtime extraction hits the first index at or below the target") {
    StepTrace trace{{1, 1.5}, {10, 0.8}, {50, -0.2}};
    TargetSet set = three_targets();
    RuntimeRecord record = extract_runtimes(trace, set, 100);
    REQUIRE(record.runtimes.size() == 3);
    CHECK(record.runtimes[0] == 10);  // target 0.9
    CHECK(record.runtimes[1] == 10);  // target 0.3
    CHECK_FALSE(record.runtimes[2].has_value());  // target -0.5 never reached

    SUBCASE("exact equality counts as reached") {
        StepTrace boundary{{4, 0.9}};
        RuntimeRecord hit = extract_runtimes(boundary, set, 100);
        CHECK(hit.runtimes[0] == 4);
    }
    SUBCASE("unsorted traces are rejected") {
        StepTrace bad{{5, 1.0}, {5, 0.5}};
        CHECK_THROWS_AS(extract_runtimes(bad, set, 100), SequenceError);
    }
    SUBCASE("steps beyond the budget do not count") {
        StepTrace late{{1, 1.5}, {200, -0.9}};
        RuntimeRecord capped = extract_runtimes(late, set, 100);
        CHECK_FALSE(capped.runtimes[2].has_value());
    }
}

TEST_CASE("runtimes are nondecreasing in target difficulty") {
    RngStream rng(13);
    TargetSet targets = make_targets(make_builtin(kHole, 5).meta());
    for (int trial = 0; trial < 50; ++trial) {
        // Random monotone step trace.
        StepTrace trace;
        double value = rng.uniform(1.0, 3.0);
        std::uint64_t index = 0;
        while (value > -0.6 && index < 5000) {
            index += 1 + rng.uniform_index(40);
            trace.push_back({index, value});
            value -= rng.uniform(0.0, 0.2);
        }
        RuntimeRecord record = extract_runtimes(trace, targets, 5000);
        std::uint64_t previous = 0;
        for (const auto& runtime : record.runtimes) {
            if (!runtime.has_value()) continue;  // harder targets may be missing
            CHECK(*runtime >= previous);
            previous = *runtime;
        }
    }
}

TEST_CASE("ERD pooling and proportions") {
    TargetSet set;
    set.targets = {{0.0, 0.5, TargetClass::constraint_satisfaction},
                   {0.0, -0.5, TargetClass::front_approximation}};
    RuntimeRecord one;
    one.budget = 100;
    one.runtimes = {std::uint64_t{3}, std::nullopt};

    Erd erd = build_erd(std::vector<RuntimeRecord>{one});
    CHECK(erd.denominator == 2);
    CHECK(erd.final_proportion() == doctest::Approx(0.5));
    CHECK(erd.proportion_at(2) == 0.0);
    CHECK(erd.proportion_at(3) == doctest::Approx(0.5));

    SUBCASE("duplicated runs leave proportions unchanged") {
        Erd doubled = build_erd(std::vector<RuntimeRecord>{one, one});
        CHECK(doubled.denominator == 4);
        CHECK(doubled.final_proportion() == doctest::Approx(0.5));
        REQUIRE(doubled.steps.size() == erd.steps.size());
        for (std::size_t i = 0; i < erd.steps.size(); ++i) {
            CHECK(doubled.steps[i].first == erd.steps[i].first);
            CHECK(doubled.steps[i].second == doctest::Approx(erd.steps[i].second));
        }
    }
    SUBCASE("aggregation pools pairs and sums denominators") {
        RuntimeRecord other;
        other.budget = 100;
        other.runtimes = {std::uint64_t{7}, std::uint64_t{9}};
        Erd pooled = build_erd(std::vector<RuntimeRecord>{one, other});
        CHECK(pooled.denominator == 4);
        CHECK(pooled.final_proportion() == doctest::Approx(0.75));
    }
    SUBCASE("mismatched target counts are rejected") {
        RuntimeRecord wrong;
        wrong.budget = 100;
        wrong.runtimes = {std::uint64_t{1}};
        CHECK_THROWS_AS(build_erd(std::vector<RuntimeRecord>{one, wrong}), MismatchError);
    }
}

TEST_CASE("ERD is a nondecreasing step function into [0,1]") {
    RngStream rng(99);
    TargetSet targets = make_targets(make_builtin(kLinTrunc, 5).meta());
    std::vector<RuntimeRecord> records;
    for (int run = 0; run < 10; ++run) {
        RuntimeRecord record;
        record.budget = 1000;
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            t += rng.uniform_index(30);
            if (t > 800) {
                record.runtimes.push_back(std::nullopt);
            } else {
                record.runtimes.push_back(std::max<std::uint64_t>(1, t));
            }
        }
        records.push_back(std::move(record));
    }
    Erd erd = build_erd(records);
    double previous = 0.0;
    for (const auto& [evals, proportion] : erd.steps) {
        CHECK(proportion >= previous);
        CHECK(proportion <= 1.0);
        previous = proportion;
    }
    // Final value x denominator = number of reached pairs.
    std::size_t reached = 0;
    for (const auto& record : records) reached += record.reached_count();
    CHECK(erd.final_proportion() * static_cast<double>(erd.denominator) ==
          doctest::Approx(static_cast<double>(reached)));
}

TEST_CASE("feasibility fractions step at first crossings") {
    std::vector<StepTrace> traces;
    traces.push_back({{1, 0.5}});             // feasible from the start
    traces.push_back({{1, 2.0}, {40, 0.9}});  // crosses at 40
    traces.push_back({{1, 3.0}});             // never crosses
    auto fractions = feasibility_fractions(traces, 1.0);
    REQUIRE(fractions.size() == 2);
    CHECK(fractions[0].first == 1);
    CHECK(fractions[0].second == doctest::Approx(1.0 / 3.0));
    CHECK(fractions[1].first == 40);
    CHECK(fractions[1].second == doctest::Approx(2.0 / 3.0));

    SUBCASE("all feasible at the first evaluation") {
        std::vector<StepTrace> all{{{1, 0.2}}, {{1, -0.4}}};
        auto f = feasibility_fractions(all, 1.0);
        REQUIRE(f.size() == 1);
        CHECK(f[0].first == 1);
        CHECK(f[0].second == 1.0);
    }
    SUBCASE("none feasible") {
        std::vector<StepTrace> none{{{1, 1.7}}, {{1, 2.0, }}};
        CHECK(feasibility_fractions(none, 1.0).empty());
    }
}

TEST_CASE("improvement-only step traces lose nothing against full traces") {
    RngStream rng(404);
    TargetSet targets = make_targets(make_builtin(kHole, 5).meta());
    for (int trial = 0; trial < 20; ++trial) {
        auto stream = test::random_stream(400, 2, 0.05, rng, true);
        AnytimeIndicator state(2);
        StepTrace improvements;
        StepTrace full;
        for (const auto& e : stream) {
            state.ingest(e);
            double value = state.value();
            full.push_back({e.eval_index, value});
            if (improvements.empty() || value < improvements.back().value) {
                improvements.push_back({e.eval_index, value});
            }
        }
        RuntimeRecord from_steps = extract_runtimes(improvements, targets, 400);
        RuntimeRecord from_full = extract_runtimes(full, targets, 400);
        REQUIRE(from_steps.runtimes == from_full.runtimes);
    }
}
