#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "cmopbench/csv.hpp"
#include "cmopbench/errors.hpp"
#include "cmopbench/problems.hpp"
#include "cmopbench/rng.hpp"
#include "cmopbench/trace_io.hpp"
#include "cmopbench/types.hpp"

using namespace cmopbench;

TEST_CASE("box bounds validate and clamp") {
    CHECK_THROWS_AS(BoxBounds({0.0, 1.0}, {1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(BoxBounds({0.0}, {1.0, 2.0}), ConfigError);
    BoxBounds box = BoxBounds::uniform(3, -1.0, 2.0);
    CHECK(box.dimension() == 3);
    std::vector<double> inside{0.0, -1.0, 2.0};
    CHECK(box.contains(inside));
    std::vector<double> outside{0.0, -1.5, 0.0};
    CHECK_FALSE(box.contains(outside));
    box.clamp(outside);
    CHECK(outside[1] == -1.0);
}

TEST_CASE("rng streams replay identically") {
    RngStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c(43);
    bool differs = false;
    RngStream a2(42);
    for (int i = 0; i < 10; ++i) differs = differs || (a2.next_u64() != c.next_u64());
    CHECK(differs);
}

TEST_CASE("rng uniform stays in range and uniform_index is exhaustive") {
    RngStream rng(7);
    for (int i = 0; i < 10000; ++i) {
        double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    std::set<std::size_t> seen;
    for (int i = 0; i < 1000; ++i) seen.insert(rng.uniform_index(7));
    CHECK(seen.size() == 7);
    CHECK(*seen.rbegin() == 6);
}

TEST_CASE("derive_seed is deterministic and separates inputs") {
    auto s = derive_seed(1, "p", "a", 0);
    CHECK(s == derive_seed(1, "p", "a", 0));
    CHECK(s != derive_seed(1, "p", "a", 1));
    CHECK(s != derive_seed(2, "p", "a", 0));
    CHECK(s != derive_seed(1, "q", "a", 0));
    CHECK(s != derive_seed(1, "p", "b", 0));
    // No collisions over a realistic grid of cells.
    std::set<std::uint64_t> seeds;
    for (int master = 0; master < 3; ++master) {
        for (const char* problem : {"LIN-TRUNC_D5", "DELAYED-FEAS_D10", "HOLE_D30"}) {
            for (const char* algorithm : {"CDP-EA", "MOEAD-IEPS", "TWO-ARCH"}) {
                for (std::uint64_t run = 0; run < 30; ++run) {
                    seeds.insert(derive_seed(master, problem, algorithm, run));
                }
            }
        }
    }
    CHECK(seeds.size() == 3u * 3u * 3u * 30u);
}

TEST_CASE("uniform_init respects bounds and matches the uniform mean") {
    BoxBounds box({0.0, -1.0}, {1.0, 1.0});
    RngStream rng(11);
    auto points = uniform_init(box, 1000, rng);
    REQUIRE(points.size() == 1000);
    double sum0 = 0.0, sum1 = 0.0;
    for (const auto& x : points) {
        REQUIRE(x.size() == 2);
        CHECK(box.contains(x));
        CHECK_FALSE(std::isnan(x[0]));
        CHECK_FALSE(std::isnan(x[1]));
        sum0 += x[0];
        sum1 += x[1];
    }
    // Law of large numbers: empirical mean within 5 sigma of the midpoint.
    double sigma0 = (1.0 / std::sqrt(12.0)) / std::sqrt(1000.0);
    double sigma1 = (2.0 / std::sqrt(12.0)) / std::sqrt(1000.0);
    CHECK(std::fabs(sum0 / 1000.0 - 0.5) < 5.0 * sigma0);
    CHECK(std::fabs(sum1 / 1000.0 - 0.0) < 5.0 * sigma1);
}

TEST_CASE("csv doubles round-trip exactly") {
    RngStream rng(3);
    for (int i = 0; i < 1000; ++i) {
        double value = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12, 12));
        CHECK(csv::parse_double(csv::format_double(value)) == value);
    }
    CHECK(csv::format_double(0.5) == "0.5");
    CHECK(csv::split("a,b,,c").size() == 4);
}

TEST_CASE("run trace round-trips through persistence without loss") {
    Problem problem = make_builtin(kLinTrunc, 4);
    RngStream rng(5);
    RunTrace trace;
    trace.problem = problem.meta();
    trace.algorithm = "unit";
    trace.run_index = 3;
    trace.seed = 5;
    trace.budget = 64;
    auto points = uniform_init(problem.meta().bounds, 64, rng);
    std::uint64_t index = 0;
    for (const auto& x : points) {
        trace.evaluations.push_back(problem.evaluate(x, ++index));
    }

    std::ostringstream out;
    write_run_trace(trace, out);
    std::istringstream in(out.str());
    auto evaluations = read_run_trace(in, problem.meta());
    REQUIRE(evaluations.size() == trace.evaluations.size());
    for (std::size_t i = 0; i < evaluations.size(); ++i) {
        const Evaluation& orig = trace.evaluations[i];
        const Evaluation& read = evaluations[i];
        CHECK(read.eval_index == orig.eval_index);
        CHECK(read.x == orig.x);
        CHECK(read.objectives_raw == orig.objectives_raw);
        CHECK(read.objectives == orig.objectives);
        CHECK(read.constraints == orig.constraints);
        CHECK(read.violation == orig.violation);
    }
}

TEST_CASE("re-evaluating a persisted x reproduces the evaluation bit-identically") {
    Problem problem = make_builtin(kHole, 6);
    RngStream rng(9);
    auto points = uniform_init(problem.meta().bounds, 200, rng);
    for (const auto& x : points) {
        Evaluation first = problem.evaluate(x);
        std::string stored;
        for (double xi : x) {
            csv::append_double(stored, xi);
            stored.push_back(',');
        }
        auto fields = csv::split(std::string_view(stored).substr(0, stored.size() - 1));
        std::vector<double> reread;
        for (auto field : fields) reread.push_back(csv::parse_double(field));
        Evaluation second = problem.evaluate(reread);
        CHECK(second.objectives_raw == first.objectives_raw);
        CHECK(second.constraints == first.constraints);
        CHECK(second.violation == first.violation);
    }
}

TEST_CASE("run file names follow the store convention") {
    CHECK(run_file_name("HOLE_D5", "CDP-EA", 7) == "HOLE_D5__CDP-EA__run7.csv");
}
