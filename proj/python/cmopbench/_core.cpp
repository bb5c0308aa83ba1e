#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "cmopbench/delta.hpp"
#include "cmopbench/errors.hpp"
#include "cmopbench/evolve.hpp"
#include "cmopbench/experiment.hpp"
#include "cmopbench/indicators.hpp"
#include "cmopbench/problems.hpp"
#include "cmopbench/rng.hpp"
#include "cmopbench/targets.hpp"
#include "cmopbench/version.hpp"

namespace py = pybind11;
using namespace cmopbench;

namespace {

py::dict evaluation_to_dict(const Evaluation& e) {
    py::dict d;
    d["x"] = e.x;
    d["objectives_raw"] = e.objectives_raw;
    d["objectives"] = e.objectives;
    d["constraints"] = e.constraints;
    d["violation"] = e.violation;
    d["eval_index"] = e.eval_index;
    d["feasible"] = e.feasible();
    return d;
}

TargetSet targets_with_classes(const std::vector<bool>& plus_mask) {
    TargetSet set;
    set.targets.reserve(plus_mask.size());
    for (bool is_plus : plus_mask) {
        set.targets.push_back({0.0, 0.0,
                               is_plus ? TargetClass::front_approximation
                                       : TargetClass::constraint_satisfaction});
    }
    return set;
}

std::vector<RuntimeRecord> records_from_python(
    const std::vector<std::vector<std::optional<std::uint64_t>>>& runs,
    std::uint64_t budget) {
    std::vector<RuntimeRecord> records;
    records.reserve(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) {
        RuntimeRecord record;
        record.run_index = static_cast<int>(k);
        record.budget = budget;
        record.runtimes = runs[k];
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Anytime benchmarking for constrained multiobjective optimizers";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "BenchError");

    m.def("list_problems", []() {
        return ProblemRegistry::with_builtins().names();
    });

    m.def(
        "evaluate",
        [](const std::string& problem, const std::vector<double>& x) {
            return evaluation_to_dict(evaluate_builtin(problem, x));
        },
        py::arg("problem"), py::arg("x"),
        "Evaluate a built-in problem at x (dimension inferred from len(x)).");

    m.def(
        "problem_meta",
        [](const std::string& problem, int dimension) {
            ProblemMeta meta = make_builtin(problem, dimension).meta();
            py::dict d;
            d["name"] = meta.name;
            d["dimension"] = meta.dimension;
            d["num_objectives"] = meta.num_objectives;
            d["num_constraints"] = meta.num_constraints;
            d["lower"] = meta.bounds.lower;
            d["upper"] = meta.bounds.upper;
            d["ideal"] = meta.ideal;
            d["nadir"] = meta.nadir;
            d["hv_ref"] = meta.front_hypervolume;
            return d;
        },
        py::arg("problem"), py::arg("dimension") = 5);

    m.def("overall_violation", [](const std::vector<double>& g) {
        return overall_violation(g);
    });
    m.def("normalize_objectives",
          [](const std::vector<double>& f, const std::vector<double>& ideal,
             const std::vector<double>& nadir) {
              return normalize_objectives(f, ideal, nadir);
          });
    m.def("distance_to_roi", [](const std::vector<std::vector<double>>& points) {
        return distance_to_roi(points);
    });
    m.def(
        "hypervolume",
        [](const std::vector<std::vector<double>>& points, int num_objectives) {
            if (num_objectives == 0 && !points.empty()) {
                num_objectives = static_cast<int>(points.front().size());
            }
            return hypervolume(points, num_objectives == 0 ? 2 : num_objectives);
        },
        py::arg("points"), py::arg("num_objectives") = 0);
    m.def("indicator_mop", [](const std::vector<std::vector<double>>& points) {
        return indicator_mop(points);
    });

    py::class_<AnytimeIndicator>(m, "AnytimeIndicator")
        .def(py::init<int, double>(), py::arg("num_objectives"), py::arg("tau_star") = 1.0)
        .def(
            "ingest",
            [](AnytimeIndicator& self, const std::vector<double>& objectives,
               double violation) {
                Evaluation e;
                e.objectives = objectives;
                e.objectives_raw = objectives;
                e.violation = violation;
                e.eval_index = self.count() + 1;
                self.ingest(e);
            },
            py::arg("objectives"), py::arg("violation") = 0.0,
            "Feed one (already normalized) evaluation.")
        .def("value", &AnytimeIndicator::value)
        .def_property_readonly("count", &AnytimeIndicator::count)
        .def_property_readonly("has_feasible", &AnytimeIndicator::has_feasible)
        .def_property_readonly("min_violation", &AnytimeIndicator::min_violation)
        .def_property_readonly("front_hypervolume", &AnytimeIndicator::front_hypervolume);

    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("problem"),
          py::arg("algorithm"), py::arg("run_index"));

    m.def(
        "targets_for",
        [](const std::string& problem, int dimension) {
            TargetSet set = make_targets(make_builtin(problem, dimension).meta());
            py::list out;
            for (const Target& t : set.targets) {
                py::dict d;
                d["epsilon"] = t.epsilon;
                d["value"] = t.value;
                d["cls"] = t.cls == TargetClass::front_approximation ? "plus" : "minus";
                out.append(d);
            }
            return out;
        },
        py::arg("problem"), py::arg("dimension") = 5);

    m.def(
        "extract_runtimes",
        [](const std::vector<std::pair<std::uint64_t, double>>& steps,
           const std::string& problem, int dimension, std::uint64_t budget) {
            StepTrace trace;
            trace.reserve(steps.size());
            for (const auto& [index, value] : steps) trace.push_back({index, value});
            TargetSet set = make_targets(make_builtin(problem, dimension).meta());
            return extract_runtimes(trace, set, budget).runtimes;
        },
        py::arg("steps"), py::arg("problem"), py::arg("dimension"), py::arg("budget"));

    m.def(
        "delta_pair",
        [](const std::vector<std::vector<std::optional<std::uint64_t>>>& runs_a,
           const std::vector<std::vector<std::optional<std::uint64_t>>>& runs_b,
           const std::vector<bool>& plus_mask, std::uint64_t budget) {
            TargetSet set = targets_with_classes(plus_mask);
            DeltaResult result = delta_pair(records_from_python(runs_a, budget),
                                            records_from_python(runs_b, budget), set,
                                            budget);
            py::dict d;
            d["delta"] = result.delta;
            d["delta_plus"] = result.delta_plus;
            d["delta_minus"] = result.delta_minus;
            d["n"] = result.n;
            d["n_plus"] = result.n_plus;
            d["n_minus"] = result.n_minus;
            return d;
        },
        py::arg("runs_a"), py::arg("runs_b"), py::arg("plus_mask"), py::arg("budget"));

    m.def(
        "run",
        [](const std::string& problem, const std::string& algorithm, int dimension,
           std::uint64_t seed, int population, int generations) {
            Problem instance = make_builtin(problem, dimension);
            AlgorithmConfig config = AlgorithmConfig::by_name(algorithm);
            config.population = population;
            config.generations = generations;
            IndicatorObserver observer(instance.meta().num_objectives, ScaleFactors{});
            RunTrace trace = run_algorithm(instance, config, seed, &observer, false);
            py::dict d;
            d["budget"] = trace.budget;
            d["final_value"] = observer.state().value();
            py::list steps;
            for (const StepPoint& step : observer.steps()) {
                steps.append(py::make_tuple(step.eval_index, step.value));
            }
            d["steps"] = steps;
            return d;
        },
        py::arg("problem"), py::arg("algorithm"), py::arg("dimension") = 5,
        py::arg("seed") = 1, py::arg("population") = 0, py::arg("generations") = 0,
        "Run one algorithm and return its indicator step trace.");
}
