#include "cmopbench/experiment.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cmopbench/csv.hpp"
#include "cmopbench/errors.hpp"
#include "cmopbench/trace_io.hpp"
#include "cmopbench/version.hpp"

namespace cmopbench {

using nlohmann::json;

IndicatorObserver::IndicatorObserver(int num_objectives, ScaleFactors scales,
                                     double tau_star)
    : state_(num_objectives, tau_star), scales_(scales) {}

void IndicatorObserver::on_evaluation(const Evaluation& e) {
    state_.ingest(e);
    double value = scaled_indicator(state_, scales_);
    if (steps_.empty() || value < steps_.back().value) {
        steps_.push_back({e.eval_index, value});
    }
}

std::string instance_name(const std::string& problem, int dimension) {
    return problem + "_D" + std::to_string(dimension);
}

namespace {

AlgorithmConfig algorithm_from_json(const json& node) {
    AlgorithmConfig config = AlgorithmConfig::by_name(node.at("name").get<std::string>());
    if (node.contains("population")) config.population = node.at("population").get<int>();
    if (node.contains("generations")) config.generations = node.at("generations").get<int>();
    if (node.contains("operators")) {
        const json& op = node.at("operators");
        if (op.contains("crossover_prob")) config.op.crossover_prob = op.at("crossover_prob");
        if (op.contains("crossover_eta")) config.op.crossover_eta = op.at("crossover_eta");
        if (op.contains("mutation_eta")) config.op.mutation_eta = op.at("mutation_eta");
        if (op.contains("mutation_prob")) config.op.mutation_prob = op.at("mutation_prob");
        if (op.contains("de_scale")) config.op.de_scale = op.at("de_scale");
        if (op.contains("de_crossover_rate")) {
            config.op.de_crossover_rate = op.at("de_crossover_rate");
        }
    }
    if (node.contains("decomposition")) {
        const json& dp = node.at("decomposition");
        auto& d = config.decomposition;
        if (dp.contains("neighborhood")) d.neighborhood = dp.at("neighborhood");
        if (dp.contains("mating_prob")) d.mating_prob = dp.at("mating_prob");
        if (dp.contains("max_replacements")) d.max_replacements = dp.at("max_replacements");
        if (dp.contains("eps_decay")) d.eps_decay = dp.at("eps_decay");
        if (dp.contains("feasible_ratio_limit")) {
            d.feasible_ratio_limit = dp.at("feasible_ratio_limit");
        }
        if (dp.contains("control_fraction")) d.control_fraction = dp.at("control_fraction");
        if (dp.contains("theta_fraction")) d.theta_fraction = dp.at("theta_fraction");
    }
    return config;
}

json algorithm_to_json(const AlgorithmConfig& config) {
    json node;
    node["name"] = config.name;
    if (config.population > 0) node["population"] = config.population;
    if (config.generations > 0) node["generations"] = config.generations;
    return node;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig config;
    try {
        config.problems = doc.at("problems").get<std::vector<std::string>>();
        if (doc.contains("dimensions")) {
            config.dimensions = doc.at("dimensions").get<std::vector<int>>();
        }
        config.algorithms.clear();
        for (const json& node : doc.at("algorithms")) {
            config.algorithms.push_back(algorithm_from_json(node));
        }
        if (doc.contains("runs")) config.runs = doc.at("runs").get<int>();
        if (doc.contains("master_seed")) {
            config.master_seed = doc.at("master_seed").get<std::uint64_t>();
        }
        if (doc.contains("output")) {
            config.output_dir = doc.at("output").get<std::string>();
        }
        if (doc.contains("write_run_traces")) {
            config.write_run_traces = doc.at("write_run_traces").get<bool>();
        }
        if (doc.contains("workers")) config.workers = doc.at("workers").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (config.problems.empty()) throw ConfigError("config: no problems listed");
    if (config.algorithms.empty()) throw ConfigError("config: no algorithms listed");
    if (config.dimensions.empty()) throw ConfigError("config: no dimensions listed");
    if (config.runs < 1) throw ConfigError("config: runs must be positive");
    return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::string ExperimentConfig::to_json_text() const {
    json doc;
    doc["problems"] = problems;
    doc["dimensions"] = dimensions;
    doc["algorithms"] = json::array();
    for (const auto& algorithm : algorithms) {
        doc["algorithms"].push_back(algorithm_to_json(algorithm));
    }
    doc["runs"] = runs;
    doc["master_seed"] = master_seed;
    doc["output"] = output_dir.string();
    doc["write_run_traces"] = write_run_traces;
    return doc.dump(2);
}

namespace {

namespace fs = std::filesystem;

struct InstancePlan {
    std::string name;
    std::string problem;
    int dimension = 0;
    ProblemMeta meta;
    TargetSet targets;
    ScaleFactors scales;
    std::uint64_t budget = 0;  // shared across algorithms; validated below
};

json scales_to_json(const ScaleFactors& scales) {
    return json{{"d_scale", scales.d_scale},
                {"v_scale", scales.v_scale},
                {"sample_size", scales.sample_size},
                {"sample_seed", scales.sample_seed}};
}

json meta_to_json(const ProblemMeta& meta) {
    return json{{"name", meta.name},
                {"dimension", meta.dimension},
                {"num_objectives", meta.num_objectives},
                {"num_constraints", meta.num_constraints},
                {"lower", meta.bounds.lower},
                {"upper", meta.bounds.upper},
                {"ideal", meta.ideal},
                {"nadir", meta.nadir},
                {"hv_ref", meta.front_hypervolume}};
}

ProblemMeta meta_from_json(const json& node) {
    ProblemMeta meta;
    meta.name = node.at("name").get<std::string>();
    meta.dimension = node.at("dimension").get<int>();
    meta.num_objectives = node.at("num_objectives").get<int>();
    meta.num_constraints = node.at("num_constraints").get<int>();
    meta.bounds = BoxBounds(node.at("lower").get<std::vector<double>>(),
                            node.at("upper").get<std::vector<double>>());
    meta.ideal = node.at("ideal").get<std::vector<double>>();
    meta.nadir = node.at("nadir").get<std::vector<double>>();
    meta.front_hypervolume = node.at("hv_ref").get<double>();
    meta.validate();
    return meta;
}

void write_text_file(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << text;
    }
    fs::rename(tmp, path);
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ProblemRegistry& registry, bool force) {
    // Validate everything before touching the filesystem.
    for (const auto& problem : config.problems) {
        if (!registry.contains(problem)) {
            throw ConfigError("config: unknown problem '" + problem + "'");
        }
    }
    {
        std::vector<std::string> seen;
        for (const auto& algorithm : config.algorithms) {
            AlgorithmConfig::by_name(algorithm.name);  // validates the name
            for (const auto& other : seen) {
                if (other == algorithm.name) {
                    throw ConfigError("config: duplicate algorithm '" + algorithm.name + "'");
                }
            }
            seen.push_back(algorithm.name);
        }
    }

    const fs::path out = config.output_dir;
    fs::create_directories(out / "targets");
    fs::create_directories(out / "steps");
    fs::create_directories(out / "runtimes");
    if (config.write_run_traces) fs::create_directories(out / "traces");

    // Per-instance plans: problem meta, targets, scale factors.
    std::vector<InstancePlan> plans;
    for (const auto& problem_name : config.problems) {
        for (int dimension : config.dimensions) {
            InstancePlan plan;
            plan.name = instance_name(problem_name, dimension);
            plan.problem = problem_name;
            plan.dimension = dimension;
            Problem problem = registry.make(problem_name, dimension);
            plan.meta = problem.meta();
            plan.targets = make_targets(plan.meta);
            RngStream scale_rng(
                derive_seed(config.master_seed, plan.name, "scale-sample", 0));
            plan.scales = compute_scales(problem, scale_rng);
            plan.budget = config.algorithms.front().budget(plan.meta.dimension,
                                                           plan.meta.num_objectives);
            for (const auto& algorithm : config.algorithms) {
                if (algorithm.budget(plan.meta.dimension, plan.meta.num_objectives) !=
                    plan.budget) {
                    throw ConfigError(
                        "config: algorithms disagree on the evaluation budget for " +
                        plan.name);
                }
            }
            plans.push_back(std::move(plan));
        }
    }

    // Emit per-instance target files.
    for (const auto& plan : plans) {
        std::string text = "index,epsilon,value,class\n";
        for (std::size_t i = 0; i < plan.targets.size(); ++i) {
            const Target& t = plan.targets.targets[i];
            csv::append_u64(text, i);
            text.push_back(',');
            csv::append_double(text, t.epsilon);
            text.push_back(',');
            csv::append_double(text, t.value);
            text += t.cls == TargetClass::front_approximation ? ",plus\n" : ",minus\n";
        }
        write_text_file(out / "targets" / (plan.name + ".csv"), text);
    }

    // Cell list, deterministic order.
    std::vector<ExperimentCell> cells;
    for (const auto& plan : plans) {
        for (const auto& algorithm : config.algorithms) {
            for (int run = 0; run < config.runs; ++run) {
                ExperimentCell cell;
                cell.instance = plan.name;
                cell.problem = plan.problem;
                cell.dimension = plan.dimension;
                cell.algorithm = algorithm.name;
                cell.run_index = run;
                cell.seed = derive_seed(config.master_seed, plan.name, algorithm.name,
                                        static_cast<std::uint64_t>(run));
                cells.push_back(std::move(cell));
            }
        }
    }

    ExperimentReport report;
    report.total_cells = cells.size();

    std::mutex failures_mutex;
    std::atomic<std::size_t> next_cell{0};
    std::atomic<std::size_t> executed{0}, skipped{0};

    auto plan_of = [&](const std::string& instance) -> const InstancePlan& {
        for (const auto& plan : plans) {
            if (plan.name == instance) return plan;
        }
        throw LookupError("internal: unknown instance " + instance);
    };
    auto config_of = [&](const std::string& algorithm) -> const AlgorithmConfig& {
        for (const auto& candidate : config.algorithms) {
            if (candidate.name == algorithm) return candidate;
        }
        throw LookupError("internal: unknown algorithm " + algorithm);
    };

    auto run_cell = [&](const ExperimentCell& cell) {
        const InstancePlan& plan = plan_of(cell.instance);
        const AlgorithmConfig& algorithm = config_of(cell.algorithm);
        const std::string base = run_file_name(cell.instance, cell.algorithm, cell.run_index);
        const fs::path steps_path = out / "steps" / base;
        const fs::path runtimes_path = out / "runtimes" / base;
        const fs::path trace_path = out / "traces" / base;

        bool complete = fs::exists(steps_path) && fs::exists(runtimes_path) &&
                        (!config.write_run_traces || fs::exists(trace_path));
        if (complete && !force) {
            ++skipped;
            return;
        }

        Problem problem = registry.make(cell.problem, cell.dimension);
        IndicatorObserver observer(plan.meta.num_objectives, plan.scales,
                                   plan.targets.tau_star);
        if (config.write_run_traces) {
            fs::path tmp = trace_path;
            tmp += ".tmp";
            {
                std::ofstream trace_out(tmp, std::ios::binary);
                if (!trace_out) throw IoError("cannot write '" + tmp.string() + "'");
                RunTraceWriter writer(trace_out, plan.meta);
                class Tee : public EvalSink {
                public:
                    Tee(EvalSink& a, EvalSink& b) : a_(a), b_(b) {}
                    void on_evaluation(const Evaluation& e) override {
                        a_.on_evaluation(e);
                        b_.on_evaluation(e);
                    }

                private:
                    EvalSink& a_;
                    EvalSink& b_;
                };
                Tee tee(observer, writer);
                run_algorithm(problem, algorithm, cell.seed, &tee, false);
            }
            fs::rename(tmp, trace_path);
        } else {
            run_algorithm(problem, algorithm, cell.seed, &observer, false);
        }

        RuntimeRecord record = extract_runtimes(observer.steps(), plan.targets, plan.budget);
        record.problem = cell.instance;
        record.algorithm = cell.algorithm;
        record.run_index = cell.run_index;

        {
            std::ostringstream buffer;
            write_step_trace(observer.steps(), buffer);
            write_text_file(steps_path, buffer.str());
        }
        {
            std::ostringstream buffer;
            write_runtime_record(record, buffer);
            write_text_file(runtimes_path, buffer.str());
        }
        ++executed;
    };

    const unsigned worker_count = config.workers > 0
                                      ? static_cast<unsigned>(config.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
    auto worker_loop = [&]() {
        while (true) {
            std::size_t index = next_cell.fetch_add(1);
            if (index >= cells.size()) break;
            const ExperimentCell& cell = cells[index];
            try {
                run_cell(cell);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failures_mutex);
                report.failures.push_back(run_file_name(cell.instance, cell.algorithm,
                                                        cell.run_index) +
                                          ": " + e.what());
            }
        }
    };
    if (worker_count <= 1) {
        worker_loop();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(worker_count);
        for (unsigned i = 0; i < worker_count; ++i) threads.emplace_back(worker_loop);
        for (auto& thread : threads) thread.join();
    }
    report.executed_cells = executed;
    report.skipped_cells = skipped;

    // Manifest: config echo, instances, every cell with its files and
    // status. Content is deterministic for a given config.
    json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = json::parse(config.to_json_text());
    manifest["runs"] = config.runs;
    json instances = json::array();
    for (const auto& plan : plans) {
        json node;
        node["name"] = plan.name;
        node["problem"] = plan.problem;
        node["dimension"] = plan.dimension;
        node["meta"] = meta_to_json(plan.meta);
        node["scales"] = scales_to_json(plan.scales);
        node["budget"] = plan.budget;
        node["targets_file"] = "targets/" + plan.name + ".csv";
        instances.push_back(std::move(node));
    }
    manifest["instances"] = std::move(instances);
    json algorithms = json::array();
    for (const auto& algorithm : config.algorithms) algorithms.push_back(algorithm.name);
    manifest["algorithms"] = std::move(algorithms);

    std::map<std::string, std::string> failure_by_cell;
    for (const auto& failure : report.failures) {
        auto colon = failure.find(':');
        failure_by_cell[failure.substr(0, colon)] = failure.substr(colon + 2);
    }
    json cell_nodes = json::array();
    for (const auto& cell : cells) {
        const std::string base = run_file_name(cell.instance, cell.algorithm, cell.run_index);
        json node;
        node["instance"] = cell.instance;
        node["algorithm"] = cell.algorithm;
        node["run"] = cell.run_index;
        node["seed"] = cell.seed;
        json files;
        files["steps"] = "steps/" + base;
        files["runtimes"] = "runtimes/" + base;
        if (config.write_run_traces) files["trace"] = "traces/" + base;
        node["files"] = std::move(files);
        auto failed = failure_by_cell.find(base);
        if (failed != failure_by_cell.end()) {
            node["status"] = "incomplete";
            node["error"] = failed->second;
        } else {
            node["status"] = "complete";
        }
        cell_nodes.push_back(std::move(node));
    }
    manifest["cells"] = std::move(cell_nodes);
    write_text_file(out / "manifest.json", manifest.dump(2) + "\n");
    return report;
}

namespace {

json load_manifest(const fs::path& directory) {
    std::ifstream in(directory / "manifest.json");
    if (!in) throw IoError("no manifest in '" + directory.string() + "'");
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw IoError(std::string("manifest: ") + e.what());
    }
    return manifest;
}

} // namespace

ResultStore ResultStore::load(const std::filesystem::path& directory) {
    json manifest = load_manifest(directory);
    ResultStore store;
    store.directory_ = directory;
    store.runs_ = manifest.at("runs").get<int>();
    store.algorithms_ = manifest.at("algorithms").get<std::vector<std::string>>();
    for (const json& node : manifest.at("instances")) {
        StoreInstance instance;
        instance.name = node.at("name").get<std::string>();
        instance.problem = node.at("problem").get<std::string>();
        instance.dimension = node.at("dimension").get<int>();
        instance.meta = meta_from_json(node.at("meta"));
        instance.targets = make_targets(instance.meta);
        instance.scales.d_scale = node.at("scales").at("d_scale").get<double>();
        instance.scales.v_scale = node.at("scales").at("v_scale").get<double>();
        instance.scales.sample_seed = node.at("scales").at("sample_seed").get<std::uint64_t>();
        instance.budget = node.at("budget").get<std::uint64_t>();
        store.instances_.push_back(std::move(instance));
    }
    return store;
}

const StoreInstance& ResultStore::instance(const std::string& name) const {
    for (const auto& instance : instances_) {
        if (instance.name == name) return instance;
    }
    throw LookupError("store: unknown instance '" + name + "'");
}

std::vector<RuntimeRecord> ResultStore::records(const std::string& instance_name,
                                                const std::string& algorithm) const {
    const StoreInstance& inst = instance(instance_name);
    std::vector<RuntimeRecord> records;
    records.reserve(runs_);
    for (int run = 0; run < runs_; ++run) {
        fs::path path =
            directory_ / "runtimes" / run_file_name(instance_name, algorithm, run);
        std::ifstream in(path);
        if (!in) {
            throw MismatchError("store: missing runtimes for (" + instance_name + ", " +
                                algorithm + ", run " + std::to_string(run) + ")");
        }
        RuntimeRecord record;
        record.problem = instance_name;
        record.algorithm = algorithm;
        record.run_index = run;
        record.budget = inst.budget;
        record.runtimes = read_runtime_record(in);
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<StepTrace> ResultStore::step_traces(const std::string& instance_name,
                                                const std::string& algorithm) const {
    std::vector<StepTrace> traces;
    traces.reserve(runs_);
    for (int run = 0; run < runs_; ++run) {
        fs::path path = directory_ / "steps" / run_file_name(instance_name, algorithm, run);
        std::ifstream in(path);
        if (!in) {
            throw MismatchError("store: missing step trace for (" + instance_name + ", " +
                                algorithm + ", run " + std::to_string(run) + ")");
        }
        traces.push_back(read_step_trace(in));
    }
    return traces;
}

} // namespace cmopbench
