#include "cmopbench/trace_io.hpp"

#include <istream>
#include <ostream>

#include "cmopbench/csv.hpp"
#include "cmopbench/errors.hpp"
#include "cmopbench/indicators.hpp"

namespace cmopbench {

namespace {

std::string trace_header(const ProblemMeta& meta) {
    std::string header = "eval_index";
    for (int i = 1; i <= meta.dimension; ++i) header += ",x_" + std::to_string(i);
    for (int m = 1; m <= meta.num_objectives; ++m) header += ",f_" + std::to_string(m);
    for (int i = 1; i <= meta.num_constraints; ++i) header += ",g_" + std::to_string(i);
    header += ",v\n";
    return header;
}

void append_trace_row(std::string& buffer, const Evaluation& e) {
    csv::append_u64(buffer, e.eval_index);
    for (double xi : e.x) {
        buffer.push_back(',');
        csv::append_double(buffer, xi);
    }
    for (double fm : e.objectives_raw) {
        buffer.push_back(',');
        csv::append_double(buffer, fm);
    }
    for (double gi : e.constraints) {
        buffer.push_back(',');
        csv::append_double(buffer, gi);
    }
    buffer.push_back(',');
    csv::append_double(buffer, e.violation);
    buffer.push_back('\n');
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

} // namespace

std::string run_file_name(const std::string& problem, const std::string& algorithm,
                          int run_index) {
    return problem + "__" + algorithm + "__run" + std::to_string(run_index) + ".csv";
}

void write_run_trace(const RunTrace& trace, std::ostream& out) {
    out << trace_header(trace.problem);
    std::string buffer;
    buffer.reserve(4096);
    for (const Evaluation& e : trace.evaluations) {
        buffer.clear();
        append_trace_row(buffer, e);
        out << buffer;
    }
}

RunTraceWriter::RunTraceWriter(std::ostream& out, const ProblemMeta& meta) : out_(out) {
    out_ << trace_header(meta);
}

void RunTraceWriter::on_evaluation(const Evaluation& e) {
    buffer_.clear();
    append_trace_row(buffer_, e);
    out_ << buffer_;
}

std::vector<Evaluation> read_run_trace(std::istream& in, const ProblemMeta& meta) {
    std::string line;
    if (!read_line(in, line)) throw IoError("run trace: missing header");
    if (line != trace_header(meta).substr(0, trace_header(meta).size() - 1)) {
        throw IoError("run trace: header does not match the problem shape");
    }
    const std::size_t expected_fields = 2 + static_cast<std::size_t>(meta.dimension) +
                                        meta.num_objectives + meta.num_constraints;
    std::vector<Evaluation> evaluations;
    while (read_line(in, line)) {
        if (line.empty()) continue;
        auto fields = csv::split(line);
        if (fields.size() != expected_fields) {
            throw IoError("run trace: row has wrong field count");
        }
        Evaluation e;
        std::size_t pos = 0;
        e.eval_index = csv::parse_u64(fields[pos++]);
        e.x.resize(meta.dimension);
        for (auto& xi : e.x) xi = csv::parse_double(fields[pos++]);
        e.objectives_raw.resize(meta.num_objectives);
        for (auto& fm : e.objectives_raw) fm = csv::parse_double(fields[pos++]);
        e.constraints.resize(meta.num_constraints);
        for (auto& gi : e.constraints) gi = csv::parse_double(fields[pos++]);
        e.violation = csv::parse_double(fields[pos++]);
        e.objectives = normalize_objectives(e.objectives_raw, meta.ideal, meta.nadir);
        evaluations.push_back(std::move(e));
    }
    return evaluations;
}

void write_step_trace(const StepTrace& trace, std::ostream& out) {
    out << "eval_index,i_cmop\n";
    std::string buffer;
    for (const StepPoint& step : trace) {
        buffer.clear();
        csv::append_u64(buffer, step.eval_index);
        buffer.push_back(',');
        csv::append_double(buffer, step.value);
        buffer.push_back('\n');
        out << buffer;
    }
}

StepTrace read_step_trace(std::istream& in) {
    std::string line;
    if (!read_line(in, line) || line != "eval_index,i_cmop") {
        throw IoError("step trace: missing or wrong header");
    }
    StepTrace trace;
    while (read_line(in, line)) {
        if (line.empty()) continue;
        auto fields = csv::split(line);
        if (fields.size() != 2) throw IoError("step trace: row has wrong field count");
        trace.push_back({csv::parse_u64(fields[0]), csv::parse_double(fields[1])});
    }
    return trace;
}

void write_runtime_record(const RuntimeRecord& record, std::ostream& out) {
    out << "target_index,runtime\n";
    std::string buffer;
    for (std::size_t i = 0; i < record.runtimes.size(); ++i) {
        buffer.clear();
        csv::append_u64(buffer, i);
        buffer.push_back(',');
        if (record.runtimes[i].has_value()) csv::append_u64(buffer, *record.runtimes[i]);
        buffer.push_back('\n');
        out << buffer;
    }
}

std::vector<std::optional<std::uint64_t>> read_runtime_record(std::istream& in) {
    std::string line;
    if (!read_line(in, line) || line != "target_index,runtime") {
        throw IoError("runtime record: missing or wrong header");
    }
    std::vector<std::optional<std::uint64_t>> runtimes;
    while (read_line(in, line)) {
        if (line.empty()) continue;
        auto fields = csv::split(line);
        if (fields.size() != 2) throw IoError("runtime record: row has wrong field count");
        std::size_t index = csv::parse_u64(fields[0]);
        if (index != runtimes.size()) throw IoError("runtime record: indices out of order");
        if (fields[1].empty()) {
            runtimes.push_back(std::nullopt);
        } else {
            runtimes.push_back(csv::parse_u64(fields[1]));
        }
    }
    return runtimes;
}

} // namespace cmopbench
