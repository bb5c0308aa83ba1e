#ifndef CMOPBENCH_TRACE_IO_HPP
#define CMOPBENCH_TRACE_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmopbench/runtimes.hpp"
#include "cmopbench/types.hpp"

namespace cmopbench {

/// `<problem>__<algorithm>__run<k>.csv`
std::string run_file_name(const std::string& problem, const std::string& algorithm,
                          int run_index);

/// Full trace CSV: header `eval_index,x_1..x_D,f_1..f_M,g_1..g_I,v`, one row
/// per evaluation, raw objective values, 17 significant digits.
void write_run_trace(const RunTrace& trace, std::ostream& out);

/// Streams rows as the run produces them; same format as write_run_trace.
class RunTraceWriter : public EvalSink {
public:
    RunTraceWriter(std::ostream& out, const ProblemMeta& meta);
    void on_evaluation(const Evaluation& e) override;

private:
    std::ostream& out_;
    std::string buffer_;
};

/// Reads evaluations back; normalized objectives are recomputed from the
/// meta so a written trace round-trips without loss.
std::vector<Evaluation> read_run_trace(std::istream& in, const ProblemMeta& meta);

/// Step trace CSV: header `eval_index,i_cmop`, improvement rows only.
void write_step_trace(const StepTrace& trace, std::ostream& out);
StepTrace read_step_trace(std::istream& in);

/// Runtime record CSV: header `target_index,runtime`, an empty runtime
/// field encodes a target that was never reached.
void write_runtime_record(const RuntimeRecord& record, std::ostream& out);
std::vector<std::optional<std::uint64_t>> read_runtime_record(std::istream& in);

} // namespace cmopbench

#endif
