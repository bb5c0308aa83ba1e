#include "cmopbench/reports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "cmopbench/csv.hpp"
#include "cmopbench/errors.hpp"

namespace cmopbench {

namespace {

namespace fs = std::filesystem;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

/// Minimal SVG assembly with a linear data-to-pixel mapping.
class Plot {
public:
    Plot(double width, double height, double x_min, double x_max, double y_min,
         double y_max)
        : width_(width), height_(height), x_min_(x_min), x_max_(x_max), y_min_(y_min),
          y_max_(y_max) {
        svg_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
             << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
             << "\">\n";
        svg_ << "<rect width=\"" << width << "\" height=\"" << height
             << "\" fill=\"white\"/>\n";
    }

    double px(double x) const {
        return margin_left_ +
               (x - x_min_) / (x_max_ - x_min_) * (width_ - margin_left_ - margin_right_);
    }
    double py(double y) const {
        return height_ - margin_bottom_ -
               (y - y_min_) / (y_max_ - y_min_) * (height_ - margin_top_ - margin_bottom_);
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width, const std::string& dash = "") {
        svg_ << "<line x1=\"" << fmt(px(x1)) << "\" y1=\"" << fmt(py(y1)) << "\" x2=\""
             << fmt(px(x2)) << "\" y2=\"" << fmt(py(y2)) << "\" stroke=\"" << color
             << "\" stroke-width=\"" << width << "\"";
        if (!dash.empty()) svg_ << " stroke-dasharray=\"" << dash << "\"";
        svg_ << "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& points,
                  const std::string& color, double width) {
        if (points.empty()) return;
        svg_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
             << width << "\" points=\"";
        for (const auto& [x, y] : points) svg_ << fmt(px(x)) << "," << fmt(py(y)) << " ";
        svg_ << "\"/>\n";
    }

    void circle(double x, double y, double radius, const std::string& color) {
        svg_ << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\""
             << radius << "\" fill=\"" << color << "\"/>\n";
    }

    void rect(double x1, double y1, double x2, double y2, const std::string& stroke,
              const std::string& fill) {
        double left = std::min(px(x1), px(x2)), top = std::min(py(y1), py(y2));
        double w = std::fabs(px(x2) - px(x1)), h = std::fabs(py(y2) - py(y1));
        svg_ << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\""
             << fmt(w) << "\" height=\"" << fmt(h) << "\" stroke=\"" << stroke
             << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x_pixel, double y_pixel, const std::string& content,
              const std::string& anchor = "start", int size = 12,
              const std::string& color = "#333333") {
        svg_ << "<text x=\"" << fmt(x_pixel) << "\" y=\"" << fmt(y_pixel)
             << "\" text-anchor=\"" << anchor << "\" font-family=\"sans-serif\" font-size=\""
             << size << "\" fill=\"" << color << "\">" << content << "</text>\n";
    }

    /// Frame with linear ticks on both axes.
    void axes(const std::string& x_label, const std::string& y_label, int x_ticks = 6,
              int y_ticks = 5) {
        svg_ << "<g stroke=\"#333333\" stroke-width=\"1\">\n";
        svg_ << "<line x1=\"" << fmt(px(x_min_)) << "\" y1=\"" << fmt(py(y_min_))
             << "\" x2=\"" << fmt(px(x_max_)) << "\" y2=\"" << fmt(py(y_min_)) << "\"/>\n";
        svg_ << "<line x1=\"" << fmt(px(x_min_)) << "\" y1=\"" << fmt(py(y_min_))
             << "\" x2=\"" << fmt(px(x_min_)) << "\" y2=\"" << fmt(py(y_max_)) << "\"/>\n";
        svg_ << "</g>\n";
        for (int i = 0; i <= x_ticks; ++i) {
            double x = x_min_ + (x_max_ - x_min_) * i / x_ticks;
            svg_ << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(py(y_min_))
                 << "\" x2=\"" << fmt(px(x)) << "\" y2=\"" << fmt(py(y_min_) + 4)
                 << "\" stroke=\"#333333\"/>\n";
            text(px(x), py(y_min_) + 18, fmt(x), "middle", 11);
        }
        for (int i = 0; i <= y_ticks; ++i) {
            double y = y_min_ + (y_max_ - y_min_) * i / y_ticks;
            svg_ << "<line x1=\"" << fmt(px(x_min_) - 4) << "\" y1=\"" << fmt(py(y))
                 << "\" x2=\"" << fmt(px(x_min_)) << "\" y2=\"" << fmt(py(y))
                 << "\" stroke=\"#333333\"/>\n";
            text(px(x_min_) - 8, py(y) + 4, fmt(y), "end", 11);
        }
        text((px(x_min_) + px(x_max_)) / 2, height_ - 8, x_label, "middle");
        svg_ << "<text x=\"14\" y=\"" << fmt((py(y_min_) + py(y_max_)) / 2)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
             << " fill=\"#333333\" transform=\"rotate(-90 14 "
             << fmt((py(y_min_) + py(y_max_)) / 2) << ")\">" << y_label << "</text>\n";
    }

    std::string finish() {
        svg_ << "</svg>\n";
        return svg_.str();
    }

    double margin_left_ = 56, margin_right_ = 120, margin_top_ = 28, margin_bottom_ = 44;

private:
    double width_, height_, x_min_, x_max_, y_min_, y_max_;
    std::ostringstream svg_;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
}

struct ErdGroup {
    std::string name;
    int dimension = 0;
    std::vector<std::string> instances;
};

std::vector<ErdGroup> make_groups(const ResultStore& store, ErdGrouping grouping) {
    std::vector<ErdGroup> groups;
    if (grouping == ErdGrouping::per_problem || grouping == ErdGrouping::both) {
        for (const auto& instance : store.instances()) {
            groups.push_back({instance.name, instance.dimension, {instance.name}});
        }
    }
    if (grouping == ErdGrouping::per_suite || grouping == ErdGrouping::both) {
        std::map<int, ErdGroup> by_dimension;
        for (const auto& instance : store.instances()) {
            auto& group = by_dimension[instance.dimension];
            group.name = "suite_D" + std::to_string(instance.dimension);
            group.dimension = instance.dimension;
            group.instances.push_back(instance.name);
        }
        for (auto& [d, group] : by_dimension) groups.push_back(std::move(group));
    }
    return groups;
}

double log10_over_d(std::uint64_t evals, int dimension) {
    return std::log10(static_cast<double>(evals) / static_cast<double>(dimension));
}

} // namespace

std::vector<fs::path> emit_erd_reports(const ResultStore& store, ErdGrouping grouping) {
    const fs::path report_dir = store.directory() / "reports";
    fs::create_directories(report_dir);
    std::vector<fs::path> written;

    for (const ErdGroup& group : make_groups(store, grouping)) {
        if (group.instances.empty()) {
            std::cerr << "warning: ERD group '" << group.name << "' is empty, skipped\n";
            continue;
        }
        std::uint64_t budget = 0;
        for (const auto& name : group.instances) {
            budget = std::max(budget, store.instance(name).budget);
        }
        const double x_min = log10_over_d(1, group.dimension);
        const double x_max = log10_over_d(budget, group.dimension);

        Plot plot(760, 460, x_min, x_max, 0.0, 1.0);
        plot.axes("log10(evaluations / dimension)", "proportion of (target, run) pairs");

        // Dashed horizontal line at the feasibility boundary: below it only
        // constraint-satisfaction targets are reached.
        double boundary = 0.5;
        {
            const auto& targets = store.instance(group.instances.front()).targets;
            boundary = static_cast<double>(targets.count_feasibility()) /
                       static_cast<double>(targets.size());
        }
        plot.line(x_min, boundary, x_max, boundary, "#555555", 1.0, "6,4");

        int color_index = 0;
        for (const auto& algorithm : store.algorithms()) {
            const std::string color =
                kPalette[color_index++ % (sizeof(kPalette) / sizeof(kPalette[0]))];

            std::vector<RuntimeRecord> pooled;
            std::vector<StepTrace> traces;
            for (const auto& name : group.instances) {
                auto records = store.records(name, algorithm);
                pooled.insert(pooled.end(), std::make_move_iterator(records.begin()),
                              std::make_move_iterator(records.end()));
                auto steps = store.step_traces(name, algorithm);
                traces.insert(traces.end(), std::make_move_iterator(steps.begin()),
                              std::make_move_iterator(steps.end()));
            }
            Erd erd = build_erd(pooled);

            // Companion CSV with the exact plotted points.
            std::string csv_text = "log10_evals_over_D,proportion\n";
            std::vector<std::pair<double, double>> curve;
            curve.emplace_back(x_min, 0.0);
            double previous = 0.0;
            for (const auto& [evals, proportion] : erd.steps) {
                double x = log10_over_d(evals, group.dimension);
                curve.emplace_back(x, previous);
                curve.emplace_back(x, proportion);
                previous = proportion;
                csv::append_double(csv_text, x);
                csv_text.push_back(',');
                csv::append_double(csv_text, proportion);
                csv_text.push_back('\n');
            }
            curve.emplace_back(x_max, previous);
            plot.polyline(curve, color, 1.8);

            fs::path curve_path =
                report_dir / ("erd__" + group.name + "__" + algorithm + ".csv");
            write_file(curve_path, csv_text);
            written.push_back(curve_path);

            // Feasibility marks: thick overlay where some but not all runs
            // have crossed the threshold.
            auto fractions =
                feasibility_fractions(traces, store.instance(group.instances.front())
                                                  .targets.tau_star);
            std::string feas_text = "log10_evals_over_D,feasible_fraction\n";
            double prev_fraction = 0.0;
            double prev_x = x_min;
            for (const auto& [evals, fraction] : fractions) {
                double x = log10_over_d(evals, group.dimension);
                if (prev_fraction > 0.0 && prev_fraction < 1.0) {
                    plot.line(prev_x, boundary, x, boundary, color, 4.0);
                }
                prev_fraction = fraction;
                prev_x = x;
                csv::append_double(feas_text, x);
                feas_text.push_back(',');
                csv::append_double(feas_text, fraction);
                feas_text.push_back('\n');
            }
            if (prev_fraction > 0.0 && prev_fraction < 1.0) {
                plot.line(prev_x, boundary, x_max, boundary, color, 4.0);
            }
            fs::path feas_path =
                report_dir / ("feasline__" + group.name + "__" + algorithm + ".csv");
            write_file(feas_path, feas_text);
            written.push_back(feas_path);

            // Legend entry.
            plot.text(plot.px(x_max) + 10, plot.py(1.0) + 16.0 * color_index, algorithm,
                      "start", 12, color);
        }
        fs::path svg_path = report_dir / ("erd__" + group.name + ".svg");
        write_file(svg_path, plot.finish());
        written.push_back(svg_path);
    }
    return written;
}

std::vector<fs::path> emit_delta_reports(const ResultStore& store) {
    if (store.algorithms().size() < 2) {
        throw ConfigError("delta reports require at least two algorithms");
    }
    const fs::path report_dir = store.directory() / "reports";
    fs::create_directories(report_dir);
    std::vector<fs::path> written;

    std::vector<ProblemRecords> grid;
    for (const auto& instance : store.instances()) {
        ProblemRecords problem;
        problem.problem = instance.name;
        problem.targets = instance.targets;
        problem.budget = instance.budget;
        for (const auto& algorithm : store.algorithms()) {
            problem.algorithms.push_back({algorithm, store.records(instance.name, algorithm)});
        }
        grid.push_back(std::move(problem));
    }
    auto rows = delta_matrix(grid, store.algorithms());

    std::string table = "problem,alg_a,alg_b,delta,delta_plus,delta_minus,n,n_plus,n_minus\n";
    for (const auto& row : rows) {
        table += row.problem + "," + row.algorithm_a + "," + row.algorithm_b + ",";
        csv::append_double(table, row.result.delta);
        table.push_back(',');
        csv::append_double(table, row.result.delta_plus);
        table.push_back(',');
        csv::append_double(table, row.result.delta_minus);
        table.push_back(',');
        csv::append_u64(table, row.result.n);
        table.push_back(',');
        csv::append_u64(table, row.result.n_plus);
        table.push_back(',');
        csv::append_u64(table, row.result.n_minus);
        table.push_back('\n');
    }
    fs::path table_path = report_dir / "delta_table.csv";
    write_file(table_path, table);
    written.push_back(table_path);

    // One suite per dimension; a dot per (problem, pair).
    std::map<int, std::vector<const DeltaTableRow*>> suites;
    for (const auto& row : rows) {
        suites[store.instance(row.problem).dimension].push_back(&row);
    }
    for (const auto& [dimension, dots] : suites) {
        const std::string suite = "suite_D" + std::to_string(dimension);
        std::string dots_text = "suite,problem,alg_a,alg_b,delta,delta_plus,delta_minus\n";
        double y_max = 0.0;
        for (const auto* row : dots) {
            dots_text += suite + "," + row->problem + "," + row->algorithm_a + "," +
                         row->algorithm_b + ",";
            csv::append_double(dots_text, row->result.delta);
            dots_text.push_back(',');
            csv::append_double(dots_text, row->result.delta_plus);
            dots_text.push_back(',');
            csv::append_double(dots_text, row->result.delta_minus);
            dots_text.push_back('\n');
            y_max = std::max({y_max, row->result.delta, row->result.delta_plus,
                              row->result.delta_minus});
        }
        fs::path dots_path = report_dir / ("delta_dots__" + suite + ".csv");
        write_file(dots_path, dots_text);
        written.push_back(dots_path);

        y_max = std::max(0.05, y_max * 1.15);
        Plot plot(560, 420, 0.5, 3.5, 0.0, y_max);
        plot.margin_right_ = 24;
        plot.axes("", "differentiation score", 3, 5);
        const char* panel_names[3] = {"delta+", "delta-", "delta"};
        for (int panel = 0; panel < 3; ++panel) {
            double center = panel + 1.0;
            std::vector<double> values;
            for (const auto* row : dots) {
                values.push_back(panel == 0   ? row->result.delta_plus
                                 : panel == 1 ? row->result.delta_minus
                                              : row->result.delta);
            }
            std::sort(values.begin(), values.end());
            auto quantile = [&](double q) {
                double pos = q * static_cast<double>(values.size() - 1);
                std::size_t lo = static_cast<std::size_t>(pos);
                std::size_t hi = std::min(lo + 1, values.size() - 1);
                return values[lo] + (pos - lo) * (values[hi] - values[lo]);
            };
            if (!values.empty()) {
                double q1 = quantile(0.25), q2 = quantile(0.5), q3 = quantile(0.75);
                plot.rect(center - 0.18, q1, center + 0.18, q3, "#888888", "#eeeeee");
                plot.line(center - 0.18, q2, center + 0.18, q2, "#555555", 1.5);
                plot.line(center, values.front(), center, q1, "#888888", 1.0);
                plot.line(center, q3, center, values.back(), "#888888", 1.0);
            }
            for (std::size_t i = 0; i < dots.size(); ++i) {
                double jitter =
                    (static_cast<double>((i * 37) % 21) - 10.0) / 10.0 * 0.12;
                double value = panel == 0   ? dots[i]->result.delta_plus
                               : panel == 1 ? dots[i]->result.delta_minus
                                            : dots[i]->result.delta;
                plot.circle(center + jitter, value, 3.0, "#1f1f1f");
            }
            plot.text(plot.px(center), plot.py(0.0) + 32, panel_names[panel], "middle");
        }
        fs::path svg_path = report_dir / ("delta__" + suite + ".svg");
        write_file(svg_path, plot.finish());
        written.push_back(svg_path);
    }
    return written;
}

} // namespace cmopbench
