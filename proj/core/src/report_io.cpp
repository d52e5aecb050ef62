#include "driftlab/report_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "driftlab/csv.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/hash.hpp"
#include "driftlab/version.hpp"

namespace driftlab {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json metrics_to_json(const Metrics& m) {
    ordered_json j;
    j["n"] = m.total();
    j["confusion"] = {{"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}, {"tn", m.tn}};
    j["rejected"] = {{"precision", m.rejected.precision},
                     {"recall", m.rejected.recall},
                     {"f1", m.rejected.f1}};
    j["accepted"] = {{"precision", m.accepted.precision},
                     {"recall", m.accepted.recall},
                     {"f1", m.accepted.f1}};
    j["macro"] = {{"precision", m.macro.precision},
                  {"recall", m.macro.recall},
                  {"f1", m.macro.f1}};
    j["accuracy"] = m.accuracy;
    return j;
}

ordered_json composition_to_json(const DatasetComposition& c) {
    ordered_json j;
    j["n"] = c.n;
    j["accepted"] = c.accepted;
    j["rejected"] = c.rejected;
    j["start"] = c.start ? format_time(*c.start) : "";
    j["end"] = c.end ? format_time(*c.end) : "";
    return j;
}

std::string chunk_label(std::size_t i) { return "chunk_" + std::to_string(i + 1); }

ordered_json bounds_to_json(const std::vector<std::pair<UtcTime, UtcTime>>& bounds) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        arr.push_back({{"label", chunk_label(i)},
                       {"start", format_time(bounds[i].first)},
                       {"end", format_time(bounds[i].second)}});
    }
    return arr;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string RunManifest::run_id() const {
    std::uint64_t h = kFnv64Offset;
    h = fnv1a64(kToolVersion, h);
    h = fnv1a64(command, h);
    for (const auto& [key, value] : config) {
        h = fnv1a64(key, h);
        h = fnv1a64("=", h);
        h = fnv1a64(value, h);
        h = fnv1a64(";", h);
    }
    h = fnv1a64_u64(input_hash, h);
    h = fnv1a64_u64(stopwords_hash, h);
    h = fnv1a64_u64(seed, h);
    return hex64(h);
}

std::string manifest_json(const RunManifest& manifest) {
    ordered_json j;
    j["run_id"] = manifest.run_id();
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = manifest.command;
    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : manifest.config) config[key] = value;
    j["config"] = config;
    j["input_hash"] = "fnv1a64:" + hex64(manifest.input_hash);
    j["stopwords_hash"] = "fnv1a64:" + hex64(manifest.stopwords_hash);
    j["seed"] = manifest.seed;
    j["started_utc"] = manifest.started_utc;
    j["finished_utc"] = manifest.finished_utc;
    return j.dump(2) + "\n";
}

std::string ingest_summary_json(const IngestSummary& summary, const std::string& run_id) {
    ordered_json j;
    j["total"] = summary.total;
    j["accepted"] = summary.accepted;
    j["rejected"] = summary.rejected;
    j["start"] = summary.start ? format_time(*summary.start) : "";
    j["end"] = summary.end ? format_time(*summary.end) : "";
    j["skipped_rows"] = summary.skipped_rows;
    j["length_corrections"] = summary.length_corrections;
    if (!run_id.empty()) j["run_id"] = run_id;
    return j.dump(2) + "\n";
}

std::string split_report_csv(const SplitReport& report) {
    std::ostringstream out;
    out << "month,control_precision,control_recall,control_f1,"
           "stratified_precision,stratified_recall,stratified_f1,"
           "control_precision_macro,control_recall_macro,control_f1_macro,"
           "stratified_precision_macro,stratified_recall_macro,stratified_f1_macro\n";
    for (std::size_t i = 0; i < report.months.size(); ++i) {
        const Metrics& c = report.control.monthly[i];
        const Metrics& s = report.time_stratified.monthly[i];
        std::vector<std::string> row = {
            report.months[i],
            format_double(c.rejected.precision), format_double(c.rejected.recall),
            format_double(c.rejected.f1),
            format_double(s.rejected.precision), format_double(s.rejected.recall),
            format_double(s.rejected.f1),
            format_double(c.macro.precision), format_double(c.macro.recall),
            format_double(c.macro.f1),
            format_double(s.macro.precision), format_double(s.macro.recall),
            format_double(s.macro.f1),
        };
        write_csv_row(out, row);
    }
    return out.str();
}

std::string split_report_json(const SplitReport& report, const std::string& run_id) {
    ordered_json j;
    j["run_id"] = run_id;
    j["eval_start"] = format_time(report.eval_start);
    j["composition"] = {{"control", composition_to_json(report.control_stats)},
                        {"time_stratified", composition_to_json(report.time_stratified_stats)},
                        {"evaluation", composition_to_json(report.evaluation_stats)}};
    j["control_eval_period_fraction"] = report.control_eval_period_fraction;
    j["overall"] = {{"control", metrics_to_json(report.control.overall)},
                    {"time_stratified", metrics_to_json(report.time_stratified.overall)}};
    ordered_json months = ordered_json::array();
    for (std::size_t i = 0; i < report.months.size(); ++i) {
        months.push_back({{"month", report.months[i]},
                          {"control", metrics_to_json(report.control.monthly[i])},
                          {"time_stratified",
                           metrics_to_json(report.time_stratified.monthly[i])}});
    }
    j["months"] = months;
    j["feature_space_hash"] = {{"control", hex64(report.control.feature_space_hash)},
                               {"time_stratified",
                                hex64(report.time_stratified.feature_space_hash)}};
    return j.dump(2) + "\n";
}

std::string split_plot_csv(const SplitReport& report) {
    std::ostringstream out;
    out << "month,arm,metric,value\n";
    const auto emit = [&out](const std::string& month, const std::string& arm, const Metrics& m) {
        const std::pair<const char*, double> values[] = {
            {"precision_rejected", m.rejected.precision},
            {"recall_rejected", m.rejected.recall},
            {"f1_rejected", m.rejected.f1},
            {"precision_macro", m.macro.precision},
            {"recall_macro", m.macro.recall},
            {"f1_macro", m.macro.f1},
        };
        for (const auto& [name, value] : values) {
            std::vector<std::string> row = {month, arm, name, format_double(value)};
            write_csv_row(out, row);
        }
    };
    for (std::size_t i = 0; i < report.months.size(); ++i) {
        emit(report.months[i], "control", report.control.monthly[i]);
        emit(report.months[i], "time_stratified", report.time_stratified.monthly[i]);
    }
    emit("overall", "control", report.control.overall);
    emit("overall", "time_stratified", report.time_stratified.overall);
    return out.str();
}

std::string matrix_csv(const std::vector<std::pair<UtcTime, UtcTime>>& bounds,
                       const std::vector<std::vector<double>>& cells) {
    std::ostringstream out;
    std::vector<std::string> header = {"train_chunk"};
    for (std::size_t j = 0; j < bounds.size(); ++j) header.push_back(chunk_label(j));
    write_csv_row(out, header);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::vector<std::string> row = {chunk_label(i)};
        for (double v : cells[i]) row.push_back(format_double(v));
        write_csv_row(out, row);
    }
    return out.str();
}

std::string degradation_json(const DegradationMatrix& matrix, const CorrelationMatrix& correlation,
                             const std::string& run_id) {
    ordered_json j;
    j["run_id"] = run_id;
    j["chunk_size"] = matrix.chunk_size;
    j["chunks"] = bounds_to_json(matrix.chunk_bounds);
    j["f1"] = matrix.f1;
    j["spearman_rho"] = correlation.rho;
    return j.dump(2) + "\n";
}

std::string degradation_plot_csv(const DegradationMatrix& matrix,
                                 const CorrelationMatrix& correlation) {
    std::ostringstream out;
    out << "train_chunk,eval_chunk,lag,f1,spearman_rho\n";
    for (std::size_t i = 0; i < matrix.f1.size(); ++i) {
        for (std::size_t j = 0; j < matrix.f1[i].size(); ++j) {
            std::vector<std::string> row = {
                chunk_label(i), chunk_label(j),
                std::to_string(static_cast<long>(j) - static_cast<long>(i)),
                format_double(matrix.f1[i][j]), format_double(correlation.rho[i][j])};
            write_csv_row(out, row);
        }
    }
    return out.str();
}

std::string emerging_csv(const std::vector<EmergingInterval>& intervals) {
    std::ostringstream out;
    std::vector<std::string> header;
    std::size_t depth = 0;
    for (const auto& interval : intervals) {
        header.push_back(interval.label + "_word");
        header.push_back(interval.label + "_freq");
        depth = std::max(depth, interval.words.size());
    }
    write_csv_row(out, header);
    for (std::size_t r = 0; r < depth; ++r) {
        std::vector<std::string> row;
        for (const auto& interval : intervals) {
            if (r < interval.words.size()) {
                row.push_back(interval.words[r].first);
                row.push_back(std::to_string(interval.words[r].second));
            } else {
                row.push_back("");
                row.push_back("");
            }
        }
        write_csv_row(out, row);
    }
    return out.str();
}

std::string emerging_json(const std::vector<EmergingInterval>& intervals,
                          const std::string& run_id) {
    ordered_json j;
    j["run_id"] = run_id;
    ordered_json arr = ordered_json::array();
    for (const auto& interval : intervals) {
        ordered_json words = ordered_json::array();
        for (const auto& [term, freq] : interval.words)
            words.push_back({{"word", term}, {"freq", freq}});
        arr.push_back({{"label", interval.label},
                       {"start", format_time(interval.start)},
                       {"end", format_time(interval.end)},
                       {"words", words}});
    }
    j["intervals"] = arr;
    return j.dump(2) + "\n";
}

std::string sliding_window_csv(const SlidingWindowResult& result) {
    std::ostringstream out;
    out << "train_start,train_end,eval_end,f1_rejected,f1_macro,precision_rejected,"
           "recall_rejected,accuracy\n";
    for (const auto& p : result.points) {
        std::vector<std::string> row = {
            format_time(p.train_start),  format_time(p.train_end),
            format_time(p.eval_end),     format_double(p.metrics.rejected.f1),
            format_double(p.metrics.macro.f1), format_double(p.metrics.rejected.precision),
            format_double(p.metrics.rejected.recall), format_double(p.metrics.accuracy)};
        write_csv_row(out, row);
    }
    return out.str();
}

std::string metrics_json_fragment(const Metrics& m) { return metrics_to_json(m).dump(2); }

}  // namespace driftlab
