#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "driftlab/corpus.hpp"
#include "driftlab/driftstats.hpp"
#include "driftlab/protocols.hpp"
#include "driftlab/synthgen.hpp"

namespace driftlab {

// Writes via a temp file in the same directory plus rename, so readers never
// observe partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Audit record of one CLI run. Reports embed only run_id so that rerunning
// with identical inputs reproduces report files byte for byte; wall-clock
// times live here and nowhere else.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // flag -> value, ordered
    std::uint64_t input_hash = 0;
    std::uint64_t stopwords_hash = 0;
    std::uint64_t seed = 0;
    std::string started_utc;
    std::string finished_utc;

    // Deterministic id over command, config, input hash, and seed.
    std::string run_id() const;
};

std::string manifest_json(const RunManifest& manifest);

std::string ingest_summary_json(const IngestSummary& summary, const std::string& run_id);

// Table-shaped monthly CSV: one row per evaluation month, positive-class and
// macro metrics for both arms.
std::string split_report_csv(const SplitReport& report);
std::string split_report_json(const SplitReport& report, const std::string& run_id);
// Long format: month,arm,metric,value (includes "overall" rows).
std::string split_plot_csv(const SplitReport& report);

// K x K matrix with chunk labels on both axes.
std::string matrix_csv(const std::vector<std::pair<UtcTime, UtcTime>>& bounds,
                       const std::vector<std::vector<double>>& cells);
std::string degradation_json(const DegradationMatrix& matrix, const CorrelationMatrix& correlation,
                             const std::string& run_id);
// Long format: train_chunk,eval_chunk,lag,f1,spearman_rho.
std::string degradation_plot_csv(const DegradationMatrix& matrix,
                                 const CorrelationMatrix& correlation);

// Interval-major columns (word/freq pairs per interval), one row per rank.
std::string emerging_csv(const std::vector<EmergingInterval>& intervals);
std::string emerging_json(const std::vector<EmergingInterval>& intervals,
                          const std::string& run_id);

std::string sliding_window_csv(const SlidingWindowResult& result);

std::string metrics_json_fragment(const Metrics& m);  // reused by writers and tests

}  // namespace driftlab
