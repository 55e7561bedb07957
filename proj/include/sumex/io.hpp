#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumex/bench.hpp"
#include "sumex/dataset.hpp"
#include "sumex/explanation.hpp"
#include "sumex/sis.hpp"
#include "sumex/solver.hpp"
#include "sumex/wcs.hpp"

namespace sumex {

std::string base64_encode(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> base64_decode(const std::string& text);

// Self-describing dataset file: JSON metadata plus base64 row-major delta
// and label bitsets. Writing is deterministic (byte-identical reruns).
nlohmann::json dataset_to_json(const BinaryDataset& ds);
BinaryDataset dataset_from_json(const nlohmann::json& j);
void save_dataset(const BinaryDataset& ds, const std::string& path);
BinaryDataset load_dataset(const std::string& path);

// Global-count sidecar keyed by the feature-metadata hash; loading verifies
// both the hash against the dataset and a checksum over the counts.
void save_global_counts(const GlobalCounts& gc, const BinaryDataset& ds,
                        const std::string& path);
GlobalCounts load_global_counts(const std::string& path, const BinaryDataset& ds);

nlohmann::json explanation_to_json(const SummaryExplanation& expl, const BinaryDataset& meta,
                                   RenderStyle style);
nlohmann::json solve_result_to_json(const SolveResult& res);
nlohmann::json wcs_outcome_to_json(const WcsOutcome& outcome);
nlohmann::json run_record_to_json(const RunRecord& rec);
nlohmann::json report_to_json(const BenchmarkReport& report);

// report.json, raw_runs.jsonl, and the per-metric CSV tables plus
// rankings.csv under `dir` (created if needed).
void write_report_files(const BenchmarkReport& report, const std::string& dir);

// Benchmark run description parsed from a key=value config file.
struct BenchFileConfig {
    std::string dataset_path;        // exclusive with synthetic
    std::string global_counts_path;  // optional; informational
    bool synthetic = false;
    SynthSpec synth;
    std::uint64_t synth_seed = 7;
    int synth_thresholds = 5;
    ExperimentConfig experiment;
};

BenchFileConfig parse_bench_config(const std::string& path);

} // namespace sumex
