#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumex/dataset.hpp"
#include "sumex/solver.hpp"
#include "sumex/wcs.hpp"

namespace sumex {

enum class Method { MC, MS, MSqC, RCS, WCS };

const char* to_string(Method m);

// One benchmark grid: methods x local sizes, `runs` resampled local datasets
// per cell with a fresh uniformly-drawn target each. Local sampling and
// target seeds derive from (seed, size, run) only, so runs are paired across
// methods.
struct ExperimentConfig {
    std::vector<Method> methods;
    std::vector<std::size_t> local_sizes;
    int runs = 40;
    double q = 0.85;
    int max_complexity = 4;
    double time_limit_seconds = 60.0;
    std::uint64_t seed = 1;
    bool dominance_pruning = true;  // MS/MSqC; MC always runs vanilla
    bool mc_warm_start = false;
    WcsConfig wcs;                  // template for WCS/RCS runs
};

struct RunRecord {
    Method method = Method::MC;
    std::size_t local_size = 0;
    int run = 0;
    std::int64_t target_id = 0;
    int target_index = 0;
    SolveStatus status = SolveStatus::Infeasible;
    bool q_feasible = true;   // false only for WCS/RCS fallback results
    double seconds = 0.0;
    bool has_clause = false;
    Clause clause;
    std::int64_t nodes = 0;
    std::int64_t local_support = 0;
    double local_consistency = 1.0;
    std::int64_t global_support = 0;
    double global_consistency = 1.0;
};

// Support and consistency aggregates cover runs that produced a usable
// clause: exact solves that finished, and every WCS/RCS run including
// q-infeasible fallbacks. Cells where nothing contributed are reported N/A
// (has_values = false), mirroring the timeout convention of the reference
// tables. Times aggregate over all runs with the capped duration.
struct CellAggregate {
    Method method = Method::MC;
    std::size_t local_size = 0;
    int runs = 0;
    int contributing = 0;
    int timeouts = 0;
    int infeasible = 0;
    int q_infeasible = 0;
    double time_geomean = 0.0;
    bool has_values = false;
    double local_support_geomean = 0.0;
    double local_consistency_mean = 0.0;
    double global_support_geomean = 0.0;
    double global_consistency_mean = 0.0;
};

struct BenchmarkReport {
    ExperimentConfig config;
    std::size_t global_size = 0;
    std::vector<RunRecord> records;
    std::vector<CellAggregate> cells;

    const CellAggregate* cell(Method m, std::size_t size) const;
};

// exp(mean(ln(v + 1))) - 1 over nonnegative values.
double shifted_geomean(const std::vector<double>& values);

BenchmarkReport run_experiment(const ExperimentConfig& config, const BinaryDataset& global);

// Competition ranks per metric and local size: time ascending, supports and
// consistencies descending; tied methods share the better rank; N/A cells
// are left out.
struct RankEntry {
    Method method;
    int rank;
};

struct RankTable {
    std::vector<std::string> metrics;
    std::vector<std::size_t> sizes;
    // ranks[metric][size] -> entries ordered by method as listed in the report
    std::vector<std::vector<std::vector<RankEntry>>> ranks;
};

RankTable rank_methods(const BenchmarkReport& report);

} // namespace sumex
