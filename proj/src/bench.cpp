#include "sumex/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumex/rng.hpp"
#include "sumex/sis.hpp"

namespace sumex {

const char* to_string(Method m) {
    switch (m) {
        case Method::MC: return "MC";
        case Method::MS: return "MS";
        case Method::MSqC: return "MSqC";
        case Method::RCS: return "RCS";
        case Method::WCS: return "WCS";
    }
    return "?";
}

const CellAggregate* BenchmarkReport::cell(Method m, std::size_t size) const {
    for (const auto& c : cells) {
        if (c.method == m && c.local_size == size) return &c;
    }
    return nullptr;
}

double shifted_geomean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("shifted_geomean of empty list");
    double acc = 0.0;
    for (const double v : values) {
        if (v < 0.0) throw std::invalid_argument("shifted_geomean needs nonnegative values");
        acc += std::log1p(v);
    }
    return std::expm1(acc / static_cast<double>(values.size()));
}

namespace {

constexpr std::uint64_t kSampleStream = 0xA1;
constexpr std::uint64_t kTargetStream = 0xB2;
constexpr std::uint64_t kMethodStream = 0xC3;

RunRecord execute_run(const ExperimentConfig& config, const BinaryDataset& global,
                      const GlobalCounts& gc, Method method, std::size_t size, int run) {
    RunRecord rec;
    rec.method = method;
    rec.local_size = size;
    rec.run = run;

    const auto sample_seed = mix_seed({config.seed, size, static_cast<std::uint64_t>(run),
                                       kSampleStream});
    const BinaryDataset local = sample_local(global, size, sample_seed);

    Rng target_rng(mix_seed({config.seed, size, static_cast<std::uint64_t>(run),
                             kTargetStream}));
    const auto e = static_cast<std::size_t>(target_rng.below(size));
    rec.target_index = static_cast<int>(e);
    rec.target_id = local.obs_ids[e];
    const TargetContext ctx = target_context(local, e);

    if (method == Method::WCS || method == Method::RCS) {
        WcsConfig wc = config.wcs;
        wc.q = config.q;
        wc.max_complexity = config.max_complexity;
        wc.seed = mix_seed({config.seed, size, static_cast<std::uint64_t>(run), kMethodStream,
                            static_cast<std::uint64_t>(method)});
        if (method == Method::RCS) wc.weighting = Weighting::Uniform;
        const WcsRunResult res = run_wcs(wc, local, ctx, &gc);
        rec.status = SolveStatus::Optimal;
        rec.q_feasible = res.outcome.q_feasible;
        rec.seconds = res.outcome.wall_seconds;
        rec.has_clause = true;
        rec.clause = *res.outcome.chosen.clause;
    } else {
        SolveSpec spec;
        spec.mode = method == Method::MC   ? SolveMode::MC
                    : method == Method::MS ? SolveMode::MS
                                           : SolveMode::MSqC;
        spec.q = config.q;
        spec.max_complexity = config.max_complexity;
        spec.time_limit_seconds = config.time_limit_seconds;
        spec.dominance_pruning = method != Method::MC && config.dominance_pruning;
        spec.mc_warm_start = method != Method::MC && config.mc_warm_start;
        const SolveResult res = solve(local, ctx, spec);
        rec.status = res.status;
        rec.seconds = res.wall_seconds;
        rec.nodes = res.nodes;
        if (res.clause) {
            rec.has_clause = true;
            rec.clause = *res.clause;
        }
    }

    if (rec.has_clause) {
        const ClauseStats ls = evaluate_clause(rec.clause, ctx.label, local);
        const ClauseStats gs = evaluate_clause(rec.clause, ctx.label, global);
        rec.local_support = ls.support;
        rec.local_consistency = ls.consistency;
        rec.global_support = gs.support;
        rec.global_consistency = gs.consistency;
    }
    return rec;
}

bool contributes(const RunRecord& rec) {
    if (!rec.has_clause) return false;
    if (rec.method == Method::WCS || rec.method == Method::RCS) return true;
    return rec.status == SolveStatus::Optimal;
}

CellAggregate aggregate_cell(Method method, std::size_t size,
                             const std::vector<RunRecord>& records) {
    CellAggregate cell;
    cell.method = method;
    cell.local_size = size;
    std::vector<double> times, lsup, lcon, gsup, gcon;
    for (const auto& rec : records) {
        if (rec.method != method || rec.local_size != size) continue;
        ++cell.runs;
        times.push_back(rec.seconds);
        if (rec.status == SolveStatus::TimeLimitBestKnown) ++cell.timeouts;
        if (rec.status == SolveStatus::Infeasible) ++cell.infeasible;
        if (!rec.q_feasible) ++cell.q_infeasible;
        if (contributes(rec)) {
            ++cell.contributing;
            lsup.push_back(static_cast<double>(rec.local_support));
            lcon.push_back(rec.local_consistency);
            gsup.push_back(static_cast<double>(rec.global_support));
            gcon.push_back(rec.global_consistency);
        }
    }
    if (!times.empty()) cell.time_geomean = shifted_geomean(times);
    if (!lsup.empty()) {
        cell.has_values = true;
        cell.local_support_geomean = shifted_geomean(lsup);
        cell.global_support_geomean = shifted_geomean(gsup);
        double a = 0.0, b = 0.0;
        for (const double v : lcon) a += v;
        for (const double v : gcon) b += v;
        cell.local_consistency_mean = a / static_cast<double>(lcon.size());
        cell.global_consistency_mean = b / static_cast<double>(gcon.size());
    }
    return cell;
}

} // namespace

BenchmarkReport run_experiment(const ExperimentConfig& config, const BinaryDataset& global) {
    if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (config.methods.empty()) throw std::invalid_argument("no methods configured");
    for (const auto size : config.local_sizes) {
        if (size < 1 || size > global.n)
            throw std::invalid_argument("local size out of range");
    }

    const GlobalCounts gc = global_counts(global);
    BenchmarkReport report;
    report.config = config;
    report.global_size = global.n;
    for (const auto method : config.methods) {
        for (const auto size : config.local_sizes) {
            for (int run = 0; run < config.runs; ++run)
                report.records.push_back(execute_run(config, global, gc, method, size, run));
            report.cells.push_back(aggregate_cell(method, size, report.records));
        }
    }
    return report;
}

RankTable rank_methods(const BenchmarkReport& report) {
    if (report.config.methods.size() < 2)
        throw std::invalid_argument("ranking needs at least two methods");

    RankTable table;
    table.metrics = {"solution_time", "local_support", "local_consistency", "global_support",
                     "global_consistency"};
    table.sizes = report.config.local_sizes;
    table.ranks.resize(table.metrics.size());

    for (std::size_t m = 0; m < table.metrics.size(); ++m) {
        const bool ascending = table.metrics[m] == "solution_time";
        table.ranks[m].resize(table.sizes.size());
        for (std::size_t s = 0; s < table.sizes.size(); ++s) {
            std::vector<std::pair<Method, double>> values;
            for (const auto method : report.config.methods) {
                const CellAggregate* cell = report.cell(method, table.sizes[s]);
                if (!cell) continue;
                if (table.metrics[m] == "solution_time") {
                    if (cell->runs > 0) values.emplace_back(method, cell->time_geomean);
                    continue;
                }
                if (!cell->has_values) continue;  // N/A cell
                double v = 0.0;
                if (table.metrics[m] == "local_support") v = cell->local_support_geomean;
                if (table.metrics[m] == "local_consistency") v = cell->local_consistency_mean;
                if (table.metrics[m] == "global_support") v = cell->global_support_geomean;
                if (table.metrics[m] == "global_consistency") v = cell->global_consistency_mean;
                values.emplace_back(method, v);
            }
            auto& out = table.ranks[m][s];
            for (const auto& [method, v] : values) {
                int rank = 1;
                for (const auto& [other, w] : values) {
                    if (other == method) continue;
                    if (ascending ? w < v : w > v) ++rank;
                }
                out.push_back({method, rank});
            }
        }
    }
    return table;
}

} // namespace sumex
