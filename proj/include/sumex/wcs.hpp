#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sumex/dataset.hpp"
#include "sumex/explanation.hpp"
#include "sumex/sis.hpp"
#include "sumex/solver.hpp"

namespace sumex {

enum class Weighting { SisLocal, SisGlobal, Uniform };

const char* to_string(Weighting w);

// Column-sampling configuration: m max-support subproblems over n_wcs
// observations and a rho fraction of P^e each, with features drawn by
// softmax(SIS) weight (or uniformly for the RCS baseline).
struct WcsConfig {
    int m = 40;
    int n_wcs = 100;
    double rho = 0.25;
    double softmax_scale = 5.0;
    double q = 0.85;
    int max_complexity = 4;
    Weighting weighting = Weighting::SisLocal;
    std::uint64_t seed = 0;
    double sub_time_limit_seconds = 10.0;
    bool sub_dominance_pruning = true;
};

struct Subproblem {
    std::vector<int> observations;  // indices into the local dataset; includes the target
    std::vector<int> features;      // subset of P^e
};

struct CandidateSummary {
    int subproblem = 0;
    std::optional<Clause> clause;   // absent when the subproblem was infeasible
    std::int64_t sub_objective = 0; // support within the subproblem
    SolveStatus sub_status = SolveStatus::Infeasible;
    std::int64_t support_n = 0;     // evaluated on the full local dataset
    double consistency_n = 1.0;
};

struct WcsOutcome {
    SolveResult chosen;             // objective = support on the full local dataset
    bool q_feasible = false;
    std::vector<CandidateSummary> candidates;
    double wall_seconds = 0.0;
};

struct WcsRunResult {
    WcsOutcome outcome;
    SummaryExplanation explanation;  // evaluated on the local dataset
};

// m subproblems: features by sequential weighted draws without replacement,
// observations uniformly without replacement with the target always
// included. All randomness is drawn sequentially from one generator seeded
// by config.seed, so results are reproducible bit for bit.
std::vector<Subproblem> build_subproblems(const WcsConfig& config, const TargetContext& ctx,
                                          const BinaryDataset& ds,
                                          const std::vector<double>& weights);

// Solves each subproblem as a max-support model over its restricted
// observation and feature sets. Subproblems are independent and solved in
// parallel; the output order matches the input order.
std::vector<CandidateSummary> solve_subproblems(const std::vector<Subproblem>& subproblems,
                                                const BinaryDataset& ds,
                                                const TargetContext& ctx,
                                                const WcsConfig& config);

// Evaluates every candidate clause against the full local dataset and picks
// the largest-support one with consistency >= q; when none qualifies, the
// highest-consistency candidate is returned flagged infeasible.
WcsOutcome merge(std::vector<CandidateSummary> candidates, const BinaryDataset& ds,
                 const TargetContext& ctx, double q);

// Full pipeline: weights -> build -> solve -> merge. SIS-global weighting
// requires precomputed global counts.
WcsRunResult run_wcs(const WcsConfig& config, const BinaryDataset& ds, const TargetContext& ctx,
                     const GlobalCounts* global = nullptr);

} // namespace sumex
