#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sumex/dataset.hpp"
#include "sumex/explanation.hpp"

namespace sumex {

enum class SolveMode { MC, MS, MSqC };

const char* to_string(SolveMode mode);

enum class SolveStatus { Optimal, TimeLimitBestKnown, Infeasible };

const char* to_string(SolveStatus status);

// What to solve and how. q only applies to MSqC and is interpreted with a
// resolution of 1e-4 (internally held as an exact rational so feasibility
// tests at the boundary never depend on floating-point rounding).
// max_complexity bounds MS/MSqC clauses; MC minimizes complexity without a
// cap. time_limit_seconds <= 0 means unlimited.
struct SolveSpec {
    SolveMode mode = SolveMode::MS;
    double q = 0.85;
    int max_complexity = 4;
    double time_limit_seconds = 60.0;
    bool dominance_pruning = false;  // skip extensions inside an already-used feature group
    bool mc_warm_start = false;      // seed MS/MSqC incumbent with the MC solution
};

struct SolveResult {
    std::optional<Clause> clause;  // absent when infeasible or no incumbent before timeout
    std::int64_t objective = 0;    // support for MS/MSqC, complexity for MC
    SolveStatus status = SolveStatus::Infeasible;
    std::int64_t nodes = 0;
    double wall_seconds = 0.0;
};

// Exact branch-and-bound over clause extensions within P^e (depth at most
// max_complexity for MS/MSqC). Ties between equal-objective clauses break by
// smaller complexity, then lexicographically smallest feature-index set, so
// results are deterministic.
//
// dominance_pruning assumes grouped features (same raw column, same
// operator) have nested or disjoint delta columns, which binarize()
// guarantees; with hand-built feature metadata that does not satisfy this
// the variant may prune optima.
SolveResult solve(const BinaryDataset& ds, const TargetContext& ctx, const SolveSpec& spec);

// Exhaustive enumeration oracle with the same tie-break. Guarded to
// |P^e| <= 25 and max_complexity <= 4 (for MC, the enumeration stops at
// complexity 8 and throws if the optimum lies beyond).
SolveResult brute_force(const BinaryDataset& ds, const TargetContext& ctx, const SolveSpec& spec);

// Partition of feature indices by (raw column, operator). Within a group a
// conjunction never needs two members.
std::vector<std::vector<int>> dominance_groups(const std::vector<FeatureFunction>& features);

} // namespace sumex
