#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sumex/dataset.hpp"
#include "sumex/explanation.hpp"

namespace sumex {

enum class SisProvenance { Local, Global };

// Per-feature simplified-increased-support scores over the target's
// satisfied feature set P^e. `features` and `scores` are parallel arrays.
struct SisTable {
    std::vector<int> features;
    std::vector<std::int64_t> scores;
    SisProvenance provenance = SisProvenance::Local;

    std::int64_t score_for(int feature) const;
};

// Duals of the max-support model's Lagrangian: mu for the exclusion
// constraints (inconsistent observations), lambda for the support-link
// constraints (consistent observations), gamma for the complexity budget.
struct DualAssignment {
    std::vector<double> mu;      // indexed by observation; used for i outside N^e
    std::vector<double> lambda;  // indexed by observation; used for i in N^e
    double gamma = 0.0;

    static DualAssignment zero(std::size_t n) { return {std::vector<double>(n, 0.0),
                                                        std::vector<double>(n, 0.0), 0.0}; }
};

// Increased support of feature p at the given duals. At zero duals this is
// exactly the SIS score s_p; the dual terms adjust it by
// sum_{i not in N^e} mu_i (1 - delta_{i,p}) - sum_{i in N^e} lambda_i (1 - delta_{i,p}) - gamma.
double increased_support(int p, const DualAssignment& duals, const TargetContext& ctx,
                         const BinaryDataset& ds);

// s_p = (satisfied count among N^e) - (satisfied count among N \ N^e),
// for every p in P^e.
SisTable local_sis(const TargetContext& ctx, const BinaryDataset& ds);

// Per-feature satisfied counts of the global dataset, split by label. These
// depend only on the global data, so they can be computed once and reused
// across explanation requests.
struct GlobalCounts {
    std::int64_t rows = 0;
    std::vector<std::array<std::int64_t, 2>> counts;  // counts[p][y]
};

GlobalCounts global_counts(const BinaryDataset& global);

// Global SIS: s_p = Delta_{p, y_e} - Delta_{p, 1-y_e} over P^e.
SisTable global_sis(const GlobalCounts& counts, int target_label,
                    const std::vector<int>& satisfied);

// Softmax sampling weights over the table's features. Scores are rescaled to
// s' = a * s / max(s); when max(s) <= 0 the scores are first shifted by
// 1 - min(s) so the rescaling stays well-defined and order-preserving.
std::vector<double> sampling_weights(const SisTable& table, double scale);

} // namespace sumex
