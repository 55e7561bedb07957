#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumex/bitvector.hpp"
#include "sumex/dataset.hpp"

namespace sumex {

// A conjunction of feature conditions, held as a sorted set of feature
// indices. The empty clause matches every observation.
struct Clause {
    std::vector<int> features;

    Clause() = default;
    explicit Clause(std::vector<int> idx);

    std::size_t complexity() const { return features.size(); }
    bool empty() const { return features.empty(); }

    bool operator==(const Clause&) const = default;
    // Orders by the sorted index sequence; used for deterministic tie-breaks.
    bool operator<(const Clause& o) const;
};

// Everything about the target observation the solvers need: the satisfied
// feature set P^e and the consistent-observation mask N^e.
struct TargetContext {
    int target = 0;                 // e
    int label = 0;                  // y_e
    std::vector<int> satisfied;     // P^e, sorted
    BitVector consistent;           // N^e as a mask over the dataset
    BitVector inconsistent;         // complement of N^e
    std::size_t consistent_count = 0;
};

TargetContext target_context(const BinaryDataset& ds, std::size_t e);

BitVector support_mask(const Clause& clause, const BinaryDataset& ds);
std::vector<int> support_set(const Clause& clause, const BinaryDataset& ds);

struct ClauseStats {
    std::int64_t support = 0;
    std::int64_t consistent_support = 0;
    double consistency = 1.0;
    bool vacuous = false;  // empty support; consistency fixed at 1.0 by convention
};

ClauseStats evaluate_clause(const Clause& clause, int label, const BinaryDataset& ds);

// Fraction of matched observations whose label equals `label`. Empty support
// yields 1.0; callers that care must check support size (see ClauseStats).
double consistency_level(const Clause& clause, int label, const BinaryDataset& ds);

enum class Scope { Local, Global };

struct SummaryExplanation {
    Clause clause;
    int label = 0;
    std::int64_t support = 0;
    double consistency = 1.0;
    std::int64_t complexity = 0;
    bool vacuous = false;
    Scope scope = Scope::Local;
    std::int64_t scope_size = 0;
};

SummaryExplanation make_explanation(const Clause& clause, int label, const BinaryDataset& ds,
                                    Scope scope);

enum class RenderStyle { Exact, QStyle };

// "For all 594 people whose A <= 63 and B <= 48, all of them were predicted
// to default." / "For 594 people whose ..., over 86% of them were predicted
// to default." The percentage floors so a sentence never overstates the
// measured consistency.
std::string render(const SummaryExplanation& expl, const BinaryDataset& meta, RenderStyle style);

// Condition text for one feature, e.g. "ExternalRiskEstimate <= 63".
std::string condition_text(const FeatureFunction& f, const std::vector<std::string>& column_names);

// Number formatting shared by rendering and serialization: integral values
// print without a decimal point.
std::string format_number(double v);

} // namespace sumex
