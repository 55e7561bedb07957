#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumex/bitvector.hpp"

namespace sumex {

enum class ColumnKind { Numeric, Categorical };

enum class FeatureOp { Le, Ge, Eq };

const char* to_string(FeatureOp op);

// One binary feature function F_p: a threshold condition on a raw column.
// Le/Ge apply to numeric columns, Eq to categorical columns. A missing raw
// value never satisfies any feature.
struct FeatureFunction {
    int column = 0;
    FeatureOp op = FeatureOp::Le;
    double threshold = 0.0;   // Le/Ge
    std::string category;     // Eq

    bool operator==(const FeatureFunction&) const = default;
};

// Tabular data with a binary outcome, stored column-major. Numeric cells
// use NaN for missing; categorical cells carry a parallel missing flag.
struct RawDataset {
    std::vector<std::string> column_names;
    std::vector<ColumnKind> kinds;
    std::vector<std::vector<double>> numeric;               // per column; empty unless Numeric
    std::vector<std::vector<std::string>> categorical;      // per column; empty unless Categorical
    std::vector<std::vector<std::uint8_t>> missing;         // per column, per row
    std::vector<int> outcome;                               // 0/1 per row
    std::array<std::string, 2> label_names = {"0", "1"};

    std::size_t rows() const { return outcome.size(); }
    std::size_t cols() const { return column_names.size(); }

    // Evaluates F_p on row i.
    bool evaluate(const FeatureFunction& f, std::size_t i) const;
};

// The binarized observation dataset: delta bit-matrix (stored as one bit
// column per feature), labels, feature metadata, and stable observation ids
// that survive local re-sampling.
struct BinaryDataset {
    std::size_t n = 0;
    std::vector<std::string> column_names;
    std::vector<ColumnKind> column_kinds;
    std::array<std::string, 2> label_names = {"0", "1"};
    std::vector<FeatureFunction> features;
    std::vector<BitVector> columns;   // columns[p].test(i) == delta_{i,p}
    BitVector labels;                 // labels.test(i) == (y_i == 1)
    std::vector<std::int64_t> obs_ids;

    std::size_t feature_count() const { return features.size(); }
    bool delta(std::size_t i, std::size_t p) const { return columns[p].test(i); }
    int label(std::size_t i) const { return labels.test(i) ? 1 : 0; }

    // Index of the observation with the given stable id, if present.
    std::optional<std::size_t> index_of(std::int64_t obs_id) const;

    // FNV-1a over the feature metadata; keys precomputed global-count
    // sidecars to the exact binarization they were built from.
    std::uint64_t feature_hash() const;
};

// How load_raw interprets the file.
struct FormatDescriptor {
    std::string outcome_column;
    std::vector<std::string> missing_tokens;   // e.g. {"-7", "-8", "-9"}
    std::string true_token;                    // outcome token mapped to 1 (optional)
    std::string false_token;                   // outcome token mapped to 0 (optional)
    std::array<std::string, 2> label_names = {"", ""};  // display names; default tokens
};

RawDataset load_raw(const std::string& path, const FormatDescriptor& desc);

struct BinarizeScheme {
    int thresholds_per_column = 9;  // k quantile cuts per numeric column
    bool dedup = true;              // collapse features with identical delta columns
    bool drop_degenerate = true;    // drop all-zero / all-one delta columns
};

// Evaluates an explicit feature list on every row. No dedup or filtering.
BinaryDataset apply_features(const RawDataset& raw, const std::vector<FeatureFunction>& features);

// Quantile binarization: k thresholds per numeric column, each emitted in
// both directions; one equality feature per categorical value. Columns that
// end up contributing no features are reported through `warnings`.
BinaryDataset binarize(const RawDataset& raw, const BinarizeScheme& scheme,
                       std::vector<std::string>* warnings = nullptr);

// Uniform sample of `size` observations without replacement. Feature list
// and observation ids are shared with the source, so metrics computed on the
// sample remain comparable to the global dataset.
BinaryDataset sample_local(const BinaryDataset& global, std::size_t size, std::uint64_t seed);

// A planted conjunctive rule for synthetic data.
struct PlantedCondition {
    int column = 0;
    FeatureOp op = FeatureOp::Le;  // Le or Ge
    double threshold = 0.0;
};

struct SynthSpec {
    std::size_t rows = 0;
    int numeric_columns = 1;
    std::vector<PlantedCondition> rule;
    double noise = 0.0;          // label flip probability
    double value_range = 100.0;  // cells drawn uniformly from [0, value_range)
};

// Uniform random rows; outcome = rule(row) flipped with probability noise.
RawDataset synthesize(const SynthSpec& spec, std::uint64_t seed);

} // namespace sumex
