#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "sumex/dataset.hpp"
#include "sumex/explanation.hpp"
#include "sumex/rng.hpp"

namespace sumex::test {

// Builds a BinaryDataset directly from delta rows given as "101"-style
// strings. Features are placed on distinct numeric columns so dominance
// groups are singletons unless a test overrides the metadata.
inline BinaryDataset make_binary(const std::vector<std::string>& rows,
                                 const std::vector<int>& labels) {
    BinaryDataset ds;
    ds.n = rows.size();
    const std::size_t p_count = rows.empty() ? 0 : rows[0].size();
    for (std::size_t p = 0; p < p_count; ++p) {
        ds.column_names.push_back("c" + std::to_string(p));
        ds.column_kinds.push_back(ColumnKind::Numeric);
        ds.features.push_back({static_cast<int>(p), FeatureOp::Ge, 1.0, {}});
        BitVector col(ds.n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].at(p) == '1') col.set(i);
        }
        ds.columns.push_back(std::move(col));
    }
    ds.labels = BitVector(ds.n);
    ds.obs_ids.resize(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (labels[i]) ds.labels.set(i);
        ds.obs_ids[i] = static_cast<std::int64_t>(i);
    }
    return ds;
}

// The six-observation instance used across solver and SIS tests. Target is
// observation 0; P^e = {0, 1, 2}, N^e = {0, 1, 2}.
inline BinaryDataset worked_dataset() {
    return make_binary({"111", "110", "101", "100", "011", "001"}, {1, 1, 1, 0, 0, 0});
}

// Random solver instance drawn from a genuine binarization (so grouped
// features really nest). |P^e| stays small enough for brute force.
struct RandomInstance {
    BinaryDataset ds;
    std::size_t target;
};

inline RandomInstance random_instance(std::uint64_t seed, std::size_t min_rows = 20,
                                      std::size_t max_rows = 60, int cols = 3,
                                      int thresholds = 2) {
    Rng rng(seed);
    SynthSpec spec;
    spec.rows = min_rows + rng.below(max_rows - min_rows + 1);
    spec.numeric_columns = cols;
    const int conds = 1 + static_cast<int>(rng.below(2));
    for (int c = 0; c < conds; ++c) {
        PlantedCondition cond;
        cond.column = static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)));
        cond.op = rng.below(2) ? FeatureOp::Le : FeatureOp::Ge;
        cond.threshold = 20.0 + rng.unit() * 60.0;
        spec.rule.push_back(cond);
    }
    spec.noise = 0.05 + rng.unit() * 0.25;
    const RawDataset raw = synthesize(spec, rng.next());
    BinarizeScheme scheme;
    scheme.thresholds_per_column = thresholds;
    RandomInstance inst{binarize(raw, scheme), 0};
    inst.target = rng.below(inst.ds.n);
    return inst;
}

// Scratch directory unique to a test; removed when the object dies.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("sumex_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string dir() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return content;
}

} // namespace sumex::test
