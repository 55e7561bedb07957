#include "sumex/sis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumex {

std::int64_t SisTable::score_for(int feature) const {
    const auto it = std::lower_bound(features.begin(), features.end(), feature);
    if (it == features.end() || *it != feature)
        throw std::out_of_range("feature not in SIS table");
    return scores[static_cast<std::size_t>(it - features.begin())];
}

double increased_support(int p, const DualAssignment& duals, const TargetContext& ctx,
                         const BinaryDataset& ds) {
    if (!std::binary_search(ctx.satisfied.begin(), ctx.satisfied.end(), p))
        throw std::invalid_argument("feature outside P^e");
    if (duals.gamma < 0.0) throw std::invalid_argument("negative dual");
    const auto& col = ds.columns[static_cast<std::size_t>(p)];

    const auto sis = static_cast<double>(
        static_cast<std::int64_t>(col.count_and(ctx.consistent)) -
        static_cast<std::int64_t>(col.count_and(ctx.inconsistent)));

    double adjustment = -duals.gamma;
    for (std::size_t i = 0; i < ds.n; ++i) {
        const bool unsatisfied = !col.test(i);
        if (ctx.consistent.test(i)) {
            if (duals.lambda[i] < 0.0) throw std::invalid_argument("negative dual");
            if (unsatisfied) adjustment -= duals.lambda[i];
        } else {
            if (duals.mu[i] < 0.0) throw std::invalid_argument("negative dual");
            if (unsatisfied) adjustment += duals.mu[i];
        }
    }
    return sis + adjustment;
}

SisTable local_sis(const TargetContext& ctx, const BinaryDataset& ds) {
    SisTable table;
    table.provenance = SisProvenance::Local;
    table.features = ctx.satisfied;
    table.scores.reserve(ctx.satisfied.size());
    for (const int p : ctx.satisfied) {
        const auto& col = ds.columns[static_cast<std::size_t>(p)];
        table.scores.push_back(static_cast<std::int64_t>(col.count_and(ctx.consistent)) -
                               static_cast<std::int64_t>(col.count_and(ctx.inconsistent)));
    }
    return table;
}

GlobalCounts global_counts(const BinaryDataset& global) {
    GlobalCounts gc;
    gc.rows = static_cast<std::int64_t>(global.n);
    gc.counts.reserve(global.feature_count());
    for (const auto& col : global.columns) {
        const auto ones = static_cast<std::int64_t>(col.count_and(global.labels));
        const auto total = static_cast<std::int64_t>(col.count());
        gc.counts.push_back({total - ones, ones});
    }
    return gc;
}

SisTable global_sis(const GlobalCounts& counts, int target_label,
                    const std::vector<int>& satisfied) {
    SisTable table;
    table.provenance = SisProvenance::Global;
    table.features = satisfied;
    table.scores.reserve(satisfied.size());
    const auto ye = static_cast<std::size_t>(target_label == 1 ? 1 : 0);
    for (const int p : satisfied) {
        const auto& d = counts.counts.at(static_cast<std::size_t>(p));
        table.scores.push_back(d[ye] - d[1 - ye]);
    }
    return table;
}

std::vector<double> sampling_weights(const SisTable& table, double scale) {
    if (scale <= 0.0) throw std::invalid_argument("softmax scale must be positive");
    if (table.scores.empty()) throw std::invalid_argument("empty SIS table");

    const std::int64_t max_s = *std::max_element(table.scores.begin(), table.scores.end());
    const std::int64_t min_s = *std::min_element(table.scores.begin(), table.scores.end());

    std::vector<double> scaled(table.scores.size());
    if (max_s > 0) {
        for (std::size_t k = 0; k < scaled.size(); ++k)
            scaled[k] = scale * static_cast<double>(table.scores[k]) / static_cast<double>(max_s);
    } else {
        // All scores nonpositive: shift so the maximum becomes positive
        // before rescaling. Order is preserved.
        const std::int64_t shift = 1 - min_s;
        for (std::size_t k = 0; k < scaled.size(); ++k)
            scaled[k] = scale * static_cast<double>(table.scores[k] + shift) /
                        static_cast<double>(max_s + shift);
    }

    const double m = *std::max_element(scaled.begin(), scaled.end());
    std::vector<double> probs(scaled.size());
    double total = 0.0;
    for (std::size_t k = 0; k < scaled.size(); ++k) {
        probs[k] = std::exp(scaled[k] - m);
        total += probs[k];
    }
    for (auto& w : probs) w /= total;
    return probs;
}

} // namespace sumex
