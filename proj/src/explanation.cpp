#include "sumex/explanation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sumex {

Clause::Clause(std::vector<int> idx) : features(std::move(idx)) {
    std::sort(features.begin(), features.end());
    if (std::adjacent_find(features.begin(), features.end()) != features.end())
        throw std::invalid_argument("clause contains duplicate feature indices");
}

bool Clause::operator<(const Clause& o) const {
    return std::lexicographical_compare(features.begin(), features.end(),
                                        o.features.begin(), o.features.end());
}

TargetContext target_context(const BinaryDataset& ds, std::size_t e) {
    if (e >= ds.n) throw std::out_of_range("target index out of range");
    TargetContext ctx;
    ctx.target = static_cast<int>(e);
    ctx.label = ds.label(e);
    for (std::size_t p = 0; p < ds.feature_count(); ++p) {
        if (ds.columns[p].test(e)) ctx.satisfied.push_back(static_cast<int>(p));
    }
    if (ctx.label == 1) {
        ctx.consistent = ds.labels;
    } else {
        ctx.consistent.assign_not(ds.labels);
    }
    ctx.inconsistent.assign_not(ctx.consistent);
    ctx.consistent_count = ctx.consistent.count();
    return ctx;
}

BitVector support_mask(const Clause& clause, const BinaryDataset& ds) {
    BitVector m(ds.n, true);
    for (const int p : clause.features) {
        if (p < 0 || static_cast<std::size_t>(p) >= ds.feature_count())
            throw std::out_of_range("clause feature index out of range");
        m &= ds.columns[static_cast<std::size_t>(p)];
    }
    return m;
}

std::vector<int> support_set(const Clause& clause, const BinaryDataset& ds) {
    return support_mask(clause, ds).to_indices();
}

ClauseStats evaluate_clause(const Clause& clause, int label, const BinaryDataset& ds) {
    const BitVector m = support_mask(clause, ds);
    ClauseStats stats;
    stats.support = static_cast<std::int64_t>(m.count());
    if (label == 1) {
        stats.consistent_support = static_cast<std::int64_t>(m.count_and(ds.labels));
    } else {
        stats.consistent_support =
            stats.support - static_cast<std::int64_t>(m.count_and(ds.labels));
    }
    if (stats.support == 0) {
        stats.vacuous = true;
        stats.consistency = 1.0;
    } else {
        stats.consistency =
            static_cast<double>(stats.consistent_support) / static_cast<double>(stats.support);
    }
    return stats;
}

double consistency_level(const Clause& clause, int label, const BinaryDataset& ds) {
    return evaluate_clause(clause, label, ds).consistency;
}

SummaryExplanation make_explanation(const Clause& clause, int label, const BinaryDataset& ds,
                                    Scope scope) {
    const ClauseStats stats = evaluate_clause(clause, label, ds);
    SummaryExplanation e;
    e.clause = clause;
    e.label = label;
    e.support = stats.support;
    e.consistency = stats.consistency;
    e.complexity = static_cast<std::int64_t>(clause.complexity());
    e.vacuous = stats.vacuous;
    e.scope = scope;
    e.scope_size = static_cast<std::int64_t>(ds.n);
    return e;
}

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string condition_text(const FeatureFunction& f, const std::vector<std::string>& column_names) {
    const auto& name = column_names.at(static_cast<std::size_t>(f.column));
    if (f.op == FeatureOp::Eq) return name + " = " + f.category;
    return name + " " + to_string(f.op) + " " + format_number(f.threshold);
}

std::string render(const SummaryExplanation& expl, const BinaryDataset& meta, RenderStyle style) {
    std::string conds;
    for (std::size_t k = 0; k < expl.clause.features.size(); ++k) {
        if (k > 0) conds += " and ";
        conds += condition_text(
            meta.features.at(static_cast<std::size_t>(expl.clause.features[k])),
            meta.column_names);
    }
    const std::string& outcome =
        meta.label_names[static_cast<std::size_t>(expl.label == 1 ? 1 : 0)];
    const std::string subject =
        std::to_string(expl.support) + " people" + (conds.empty() ? "" : " whose " + conds);

    if (style == RenderStyle::Exact) {
        return "For all " + subject + ", all of them were predicted to " + outcome + ".";
    }
    // The 1e-9 nudge only absorbs representation error of count ratios; it
    // cannot overstate for datasets below ~1e9 rows.
    const int pct = static_cast<int>(std::floor(100.0 * expl.consistency + 1e-9));
    return "For " + subject + ", over " + std::to_string(pct) +
           "% of them were predicted to " + outcome + ".";
}

} // namespace sumex
