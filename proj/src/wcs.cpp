#include "sumex/wcs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sumex/parallel.hpp"
#include "sumex/rng.hpp"

namespace sumex {

const char* to_string(Weighting w) {
    switch (w) {
        case Weighting::SisLocal: return "sis-local";
        case Weighting::SisGlobal: return "sis-global";
        case Weighting::Uniform: return "uniform";
    }
    return "?";
}

namespace {

void validate(const WcsConfig& c) {
    if (c.m < 1) throw std::invalid_argument("m must be >= 1");
    if (c.n_wcs < 1) throw std::invalid_argument("n_wcs must be >= 1");
    if (!(c.rho > 0.0 && c.rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
}

// Sequential weighted draws without replacement, renormalizing after each
// pick by scanning the remaining cumulative mass.
std::vector<int> weighted_sample(Rng& rng, const std::vector<double>& weights, int k) {
    std::vector<double> w = weights;
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(k));
    double total = 0.0;
    for (const double x : w) total += x;
    for (int draw = 0; draw < k; ++draw) {
        const double r = rng.unit() * total;
        double cum = 0.0;
        std::size_t chosen = w.size();
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] <= 0.0) continue;
            cum += w[j];
            if (r < cum) {
                chosen = j;
                break;
            }
        }
        if (chosen == w.size()) {  // numeric tail: take the last positive
            for (std::size_t j = w.size(); j-- > 0;) {
                if (w[j] > 0.0) {
                    chosen = j;
                    break;
                }
            }
        }
        picked.push_back(static_cast<int>(chosen));
        total -= w[chosen];
        w[chosen] = 0.0;
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

BinaryDataset restrict(const BinaryDataset& ds, const Subproblem& sub) {
    BinaryDataset out;
    out.n = sub.observations.size();
    out.column_names = ds.column_names;
    out.column_kinds = ds.column_kinds;
    out.label_names = ds.label_names;
    out.labels = BitVector(out.n);
    out.obs_ids.resize(out.n);
    for (std::size_t j = 0; j < out.n; ++j) {
        const auto i = static_cast<std::size_t>(sub.observations[j]);
        if (ds.labels.test(i)) out.labels.set(j);
        out.obs_ids[j] = ds.obs_ids[i];
    }
    out.features.reserve(sub.features.size());
    out.columns.reserve(sub.features.size());
    for (const int p : sub.features) {
        out.features.push_back(ds.features[static_cast<std::size_t>(p)]);
        BitVector col(out.n);
        for (std::size_t j = 0; j < out.n; ++j) {
            if (ds.columns[static_cast<std::size_t>(p)].test(
                    static_cast<std::size_t>(sub.observations[j])))
                col.set(j);
        }
        out.columns.push_back(std::move(col));
    }
    return out;
}

} // namespace

std::vector<Subproblem> build_subproblems(const WcsConfig& config, const TargetContext& ctx,
                                          const BinaryDataset& ds,
                                          const std::vector<double>& weights) {
    validate(config);
    if (weights.size() != ctx.satisfied.size())
        throw std::invalid_argument("weights must align with P^e");
    const auto budget = static_cast<int>(
        std::llround(config.rho * static_cast<double>(ctx.satisfied.size())));
    if (budget < 1) throw std::invalid_argument("feature budget rho * |P^e| rounds to zero");

    const int obs_count = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(config.n_wcs), ds.n));

    Rng rng(config.seed);
    std::vector<Subproblem> subs;
    subs.reserve(static_cast<std::size_t>(config.m));
    std::vector<int> others;
    others.reserve(ds.n - 1);
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (static_cast<int>(i) != ctx.target) others.push_back(static_cast<int>(i));
    }
    for (int s = 0; s < config.m; ++s) {
        Subproblem sub;
        for (const int k : weighted_sample(rng, weights, budget))
            sub.features.push_back(ctx.satisfied[static_cast<std::size_t>(k)]);
        const auto extra =
            rng.sample_indices(static_cast<int>(others.size()), obs_count - 1);
        sub.observations.push_back(ctx.target);
        for (const int j : extra) sub.observations.push_back(others[static_cast<std::size_t>(j)]);
        std::sort(sub.observations.begin(), sub.observations.end());
        subs.push_back(std::move(sub));
    }
    return subs;
}

std::vector<CandidateSummary> solve_subproblems(const std::vector<Subproblem>& subproblems,
                                                const BinaryDataset& ds,
                                                const TargetContext& ctx,
                                                const WcsConfig& config) {
    std::vector<CandidateSummary> out(subproblems.size());
    parallel_for(static_cast<int>(subproblems.size()), [&](int s) {
        const Subproblem& sub = subproblems[static_cast<std::size_t>(s)];
        const BinaryDataset local = restrict(ds, sub);
        const auto target_pos = static_cast<std::size_t>(
            std::lower_bound(sub.observations.begin(), sub.observations.end(), ctx.target) -
            sub.observations.begin());

        SolveSpec spec;
        spec.mode = SolveMode::MS;
        spec.max_complexity = config.max_complexity;
        spec.time_limit_seconds = config.sub_time_limit_seconds;
        spec.dominance_pruning = config.sub_dominance_pruning;
        const TargetContext sub_ctx = target_context(local, target_pos);
        const SolveResult res = solve(local, sub_ctx, spec);

        CandidateSummary cand;
        cand.subproblem = s;
        cand.sub_status = res.status;
        cand.sub_objective = res.objective;
        if (res.clause) {
            // Map restricted feature positions back to global feature ids.
            std::vector<int> mapped;
            mapped.reserve(res.clause->features.size());
            for (const int p : res.clause->features)
                mapped.push_back(sub.features[static_cast<std::size_t>(p)]);
            cand.clause = Clause(std::move(mapped));
        }
        out[static_cast<std::size_t>(s)] = std::move(cand);
    });
    return out;
}

WcsOutcome merge(std::vector<CandidateSummary> candidates, const BinaryDataset& ds,
                 const TargetContext& ctx, double q) {
    if (candidates.empty()) throw std::invalid_argument("no candidates to merge");

    // Distinct clauses are evaluated on the full local dataset once.
    std::map<std::vector<int>, ClauseStats> stats;
    for (auto& cand : candidates) {
        if (!cand.clause) continue;
        const auto [it, inserted] = stats.try_emplace(cand.clause->features);
        if (inserted) it->second = evaluate_clause(*cand.clause, ctx.label, ds);
        cand.support_n = it->second.support;
        cand.consistency_n = it->second.consistency;
    }

    const CandidateSummary* best_feasible = nullptr;
    const CandidateSummary* best_fallback = nullptr;
    for (const auto& cand : candidates) {
        if (!cand.clause) continue;
        if (cand.consistency_n >= q) {
            if (!best_feasible || cand.support_n > best_feasible->support_n ||
                (cand.support_n == best_feasible->support_n &&
                 (cand.clause->complexity() < best_feasible->clause->complexity() ||
                  (cand.clause->complexity() == best_feasible->clause->complexity() &&
                   *cand.clause < *best_feasible->clause)))) {
                best_feasible = &cand;
            }
        }
        if (!best_fallback || cand.consistency_n > best_fallback->consistency_n ||
            (cand.consistency_n == best_fallback->consistency_n &&
             (cand.support_n > best_fallback->support_n ||
              (cand.support_n == best_fallback->support_n &&
               (cand.clause->complexity() < best_fallback->clause->complexity() ||
                (cand.clause->complexity() == best_fallback->clause->complexity() &&
                 *cand.clause < *best_fallback->clause)))))) {
            best_fallback = &cand;
        }
    }
    if (!best_fallback) throw std::invalid_argument("every subproblem was infeasible");

    const CandidateSummary* pick = best_feasible ? best_feasible : best_fallback;
    WcsOutcome outcome;
    outcome.q_feasible = best_feasible != nullptr;
    outcome.chosen.clause = *pick->clause;
    outcome.chosen.objective = pick->support_n;
    outcome.chosen.status = SolveStatus::Optimal;
    outcome.candidates = std::move(candidates);
    return outcome;
}

WcsRunResult run_wcs(const WcsConfig& config, const BinaryDataset& ds, const TargetContext& ctx,
                     const GlobalCounts* global) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> weights;
    switch (config.weighting) {
        case Weighting::Uniform:
            weights.assign(ctx.satisfied.size(),
                           1.0 / static_cast<double>(ctx.satisfied.size()));
            break;
        case Weighting::SisLocal:
            weights = sampling_weights(local_sis(ctx, ds), config.softmax_scale);
            break;
        case Weighting::SisGlobal: {
            if (!global)
                throw std::invalid_argument("SIS-global weighting requires global counts");
            weights = sampling_weights(global_sis(*global, ctx.label, ctx.satisfied),
                                       config.softmax_scale);
            break;
        }
    }

    const auto subs = build_subproblems(config, ctx, ds, weights);
    auto candidates = solve_subproblems(subs, ds, ctx, config);
    WcsOutcome outcome = merge(std::move(candidates), ds, ctx, config.q);
    outcome.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    outcome.chosen.wall_seconds = outcome.wall_seconds;

    WcsRunResult run;
    run.explanation =
        make_explanation(*outcome.chosen.clause, ctx.label, ds, Scope::Local);
    run.outcome = std::move(outcome);
    return run;
}

} // namespace sumex
