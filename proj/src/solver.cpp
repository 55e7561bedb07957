#include "sumex/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sumex/sis.hpp"

namespace sumex {

const char* to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::MC: return "MC";
        case SolveMode::MS: return "MS";
        case SolveMode::MSqC: return "MSqC";
    }
    return "?";
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::TimeLimitBestKnown: return "time-limit-best-known";
        case SolveStatus::Infeasible: return "infeasible";
    }
    return "?";
}

namespace {

constexpr std::int64_t kQDen = 10000;
constexpr int kTimeCheckMask = 4095;  // deadline polled every 4096 nodes
constexpr int kMcEnumerationCap = 8;

std::int64_t q_numerator(double q) {
    const auto num = static_cast<std::int64_t>(std::llround(q * kQDen));
    if (num < 1 || num > kQDen) throw std::invalid_argument("q must lie in (0, 1]");
    return num;
}

void validate(const BinaryDataset& ds, const TargetContext& ctx, const SolveSpec& spec) {
    if (ctx.consistent.size() != ds.n || static_cast<std::size_t>(ctx.target) >= ds.n)
        throw std::invalid_argument("target context does not match dataset");
    if (spec.max_complexity < 1) throw std::invalid_argument("max_complexity must be >= 1");
    if (spec.mode == SolveMode::MSqC) q_numerator(spec.q);
}

// (objective, complexity asc, lex asc) comparison; for MC the objective is
// the complexity itself, minimized.
bool improves(SolveMode mode, std::int64_t obj, const std::vector<int>& clause,
              std::int64_t best_obj, const std::vector<int>& best_clause) {
    if (mode == SolveMode::MC) {
        if (clause.size() != best_clause.size()) return clause.size() < best_clause.size();
        return std::lexicographical_compare(clause.begin(), clause.end(),
                                            best_clause.begin(), best_clause.end());
    }
    if (obj != best_obj) return obj > best_obj;
    if (clause.size() != best_clause.size()) return clause.size() < best_clause.size();
    return std::lexicographical_compare(clause.begin(), clause.end(),
                                        best_clause.begin(), best_clause.end());
}

class BranchAndBound {
public:
    BranchAndBound(const BinaryDataset& ds, const TargetContext& ctx, const SolveSpec& spec)
        : ds_(ds), ctx_(ctx), spec_(spec),
          q_num_(spec.mode == SolveMode::MSqC ? q_numerator(spec.q) : kQDen) {}

    SolveResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        time_limited_ = spec_.time_limit_seconds > 0.0;
        if (time_limited_) {
            deadline_ = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(spec_.time_limit_seconds));
        }

        prepare();
        if (spec_.mc_warm_start && spec_.mode != SolveMode::MC) seed_from_mc();

        matched_.resize(1);
        matched_[0] = BitVector(ds_.n, true);
        dfs(0, 0);

        SolveResult res;
        res.nodes = nodes_;
        res.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (has_incumbent_) {
            res.clause = Clause(best_clause_);
            res.objective = spec_.mode == SolveMode::MC
                                ? static_cast<std::int64_t>(best_clause_.size())
                                : best_obj_;
            res.status = timed_out_ ? SolveStatus::TimeLimitBestKnown : SolveStatus::Optimal;
        } else {
            res.status = timed_out_ ? SolveStatus::TimeLimitBestKnown : SolveStatus::Infeasible;
        }
        return res;
    }

private:
    void prepare() {
        // Static branching order: P^e by descending local SIS, index ascending.
        const SisTable sis = local_sis(ctx_, ds_);
        std::vector<std::size_t> perm(sis.features.size());
        for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            if (sis.scores[a] != sis.scores[b]) return sis.scores[a] > sis.scores[b];
            return sis.features[a] < sis.features[b];
        });
        order_.reserve(perm.size());
        cols_.reserve(perm.size());
        for (const auto k : perm) {
            order_.push_back(sis.features[k]);
            cols_.push_back(&ds_.columns[static_cast<std::size_t>(sis.features[k])]);
        }

        if (spec_.dominance_pruning) {
            std::map<std::pair<int, int>, int> ids;
            group_.resize(order_.size());
            for (std::size_t k = 0; k < order_.size(); ++k) {
                const auto& f = ds_.features[static_cast<std::size_t>(order_[k])];
                const auto key = std::make_pair(f.column, static_cast<int>(f.op));
                const auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
                group_[k] = it->second;
            }
            group_used_.assign(ids.size(), 0);
        }

        if (spec_.mode != SolveMode::MSqC) {
            // suffix_excl_[k] = union over positions >= k of ~delta column:
            // observations some remaining candidate can still exclude.
            suffix_excl_.resize(order_.size() + 1);
            suffix_excl_[order_.size()] = BitVector(ds_.n);
            BitVector notcol;
            for (std::size_t k = order_.size(); k-- > 0;) {
                notcol.assign_not(*cols_[k]);
                suffix_excl_[k] = suffix_excl_[k + 1];
                suffix_excl_[k] |= notcol;
            }
        }
    }

    void seed_from_mc() {
        SolveSpec mc_spec = spec_;
        mc_spec.mode = SolveMode::MC;
        mc_spec.mc_warm_start = false;
        mc_spec.dominance_pruning = false;
        const SolveResult mc = BranchAndBound(ds_, ctx_, mc_spec).run();
        if (mc.status != SolveStatus::Optimal || !mc.clause) return;
        if (mc.clause->complexity() > static_cast<std::size_t>(spec_.max_complexity)) return;
        // The MC clause excludes every inconsistent observation, so it is
        // feasible for MS and (with consistency 1) for any q.
        const BitVector m = support_mask(*mc.clause, ds_);
        has_incumbent_ = true;
        best_clause_ = mc.clause->features;
        best_obj_ = static_cast<std::int64_t>(m.count());
    }

    void offer(std::int64_t obj) {
        std::vector<int> clause(chosen_.begin(), chosen_.end());
        std::sort(clause.begin(), clause.end());
        if (!has_incumbent_ || improves(spec_.mode, obj, clause, best_obj_, best_clause_)) {
            has_incumbent_ = true;
            best_obj_ = obj;
            best_clause_ = std::move(clause);
        }
    }

    // Children of a node at `depth` carry complexity depth+1; they can beat
    // the incumbent on an objective tie only if the incumbent is not already
    // at most their size.
    bool prune_on_tie(std::int64_t ub, int depth) const {
        if (!has_incumbent_) return false;
        if (ub < best_obj_) return true;
        return ub == best_obj_ && best_clause_.size() <= static_cast<std::size_t>(depth);
    }

    void dfs(int depth, std::size_t next_pos) {
        ++nodes_;
        if (time_limited_ && (nodes_ & kTimeCheckMask) == 0 &&
            std::chrono::steady_clock::now() > deadline_) {
            timed_out_ = true;
        }
        if (timed_out_) return;

        const BitVector& matched = matched_[static_cast<std::size_t>(depth)];
        const auto total = static_cast<std::int64_t>(matched.count());

        if (spec_.mode == SolveMode::MSqC) {
            const auto cons = static_cast<std::int64_t>(matched.count_and(ctx_.consistent));
            if (cons * kQDen >= q_num_ * total) {
                offer(total);
                return;  // extensions only shrink the support
            }
            const std::int64_t ub = std::min(total, cons * kQDen / q_num_);
            if (prune_on_tie(ub, depth)) return;
        } else {
            const bool feasible = !matched.intersects(ctx_.inconsistent);
            if (feasible) {
                offer(spec_.mode == SolveMode::MC ? depth : total);
                return;
            }
            if (spec_.mode == SolveMode::MS) {
                const auto ub = static_cast<std::int64_t>(matched.count_and(ctx_.consistent));
                if (prune_on_tie(ub, depth)) return;
            } else if (has_incumbent_ &&
                       static_cast<std::size_t>(depth) + 1 > best_clause_.size()) {
                return;
            }
            // Some matched inconsistent observation no remaining candidate
            // can exclude: this subtree is a dead end.
            if (matched.intersects_andnot(ctx_.inconsistent, suffix_excl_[next_pos])) return;
        }

        if (spec_.mode != SolveMode::MC && depth == spec_.max_complexity) return;

        if (matched_.size() <= static_cast<std::size_t>(depth) + 1) matched_.resize(depth + 2);
        for (std::size_t pos = next_pos; pos < order_.size(); ++pos) {
            if (timed_out_) return;
            if (spec_.dominance_pruning && group_used_[static_cast<std::size_t>(group_[pos])])
                continue;
            const BitVector& col = *cols_[pos];
            const auto child_total = static_cast<std::int64_t>(matched.count_and(col));
            if (child_total == total) continue;  // no-op extension

            if (spec_.mode == SolveMode::MC) {
                if (!matched.intersects_andnot(ctx_.inconsistent, col)) continue;
            } else if (spec_.mode == SolveMode::MS) {
                const auto ub =
                    static_cast<std::int64_t>(matched.count_and(col, ctx_.consistent));
                if (prune_on_tie(ub, depth)) continue;
            } else {
                const auto cons =
                    static_cast<std::int64_t>(matched.count_and(col, ctx_.consistent));
                const std::int64_t ub = std::min(child_total, cons * kQDen / q_num_);
                if (prune_on_tie(ub, depth)) continue;
            }

            matched_[static_cast<std::size_t>(depth) + 1].assign_and(matched, col);
            chosen_.push_back(order_[pos]);
            if (spec_.dominance_pruning) group_used_[static_cast<std::size_t>(group_[pos])] = 1;
            dfs(depth + 1, pos + 1);
            if (spec_.dominance_pruning) group_used_[static_cast<std::size_t>(group_[pos])] = 0;
            chosen_.pop_back();
        }
    }

    const BinaryDataset& ds_;
    const TargetContext& ctx_;
    const SolveSpec& spec_;
    const std::int64_t q_num_;

    std::vector<int> order_;
    std::vector<const BitVector*> cols_;
    std::vector<int> group_;
    std::vector<char> group_used_;
    std::vector<BitVector> suffix_excl_;

    std::vector<BitVector> matched_;
    std::vector<int> chosen_;
    bool has_incumbent_ = false;
    std::int64_t best_obj_ = 0;
    std::vector<int> best_clause_;

    std::int64_t nodes_ = 0;
    bool time_limited_ = false;
    bool timed_out_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

} // namespace

SolveResult solve(const BinaryDataset& ds, const TargetContext& ctx, const SolveSpec& spec) {
    validate(ds, ctx, spec);
    return BranchAndBound(ds, ctx, spec).run();
}

namespace {

struct BruteState {
    const BinaryDataset& ds;
    const TargetContext& ctx;
    const SolveSpec& spec;
    std::int64_t q_num;
    bool found = false;
    std::int64_t best_obj = 0;
    std::vector<int> best_clause;
    std::int64_t evaluated = 0;

    void consider(const std::vector<int>& clause, const BitVector& matched) {
        ++evaluated;
        const auto total = static_cast<std::int64_t>(matched.count());
        std::int64_t obj;
        if (spec.mode == SolveMode::MSqC) {
            const auto cons = static_cast<std::int64_t>(matched.count_and(ctx.consistent));
            if (cons * kQDen < q_num * total) return;
            obj = total;
        } else {
            if (matched.intersects(ctx.inconsistent)) return;
            obj = spec.mode == SolveMode::MC ? static_cast<std::int64_t>(clause.size()) : total;
        }
        if (!found || improves(spec.mode, obj, clause, best_obj, best_clause)) {
            found = true;
            best_obj = obj;
            best_clause = clause;
        }
    }
};

void enumerate(BruteState& st, std::vector<int>& clause, std::vector<BitVector>& stack,
               std::size_t start, int remaining) {
    if (remaining == 0) {
        st.consider(clause, stack[clause.size()]);
        return;
    }
    const auto& pe = st.ctx.satisfied;
    for (std::size_t k = start; k < pe.size(); ++k) {
        clause.push_back(pe[k]);
        stack[clause.size()].assign_and(stack[clause.size() - 1],
                                        st.ds.columns[static_cast<std::size_t>(pe[k])]);
        enumerate(st, clause, stack, k + 1, remaining - 1);
        clause.pop_back();
    }
}

} // namespace

SolveResult brute_force(const BinaryDataset& ds, const TargetContext& ctx,
                        const SolveSpec& spec) {
    validate(ds, ctx, spec);
    if (ctx.satisfied.size() > 25)
        throw std::invalid_argument("brute_force guard: |P^e| > 25");
    if (spec.mode != SolveMode::MC && spec.max_complexity > 4)
        throw std::invalid_argument("brute_force guard: max_complexity > 4");

    const auto t0 = std::chrono::steady_clock::now();
    BruteState st{ds, ctx, spec,
                  spec.mode == SolveMode::MSqC ? q_numerator(spec.q) : kQDen,
                  false, 0, {}, 0};

    const int max_size = spec.mode == SolveMode::MC
                             ? std::min<int>(static_cast<int>(ctx.satisfied.size()),
                                             kMcEnumerationCap)
                             : std::min<int>(static_cast<int>(ctx.satisfied.size()),
                                             spec.max_complexity);
    std::vector<BitVector> stack(static_cast<std::size_t>(max_size) + 1);
    stack[0] = BitVector(ds.n, true);
    std::vector<int> clause;
    for (int size = 0; size <= max_size; ++size) {
        enumerate(st, clause, stack, 0, size);
        // MC optima at larger sizes cannot beat one already found.
        if (spec.mode == SolveMode::MC && st.found) break;
    }
    if (spec.mode == SolveMode::MC && !st.found) {
        // Distinguish a genuinely infeasible instance (an inconsistent twin
        // survives even the full P^e clause) from one whose optimum exceeds
        // the enumeration cap.
        BitVector all(ds.n, true);
        for (const int p : ctx.satisfied) all &= ds.columns[static_cast<std::size_t>(p)];
        if (!all.intersects(ctx.inconsistent))
            throw std::invalid_argument("brute_force guard: MC optimum above enumeration cap");
    }

    SolveResult res;
    res.nodes = st.evaluated;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (st.found) {
        res.clause = Clause(st.best_clause);
        res.objective = st.best_obj;
        res.status = SolveStatus::Optimal;
    } else {
        res.status = SolveStatus::Infeasible;
    }
    return res;
}

std::vector<std::vector<int>> dominance_groups(const std::vector<FeatureFunction>& features) {
    std::map<std::pair<int, int>, std::vector<int>> by_key;
    std::vector<std::pair<int, int>> first_seen;
    for (std::size_t p = 0; p < features.size(); ++p) {
        const auto key = std::make_pair(features[p].column, static_cast<int>(features[p].op));
        auto& members = by_key[key];
        if (members.empty()) first_seen.push_back(key);
        members.push_back(static_cast<int>(p));
    }
    std::vector<std::vector<int>> groups;
    groups.reserve(first_seen.size());
    for (const auto& key : first_seen) groups.push_back(by_key[key]);
    return groups;
}

} // namespace sumex
