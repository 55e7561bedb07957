#include <doctest.h>

#include "sumex/explanation.hpp"
#include "sumex/rng.hpp"
#include "testutil.hpp"

using namespace sumex;
using namespace sumex::test;

TEST_CASE("target_context follows the definitions") {
    SUBCASE("three-feature example") {
        const BinaryDataset ds = make_binary({"101", "000", "111"}, {1, 1, 0});
        const TargetContext ctx = target_context(ds, 0);
        CHECK(ctx.label == 1);
        CHECK(ctx.satisfied == std::vector<int>{0, 2});
        CHECK(ctx.consistent.to_indices() == std::vector<int>{0, 1});
    }

    SUBCASE("all labels equal makes N^e the whole dataset") {
        const BinaryDataset ds = make_binary({"10", "01", "11"}, {1, 1, 1});
        const TargetContext ctx = target_context(ds, 1);
        CHECK(ctx.consistent_count == 3);
        CHECK(ctx.inconsistent.none());
    }

    SUBCASE("worked six-observation dataset") {
        const BinaryDataset ds = worked_dataset();
        const TargetContext ctx = target_context(ds, 0);
        CHECK(ctx.satisfied == std::vector<int>{0, 1, 2});
        CHECK(ctx.consistent.to_indices() == std::vector<int>{0, 1, 2});
        CHECK(ctx.inconsistent.to_indices() == std::vector<int>{3, 4, 5});
    }
}

TEST_CASE("support sets on the worked dataset") {
    const BinaryDataset ds = worked_dataset();

    CHECK(support_set(Clause{}, ds) == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(support_set(Clause({0, 1}), ds) == std::vector<int>{0, 1});

    // A feature nobody satisfies empties the support.
    BinaryDataset with_dead = ds;
    with_dead.column_names.push_back("c3");
    with_dead.column_kinds.push_back(ColumnKind::Numeric);
    with_dead.features.push_back({3, FeatureOp::Ge, 1.0, {}});
    with_dead.columns.emplace_back(ds.n);
    CHECK(support_set(Clause({3}), with_dead).empty());
}

TEST_CASE("consistency level") {
    const BinaryDataset ds = worked_dataset();

    // {p1} matches observations {0,1,2,3}; three of four are labeled 1.
    CHECK(consistency_level(Clause({0}), 1, ds) == doctest::Approx(0.75));
    // {p1,p2} matches {0,1}, both labeled 1.
    CHECK(consistency_level(Clause({0, 1}), 1, ds) == doctest::Approx(1.0));

    SUBCASE("empty support falls back to the vacuous convention") {
        BinaryDataset with_dead = ds;
        with_dead.column_names.push_back("c3");
        with_dead.column_kinds.push_back(ColumnKind::Numeric);
        with_dead.features.push_back({3, FeatureOp::Ge, 1.0, {}});
        with_dead.columns.emplace_back(ds.n);
        const ClauseStats stats = evaluate_clause(Clause({3}), 1, with_dead);
        CHECK(stats.vacuous);
        CHECK(stats.consistency == doctest::Approx(1.0));
        CHECK(stats.support == 0);
    }
}

namespace {

// FICO-flavored metadata for the rendering goldens.
BinaryDataset fico_metadata() {
    BinaryDataset ds;
    ds.column_names = {"ExternalRiskEstimate", "AverageMInFile"};
    ds.column_kinds = {ColumnKind::Numeric, ColumnKind::Numeric};
    ds.label_names = {"repay", "default"};
    ds.features = {{0, FeatureOp::Le, 63.0, {}}, {1, FeatureOp::Le, 48.0, {}}};
    ds.n = 0;
    return ds;
}

} // namespace

TEST_CASE("rendering golden sentences") {
    const BinaryDataset meta = fico_metadata();
    SummaryExplanation expl;
    expl.clause = Clause({0, 1});
    expl.label = 1;
    expl.support = 594;
    expl.complexity = 2;

    SUBCASE("exact style") {
        expl.consistency = 1.0;
        CHECK(render(expl, meta, RenderStyle::Exact) ==
              "For all 594 people whose ExternalRiskEstimate <= 63 and "
              "AverageMInFile <= 48, all of them were predicted to default.");
    }

    SUBCASE("q style floors the percentage") {
        expl.consistency = 0.868;
        CHECK(render(expl, meta, RenderStyle::QStyle) ==
              "For 594 people whose ExternalRiskEstimate <= 63 and "
              "AverageMInFile <= 48, over 86% of them were predicted to default.");
    }

    SUBCASE("empty clause drops the whose-part") {
        expl.clause = Clause{};
        expl.consistency = 1.0;
        expl.support = 6;
        CHECK(render(expl, meta, RenderStyle::Exact) ==
              "For all 6 people, all of them were predicted to default.");
    }
}

TEST_CASE("rendered percentage never overstates a count ratio") {
    Rng rng(7);
    const BinaryDataset meta = fico_metadata();
    for (int round = 0; round < 500; ++round) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(100000));
        const std::int64_t m = static_cast<std::int64_t>(rng.below(
            static_cast<std::uint64_t>(n) + 1));
        SummaryExplanation expl;
        expl.clause = Clause({0});
        expl.label = 1;
        expl.support = n;
        expl.consistency = static_cast<double>(m) / static_cast<double>(n);
        const std::string sentence = render(expl, meta, RenderStyle::QStyle);
        const auto over = sentence.find("over ");
        const auto pct_end = sentence.find('%');
        REQUIRE(over != std::string::npos);
        const int pct = std::stoi(sentence.substr(over + 5, pct_end - over - 5));
        // floor(100 m / n) <= 100 m / n, checked in exact integer arithmetic
        CHECK(static_cast<std::int64_t>(pct) * n <= 100 * m);
        CHECK((static_cast<std::int64_t>(pct) + 1) * n > 100 * m);
    }
}

TEST_CASE("relevancy and anti-monotonicity properties") {
    Rng rng(99);
    for (int round = 0; round < 30; ++round) {
        const RandomInstance inst = random_instance(500 + round);
        const TargetContext ctx = target_context(inst.ds, inst.target);
        if (ctx.satisfied.empty()) continue;

        // Random clause from P^e: the target always belongs to its support.
        std::vector<int> feats;
        for (const int p : ctx.satisfied) {
            if (rng.unit() < 0.4) feats.push_back(p);
        }
        const Clause clause(feats);
        const BitVector sup = support_mask(clause, inst.ds);
        CHECK(sup.test(inst.target));

        // Extending a clause can only shrink its support.
        std::vector<int> more = feats;
        for (const int p : ctx.satisfied) {
            if (std::find(more.begin(), more.end(), p) == more.end()) {
                more.push_back(p);
                break;
            }
        }
        const BitVector sup2 = support_mask(Clause(more), inst.ds);
        CHECK(sup2.is_subset_of(sup));

        const double c = consistency_level(clause, ctx.label, inst.ds);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("clause rejects duplicates and orders indices") {
    CHECK_THROWS(Clause({1, 1}));
    const Clause c({3, 1, 2});
    CHECK(c.features == std::vector<int>{1, 2, 3});
    CHECK(Clause({1, 2}) < Clause({1, 3}));
    CHECK(Clause({1}) < Clause({1, 2}));
}
