#include <doctest.h>

#include <cmath>
#include <set>

#include "sumex/dataset.hpp"
#include "sumex/explanation.hpp"
#include "testutil.hpp"

using namespace sumex;
using namespace sumex::test;

TEST_CASE("load_raw round-trips a small file") {
    TempDir tmp("load_raw");
    write_file(tmp.file("small.csv"),
               "a,b,y\n"
               "1,2,0\n"
               "3,4,1\n"
               "5,6,1\n");
    FormatDescriptor desc;
    desc.outcome_column = "y";
    const RawDataset raw = load_raw(tmp.file("small.csv"), desc);
    CHECK(raw.rows() == 3);
    CHECK(raw.cols() == 2);
    CHECK(raw.outcome == std::vector<int>{0, 1, 1});
    CHECK(raw.kinds[0] == ColumnKind::Numeric);
    CHECK(raw.numeric[1][2] == doctest::Approx(6.0));
}

TEST_CASE("load_raw rejects non-binary outcomes and missing columns") {
    TempDir tmp("load_raw_err");
    write_file(tmp.file("bad.csv"), "a,y\n1,2\n");
    FormatDescriptor desc;
    desc.outcome_column = "y";
    CHECK_THROWS(load_raw(tmp.file("bad.csv"), desc));

    desc.outcome_column = "missing";
    write_file(tmp.file("ok.csv"), "a,y\n1,0\n");
    CHECK_THROWS(load_raw(tmp.file("ok.csv"), desc));
}

TEST_CASE("load_raw maps outcome tokens and missing codes") {
    TempDir tmp("load_raw_map");
    write_file(tmp.file("m.csv"),
               "a,b,y\n"
               "-7,x,Bad\n"
               "2,y,Good\n");
    FormatDescriptor desc;
    desc.outcome_column = "y";
    desc.true_token = "Bad";
    desc.false_token = "Good";
    desc.missing_tokens = {"-7"};
    const RawDataset raw = load_raw(tmp.file("m.csv"), desc);
    CHECK(raw.outcome == std::vector<int>{1, 0});
    CHECK(raw.missing[0][0] == 1);
    CHECK(raw.missing[0][1] == 0);
    CHECK(raw.kinds[1] == ColumnKind::Categorical);
    CHECK(raw.label_names[1] == "Bad");
}

TEST_CASE("binarization of the two-column example") {
    // Raw input (30, 10) against {x1 >= 0, x1 >= 50, x2 >= 0} gives (1, 0, 1).
    RawDataset raw;
    raw.column_names = {"x1", "x2"};
    raw.kinds = {ColumnKind::Numeric, ColumnKind::Numeric};
    raw.numeric = {{30.0}, {10.0}};
    raw.categorical = {{}, {}};
    raw.missing = {{0}, {0}};
    raw.outcome = {1};

    const std::vector<FeatureFunction> feats = {{0, FeatureOp::Ge, 0.0, {}},
                                                {0, FeatureOp::Ge, 50.0, {}},
                                                {1, FeatureOp::Ge, 0.0, {}}};
    const BinaryDataset ds = apply_features(raw, feats);
    CHECK(ds.delta(0, 0));
    CHECK_FALSE(ds.delta(0, 1));
    CHECK(ds.delta(0, 2));
}

TEST_CASE("k=1 yields a median threshold in both directions") {
    RawDataset raw;
    raw.column_names = {"v"};
    raw.kinds = {ColumnKind::Numeric};
    raw.numeric = {{5.0, 1.0, 9.0, 3.0, 7.0}};
    raw.categorical = {{}};
    raw.missing = {{0, 0, 0, 0, 0}};
    raw.outcome = {0, 1, 0, 1, 0};

    BinarizeScheme scheme;
    scheme.thresholds_per_column = 1;
    const BinaryDataset ds = binarize(raw, scheme);
    REQUIRE(ds.feature_count() == 2);
    CHECK(ds.features[0].threshold == doctest::Approx(5.0));
    CHECK(ds.features[1].threshold == doctest::Approx(5.0));
    // Total order: every row satisfies at least one direction.
    for (std::size_t i = 0; i < ds.n; ++i) CHECK((ds.delta(i, 0) || ds.delta(i, 1)));
}

TEST_CASE("decile binarization emits 18 features per column, all re-evaluable") {
    SynthSpec spec;
    spec.rows = 100;
    spec.numeric_columns = 2;
    spec.rule = {{0, FeatureOp::Le, 50.0}};
    const RawDataset raw = synthesize(spec, 11);

    BinarizeScheme scheme;
    scheme.thresholds_per_column = 9;
    const BinaryDataset ds = binarize(raw, scheme);
    std::vector<int> per_column(2, 0);
    for (const auto& f : ds.features) per_column[static_cast<std::size_t>(f.column)]++;
    CHECK(per_column[0] == 18);
    CHECK(per_column[1] == 18);

    // Re-evaluation oracle: delta_{i,p} = F_p(x_i) for every cell.
    for (std::size_t p = 0; p < ds.feature_count(); ++p) {
        for (std::size_t i = 0; i < ds.n; ++i)
            CHECK(ds.delta(i, p) == raw.evaluate(ds.features[p], i));
    }
}

TEST_CASE("constant column contributes no features but warns") {
    RawDataset raw;
    raw.column_names = {"c", "v"};
    raw.kinds = {ColumnKind::Numeric, ColumnKind::Numeric};
    raw.numeric = {{4.0, 4.0, 4.0}, {1.0, 2.0, 3.0}};
    raw.categorical = {{}, {}};
    raw.missing = {{0, 0, 0}, {0, 0, 0}};
    raw.outcome = {0, 1, 0};

    BinarizeScheme scheme;
    scheme.thresholds_per_column = 1;
    std::vector<std::string> warnings;
    const BinaryDataset ds = binarize(raw, scheme, &warnings);
    for (const auto& f : ds.features) CHECK(f.column != 0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("'c'") != std::string::npos);
}

TEST_CASE("categorical columns get one equality feature per value") {
    RawDataset raw;
    raw.column_names = {"cat"};
    raw.kinds = {ColumnKind::Categorical};
    raw.numeric = {{}};
    raw.categorical = {{"red", "blue", "red", "green"}};
    raw.missing = {{0, 0, 0, 0}};
    raw.outcome = {0, 1, 0, 1};

    const BinaryDataset ds = binarize(raw, {1, true, true});
    std::set<std::string> values;
    for (const auto& f : ds.features) {
        CHECK(f.op == FeatureOp::Eq);
        values.insert(f.category);
    }
    CHECK(values == std::set<std::string>{"blue", "green", "red"});
}

TEST_CASE("missing values never satisfy a feature") {
    RawDataset raw;
    raw.column_names = {"v"};
    raw.kinds = {ColumnKind::Numeric};
    raw.numeric = {{std::nan(""), 10.0, 90.0, 50.0}};
    raw.categorical = {{}};
    raw.missing = {{1, 0, 0, 0}};
    raw.outcome = {1, 1, 0, 0};

    const BinaryDataset ds = binarize(raw, {1, true, true});
    for (std::size_t p = 0; p < ds.feature_count(); ++p) CHECK_FALSE(ds.delta(0, p));
}

TEST_CASE("sample_local covers the spec cases") {
    const RawDataset raw = synthesize({200, 2, {{0, FeatureOp::Le, 40.0}}, 0.1, 100.0}, 3);
    const BinaryDataset global = binarize(raw, {3, true, true});

    SUBCASE("full-size sample is set-equal to the global dataset") {
        const BinaryDataset all = sample_local(global, global.n, 9);
        std::set<std::int64_t> ids(all.obs_ids.begin(), all.obs_ids.end());
        CHECK(ids.size() == global.n);
    }

    SUBCASE("fixed seed is deterministic") {
        const BinaryDataset a = sample_local(global, 50, 123);
        const BinaryDataset b = sample_local(global, 50, 123);
        CHECK(a.obs_ids == b.obs_ids);
        CHECK(a.labels == b.labels);
    }

    SUBCASE("different seeds give different subsets of the right size") {
        int differing = 0;
        for (std::uint64_t s = 0; s < 40; ++s) {
            const BinaryDataset a = sample_local(global, 50, 1000 + s);
            const BinaryDataset b = sample_local(global, 50, 2000 + s);
            CHECK(a.n == 50);
            CHECK(b.n == 50);
            if (a.obs_ids != b.obs_ids) ++differing;
        }
        CHECK(differing == 40);
    }

    SUBCASE("sampled rows are bit-identical to their global rows") {
        const BinaryDataset local = sample_local(global, 60, 77);
        for (std::size_t j = 0; j < local.n; ++j) {
            const auto gi = static_cast<std::size_t>(local.obs_ids[j]);
            CHECK(local.label(j) == global.label(gi));
            for (std::size_t p = 0; p < global.feature_count(); ++p)
                CHECK(local.delta(j, p) == global.delta(gi, p));
        }
    }

    SUBCASE("size out of range") {
        CHECK_THROWS(sample_local(global, 0, 1));
        CHECK_THROWS(sample_local(global, global.n + 1, 1));
    }
}

TEST_CASE("synthesize honors the planted rule") {
    SynthSpec spec;
    spec.rows = 500;
    spec.numeric_columns = 3;
    spec.rule = {{0, FeatureOp::Le, 40.0}, {1, FeatureOp::Ge, 30.0}};

    SUBCASE("noise-free labels equal the rule evaluation") {
        const RawDataset raw = synthesize(spec, 5);
        for (std::size_t i = 0; i < raw.rows(); ++i) {
            const bool hit = raw.numeric[0][i] <= 40.0 && raw.numeric[1][i] >= 30.0;
            CHECK(raw.outcome[i] == (hit ? 1 : 0));
        }
    }

    SUBCASE("noise rate shows up as measured inconsistency") {
        spec.rows = 1000;
        spec.noise = 0.1;
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            const RawDataset raw = synthesize(spec, seed);
            std::int64_t matched = 0, consistent = 0;
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                if (raw.numeric[0][i] <= 40.0 && raw.numeric[1][i] >= 30.0) {
                    ++matched;
                    if (raw.outcome[i] == 1) ++consistent;
                }
            }
            REQUIRE(matched > 0);
            const double c = static_cast<double>(consistent) / static_cast<double>(matched);
            CHECK(c >= 0.85);
            CHECK(c <= 0.95);
        }
    }

    SUBCASE("zero rows give an empty dataset") {
        spec.rows = 0;
        const RawDataset raw = synthesize(spec, 1);
        CHECK(raw.rows() == 0);
    }

    SUBCASE("invalid noise rate") {
        spec.noise = 1.5;
        CHECK_THROWS(synthesize(spec, 1));
    }
}
