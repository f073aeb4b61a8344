#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "cuephrase/feature_sets.hpp"
#include "cuephrase/rng.hpp"
#include "cuephrase/synthetic.hpp"
#include "cuephrase/tree.hpp"
#include "test_util.hpp"

using namespace cuephrase;

namespace {

// Small ad-hoc datasets for learner tests.
Dataset mini_dataset(FeatureSchema schema,
                     const std::vector<std::pair<std::vector<FeatureValue>, Classification>>& rows) {
    Dataset d;
    d.schema = std::move(schema);
    int i = 0;
    for (const auto& [values, gold] : rows) {
        Example e;
        e.id = "m" + std::to_string(i++);
        e.values = values;
        e.gold = gold;
        d.examples.push_back(std::move(e));
    }
    return d;
}

FeatureSchema two_symbolic_schema() {
    return FeatureSchema({{"f1", FeatureKind::Symbolic, {"t", "f"}},
                          {"f2", FeatureKind::Symbolic, {"t", "f"}}});
}

bool trees_equal(const DecisionTree& a, const DecisionTree& b) {
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.cls == b.cls && a.support == b.support && a.errors == b.errors;
    if (!(*a.split == *b.split) || a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!trees_equal(a.children[i], b.children[i])) return false;
    return true;
}

int training_errors(const DecisionTree& t, const Dataset& d) {
    int errors = 0;
    for (const auto& e : d.examples)
        if (predict_tree(t, d.schema, e) != e.gold) ++errors;
    return errors;
}

constexpr auto D = Classification::Discourse;
constexpr auto S = Classification::Sentential;

}  // namespace

TEST_CASE("entropy matches direct evaluation") {
    CHECK(entropy(std::array<int, 3>{5, 5, 0}) == doctest::Approx(1.0));
    CHECK(entropy(std::array<int, 3>{10, 0, 0}) == doctest::Approx(0.0));
    // Frozen from -sum p log2 p with p = 341/878, 537/878.
    CHECK(entropy(std::array<int, 3>{341, 537, 0}) == doctest::Approx(0.9637479).epsilon(1e-6));
    CHECK(entropy(std::array<int, 3>{1, 1, 1}) == doctest::Approx(std::log2(3.0)));
    CHECK_THROWS_AS(entropy(std::array<int, 3>{0, 0, 0}), ValidationError);
}

TEST_CASE("gain ratio on hand-evaluated splits") {
    auto schema = two_symbolic_schema();

    // Perfect binary separation of a balanced set.
    auto separable = mini_dataset(schema, {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"f"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, S},
        {{FeatureValue{"f"}, FeatureValue{"f"}}, S},
    });
    SplitTest on_f1{"f1", SymbolicTest{{"t", "f"}}};
    CHECK(gain_ratio(separable, on_f1) == doctest::Approx(1.0));

    // All examples in one branch: split-info guard yields 0.
    auto one_sided = mini_dataset(schema, {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"f"}}, S},
    });
    CHECK(gain_ratio(one_sided, on_f1) == doctest::Approx(0.0));

    // 8 examples, 4/4 split with branch purities (3d,1s) and (1d,3s):
    // gain = 1 - 0.811278, split info = 1.
    auto eight = mini_dataset(schema, {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"t"}}, S},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, S},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, S},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, S},
    });
    CHECK(gain_ratio(eight, on_f1) == doctest::Approx(0.1887219).epsilon(1e-6));

    // Branch distributions equal to the parent's give zero gain.
    auto uninformative = mini_dataset(schema, {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"t"}}, S},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, S},
    });
    CHECK(gain_ratio(uninformative, on_f1) == doctest::Approx(0.0));
}

TEST_CASE("candidate thresholds follow the adjacent-pair rule") {
    FeatureSchema schema({{"x", FeatureKind::Numeric, {}}});
    auto with_values = [&](std::vector<int> values) {
        std::vector<std::pair<std::vector<FeatureValue>, Classification>> rows;
        for (int v : values) rows.push_back({{FeatureValue{v}}, D});
        return mini_dataset(schema, rows);
    };

    CHECK(candidate_thresholds(with_values({1, 2, 9}), "x") == std::vector<int>{1, 2});
    CHECK(candidate_thresholds(with_values({9, 2, 1, 2}), "x") == std::vector<int>{1, 2});
    CHECK(candidate_thresholds(with_values({5}), "x") == std::vector<int>{});
    CHECK(candidate_thresholds(with_values({5, 5, 5}), "x") == std::vector<int>{});

    std::vector<int> contiguous(20);
    for (int i = 0; i < 20; ++i) contiguous[i] = i + 1;
    auto thresholds = candidate_thresholds(with_values(contiguous), "x");
    REQUIRE(thresholds.size() == 19);
    CHECK(thresholds.front() == 1);
    CHECK(thresholds.back() == 19);
}

TEST_CASE("single-class data induces a single leaf") {
    auto d = mini_dataset(two_symbolic_schema(), {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, D},
    });
    auto t = induce_tree(d);
    CHECK(t.is_leaf());
    CHECK(t.cls == D);
    CHECK(t.support == 2);
    CHECK(t.errors == 0);
    CHECK_THROWS_AS(induce_tree(Dataset{}), ValidationError);
}

TEST_CASE("planted positional rule induces the two-leaf threshold tree") {
    auto corpus = generate_synthetic(planted_preset(400, 0.0), 21);
    auto d = project(corpus, resolve_feature_set("position"));
    auto t = induce_tree(d);

    REQUIRE(!t.is_leaf());
    CHECK(t.split->feature == "P-P");
    REQUIRE(std::holds_alternative<NumericTest>(t.split->test));
    CHECK(std::get<NumericTest>(t.split->test).threshold == 1);
    REQUIRE(t.children.size() == 2);
    CHECK(t.children[0].is_leaf());
    CHECK(t.children[0].cls == D);
    CHECK(t.children[1].is_leaf());
    CHECK(t.children[1].cls == S);
}

TEST_CASE("XOR-style data is fit exactly at depth two") {
    std::vector<std::pair<std::vector<FeatureValue>, Classification>> rows;
    for (int copy = 0; copy < 2; ++copy)
        for (const char* a : {"t", "f"})
            for (const char* b : {"t", "f"})
                rows.push_back({{FeatureValue{a}, FeatureValue{b}},
                                std::string(a) == b ? D : S});
    auto d = mini_dataset(two_symbolic_schema(), rows);

    auto t = induce_tree(d);
    CHECK(training_errors(t, d) == 0);
    CHECK(t.depth() == 2);
}

TEST_CASE("consistent data with unit branch support fits exactly") {
    Rng rng(31);
    FeatureSchema schema({{"f1", FeatureKind::Symbolic, {"a", "b", "c"}},
                          {"f2", FeatureKind::Symbolic, {"a", "b", "c"}},
                          {"f3", FeatureKind::Symbolic, {"a", "b", "c"}}});
    TreeOptions opts;
    opts.min_branch_support = 1;

    for (int trial = 0; trial < 25; ++trial) {
        // Random labeling of random vectors, consistent by construction:
        // identical vectors get identical labels.
        std::map<std::vector<std::string>, Classification> labels;
        std::vector<std::pair<std::vector<FeatureValue>, Classification>> rows;
        for (int i = 0; i < 18; ++i) {
            std::vector<std::string> key;
            for (int f = 0; f < 3; ++f) key.push_back(std::string(1, "abc"[rng.below(3)]));
            auto [it, inserted] = labels.try_emplace(key, rng.chance(0.5) ? D : S);
            rows.push_back({{FeatureValue{key[0]}, FeatureValue{key[1]}, FeatureValue{key[2]}},
                            it->second});
        }
        auto d = mini_dataset(schema, rows);
        CHECK(training_errors(induce_tree(d, opts), d) == 0);
    }
}

TEST_CASE("induction is deterministic and ties break toward lower schema index") {
    auto corpus = generate_synthetic(planted_preset(300, 0.05), 5);
    auto d = project(corpus, resolve_feature_set("position"));
    CHECK(trees_equal(induce_tree(d), induce_tree(d)));

    // f1 and f2 are identical columns; the split must name f1.
    auto twin = mini_dataset(two_symbolic_schema(), {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"f"}}, S},
        {{FeatureValue{"f"}, FeatureValue{"f"}}, S},
    });
    auto t = induce_tree(twin);
    REQUIRE(!t.is_leaf());
    CHECK(t.split->feature == "f1");

    // Symmetric thresholds tie; the lower one wins.
    FeatureSchema numeric_schema({{"x", FeatureKind::Numeric, {}}});
    auto alternating = mini_dataset(numeric_schema, {
        {{FeatureValue{1}}, D},
        {{FeatureValue{2}}, S},
        {{FeatureValue{3}}, D},
        {{FeatureValue{4}}, S},
    });
    TreeOptions unit;
    unit.min_branch_support = 1;
    auto tied = induce_tree(alternating, unit);
    REQUIRE(!tied.is_leaf());
    CHECK(std::get<NumericTest>(tied.split->test).threshold == 1);
}

TEST_CASE("two-class mode rejects unknown gold labels") {
    auto d = testutil::make_dataset({testutil::make_example({}, Classification::Unknown)});
    CHECK_THROWS_AS(induce_tree(d), ValidationError);

    TreeOptions three;
    three.classes = ClassMode::ThreeClass;
    auto t = induce_tree(d, three);
    CHECK(t.cls == Classification::Unknown);
}

TEST_CASE("pessimistic error bound behaves like an upper confidence bound") {
    // Zero observed errors: closed form 1 - CF^(1/N).
    CHECK(pessimistic_error_bound(0, 100, 0.25) ==
          doctest::Approx(1.0 - std::pow(0.25, 1.0 / 100.0)).epsilon(1e-6));
    CHECK(pessimistic_error_bound(0, 1, 0.25) == doctest::Approx(0.75).epsilon(1e-6));

    // Monotone in errors, always above the observed rate.
    double prev = 0.0;
    for (int e = 0; e <= 10; ++e) {
        double u = pessimistic_error_bound(e, 20, 0.25);
        CHECK(u > e / 20.0);
        CHECK(u > prev);
        prev = u;
    }
    CHECK(pessimistic_error_bound(20, 20, 0.25) == doctest::Approx(1.0));
    CHECK_THROWS_AS(pessimistic_error_bound(-1, 10, 0.25), ValidationError);
    CHECK_THROWS_AS(pessimistic_error_bound(0, 0, 0.25), ValidationError);
}

TEST_CASE("pruning collapses unanimous subtrees and keeps single leaves") {
    auto corpus = generate_synthetic(planted_preset(200, 0.0), 3);
    auto d = project(corpus, resolve_feature_set("position"));

    DecisionTree leaf;
    leaf.cls = D;
    leaf.support = 10;
    leaf.errors = 0;
    auto pruned_leaf = prune_tree(leaf, d);
    CHECK(pruned_leaf.is_leaf());
    CHECK(pruned_leaf.cls == D);

    // A split whose children all predict the same class collapses.
    auto single_class = mini_dataset(two_symbolic_schema(), {
        {{FeatureValue{"t"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"t"}, FeatureValue{"f"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"t"}}, D},
        {{FeatureValue{"f"}, FeatureValue{"f"}}, D},
    });
    DecisionTree forced;
    forced.cls = D;
    forced.support = 4;
    forced.errors = 0;
    forced.split = SplitTest{"f1", SymbolicTest{{"t", "f"}}};
    DecisionTree child;
    child.cls = D;
    child.support = 2;
    child.errors = 0;
    forced.children = {child, child};
    auto collapsed = prune_tree(forced, single_class);
    CHECK(collapsed.is_leaf());
    CHECK(collapsed.cls == D);
}

TEST_CASE("pruning shrinks trees grown on noisy planted data") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto corpus = generate_synthetic(planted_preset(500, 0.10), seed);
        auto d = project(corpus, resolve_feature_set("position"));
        auto unpruned = induce_tree(d);
        auto pruned = prune_tree(unpruned, d);
        CHECK(pruned.node_count() < unpruned.node_count());
        // Totality is preserved.
        for (const auto& e : d.examples) CHECK_NOTHROW(predict_tree(pruned, d.schema, e));
    }
}

TEST_CASE("noise-free planted rule generalizes exactly after pruning") {
    auto train = generate_synthetic(planted_preset(1000, 0.0), 41);
    auto test = generate_synthetic(planted_preset(1000, 0.0), 42);
    auto t = learn_tree(project(train, resolve_feature_set("position")));
    auto test_proj = project(test, resolve_feature_set("position"));
    CHECK(training_errors(t, test_proj) == 0);
}

TEST_CASE("prediction follows branches and reports schema mismatches") {
    DecisionTree tree;
    tree.cls = S;
    tree.split = SplitTest{"P-P", NumericTest{1}};
    DecisionTree lo, hi;
    lo.cls = D;
    hi.cls = S;
    tree.children = {lo, hi};

    const auto& schema = canonical_schema();
    CHECK(predict_tree(tree, schema, testutil::make_example({{"P-P", FeatureValue{1}}})) == D);
    CHECK(predict_tree(tree, schema, testutil::make_example({{"P-P", FeatureValue{2}}})) == S);
    CHECK(predict_tree(tree, schema, testutil::make_example({{"P-P", FeatureValue{7}}})) == S);

    DecisionTree single;
    single.cls = D;
    CHECK(predict_tree(single, schema, testutil::make_example()) == D);

    // Tree over a feature the projected example does not carry.
    auto projected = project(testutil::make_dataset({testutil::make_example()}),
                             resolve_feature_set("I-C"));
    CHECK_THROWS_AS(predict_tree(tree, projected.schema, projected.examples[0]),
                    ValidationError);
}

TEST_CASE("grouped symbolic splits partition the vocabulary") {
    FeatureSchema schema({{"color", FeatureKind::Symbolic, {"red", "green", "blue", "grey"}}});
    // red/green -> discourse, blue/grey -> sentential; grouping should find
    // a two-block partition instead of a four-way split.
    std::vector<std::pair<std::vector<FeatureValue>, Classification>> rows;
    for (int i = 0; i < 3; ++i) {
        rows.push_back({{FeatureValue{"red"}}, D});
        rows.push_back({{FeatureValue{"green"}}, D});
        rows.push_back({{FeatureValue{"blue"}}, S});
        rows.push_back({{FeatureValue{"grey"}}, S});
    }
    auto d = mini_dataset(schema, rows);
    TreeOptions opts;
    opts.grouping_enabled = true;
    auto t = induce_tree(d, opts);

    REQUIRE(!t.is_leaf());
    REQUIRE(std::holds_alternative<GroupedTest>(t.split->test));
    const auto& blocks = std::get<GroupedTest>(t.split->test).blocks;
    CHECK(blocks.size() == 2);

    // Every vocabulary value appears in exactly one block.
    std::map<std::string, int> seen;
    for (const auto& block : blocks)
        for (const auto& v : block) seen[v]++;
    for (const auto& v : schema.at(0).values) CHECK(seen[v] == 1);

    CHECK(training_errors(t, d) == 0);
}
