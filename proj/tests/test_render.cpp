#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuephrase/feature_sets.hpp"
#include "cuephrase/model_io.hpp"
#include "cuephrase/synthetic.hpp"
#include "test_util.hpp"

using namespace cuephrase;

namespace {

constexpr auto D = Classification::Discourse;
constexpr auto S = Classification::Sentential;

DecisionTree positional_tree() {
    DecisionTree t;
    t.cls = S;
    t.support = 10;
    t.errors = 4;
    t.split = SplitTest{"P-P", NumericTest{1}};
    DecisionTree lo, hi;
    lo.cls = D;
    lo.support = 4;
    hi.cls = S;
    hi.support = 6;
    t.children = {lo, hi};
    return t;
}

RuleSet positional_ruleset() {
    RuleSet rs;
    rs.default_class = D;
    Rule rule;
    rule.cls = S;
    rule.tests = {{"P-P", RuleTest::Op::Ge, FeatureValue{2}}};
    rule.covered_pos = 6;
    rs.rules = {rule};
    return rs;
}

}  // namespace

TEST_CASE("positional tree renders in if/elseif form") {
    CHECK(render_model(positional_tree()) ==
          "if position in intonational phrase <= 1 then discourse\n"
          "elseif position in intonational phrase > 1 then sentential\n");
}

TEST_CASE("positional ruleset renders with its default line") {
    CHECK(render_model(positional_ruleset()) ==
          "if position in intonational phrase >= 2 then sentential\n"
          "default is on discourse\n");
}

TEST_CASE("single-leaf tree renders as the class name") {
    DecisionTree leaf;
    leaf.cls = D;
    CHECK(render_model(leaf) == "discourse\n");
}

TEST_CASE("nested trees indent one level per test") {
    DecisionTree root;
    root.split = SplitTest{"P-P", NumericTest{1}};
    DecisionTree inner;
    inner.split = SplitTest{"I-P", NumericTest{1}};
    DecisionTree d_leaf, s_leaf;
    d_leaf.cls = D;
    s_leaf.cls = S;
    inner.children = {d_leaf, s_leaf};
    root.children = {inner, s_leaf};

    CHECK(render_model(root) ==
          "if position in intonational phrase <= 1 then\n"
          "  if position in intermediate phrase <= 1 then discourse\n"
          "  elseif position in intermediate phrase > 1 then sentential\n"
          "elseif position in intonational phrase > 1 then sentential\n");
}

TEST_CASE("symbolic splits render one branch per value") {
    DecisionTree t;
    t.split = SplitTest{"O-P*", SymbolicTest{{"true", "false", "NA"}}};
    DecisionTree d_leaf, s_leaf;
    d_leaf.cls = D;
    s_leaf.cls = S;
    t.children = {d_leaf, s_leaf, d_leaf};
    CHECK(render_model(t) ==
          "if preceding orthography* = true then discourse\n"
          "elseif preceding orthography* = false then sentential\n"
          "elseif preceding orthography* = NA then discourse\n");
}

TEST_CASE("multi-test rules parenthesize conjuncts and merge paired bounds") {
    RuleSet rs;
    rs.default_class = D;
    Rule rule;
    rule.cls = S;
    rule.tests = {{"P-P", RuleTest::Op::Ge, FeatureValue{4}},
                  {"P-P", RuleTest::Op::Le, FeatureValue{7}},
                  {"A", RuleTest::Op::Eq, FeatureValue{"H*"}}};
    rs.rules = {rule};
    CHECK(render_model(rs) ==
          "if (4 <= position in intonational phrase <= 7) and (accent = H*) then sentential\n"
          "default is on discourse\n");

    Rule negated;
    negated.cls = S;
    negated.tests = {{"I-C", RuleTest::Op::Ne, FeatureValue{"only"}},
                     {"I-L", RuleTest::Op::Ge, FeatureValue{2}}};
    rs.rules = {negated};
    CHECK(render_model(rs) ==
          "if (composition of intermediate phrase != only) and "
          "(length of intermediate phrase >= 2) then sentential\n"
          "default is on discourse\n");
}

TEST_CASE("grouped splits render value sets") {
    DecisionTree t;
    t.split = SplitTest{"A*", GroupedTest{{{"H*", "complex"}, {"L*", "deaccented", "ambiguous"}}}};
    DecisionTree s_leaf, d_leaf;
    s_leaf.cls = S;
    d_leaf.cls = D;
    t.children = {s_leaf, d_leaf};
    CHECK(render_model(t) ==
          "if accent* in {H*, complex} then sentential\n"
          "elseif accent* in {L*, deaccented, ambiguous} then discourse\n");
}

TEST_CASE("models round-trip through JSON") {
    Model tree = positional_tree();
    auto tree_back = model_from_json(model_to_json(tree));
    CHECK(model_to_json(tree_back) == model_to_json(tree));
    CHECK(render_model(tree_back) == render_model(tree));

    Model rules = positional_ruleset();
    auto rules_back = model_from_json(model_to_json(rules));
    CHECK(model_to_json(rules_back) == model_to_json(rules));
    CHECK(render_model(rules_back) == render_model(rules));

    // A learned model with symbolic and grouped tests survives too.
    auto corpus = generate_synthetic(paper_shaped_preset(), 2);
    auto data = project(filter_classifiable(corpus), resolve_feature_set("hl93features"));
    TreeOptions opts;
    opts.grouping_enabled = true;
    Model learned = learn_tree(data, opts);
    auto learned_back = model_from_json(model_to_json(learned));
    CHECK(model_to_json(learned_back) == model_to_json(learned));
    for (const auto& e : data.examples)
        CHECK(predict_model(learned_back, data.schema, e) ==
              predict_model(learned, data.schema, e));

    CHECK_THROWS_AS(model_from_json("not json"), ValidationError);
    CHECK_THROWS_AS(model_from_json("{\"type\":\"bogus\"}"), ValidationError);
}

TEST_CASE("predictions agree between a serialized model and its source") {
    auto corpus = generate_synthetic(planted_preset(300, 0.0), 4);
    auto data = project(corpus, resolve_feature_set("position"));
    Model rules = induce_rules(data);
    auto back = model_from_json(model_to_json(rules));
    for (const auto& e : data.examples)
        CHECK(predict_model(back, data.schema, e) == predict_model(rules, data.schema, e));
}
