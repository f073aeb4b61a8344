#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cuephrase/corpus_io.hpp"
#include "cuephrase/rng.hpp"
#include "cuephrase/synthetic.hpp"
#include "test_util.hpp"

using namespace cuephrase;
using testutil::make_dataset;
using testutil::make_example;

namespace {

const std::string kRecord1 =
    "9,1,1,1,only,H*+L,complex,false,true,paragraph,true,false,false,adverb,now,D,D,ex1";
const std::string kRecord2 =
    "9,2,8,1,other,H*,H*,true,false,false,false,false,false,adverb,now,S,S,ex2";

std::string two_example_corpus() {
    return corpus_header() + "\n" + kRecord1 + "\n" + kRecord2 + "\n";
}

// Random schema-valid dataset for round-trip properties.
Dataset random_dataset(std::size_t n, std::uint64_t seed) {
    const auto& schema = canonical_schema();
    Rng rng(seed);
    std::vector<Example> examples;
    for (std::size_t i = 0; i < n; ++i) {
        Example e;
        e.id = "r" + std::to_string(i);
        for (const auto& decl : schema.decls()) {
            if (decl.kind == FeatureKind::Numeric)
                e.values.push_back(FeatureValue{rng.int_in(0, 30)});
            else
                e.values.push_back(FeatureValue{decl.values[rng.below(decl.values.size())]});
        }
        auto label = [&]() {
            switch (rng.below(3)) {
                case 0: return JudgeLabel::Discourse;
                case 1: return JudgeLabel::Sentential;
                default: return JudgeLabel::Ambiguous;
            }
        };
        e.judges = {label(), label()};
        e.gold = classify_judgment(e.judges);
        e.token = as_symbol(e.values[schema.require("T")]);
        examples.push_back(std::move(e));
    }
    return make_dataset(std::move(examples));
}

bool datasets_equal(const Dataset& a, const Dataset& b) {
    if (!(a.schema == b.schema) || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a.examples[i];
        const auto& y = b.examples[i];
        if (x.id != y.id || x.values != y.values || !(x.judges == y.judges) ||
            x.gold != y.gold || x.token != y.token)
            return false;
    }
    return true;
}

std::map<std::string, int> judge_cell_counts(const Dataset& d) {
    std::map<std::string, int> cells;
    for (const auto& e : d.examples) {
        std::string key = std::string(to_string(e.judges.judge1)) + "/" +
                          std::string(to_string(e.judges.judge2));
        cells[key]++;
    }
    return cells;
}

}  // namespace

TEST_CASE("parse_corpus decodes the documented two-example file") {
    auto d = parse_corpus(two_example_corpus());
    REQUIRE(d.size() == 2);

    const auto& schema = d.schema;
    const auto& e1 = d.examples[0];
    CHECK(as_int(e1.value(schema, "P-L")) == 9);
    CHECK(as_int(e1.value(schema, "P-P")) == 1);
    CHECK(as_int(e1.value(schema, "I-L")) == 1);
    CHECK(as_int(e1.value(schema, "I-P")) == 1);
    CHECK(as_symbol(e1.value(schema, "I-C")) == "only");
    CHECK(as_symbol(e1.value(schema, "A")) == "H*+L");
    CHECK(as_symbol(e1.value(schema, "A*")) == "complex");
    CHECK(as_symbol(e1.value(schema, "C-P")) == "false");
    CHECK(as_symbol(e1.value(schema, "C-S")) == "true");
    CHECK(as_symbol(e1.value(schema, "O-P")) == "paragraph");
    CHECK(as_symbol(e1.value(schema, "O-P*")) == "true");
    CHECK(as_symbol(e1.value(schema, "O-S")) == "false");
    CHECK(as_symbol(e1.value(schema, "O-S*")) == "false");
    CHECK(as_symbol(e1.value(schema, "POS")) == "adverb");
    CHECK(e1.token == "now");
    CHECK(e1.gold == Classification::Discourse);
    CHECK(e1.id == "ex1");

    const auto& e2 = d.examples[1];
    CHECK(as_symbol(e2.value(schema, "I-C")) == "other");
    CHECK(e2.gold == Classification::Sentential);
}

TEST_CASE("parse_corpus handles the empty and error cases") {
    CHECK(parse_corpus(corpus_header() + "\n").empty());

    // Wrong field count carries a line number.
    try {
        parse_corpus(corpus_header() + "\n1,2,3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    // Out-of-vocabulary symbolic value names feature and value.
    std::string bad = kRecord1;
    bad.replace(bad.find("H*+L"), 4, "H%");
    try {
        parse_corpus(corpus_header() + "\n" + bad + "\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("H%") != std::string::npos);
        CHECK(msg.find("'A'") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_corpus(std::string("bogus header\n")), ParseError);
    CHECK_THROWS_AS(parse_corpus(std::string("")), ParseError);
}

TEST_CASE("write then parse is the identity") {
    auto d = parse_corpus(two_example_corpus());
    CHECK(write_corpus(d) == two_example_corpus());

    auto empty = make_dataset({});
    CHECK(write_corpus(empty) == corpus_header() + "\n");

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto random = random_dataset(200, seed);
        CHECK(datasets_equal(parse_corpus(write_corpus(random)), random));
    }

    // The shaped corpus writes one record per example.
    auto paper = generate_synthetic(paper_shaped_preset(), 4);
    auto text = write_corpus(paper);
    CHECK(std::count(text.begin(), text.end(), '\n') == 954);  // header + 953 records
    CHECK(datasets_equal(parse_corpus(text), paper));
}

TEST_CASE("generate_synthetic is deterministic and honors planted rules") {
    auto spec = planted_preset(100, 0.0);
    auto a = generate_synthetic(spec, 7);
    auto b = generate_synthetic(spec, 7);
    CHECK(datasets_equal(a, b));

    auto c = generate_synthetic(spec, 8);
    CHECK(!datasets_equal(a, c));

    // Noise-free planting: gold follows the rule exactly.
    validate(a);
    const auto& schema = a.schema;
    for (const auto& e : a.examples) {
        bool fires = as_int(e.value(schema, "P-P")) >= 2;
        CHECK(e.gold ==
              (fires ? Classification::Sentential : Classification::Discourse));
    }
}

TEST_CASE("noisy planting differs across seeds and flips labels") {
    auto spec = planted_preset(500, 0.10);
    auto a = generate_synthetic(spec, 1);
    auto b = generate_synthetic(spec, 2);
    CHECK(!datasets_equal(a, b));

    int flipped = 0;
    const auto& schema = a.schema;
    for (const auto& e : a.examples) {
        bool fires = as_int(e.value(schema, "P-P")) >= 2;
        auto planted = fires ? Classification::Sentential : Classification::Discourse;
        if (e.gold != planted) ++flipped;
    }
    CHECK(flipped > 20);   // ~50 expected
    CHECK(flipped < 100);
}

TEST_CASE("infeasible specs are rejected") {
    SyntheticSpec spec;
    spec.total_count = 10;
    spec.class_weights = {{Classification::Discourse, 1.0}};

    PlantedRule rule;
    rule.tests = {PlantedTest{"Q-Q", PlantedTest::Op::Ge, FeatureValue{1}}};
    rule.cls = Classification::Sentential;
    spec.planted_rules = {rule};
    CHECK_THROWS_AS(generate_synthetic(spec, 1), ValidationError);

    spec.planted_rules.clear();
    spec.noise_rate = 1.5;
    CHECK_THROWS_AS(generate_synthetic(spec, 1), ValidationError);

    spec.noise_rate = 0.5;  // noise with a single class in play
    CHECK_THROWS_AS(generate_synthetic(spec, 1), ValidationError);
}

TEST_CASE("paper-shaped preset reproduces every source cell count") {
    auto spec = paper_shaped_preset();
    for (std::uint64_t seed : {11ull, 12ull}) {
        auto d = generate_synthetic(spec, seed);
        validate(d);
        REQUIRE(d.size() == 953);

        auto cells = judge_cell_counts(d);
        CHECK(cells["D/D"] == 341);
        CHECK(cells["S/S"] == 537);
        CHECK(cells["?/?"] == 59);
        CHECK(cells["D/S"] == 5);
        CHECK(cells["?/D"] == 5);
        CHECK(cells["?/S"] == 6);

        auto nc = filter_non_conjuncts(d);
        CHECK(nc.size() == 509);
        auto nc_cells = judge_cell_counts(nc);
        CHECK(nc_cells["D/D"] == 202);
        CHECK(nc_cells["S/S"] == 293);
        CHECK(nc_cells["?/?"] == 11);
        CHECK(nc_cells["D/S"] == 1);
        CHECK(nc_cells["?/S"] == 2);

        CHECK(filter_classifiable(d).size() == 878);
        CHECK(filter_classifiable(nc).size() == 495);

        int and_count = 0, now_count = 0;
        for (const auto& e : d.examples) {
            if (e.token == "and") ++and_count;
            if (e.token == "now") ++now_count;
        }
        CHECK(and_count == 320);
        CHECK(now_count == 69);
    }
}

TEST_CASE("now-style preset yields 100 tokens of now") {
    auto d = generate_synthetic(now_style_preset(), 3);
    validate(d);
    REQUIRE(d.size() == 100);
    for (const auto& e : d.examples) CHECK(e.token == "now");
    CHECK(filter_classifiable(d).size() == 100);
}

TEST_CASE("abstract features stay consistent with their base features") {
    auto d = generate_synthetic(paper_shaped_preset(), 5);
    const auto& schema = d.schema;
    const std::set<std::string> complex_accents = {"L*+H", "L+H*", "H*+L", "H+L*"};
    for (const auto& e : d.examples) {
        const auto& a = as_symbol(e.value(schema, "A"));
        const auto& a_star = as_symbol(e.value(schema, "A*"));
        if (complex_accents.count(a))
            CHECK(a_star == "complex");
        else
            CHECK(a_star == a);

        const auto& op = as_symbol(e.value(schema, "O-P"));
        const auto& op_star = as_symbol(e.value(schema, "O-P*"));
        if (op == "false" || op == "NA")
            CHECK(op_star == op);
        else
            CHECK(op_star == "true");
    }
}
