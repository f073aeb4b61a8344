#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cuephrase/feature_sets.hpp"
#include "test_util.hpp"

using namespace cuephrase;
using testutil::make_dataset;
using testutil::make_example;

TEST_CASE("registry holds exactly 54 sets with the declared memberships") {
    const auto& reg = default_registry();
    CHECK(reg.all().size() == 54);

    int tokenized = 0;
    for (const auto& fs : reg.all()) {
        CHECK(!fs.members.empty());
        bool has_token =
            std::find(fs.members.begin(), fs.members.end(), "T") != fs.members.end();
        CHECK(fs.tokenized == has_token);
        if (fs.tokenized) {
            ++tokenized;
            CHECK(fs.name.back() == '+');
        }
    }
    CHECK(tokenized == 27);

    CHECK(reg.resolve("position").members == std::vector<std::string>{"P-P", "I-P"});
    CHECK(reg.resolve("hl93features").members ==
          std::vector<std::string>{"I-P", "I-C", "A", "A*"});
    CHECK(reg.resolve("prosody").members ==
          std::vector<std::string>{"P-L", "P-P", "I-L", "I-P", "I-C", "A", "A*"});
    CHECK(reg.resolve("P-L+").members == std::vector<std::string>{"P-L", "T"});
    CHECK(reg.resolve("text").members ==
          std::vector<std::string>{"C-P", "C-S", "O-P", "O-P*", "O-S", "O-S*", "POS"});
    CHECK(reg.resolve("speech-text").members.size() == 14);
    CHECK(reg.resolve("speech-text+").members.size() == 15);
}

TEST_CASE("tokenized variants add exactly T") {
    const auto& reg = default_registry();
    for (const auto& fs : reg.all()) {
        if (fs.tokenized) continue;
        const auto& plus = reg.resolve(fs.name + "+");
        auto expected = fs.members;
        expected.push_back("T");
        CHECK(plus.members == expected);
    }
}

TEST_CASE("resolve rejects unknown names with the valid list") {
    CHECK_THROWS_AS(resolve_feature_set("nonesuch"), UsageError);
    try {
        resolve_feature_set("nonesuch");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("prosody") != std::string::npos);
    }
}

TEST_CASE("project keeps the selected features and the labels") {
    auto d = make_dataset({make_example({{"P-L", FeatureValue{9}}}, Classification::Discourse)});

    auto p = project(d, resolve_feature_set("P-L"));
    CHECK(p.schema.size() == 1);
    CHECK(as_int(p.examples[0].values[0]) == 9);
    CHECK(p.examples[0].gold == Classification::Discourse);
    CHECK(p.examples[0].token == "now");

    auto q = project(
        make_dataset({make_example({{"I-C", FeatureValue{"other"}}}, Classification::Sentential)}),
        resolve_feature_set("I-C"));
    CHECK(as_symbol(q.examples[0].values[0]) == "other");
    CHECK(q.examples[0].gold == Classification::Sentential);
}

TEST_CASE("projection onto the full schema is the identity") {
    auto d = make_dataset({make_example(), make_example({}, Classification::Sentential, "t1")});
    std::vector<std::string> all;
    for (const auto& decl : canonical_schema().decls()) all.push_back(decl.name);
    auto p = project(d, all);
    CHECK(p.schema == d.schema);
    REQUIRE(p.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(p.examples[i].values == d.examples[i].values);
}

TEST_CASE("nested projection equals projection onto the intersection") {
    auto d = make_dataset({make_example(), make_example({}, Classification::Sentential, "t1")});
    std::vector<std::string> outer = {"P-L", "P-P", "I-C", "A*"};
    std::vector<std::string> inner = {"P-P", "A*"};  // subset of outer
    auto nested = project(project(d, outer), inner);
    auto direct = project(d, inner);
    CHECK(nested.schema == direct.schema);
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(nested.examples[i].values == direct.examples[i].values);
}

TEST_CASE("project rejects unknown features") {
    auto d = make_dataset({make_example()});
    CHECK_THROWS_AS(project(d, std::vector<std::string>{"Q-Q"}), ValidationError);
}
