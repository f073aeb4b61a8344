#include "cuephrase/model_io.hpp"

#include <fstream>

#include <json.hpp>

namespace cuephrase {

namespace {

using nlohmann::json;

json value_to_json(const FeatureValue& v) {
    if (is_numeric(v)) return as_int(v);
    return as_symbol(v);
}

FeatureValue value_from_json(const json& j) {
    if (j.is_number_integer()) return FeatureValue{j.get<int>()};
    return FeatureValue{j.get<std::string>()};
}

json tree_to_json(const DecisionTree& t) {
    json node;
    node["class"] = std::string(to_string(t.cls));
    node["support"] = t.support;
    node["errors"] = t.errors;
    if (t.is_leaf()) return node;

    json split;
    split["feature"] = t.split->feature;
    if (std::holds_alternative<NumericTest>(t.split->test)) {
        split["kind"] = "numeric";
        split["threshold"] = std::get<NumericTest>(t.split->test).threshold;
    } else if (std::holds_alternative<SymbolicTest>(t.split->test)) {
        split["kind"] = "symbolic";
        split["values"] = std::get<SymbolicTest>(t.split->test).branch_values;
    } else {
        split["kind"] = "grouped";
        split["blocks"] = std::get<GroupedTest>(t.split->test).blocks;
    }
    node["split"] = std::move(split);

    json children = json::array();
    for (const auto& c : t.children) children.push_back(tree_to_json(c));
    node["children"] = std::move(children);
    return node;
}

DecisionTree tree_from_json(const json& node) {
    DecisionTree t;
    t.cls = classification_from_string(node.at("class").get<std::string>());
    t.support = node.value("support", 0);
    t.errors = node.value("errors", 0);
    if (!node.contains("split")) return t;

    const json& split = node.at("split");
    std::string kind = split.at("kind").get<std::string>();
    SplitTest test;
    test.feature = split.at("feature").get<std::string>();
    if (kind == "numeric")
        test.test = NumericTest{split.at("threshold").get<int>()};
    else if (kind == "symbolic")
        test.test = SymbolicTest{split.at("values").get<std::vector<std::string>>()};
    else if (kind == "grouped")
        test.test = GroupedTest{split.at("blocks").get<std::vector<std::vector<std::string>>>()};
    else
        throw ValidationError("model: unknown split kind '" + kind + "'");
    t.split = std::move(test);

    for (const auto& c : node.at("children")) t.children.push_back(tree_from_json(c));
    if (t.children.size() != t.split->branch_count())
        throw ValidationError("model: child count does not match the split");
    return t;
}

std::string op_name(RuleTest::Op op) {
    switch (op) {
        case RuleTest::Op::Eq: return "=";
        case RuleTest::Op::Ne: return "!=";
        case RuleTest::Op::Le: return "<=";
        case RuleTest::Op::Ge: return ">=";
    }
    return "=";
}

RuleTest::Op op_from_name(const std::string& s) {
    if (s == "=") return RuleTest::Op::Eq;
    if (s == "!=") return RuleTest::Op::Ne;
    if (s == "<=") return RuleTest::Op::Le;
    if (s == ">=") return RuleTest::Op::Ge;
    throw ValidationError("model: unknown rule operator '" + s + "'");
}

json rules_to_json(const RuleSet& rs) {
    json out;
    out["default"] = std::string(to_string(rs.default_class));
    out["strategy"] =
        rs.strategy == ConflictStrategy::FirstMatch ? "first-match" : "most-accurate";
    json rules = json::array();
    for (const auto& rule : rs.rules) {
        json r;
        r["class"] = std::string(to_string(rule.cls));
        r["covered_pos"] = rule.covered_pos;
        r["covered_neg"] = rule.covered_neg;
        json tests = json::array();
        for (const auto& test : rule.tests) {
            json t;
            t["feature"] = test.feature;
            t["op"] = op_name(test.op);
            t["value"] = value_to_json(test.value);
            tests.push_back(std::move(t));
        }
        r["tests"] = std::move(tests);
        rules.push_back(std::move(r));
    }
    out["rules"] = std::move(rules);
    return out;
}

RuleSet rules_from_json(const json& j) {
    RuleSet rs;
    rs.default_class = classification_from_string(j.at("default").get<std::string>());
    std::string strategy = j.value("strategy", "most-accurate");
    if (strategy == "first-match")
        rs.strategy = ConflictStrategy::FirstMatch;
    else if (strategy == "most-accurate")
        rs.strategy = ConflictStrategy::MostAccurate;
    else
        throw ValidationError("model: unknown conflict strategy '" + strategy + "'");
    for (const auto& r : j.at("rules")) {
        Rule rule;
        rule.cls = classification_from_string(r.at("class").get<std::string>());
        rule.covered_pos = r.value("covered_pos", 0);
        rule.covered_neg = r.value("covered_neg", 0);
        for (const auto& t : r.at("tests")) {
            RuleTest test;
            test.feature = t.at("feature").get<std::string>();
            test.op = op_from_name(t.at("op").get<std::string>());
            test.value = value_from_json(t.at("value"));
            rule.tests.push_back(std::move(test));
        }
        rs.rules.push_back(std::move(rule));
    }
    return rs;
}

}  // namespace

std::string model_to_json(const Model& m) {
    json out;
    if (std::holds_alternative<DecisionTree>(m)) {
        out["type"] = "tree";
        out["tree"] = tree_to_json(std::get<DecisionTree>(m));
    } else {
        out["type"] = "ruleset";
        out["ruleset"] = rules_to_json(std::get<RuleSet>(m));
    }
    return out.dump(2) + "\n";
}

Model model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw ValidationError(std::string("model: invalid JSON: ") + err.what());
    }
    try {
        std::string type = j.at("type").get<std::string>();
        if (type == "tree") return tree_from_json(j.at("tree"));
        if (type == "ruleset") return rules_from_json(j.at("ruleset"));
        throw ValidationError("model: unknown type '" + type + "'");
    } catch (const json::exception& err) {
        throw ValidationError(std::string("model: malformed document: ") + err.what());
    }
}

void save_model(const Model& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file '" + path + "'");
    out << model_to_json(m);
    if (!out) throw IoError("failed while writing '" + path + "'");
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

Classification predict_model(const Model& m, const FeatureSchema& schema, const Example& e) {
    if (std::holds_alternative<DecisionTree>(m))
        return predict_tree(std::get<DecisionTree>(m), schema, e);
    return predict_rules(std::get<RuleSet>(m), schema, e);
}

std::string render_model(const Model& m) {
    if (std::holds_alternative<DecisionTree>(m)) return render_model(std::get<DecisionTree>(m));
    return render_model(std::get<RuleSet>(m));
}

}  // namespace cuephrase
