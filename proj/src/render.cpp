#include "cuephrase/render.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

namespace cuephrase {

namespace {

std::string branch_condition(const SplitTest& split, std::size_t branch) {
    std::string feature(feature_description(split.feature));
    if (std::holds_alternative<NumericTest>(split.test)) {
        int thr = std::get<NumericTest>(split.test).threshold;
        return feature + (branch == 0 ? " <= " : " > ") + std::to_string(thr);
    }
    if (std::holds_alternative<SymbolicTest>(split.test))
        return feature + " = " + std::get<SymbolicTest>(split.test).branch_values[branch];
    const auto& block = std::get<GroupedTest>(split.test).blocks[branch];
    if (block.size() == 1) return feature + " = " + block.front();
    std::string cond = feature + " in {";
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) cond += ", ";
        cond += block[i];
    }
    return cond + "}";
}

void render_tree(const DecisionTree& t, std::ostringstream& out, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    for (std::size_t b = 0; b < t.children.size(); ++b) {
        const auto& child = t.children[b];
        out << indent << (b == 0 ? "if " : "elseif ") << branch_condition(*t.split, b)
            << " then";
        if (child.is_leaf()) {
            out << ' ' << to_string(child.cls) << '\n';
        } else {
            out << '\n';
            render_tree(child, out, depth + 1);
        }
    }
}

std::string render_rule_body(const Rule& rule) {
    // Merge paired numeric bounds per feature; other tests render in order.
    struct Conjunct {
        std::string text;
    };
    std::vector<Conjunct> conjuncts;
    std::vector<std::string> merged_features;

    auto already_merged = [&](const std::string& f) {
        return std::find(merged_features.begin(), merged_features.end(), f) !=
               merged_features.end();
    };

    for (const auto& test : rule.tests) {
        std::string feature(feature_description(test.feature));
        if (test.op == RuleTest::Op::Eq || test.op == RuleTest::Op::Ne) {
            conjuncts.push_back(
                {feature + (test.op == RuleTest::Op::Eq ? " = " : " != ") +
                 value_to_string(test.value)});
            continue;
        }
        if (already_merged(test.feature)) continue;
        int lower = std::numeric_limits<int>::min();
        int upper = std::numeric_limits<int>::max();
        for (const auto& other : rule.tests) {
            if (other.feature != test.feature) continue;
            if (other.op == RuleTest::Op::Ge) lower = std::max(lower, as_int(other.value));
            if (other.op == RuleTest::Op::Le) upper = std::min(upper, as_int(other.value));
        }
        merged_features.push_back(test.feature);
        if (lower != std::numeric_limits<int>::min() && upper != std::numeric_limits<int>::max())
            conjuncts.push_back(
                {std::to_string(lower) + " <= " + feature + " <= " + std::to_string(upper)});
        else if (lower != std::numeric_limits<int>::min())
            conjuncts.push_back({feature + " >= " + std::to_string(lower)});
        else
            conjuncts.push_back({feature + " <= " + std::to_string(upper)});
    }

    std::string body;
    bool parenthesize = conjuncts.size() > 1;
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (i) body += " and ";
        if (parenthesize)
            body += "(" + conjuncts[i].text + ")";
        else
            body += conjuncts[i].text;
    }
    return body;
}

}  // namespace

std::string render_model(const DecisionTree& t) {
    std::ostringstream out;
    if (t.is_leaf()) {
        out << to_string(t.cls) << '\n';
        return out.str();
    }
    render_tree(t, out, 0);
    return out.str();
}

std::string render_model(const RuleSet& rs) {
    std::ostringstream out;
    for (const auto& rule : rs.rules) {
        if (rule.tests.empty())
            out << "if true then " << to_string(rule.cls) << '\n';
        else
            out << "if " << render_rule_body(rule) << " then " << to_string(rule.cls) << '\n';
    }
    out << "default is on " << to_string(rs.default_class) << '\n';
    return out.str();
}

}  // namespace cuephrase
