#include "cuephrase/rules.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

namespace cuephrase {

namespace {

constexpr double kEps = 1e-12;

// Candidate tests at one growth step: =/!= over each symbolic vocabulary
// value, <=/>= over each attained numeric value of the covered examples.
std::vector<RuleTest> candidate_tests(const FeatureSchema& schema,
                                      const std::vector<const Example*>& covered) {
    std::vector<RuleTest> out;
    for (std::size_t f = 0; f < schema.size(); ++f) {
        const auto& decl = schema.at(f);
        if (decl.kind == FeatureKind::Symbolic) {
            for (const auto& v : decl.values) {
                out.push_back({decl.name, RuleTest::Op::Eq, FeatureValue{v}});
                out.push_back({decl.name, RuleTest::Op::Ne, FeatureValue{v}});
            }
        } else {
            std::set<int> attained;
            for (const Example* e : covered) attained.insert(as_int(e->values[f]));
            for (int v : attained) {
                out.push_back({decl.name, RuleTest::Op::Le, FeatureValue{v}});
                out.push_back({decl.name, RuleTest::Op::Ge, FeatureValue{v}});
            }
        }
    }
    return out;
}

double log2_precision(std::size_t p, std::size_t n) {
    return std::log2(static_cast<double>(p) / static_cast<double>(p + n));
}

}  // namespace

bool RuleTest::holds(const FeatureSchema& schema, const Example& e) const {
    const auto& v = e.values[schema.require(feature)];
    switch (op) {
        case Op::Eq: return v == value;
        case Op::Ne: return v != value;
        case Op::Le: return as_int(v) <= as_int(value);
        case Op::Ge: return as_int(v) >= as_int(value);
    }
    return false;
}

bool Rule::fires(const FeatureSchema& schema, const Example& e) const {
    return std::all_of(tests.begin(), tests.end(),
                       [&](const RuleTest& t) { return t.holds(schema, e); });
}

Rule grow_rule(const FeatureSchema& schema, const std::vector<const Example*>& pos,
               const std::vector<const Example*>& neg, const RuleOptions& opts) {
    if (pos.empty()) throw ValidationError("grow_rule: no positive examples");

    Rule rule;
    rule.cls = pos.front()->gold;
    std::vector<const Example*> cov_pos = pos;
    std::vector<const Example*> cov_neg = neg;

    while (!cov_neg.empty() &&
           (opts.max_rule_length == 0 ||
            rule.tests.size() < static_cast<std::size_t>(opts.max_rule_length))) {
        std::vector<const Example*> covered;
        covered.reserve(cov_pos.size() + cov_neg.size());
        covered.insert(covered.end(), cov_pos.begin(), cov_pos.end());
        covered.insert(covered.end(), cov_neg.begin(), cov_neg.end());

        double base = log2_precision(cov_pos.size(), cov_neg.size());
        double best_gain = kEps;
        std::optional<RuleTest> best;
        for (auto& test : candidate_tests(schema, covered)) {
            if (std::find(rule.tests.begin(), rule.tests.end(), test) != rule.tests.end())
                continue;
            std::size_t p = 0, n = 0;
            for (const Example* e : cov_pos)
                if (test.holds(schema, *e)) ++p;
            for (const Example* e : cov_neg)
                if (test.holds(schema, *e)) ++n;
            if (p == 0) continue;
            double gain = static_cast<double>(p) * (log2_precision(p, n) - base);
            if (gain > best_gain + kEps) {  // ties keep the earlier candidate
                best_gain = gain;
                best = std::move(test);
            }
        }
        if (!best) break;

        std::erase_if(cov_pos, [&](const Example* e) { return !best->holds(schema, *e); });
        std::erase_if(cov_neg, [&](const Example* e) { return !best->holds(schema, *e); });
        rule.tests.push_back(std::move(*best));
    }

    rule.covered_pos = static_cast<int>(cov_pos.size());
    rule.covered_neg = static_cast<int>(cov_neg.size());
    return rule;
}

namespace {

std::vector<Classification> auto_targets(const std::array<int, 3>& counts) {
    std::vector<Classification> present;
    for (Classification c : kAllClassifications)
        if (counts[static_cast<std::size_t>(c)] > 0) present.push_back(c);
    if (present.size() <= 1) return {};  // single-class data needs no rules

    Classification majority = majority_class(counts);
    std::vector<Classification> targets;
    for (Classification c : present)
        if (c != majority) targets.push_back(c);
    // Least frequent class first; class order breaks ties.
    std::stable_sort(targets.begin(), targets.end(), [&](Classification a, Classification b) {
        return counts[static_cast<std::size_t>(a)] < counts[static_cast<std::size_t>(b)];
    });
    return targets;
}

}  // namespace

RuleSet induce_rules(const Dataset& d, const RuleOptions& opts) {
    if (d.examples.empty()) throw ValidationError("induce_rules: empty dataset");
    if (opts.classes == ClassMode::TwoClass) {
        for (const auto& e : d.examples)
            if (e.gold == Classification::Unknown)
                throw ValidationError(
                    "two-class learning requires a classifiable dataset (gold 'unknown' found; "
                    "filter or switch to three-class mode)");
    }
    if (opts.min_coverage < 1) throw ValidationError("min_coverage must be >= 1");

    auto counts = class_counts(d);
    std::vector<Classification> targets =
        opts.target_classes.empty() ? auto_targets(counts) : opts.target_classes;

    RuleSet rs;
    rs.strategy = opts.strategy;

    for (Classification target : targets) {
        std::vector<const Example*> pos;
        std::vector<const Example*> neg;
        for (const auto& e : d.examples)
            (e.gold == target ? pos : neg).push_back(&e);

        while (!pos.empty()) {
            Rule rule = grow_rule(d.schema, pos, neg, opts);
            if (rule.covered_pos < opts.min_coverage) break;
            if (rule.tests.empty() && !neg.empty()) break;  // degenerate match-all rule
            if (rule.covered_neg > 0 && rule.accuracy() <= opts.min_rule_accuracy) break;

            std::erase_if(pos, [&](const Example* e) { return rule.fires(d.schema, *e); });
            rs.rules.push_back(std::move(rule));
        }
    }

    // Default class: most frequent class without rules; if every class has
    // rules, the overall majority.
    std::array<int, 3> uncovered = counts;
    for (const auto& rule : rs.rules) uncovered[static_cast<std::size_t>(rule.cls)] = -1;
    bool any_without_rules =
        std::any_of(uncovered.begin(), uncovered.end(), [](int n) { return n > 0; });
    if (any_without_rules) {
        std::array<int, 3> masked{0, 0, 0};
        for (std::size_t i = 0; i < 3; ++i) masked[i] = std::max(uncovered[i], 0);
        rs.default_class = majority_class(masked);
    } else {
        rs.default_class = majority_class(counts);
    }
    return rs;
}

Classification predict_rules(const RuleSet& rs, const FeatureSchema& schema, const Example& e) {
    const Rule* chosen = nullptr;
    for (const auto& rule : rs.rules) {
        if (!rule.fires(schema, e)) continue;
        if (rs.strategy == ConflictStrategy::FirstMatch) return rule.cls;
        if (!chosen || rule.accuracy() > chosen->accuracy() + kEps) chosen = &rule;
    }
    return chosen ? chosen->cls : rs.default_class;
}

}  // namespace cuephrase
