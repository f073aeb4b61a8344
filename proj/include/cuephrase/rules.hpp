#ifndef CUEPHRASE_RULES_HPP
#define CUEPHRASE_RULES_HPP

#include <string>
#include <vector>

#include "cuephrase/corpus.hpp"
#include "cuephrase/tree.hpp"  // ClassMode

namespace cuephrase {

// One conjunct: = / != for symbolic features, <= / >= for numeric ones.
struct RuleTest {
    enum class Op { Eq, Ne, Le, Ge };

    std::string feature;
    Op op = Op::Eq;
    FeatureValue value;

    bool holds(const FeatureSchema& schema, const Example& e) const;
    bool operator==(const RuleTest&) const = default;
};

struct Rule {
    std::vector<RuleTest> tests;  // conjunction; empty matches everything
    Classification cls = Classification::Discourse;
    int covered_pos = 0;  // training coverage at induction time
    int covered_neg = 0;

    bool fires(const FeatureSchema& schema, const Example& e) const;
    double accuracy() const {
        int total = covered_pos + covered_neg;
        return total == 0 ? 0.0 : static_cast<double>(covered_pos) / total;
    }
};

enum class ConflictStrategy { FirstMatch, MostAccurate };

struct RuleSet {
    std::vector<Rule> rules;  // ordered
    Classification default_class = Classification::Sentential;
    ConflictStrategy strategy = ConflictStrategy::MostAccurate;
};

struct RuleOptions {
    // Classes to grow rules for; empty = auto (the minority class in
    // two-class data, every non-majority class in three-class data).
    std::vector<Classification> target_classes;
    int max_rule_length = 0;  // 0 = unbounded
    int min_coverage = 1;
    // A grown rule is kept only while it is majority-correct on its own
    // training coverage; rules that still cover more negatives than
    // positives end the search for that class.
    double min_rule_accuracy = 0.5;
    ConflictStrategy strategy = ConflictStrategy::MostAccurate;
    ClassMode classes = ClassMode::TwoClass;
};

// Greedily appends the test with the highest FOIL information gain until no
// negatives are covered, no test improves, or max_rule_length is reached.
// May return a rule that still covers negatives.
Rule grow_rule(const FeatureSchema& schema, const std::vector<const Example*>& pos,
               const std::vector<const Example*>& neg, const RuleOptions& opts = {});

// Separate-and-conquer: per target class, repeatedly grow a rule against all
// other-class examples and remove the covered positives. The default class is
// the most frequent class without rules. Deterministic.
RuleSet induce_rules(const Dataset& d, const RuleOptions& opts = {});

// No firing rule -> default; conflicts resolved per the ruleset's strategy
// (first match, or highest training accuracy with ties broken by order).
Classification predict_rules(const RuleSet& rs, const FeatureSchema& schema, const Example& e);

}  // namespace cuephrase

#endif
