#ifndef CUEPHRASE_TREE_HPP
#define CUEPHRASE_TREE_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cuephrase/corpus.hpp"

namespace cuephrase {

enum class ClassMode { TwoClass, ThreeClass };

// ---------------------------------------------------------------------------
// Split tests
// ---------------------------------------------------------------------------

// One branch per vocabulary value, in vocabulary order.
struct SymbolicTest {
    std::vector<std::string> branch_values;
    bool operator==(const SymbolicTest&) const = default;
};

// Vocabulary partitioned into >= 2 disjoint covering blocks, one branch each.
struct GroupedTest {
    std::vector<std::vector<std::string>> blocks;
    bool operator==(const GroupedTest&) const = default;
};

// Two branches: value <= threshold and value > threshold. Thresholds are
// attained training values.
struct NumericTest {
    int threshold = 0;
    bool operator==(const NumericTest&) const = default;
};

struct SplitTest {
    std::string feature;
    std::variant<SymbolicTest, GroupedTest, NumericTest> test;

    std::size_t branch_count() const;
    // Branch an example follows; throws ValidationError on schema mismatch.
    std::size_t branch_of(const FeatureValue& v) const;
    bool operator==(const SplitTest&) const = default;
};

// ---------------------------------------------------------------------------
// Decision trees
// ---------------------------------------------------------------------------

struct DecisionTree {
    // Majority class, training support and misclassified count at this node;
    // for leaves these are the leaf statistics.
    Classification cls = Classification::Sentential;
    int support = 0;
    int errors = 0;

    std::optional<SplitTest> split;   // empty for leaves
    std::vector<DecisionTree> children;  // parallel to the split's branches

    bool is_leaf() const { return !split.has_value(); }
    int node_count() const;
    int depth() const;
};

struct TreeOptions {
    int min_branch_support = 2;        // >= 2 branches must reach this size
    double pruning_confidence = 0.25;  // CF for the pessimistic error bound
    bool grouping_enabled = false;     // allow grouped symbolic branches
    ClassMode classes = ClassMode::TwoClass;
};

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

// Shannon entropy in bits of a class-count distribution (total must be > 0).
double entropy(const std::array<int, 3>& counts);
double entropy(const std::vector<int>& counts);

// Information gain of the split divided by the entropy of its branch-size
// distribution; 0 when every example lands in one branch.
double gain_ratio(const Dataset& d, const SplitTest& t);

// For each adjacent pair of distinct attained values, the lower one; sorted,
// duplicate-free. Empty when fewer than two distinct values are attained.
std::vector<int> candidate_thresholds(const Dataset& d, std::string_view feature);

// ---------------------------------------------------------------------------
// Induction, pruning, prediction
// ---------------------------------------------------------------------------

// Grows the unpruned tree: recursively picks the admissible split with the
// highest gain ratio (ties: lowest schema index, then lowest threshold) until
// nodes are pure or no admissible split remains. Deterministic.
DecisionTree induce_tree(const Dataset& d, const TreeOptions& opts = {});

// Bottom-up pessimistic pruning at opts.pruning_confidence: a subtree is
// replaced by a leaf or by its most-used branch whenever the upper-bound
// error estimate does not increase. `d` must be the training data.
DecisionTree prune_tree(const DecisionTree& t, const Dataset& d, const TreeOptions& opts = {});

// induce + prune.
DecisionTree learn_tree(const Dataset& d, const TreeOptions& opts = {});

Classification predict_tree(const DecisionTree& t, const FeatureSchema& schema,
                            const Example& e);

// Upper binomial confidence bound on the error probability given `errors`
// misclassifications in `n` trials (Quinlan's pessimistic estimate).
double pessimistic_error_bound(int errors, int n, double confidence);

}  // namespace cuephrase

#endif
