#include "cuephrase/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cuephrase {

namespace {

constexpr double kEps = 1e-12;

std::size_t class_index(Classification c) { return static_cast<std::size_t>(c); }

double entropy_impl(const int* counts, std::size_t k) {
    long long total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (counts[i] < 0) throw ValidationError("entropy: negative count");
        total += counts[i];
    }
    if (total == 0) throw ValidationError("entropy: empty distribution");
    double h = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (counts[i] == 0) continue;
        double p = static_cast<double>(counts[i]) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

std::size_t SplitTest::branch_count() const {
    if (std::holds_alternative<SymbolicTest>(test))
        return std::get<SymbolicTest>(test).branch_values.size();
    if (std::holds_alternative<GroupedTest>(test)) return std::get<GroupedTest>(test).blocks.size();
    return 2;
}

std::size_t SplitTest::branch_of(const FeatureValue& v) const {
    if (std::holds_alternative<NumericTest>(test)) {
        if (!is_numeric(v))
            throw ValidationError("numeric test on symbolic value for feature '" + feature + "'");
        return as_int(v) <= std::get<NumericTest>(test).threshold ? 0 : 1;
    }
    if (is_numeric(v))
        throw ValidationError("symbolic test on numeric value for feature '" + feature + "'");
    const auto& sym = as_symbol(v);
    if (std::holds_alternative<SymbolicTest>(test)) {
        const auto& values = std::get<SymbolicTest>(test).branch_values;
        auto it = std::find(values.begin(), values.end(), sym);
        if (it == values.end())
            throw ValidationError("value '" + sym + "' has no branch under feature '" + feature +
                                  "'");
        return static_cast<std::size_t>(it - values.begin());
    }
    const auto& blocks = std::get<GroupedTest>(test).blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::find(blocks[b].begin(), blocks[b].end(), sym) != blocks[b].end()) return b;
    throw ValidationError("value '" + sym + "' has no branch under feature '" + feature + "'");
}

int DecisionTree::node_count() const {
    int n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
}

int DecisionTree::depth() const {
    int d = 0;
    for (const auto& c : children) d = std::max(d, 1 + c.depth());
    return d;
}

double entropy(const std::array<int, 3>& counts) { return entropy_impl(counts.data(), 3); }

double entropy(const std::vector<int>& counts) { return entropy_impl(counts.data(), counts.size()); }

namespace {

// Shared split evaluation over an index subset of a dataset.
struct SplitEval {
    double gain = 0.0;
    double split_info = 0.0;
    double ratio = 0.0;
    std::vector<int> branch_sizes;
};

SplitEval evaluate_split(const Dataset& d, const std::vector<std::size_t>& idx,
                         std::size_t feature_idx, const SplitTest& test) {
    std::size_t branches = test.branch_count();
    std::vector<std::array<int, 3>> branch_counts(branches, {0, 0, 0});
    std::array<int, 3> total_counts{0, 0, 0};
    for (std::size_t i : idx) {
        const auto& e = d.examples[i];
        std::size_t b = test.branch_of(e.values[feature_idx]);
        branch_counts[b][class_index(e.gold)]++;
        total_counts[class_index(e.gold)]++;
    }

    SplitEval eval;
    eval.branch_sizes.resize(branches, 0);
    double n = static_cast<double>(idx.size());
    double children_entropy = 0.0;
    for (std::size_t b = 0; b < branches; ++b) {
        int size = branch_counts[b][0] + branch_counts[b][1] + branch_counts[b][2];
        eval.branch_sizes[b] = size;
        if (size == 0) continue;
        children_entropy += (size / n) * entropy(branch_counts[b]);
        double p = size / n;
        eval.split_info -= p * std::log2(p);
    }
    eval.gain = std::max(0.0, entropy(total_counts) - children_entropy);
    eval.ratio = eval.split_info > kEps ? eval.gain / eval.split_info : 0.0;
    return eval;
}

bool admissible(const SplitEval& eval, int min_branch_support) {
    int ok = 0;
    for (int size : eval.branch_sizes)
        if (size >= min_branch_support) ++ok;
    return ok >= 2;
}

std::vector<int> thresholds_for(const Dataset& d, const std::vector<std::size_t>& idx,
                                std::size_t feature_idx) {
    std::vector<int> values;
    values.reserve(idx.size());
    for (std::size_t i : idx) values.push_back(as_int(d.examples[i].values[feature_idx]));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < 2) return {};
    values.pop_back();  // every attained value except the largest
    return values;
}

struct Candidate {
    SplitTest test;
    double ratio = -1.0;
    std::size_t feature_idx = 0;
    int threshold = std::numeric_limits<int>::min();
};

// Greedy value-pair merging for grouped symbolic branches: start from
// singleton blocks and merge the pair that most improves the gain ratio.
std::optional<SplitTest> grouped_candidate(const Dataset& d, const std::vector<std::size_t>& idx,
                                           std::size_t feature_idx, int min_branch_support) {
    const auto& decl = d.schema.at(feature_idx);
    std::vector<std::vector<std::string>> blocks;
    for (const auto& v : decl.values) blocks.push_back({v});

    SplitTest current{decl.name, GroupedTest{blocks}};
    double current_ratio = evaluate_split(d, idx, feature_idx, current).ratio;

    while (blocks.size() > 2) {
        double best_ratio = current_ratio;
        std::size_t best_a = 0, best_b = 0;
        bool improved = false;
        for (std::size_t a = 0; a + 1 < blocks.size(); ++a) {
            for (std::size_t b = a + 1; b < blocks.size(); ++b) {
                auto merged = blocks;
                merged[a].insert(merged[a].end(), merged[b].begin(), merged[b].end());
                merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(b));
                SplitTest trial{decl.name, GroupedTest{std::move(merged)}};
                double ratio = evaluate_split(d, idx, feature_idx, trial).ratio;
                if (ratio > best_ratio + kEps) {
                    best_ratio = ratio;
                    best_a = a;
                    best_b = b;
                    improved = true;
                }
            }
        }
        if (!improved) break;
        blocks[best_a].insert(blocks[best_a].end(), blocks[best_b].begin(), blocks[best_b].end());
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(best_b));
        current_ratio = best_ratio;
    }

    SplitTest result{decl.name, GroupedTest{blocks}};
    if (!admissible(evaluate_split(d, idx, feature_idx, result), min_branch_support))
        return std::nullopt;
    return result;
}

std::array<int, 3> subset_class_counts(const Dataset& d, const std::vector<std::size_t>& idx) {
    std::array<int, 3> counts{0, 0, 0};
    for (std::size_t i : idx) counts[class_index(d.examples[i].gold)]++;
    return counts;
}

DecisionTree make_leaf(const std::array<int, 3>& counts) {
    DecisionTree leaf;
    leaf.cls = majority_class(counts);
    leaf.support = counts[0] + counts[1] + counts[2];
    leaf.errors = leaf.support - counts[class_index(leaf.cls)];
    return leaf;
}

DecisionTree grow(const Dataset& d, const std::vector<std::size_t>& idx,
                  const TreeOptions& opts) {
    auto counts = subset_class_counts(d, idx);
    int total = counts[0] + counts[1] + counts[2];
    bool pure = counts[0] == total || counts[1] == total || counts[2] == total;
    if (pure || idx.empty()) return make_leaf(counts);

    std::optional<Candidate> best;
    auto consider = [&](SplitTest test, std::size_t feature_idx, int threshold) {
        SplitEval eval = evaluate_split(d, idx, feature_idx, test);
        if (!admissible(eval, opts.min_branch_support)) return;
        Candidate cand{std::move(test), eval.ratio, feature_idx, threshold};
        if (!best || cand.ratio > best->ratio + kEps ||
            (std::abs(cand.ratio - best->ratio) <= kEps &&
             (cand.feature_idx < best->feature_idx ||
              (cand.feature_idx == best->feature_idx && cand.threshold < best->threshold))))
            best = std::move(cand);
    };

    for (std::size_t f = 0; f < d.schema.size(); ++f) {
        const auto& decl = d.schema.at(f);
        if (decl.kind == FeatureKind::Numeric) {
            for (int thr : thresholds_for(d, idx, f))
                consider(SplitTest{decl.name, NumericTest{thr}}, f, thr);
        } else if (opts.grouping_enabled) {
            if (auto test = grouped_candidate(d, idx, f, opts.min_branch_support))
                consider(std::move(*test), f, 0);
        } else {
            consider(SplitTest{decl.name, SymbolicTest{decl.values}}, f, 0);
        }
    }

    if (!best) return make_leaf(counts);

    std::size_t branches = best->test.branch_count();
    std::vector<std::vector<std::size_t>> partition(branches);
    for (std::size_t i : idx) {
        std::size_t b = best->test.branch_of(d.examples[i].values[best->feature_idx]);
        partition[b].push_back(i);
    }

    DecisionTree node = make_leaf(counts);  // keeps majority stats at the node
    node.split = std::move(best->test);
    node.children.reserve(branches);
    for (const auto& branch_idx : partition) {
        if (branch_idx.empty()) {
            // Empty branch: inherit the parent's majority class.
            DecisionTree leaf;
            leaf.cls = node.cls;
            node.children.push_back(std::move(leaf));
        } else {
            node.children.push_back(grow(d, branch_idx, opts));
        }
    }
    return node;
}

void check_class_mode(const Dataset& d, ClassMode mode) {
    if (mode != ClassMode::TwoClass) return;
    for (const auto& e : d.examples)
        if (e.gold == Classification::Unknown)
            throw ValidationError(
                "two-class learning requires a classifiable dataset (gold 'unknown' found; "
                "filter or switch to three-class mode)");
}

// --- pruning ---------------------------------------------------------------

double subtree_estimated_errors_cf(const DecisionTree& t, double cf) {
    if (t.is_leaf())
        return t.support == 0 ? 0.0 : t.support * pessimistic_error_bound(t.errors, t.support, cf);
    double sum = 0.0;
    for (const auto& c : t.children) sum += subtree_estimated_errors_cf(c, cf);
    return sum;
}

// Re-derives support/error statistics of `t` for the example subset `idx`,
// keeping the tree structure and leaf classes.
void refit_statistics(DecisionTree& t, const Dataset& d, const std::vector<std::size_t>& idx) {
    auto counts = subset_class_counts(d, idx);
    t.support = counts[0] + counts[1] + counts[2];
    t.errors = t.support - counts[class_index(t.cls)];
    if (t.is_leaf()) return;
    std::size_t feature_idx = d.schema.require(t.split->feature);
    std::vector<std::vector<std::size_t>> partition(t.split->branch_count());
    for (std::size_t i : idx)
        partition[t.split->branch_of(d.examples[i].values[feature_idx])].push_back(i);
    for (std::size_t b = 0; b < t.children.size(); ++b)
        refit_statistics(t.children[b], d, partition[b]);
}

DecisionTree prune_node(const DecisionTree& t, const Dataset& d,
                        const std::vector<std::size_t>& idx, const TreeOptions& opts) {
    if (t.is_leaf()) return t;

    std::size_t feature_idx = d.schema.require(t.split->feature);
    std::vector<std::vector<std::size_t>> partition(t.split->branch_count());
    for (std::size_t i : idx)
        partition[t.split->branch_of(d.examples[i].values[feature_idx])].push_back(i);

    DecisionTree pruned = t;
    for (std::size_t b = 0; b < pruned.children.size(); ++b)
        pruned.children[b] = prune_node(t.children[b], d, partition[b], opts);

    double cf = opts.pruning_confidence;
    auto counts = subset_class_counts(d, idx);
    DecisionTree as_leaf = make_leaf(counts);

    double est_subtree = subtree_estimated_errors_cf(pruned, cf);
    double est_leaf =
        as_leaf.support == 0
            ? 0.0
            : as_leaf.support * pessimistic_error_bound(as_leaf.errors, as_leaf.support, cf);

    // Most-used branch, refitted to all examples reaching this node.
    std::size_t largest = 0;
    for (std::size_t b = 1; b < partition.size(); ++b)
        if (partition[b].size() > partition[largest].size()) largest = b;
    DecisionTree branch = pruned.children[largest];
    double est_branch = std::numeric_limits<double>::infinity();
    if (!branch.is_leaf()) {
        refit_statistics(branch, d, idx);
        est_branch = subtree_estimated_errors_cf(branch, cf);
    }

    if (est_leaf <= est_subtree + kEps && est_leaf <= est_branch + kEps) return as_leaf;
    if (est_branch <= est_subtree + kEps) return prune_node(branch, d, idx, opts);
    return pruned;
}

}  // namespace

double gain_ratio(const Dataset& d, const SplitTest& t) {
    if (d.examples.empty()) throw ValidationError("gain_ratio: empty dataset");
    std::vector<std::size_t> idx(d.examples.size());
    std::iota(idx.begin(), idx.end(), 0);
    return evaluate_split(d, idx, d.schema.require(t.feature), t).ratio;
}

std::vector<int> candidate_thresholds(const Dataset& d, std::string_view feature) {
    std::size_t f = d.schema.require(feature);
    if (d.schema.at(f).kind != FeatureKind::Numeric)
        throw ValidationError("candidate_thresholds: feature '" + std::string(feature) +
                              "' is not numeric");
    std::vector<std::size_t> idx(d.examples.size());
    std::iota(idx.begin(), idx.end(), 0);
    return thresholds_for(d, idx, f);
}

DecisionTree induce_tree(const Dataset& d, const TreeOptions& opts) {
    if (d.examples.empty()) throw ValidationError("induce_tree: empty dataset");
    check_class_mode(d, opts.classes);
    std::vector<std::size_t> idx(d.examples.size());
    std::iota(idx.begin(), idx.end(), 0);
    return grow(d, idx, opts);
}

DecisionTree prune_tree(const DecisionTree& t, const Dataset& d, const TreeOptions& opts) {
    std::vector<std::size_t> idx(d.examples.size());
    std::iota(idx.begin(), idx.end(), 0);
    return prune_node(t, d, idx, opts);
}

DecisionTree learn_tree(const Dataset& d, const TreeOptions& opts) {
    return prune_tree(induce_tree(d, opts), d, opts);
}

Classification predict_tree(const DecisionTree& t, const FeatureSchema& schema,
                            const Example& e) {
    const DecisionTree* node = &t;
    while (!node->is_leaf()) {
        const auto& v = e.values[schema.require(node->split->feature)];
        node = &node->children[node->split->branch_of(v)];
    }
    return node->cls;
}

double pessimistic_error_bound(int errors, int n, double confidence) {
    if (n <= 0) throw ValidationError("pessimistic_error_bound: n must be positive");
    if (errors < 0 || errors > n)
        throw ValidationError("pessimistic_error_bound: errors out of range");
    if (confidence <= 0.0 || confidence >= 1.0)
        throw ValidationError("pessimistic_error_bound: confidence must lie in (0, 1)");
    if (errors >= n) return 1.0;

    // Upper bound p with P(X <= errors | n, p) = confidence, via bisection on
    // the binomial CDF (log-space for stability).
    auto cdf = [&](double p) {
        if (p <= 0.0) return 1.0;
        if (p >= 1.0) return 0.0;
        double log_p = std::log(p), log_q = std::log1p(-p);
        double total = 0.0;
        double log_coef = 0.0;  // log C(n, 0)
        for (int i = 0; i <= errors; ++i) {
            if (i > 0) log_coef += std::log(static_cast<double>(n - i + 1)) -
                                   std::log(static_cast<double>(i));
            total += std::exp(log_coef + i * log_p + (n - i) * log_q);
        }
        return std::min(total, 1.0);
    };

    double lo = static_cast<double>(errors) / n, hi = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) > confidence)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace cuephrase
