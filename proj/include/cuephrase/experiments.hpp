#ifndef CUEPHRASE_EXPERIMENTS_HPP
#define CUEPHRASE_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cuephrase/corpus.hpp"
#include "cuephrase/eval.hpp"
#include "cuephrase/rules.hpp"
#include "cuephrase/tree.hpp"

namespace cuephrase {

enum class LearnerKind { Tree, Rules, BaselineProsodic, BaselineTextual, BaselineDefault };
enum class ReportFormat { Text, Csv };

LearnerKind learner_kind_from_string(std::string_view s);
std::string_view to_string(LearnerKind k);

// Experiment sets:
//   1  train-and-test: fit on a separate training corpus, evaluate holdout
//      on the classifiable / classifiable non-conjunct subsets of the test
//      corpus; prosodic feature sets only, with P-L and I-L masked out.
//   2  10-fold cross-validation over the non-tokenized feature sets.
//   3  the same over the tokenized ("+") feature sets.
//   4  cross-validation over the full corpus with the third class admitted.
struct ExperimentConfig {
    int set_id = 2;
    LearnerKind learner = LearnerKind::Tree;
    std::vector<std::string> feature_sets;  // empty = per-set defaults
    int k = 10;
    std::uint64_t seed = 0;
    bool stratified = false;  // class-balanced folds instead of uniform ones
    TreeOptions tree_options;
    RuleOptions rule_options;
    // Features removed from every projection; defaults to {P-L, I-L} for
    // Set 1 (they were not coded in the original training corpus).
    std::vector<std::string> feature_mask;
};

struct ReportCell {
    ConfidenceInterval ci;
    int flag = 0;  // +1 outperforms the matching reference, -1 underperforms
    bool present = true;
};

struct ReportRow {
    std::string label;    // feature set, or the reference model's name
    std::string learner;  // learner that produced the row's models
    std::vector<ReportCell> cells;  // parallel to ReportTable::columns
    bool reference = false;
};

struct ReportTable {
    std::string title;
    std::vector<std::string> columns;
    std::vector<ReportRow> rows;
};

// Runs the configured sweep. `train_corpus` is required for Set 1 and
// ignored otherwise. Throws UsageError on invalid set/feature-set
// combinations.
ReportTable run_experiment(const ExperimentConfig& config, const Dataset& corpus,
                           const Dataset* train_corpus = nullptr);

// Text: aligned table with "mean ± margin" percentage cells; outperforming
// rows are starred, underperforming ones parenthesized, mirroring the
// reference rows appended at the bottom. Csv: one line per cell.
std::string render_report(const ReportTable& table, ReportFormat format);

}  // namespace cuephrase

#endif
