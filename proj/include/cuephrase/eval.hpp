#ifndef CUEPHRASE_EVAL_HPP
#define CUEPHRASE_EVAL_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cuephrase/corpus.hpp"

namespace cuephrase {

struct ConfidenceInterval {
    enum class Method { HoldoutNormal, CvT };

    double point = 0.0;
    double margin = 0.0;
    Method method = Method::HoldoutNormal;
    int n_or_folds = 0;

    double lower() const { return point - margin; }
    double upper() const { return point + margin; }
};

// Fraction of mismatches; any gold != predicted counts once in 3-class data.
double error_rate(const std::vector<Classification>& predictions,
                  const std::vector<Classification>& gold);

// 95% interval via the normal approximation: margin = 2 * sqrt(e(1-e)/n).
ConfidenceInterval holdout_interval(double error, int n);

// 97.5% one-sided t quantile for df in [1, 30]; 1.96 beyond (df 9 -> 2.262).
double t_quantile_975(int df);

// A fitted model as a prediction function.
using Predictor = std::function<Classification(const FeatureSchema&, const Example&)>;
// Training procedure; called from scratch for every fold.
using Learner = std::function<Predictor(const Dataset&)>;

struct FoldResult {
    int index = 0;
    std::size_t test_size = 0;
    double error = 0.0;
    Predictor model;  // the model trained on this fold's complement
};

struct CVReport {
    int k = 0;
    std::vector<FoldResult> folds;  // in fold-index order
    double mean_error = 0.0;
    double fold_stddev = 0.0;  // sample standard deviation of fold errors
};

// Seeded uniform shuffle, k near-equal disjoint folds (sizes differ by at
// most one); fold i is tested against a model trained on its complement.
// `stratified` deals each class round-robin across folds instead.
CVReport cross_validate(const Learner& learner, const Dataset& d, int k, std::uint64_t seed,
                        bool stratified = false);

// margin = t(0.975, k-1) * fold_stddev / sqrt(k).
ConfidenceInterval cv_interval(const CVReport& report);

// True when a's upper bound lies strictly below b's lower bound.
bool significantly_lower(const ConfidenceInterval& a, const ConfidenceInterval& b);

// Fold assignment used by cross_validate, exposed for partition checks:
// result[i] = fold of example i.
std::vector<int> fold_assignment(std::size_t n, int k, std::uint64_t seed);

}  // namespace cuephrase

#endif
