#include "cuephrase/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "cuephrase/rng.hpp"

namespace cuephrase {

double error_rate(const std::vector<Classification>& predictions,
                  const std::vector<Classification>& gold) {
    if (predictions.size() != gold.size())
        throw UsageError("error_rate: prediction and gold lists differ in length");
    if (predictions.empty()) throw UsageError("error_rate: empty lists");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < gold.size(); ++i)
        if (predictions[i] != gold[i]) ++mismatches;
    return static_cast<double>(mismatches) / static_cast<double>(gold.size());
}

ConfidenceInterval holdout_interval(double error, int n) {
    if (n < 1) throw UsageError("holdout_interval: n must be >= 1");
    if (error < 0.0 || error > 1.0)
        throw UsageError("holdout_interval: error rate must lie in [0, 1]");
    ConfidenceInterval ci;
    ci.point = error;
    ci.margin = 2.0 * std::sqrt(error * (1.0 - error) / static_cast<double>(n));
    ci.method = ConfidenceInterval::Method::HoldoutNormal;
    ci.n_or_folds = n;
    return ci;
}

double t_quantile_975(int df) {
    static constexpr std::array<double, 30> kTable = {
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
        2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) throw UsageError("t_quantile_975: df must be >= 1");
    if (df <= 30) return kTable[static_cast<std::size_t>(df - 1)];
    return 1.96;
}

std::vector<int> fold_assignment(std::size_t n, int k, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    // Contiguous blocks over the shuffled order; the first n % k folds take
    // one extra example.
    std::vector<int> fold_of(n, 0);
    std::size_t base = n / static_cast<std::size_t>(k);
    std::size_t extra = n % static_cast<std::size_t>(k);
    std::size_t pos = 0;
    for (int f = 0; f < k; ++f) {
        std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i) fold_of[order[pos++]] = f;
    }
    return fold_of;
}

namespace {

std::vector<int> stratified_assignment(const Dataset& d, int k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> fold_of(d.size(), 0);
    int next_fold = 0;
    for (Classification c : kAllClassifications) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.examples[i].gold == c) members.push_back(i);
        rng.shuffle(members);
        for (std::size_t i : members) {
            fold_of[i] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }
    return fold_of;
}

}  // namespace

CVReport cross_validate(const Learner& learner, const Dataset& d, int k, std::uint64_t seed,
                        bool stratified) {
    if (k < 2) throw UsageError("cross_validate: k must be >= 2");
    if (d.size() < static_cast<std::size_t>(k))
        throw UsageError("cross_validate: dataset smaller than the number of folds");

    std::vector<int> fold_of =
        stratified ? stratified_assignment(d, k, seed) : fold_assignment(d.size(), k, seed);

    CVReport report;
    report.k = k;
    for (int f = 0; f < k; ++f) {
        Dataset train;
        Dataset test;
        train.schema = d.schema;
        test.schema = d.schema;
        for (std::size_t i = 0; i < d.size(); ++i)
            (fold_of[i] == f ? test : train).examples.push_back(d.examples[i]);

        Predictor model = learner(train);  // learning starts from scratch per fold
        std::vector<Classification> predictions;
        std::vector<Classification> gold;
        predictions.reserve(test.size());
        gold.reserve(test.size());
        for (const auto& e : test.examples) {
            predictions.push_back(model(test.schema, e));
            gold.push_back(e.gold);
        }
        report.folds.push_back({f, test.size(), error_rate(predictions, gold), std::move(model)});
    }

    double sum = 0.0;
    for (const auto& fold : report.folds) sum += fold.error;
    report.mean_error = sum / static_cast<double>(k);
    double ss = 0.0;
    for (const auto& fold : report.folds) {
        double dev = fold.error - report.mean_error;
        ss += dev * dev;
    }
    report.fold_stddev = std::sqrt(ss / static_cast<double>(k - 1));
    return report;
}

ConfidenceInterval cv_interval(const CVReport& report) {
    if (report.k < 2) throw UsageError("cv_interval: need at least 2 folds");
    ConfidenceInterval ci;
    ci.point = report.mean_error;
    ci.margin = t_quantile_975(report.k - 1) * report.fold_stddev /
                std::sqrt(static_cast<double>(report.k));
    ci.method = ConfidenceInterval::Method::CvT;
    ci.n_or_folds = report.k;
    return ci;
}

bool significantly_lower(const ConfidenceInterval& a, const ConfidenceInterval& b) {
    return a.upper() < b.lower();
}

}  // namespace cuephrase
