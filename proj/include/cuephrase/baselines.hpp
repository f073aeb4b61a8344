#ifndef CUEPHRASE_BASELINES_HPP
#define CUEPHRASE_BASELINES_HPP

#include "cuephrase/corpus.hpp"

namespace cuephrase {

// Hand-coded prosodic reference model over I-C, I-P and A*:
//   - phrase composition "only"/"only cue phrases" (alone) -> discourse
//   - otherwise at initial position: deaccented/L* -> discourse,
//     H*/complex -> sentential
//   - otherwise (non-initial) -> sentential
// The combination I-C=other, I-P=1, A*=ambiguous is outside the model; it
// falls back to sentential unless `strict`, which raises ValidationError.
Classification hl93_prosodic(const FeatureSchema& schema, const Example& e, bool strict = false);

// Hand-coded textual reference model over O-P*: true -> discourse,
// false -> sentential, NA -> discourse.
Classification hl93_textual(const FeatureSchema& schema, const Example& e);

// Majority-class baseline; ties break toward sentential.
struct DefaultClassModel {
    Classification majority = Classification::Sentential;
};

DefaultClassModel fit_default_class(const Dataset& train);  // throws on empty data
Classification predict(const DefaultClassModel& model, const Example& e);

}  // namespace cuephrase

#endif
