#include "cuephrase/baselines.hpp"

namespace cuephrase {

Classification hl93_prosodic(const FeatureSchema& schema, const Example& e, bool strict) {
    const auto& composition = as_symbol(e.value(schema, "I-C"));
    if (composition == "only" || composition == "only cue phrases")
        return Classification::Discourse;

    int position = as_int(e.value(schema, "I-P"));
    if (position != 1) return Classification::Sentential;

    const auto& accent = as_symbol(e.value(schema, "A*"));
    if (accent == "deaccented" || accent == "L*") return Classification::Discourse;
    if (accent == "H*" || accent == "complex") return Classification::Sentential;
    // A* = ambiguous at initial position in a larger phrase.
    if (strict)
        throw ValidationError("prosodic model has no line for I-C=other, I-P=1, A*=ambiguous");
    return Classification::Sentential;
}

Classification hl93_textual(const FeatureSchema& schema, const Example& e) {
    const auto& orthography = as_symbol(e.value(schema, "O-P*"));
    if (orthography == "false") return Classification::Sentential;
    return Classification::Discourse;  // true and NA
}

DefaultClassModel fit_default_class(const Dataset& train) {
    if (train.examples.empty())
        throw ValidationError("fit_default_class: empty training set");
    return {majority_class(class_counts(train))};
}

Classification predict(const DefaultClassModel& model, const Example&) {
    return model.majority;
}

}  // namespace cuephrase
