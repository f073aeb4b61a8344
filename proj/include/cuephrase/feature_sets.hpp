#ifndef CUEPHRASE_FEATURE_SETS_HPP
#define CUEPHRASE_FEATURE_SETS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cuephrase/corpus.hpp"

namespace cuephrase {

// A named subset of the canonical features. Tokenized sets carry the lexical
// feature T and are named with a trailing "+".
struct FeatureSet {
    std::string name;
    std::vector<std::string> members;  // kept in canonical schema order
    bool tokenized = false;
};

// The 14 single sets (one per non-token feature), the 13 multiple sets
// (prosody, hl93features, phrasing, length, position, intonational,
// intermediate, text, adjacency, orthography, preceding, succeeding,
// speech-text), and a tokenized "+" variant of each: 54 sets total.
class FeatureSetRegistry {
public:
    FeatureSetRegistry();

    // Throws UsageError listing the valid names when `name` is unregistered.
    const FeatureSet& resolve(std::string_view name) const;
    bool contains(std::string_view name) const;

    // Registry order: singles, multiples, then their tokenized variants.
    const std::vector<FeatureSet>& all() const { return sets_; }

    std::vector<std::string> names() const;

private:
    std::vector<FeatureSet> sets_;
};

const FeatureSetRegistry& default_registry();

// Convenience wrapper over default_registry().resolve().
const FeatureSet& resolve_feature_set(std::string_view name);

// Keeps only `fs.members` (and their declarations) in every example.
// Gold labels, judges, ids and tokens are untouched.
Dataset project(const Dataset& d, const FeatureSet& fs);
Dataset project(const Dataset& d, const std::vector<std::string>& members);

}  // namespace cuephrase

#endif
