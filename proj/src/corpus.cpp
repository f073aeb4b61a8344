#include "cuephrase/corpus.hpp"

#include <algorithm>
#include <unordered_set>

namespace cuephrase {

Classification classify_judgment(JudgePair pair) {
    if (pair.judge1 == JudgeLabel::Discourse && pair.judge2 == JudgeLabel::Discourse)
        return Classification::Discourse;
    if (pair.judge1 == JudgeLabel::Sentential && pair.judge2 == JudgeLabel::Sentential)
        return Classification::Sentential;
    return Classification::Unknown;
}

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::Discourse: return "discourse";
        case Classification::Sentential: return "sentential";
        case Classification::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(JudgeLabel l) {
    switch (l) {
        case JudgeLabel::Discourse: return "D";
        case JudgeLabel::Sentential: return "S";
        case JudgeLabel::Ambiguous: return "?";
    }
    return "?";
}

Classification classification_from_string(std::string_view s) {
    if (s == "discourse") return Classification::Discourse;
    if (s == "sentential") return Classification::Sentential;
    if (s == "unknown") return Classification::Unknown;
    throw ValidationError("unknown classification: '" + std::string(s) + "'");
}

JudgeLabel judge_label_from_string(std::string_view s) {
    if (s == "D") return JudgeLabel::Discourse;
    if (s == "S") return JudgeLabel::Sentential;
    if (s == "?") return JudgeLabel::Ambiguous;
    throw ValidationError("unknown judge label: '" + std::string(s) + "' (expected D, S or ?)");
}

FeatureSchema::FeatureSchema(std::vector<FeatureDecl> decls) : decls_(std::move(decls)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& d : decls_) {
        if (!seen.insert(d.name).second)
            throw ValidationError("duplicate feature name: '" + d.name + "'");
        if (d.kind == FeatureKind::Symbolic) {
            if (d.values.empty())
                throw ValidationError("feature '" + d.name + "' has an empty vocabulary");
            std::unordered_set<std::string_view> vocab;
            for (const auto& v : d.values)
                if (!vocab.insert(v).second)
                    throw ValidationError("feature '" + d.name + "' repeats value '" + v + "'");
        }
    }
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < decls_.size(); ++i)
        if (decls_[i].name == name) return i;
    return std::nullopt;
}

const FeatureDecl* FeatureSchema::find(std::string_view name) const {
    auto idx = index_of(name);
    return idx ? &decls_[*idx] : nullptr;
}

std::size_t FeatureSchema::require(std::string_view name) const {
    auto idx = index_of(name);
    if (!idx) throw ValidationError("schema has no feature '" + std::string(name) + "'");
    return *idx;
}

const FeatureSchema& canonical_schema() {
    static const FeatureSchema schema{std::vector<FeatureDecl>{
        {"P-L", FeatureKind::Numeric, {}},
        {"P-P", FeatureKind::Numeric, {}},
        {"I-L", FeatureKind::Numeric, {}},
        {"I-P", FeatureKind::Numeric, {}},
        {"I-C", FeatureKind::Symbolic, {"only", "only cue phrases", "other"}},
        {"A", FeatureKind::Symbolic,
         {"H*", "L*", "L*+H", "L+H*", "H*+L", "H+L*", "deaccented", "ambiguous"}},
        {"A*", FeatureKind::Symbolic, {"H*", "L*", "complex", "deaccented", "ambiguous"}},
        {"C-P", FeatureKind::Symbolic, {"true", "false", "NA"}},
        {"C-S", FeatureKind::Symbolic, {"true", "false", "NA"}},
        {"O-P", FeatureKind::Symbolic, {"comma", "dash", "period", "paragraph", "false", "NA"}},
        {"O-P*", FeatureKind::Symbolic, {"true", "false", "NA"}},
        {"O-S", FeatureKind::Symbolic, {"comma", "dash", "period", "false", "NA"}},
        {"O-S*", FeatureKind::Symbolic, {"true", "false", "NA"}},
        {"POS", FeatureKind::Symbolic,
         {"article", "coordinating conjunction", "cardinal numeral",
          "subordinating conjunction", "preposition", "adjective",
          "singular or mass noun", "singular proper noun", "intensifier", "adverb",
          "verb base form", "NA"}},
        {"T", FeatureKind::Symbolic,
         {"actually", "also", "although", "and", "basically", "because", "but",
          "essentially", "except", "finally", "first", "further", "generally",
          "however", "indeed", "like", "look", "next", "no", "now", "ok", "or",
          "otherwise", "right", "say", "second", "see", "similarly", "since", "so",
          "then", "therefore", "well", "yes"}},
    }};
    return schema;
}

std::string_view feature_description(std::string_view short_name) {
    if (short_name == "P-L") return "length of intonational phrase";
    if (short_name == "P-P") return "position in intonational phrase";
    if (short_name == "I-L") return "length of intermediate phrase";
    if (short_name == "I-P") return "position in intermediate phrase";
    if (short_name == "I-C") return "composition of intermediate phrase";
    if (short_name == "A") return "accent";
    if (short_name == "A*") return "accent*";
    if (short_name == "C-P") return "preceding cue phrase";
    if (short_name == "C-S") return "succeeding cue phrase";
    if (short_name == "O-P") return "preceding orthography";
    if (short_name == "O-P*") return "preceding orthography*";
    if (short_name == "O-S") return "succeeding orthography";
    if (short_name == "O-S*") return "succeeding orthography*";
    if (short_name == "POS") return "part-of-speech";
    if (short_name == "T") return "token";
    return short_name;
}

bool is_conjunct_token(std::string_view token) {
    return std::find(kConjunctTokens.begin(), kConjunctTokens.end(), token) !=
           kConjunctTokens.end();
}

std::string value_to_string(const FeatureValue& v) {
    if (is_numeric(v)) return std::to_string(as_int(v));
    return as_symbol(v);
}

void validate(const Dataset& d) {
    const auto& schema = d.schema;
    auto token_idx = schema.index_of(kTokenFeature);
    for (const auto& e : d.examples) {
        if (e.values.size() != schema.size())
            throw ValidationError("example '" + e.id + "' has " +
                                  std::to_string(e.values.size()) + " values, schema declares " +
                                  std::to_string(schema.size()));
        for (std::size_t i = 0; i < schema.size(); ++i) {
            const auto& decl = schema.at(i);
            const auto& v = e.values[i];
            if (decl.kind == FeatureKind::Numeric) {
                if (!is_numeric(v))
                    throw ValidationError("example '" + e.id + "': feature '" + decl.name +
                                          "' must be numeric");
                if (as_int(v) < 0)
                    throw ValidationError("example '" + e.id + "': feature '" + decl.name +
                                          "' is negative");
            } else {
                if (is_numeric(v))
                    throw ValidationError("example '" + e.id + "': feature '" + decl.name +
                                          "' must be symbolic");
                const auto& sym = as_symbol(v);
                if (std::find(decl.values.begin(), decl.values.end(), sym) == decl.values.end())
                    throw ValidationError("example '" + e.id + "': value '" + sym +
                                          "' is not in the vocabulary of feature '" + decl.name +
                                          "'");
            }
        }
        if (e.gold != classify_judgment(e.judges))
            throw ValidationError("example '" + e.id +
                                  "': gold class disagrees with the judge pair");
        if (token_idx && e.token != as_symbol(e.values[*token_idx]))
            throw ValidationError("example '" + e.id + "': token field '" + e.token +
                                  "' differs from feature T");
    }
}

Dataset filter_classifiable(const Dataset& d) {
    Dataset out;
    out.schema = d.schema;
    out.examples.reserve(d.examples.size());
    for (const auto& e : d.examples)
        if (e.gold != Classification::Unknown) out.examples.push_back(e);
    return out;
}

Dataset filter_non_conjuncts(const Dataset& d) {
    Dataset out;
    out.schema = d.schema;
    out.examples.reserve(d.examples.size());
    for (const auto& e : d.examples)
        if (!is_conjunct_token(e.token)) out.examples.push_back(e);
    return out;
}

std::array<int, 3> class_counts(const Dataset& d) {
    std::array<int, 3> counts{0, 0, 0};
    for (const auto& e : d.examples) counts[static_cast<std::size_t>(e.gold)]++;
    return counts;
}

Classification majority_class(const std::array<int, 3>& counts) {
    // Tie order: sentential, then discourse, then unknown.
    Classification best = Classification::Sentential;
    int best_count = counts[static_cast<std::size_t>(Classification::Sentential)];
    for (Classification c : {Classification::Discourse, Classification::Unknown}) {
        int n = counts[static_cast<std::size_t>(c)];
        if (n > best_count) {
            best = c;
            best_count = n;
        }
    }
    return best;
}

}  // namespace cuephrase
