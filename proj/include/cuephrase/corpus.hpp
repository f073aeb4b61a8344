#ifndef CUEPHRASE_CORPUS_HPP
#define CUEPHRASE_CORPUS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cuephrase/errors.hpp"

namespace cuephrase {

// ---------------------------------------------------------------------------
// Classifications and judge labels
// ---------------------------------------------------------------------------

enum class Classification { Discourse, Sentential, Unknown };

inline constexpr std::array<Classification, 3> kAllClassifications = {
    Classification::Discourse, Classification::Sentential, Classification::Unknown};

// Per-judge label: discourse (D), sentential (S), or ambiguous (?).
enum class JudgeLabel { Discourse, Sentential, Ambiguous };

struct JudgePair {
    JudgeLabel judge1 = JudgeLabel::Ambiguous;
    JudgeLabel judge2 = JudgeLabel::Ambiguous;

    bool operator==(const JudgePair&) const = default;
};

// D/D -> discourse, S/S -> sentential, everything else -> unknown.
Classification classify_judgment(JudgePair pair);

std::string_view to_string(Classification c);
std::string_view to_string(JudgeLabel l);
Classification classification_from_string(std::string_view s);
JudgeLabel judge_label_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// Feature schema
// ---------------------------------------------------------------------------

enum class FeatureKind { Symbolic, Numeric };

struct FeatureDecl {
    std::string name;
    FeatureKind kind = FeatureKind::Symbolic;
    std::vector<std::string> values;  // symbolic vocabulary; empty for numeric

    bool operator==(const FeatureDecl&) const = default;
};

class FeatureSchema {
public:
    FeatureSchema() = default;
    explicit FeatureSchema(std::vector<FeatureDecl> decls);  // validates uniqueness

    std::size_t size() const { return decls_.size(); }
    const FeatureDecl& at(std::size_t i) const { return decls_.at(i); }
    const std::vector<FeatureDecl>& decls() const { return decls_; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    const FeatureDecl* find(std::string_view name) const;
    // Like index_of but throws ValidationError when absent.
    std::size_t require(std::string_view name) const;

    bool operator==(const FeatureSchema&) const = default;

private:
    std::vector<FeatureDecl> decls_;
};

// The fixed 15-feature schema: four numeric phrase length/position features,
// ten symbolic prosodic/textual features, and the lexical token feature T.
const FeatureSchema& canonical_schema();

// Long-form feature descriptions used when rendering models
// (e.g. "P-P" -> "position in intonational phrase").
std::string_view feature_description(std::string_view short_name);

inline constexpr std::string_view kTokenFeature = "T";
inline constexpr std::array<std::string_view, 3> kConjunctTokens = {"and", "or", "but"};

bool is_conjunct_token(std::string_view token);

// ---------------------------------------------------------------------------
// Feature values and examples
// ---------------------------------------------------------------------------

using FeatureValue = std::variant<int, std::string>;

inline bool is_numeric(const FeatureValue& v) { return std::holds_alternative<int>(v); }
inline int as_int(const FeatureValue& v) { return std::get<int>(v); }
inline const std::string& as_symbol(const FeatureValue& v) { return std::get<std::string>(v); }

std::string value_to_string(const FeatureValue& v);

struct Example {
    std::string id;
    std::vector<FeatureValue> values;  // parallel to the owning schema
    JudgePair judges;
    Classification gold = Classification::Unknown;
    std::string token;  // mirror of feature T; survives projection

    const FeatureValue& value(const FeatureSchema& schema, std::string_view feature) const {
        return values.at(schema.require(feature));
    }
};

struct Dataset {
    FeatureSchema schema;
    std::vector<Example> examples;

    std::size_t size() const { return examples.size(); }
    bool empty() const { return examples.empty(); }
};

// Throws ValidationError on any schema violation: wrong value count, symbolic
// value outside its vocabulary, negative numeric value, gold inconsistent
// with the judge pair, or token diverging from feature T.
void validate(const Dataset& d);

// Retains examples whose gold class is discourse or sentential; order kept.
Dataset filter_classifiable(const Dataset& d);

// Drops examples whose token is "and", "or" or "but"; order kept.
Dataset filter_non_conjuncts(const Dataset& d);

// Class counts indexed by Classification.
std::array<int, 3> class_counts(const Dataset& d);

// Most frequent class; ties break sentential > discourse > unknown.
Classification majority_class(const std::array<int, 3>& counts);

}  // namespace cuephrase

#endif
