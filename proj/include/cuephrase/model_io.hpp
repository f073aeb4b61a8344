#ifndef CUEPHRASE_MODEL_IO_HPP
#define CUEPHRASE_MODEL_IO_HPP

#include <string>
#include <variant>

#include "cuephrase/render.hpp"
#include "cuephrase/rules.hpp"
#include "cuephrase/tree.hpp"

namespace cuephrase {

// A learned classification model: decision tree or ordered ruleset. Models
// are self-contained (tests carry feature names and values), so a model
// trained on a projected dataset predicts over any schema declaring those
// features.
using Model = std::variant<DecisionTree, RuleSet>;

// JSON serialization (nested records), stable across runs.
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text);

void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

Classification predict_model(const Model& m, const FeatureSchema& schema, const Example& e);

std::string render_model(const Model& m);

}  // namespace cuephrase

#endif
