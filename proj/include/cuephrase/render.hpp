#ifndef CUEPHRASE_RENDER_HPP
#define CUEPHRASE_RENDER_HPP

#include <string>

#include "cuephrase/rules.hpp"
#include "cuephrase/tree.hpp"

namespace cuephrase {

// Indented if/elseif text with long feature descriptions:
//
//   if position in intonational phrase <= 1 then discourse
//   elseif position in intonational phrase > 1 then sentential
//
// A tree that is a single leaf renders as its class name.
std::string render_model(const DecisionTree& t);

// One "if ... then class" line per rule plus the default line:
//
//   if position in intonational phrase >= 2 then sentential
//   default is on discourse
//
// Multi-test rules parenthesize each conjunct; paired numeric bounds on one
// feature collapse to "a <= feature <= b".
std::string render_model(const RuleSet& rs);

}  // namespace cuephrase

#endif
