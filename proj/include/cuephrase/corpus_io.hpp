#ifndef CUEPHRASE_CORPUS_IO_HPP
#define CUEPHRASE_CORPUS_IO_HPP

#include <iosfwd>
#include <string>

#include "cuephrase/corpus.hpp"

namespace cuephrase {

// Line-oriented corpus format. The header names the canonical features in
// order followed by judge1, judge2 and id; each record is one example with
// comma-separated values in the same order. "NA" is an ordinary symbolic
// value wherever the schema declares it.
//
//   P-L,P-P,...,T,judge1,judge2,id
//   9,1,...,now,D,D,ex1

std::string corpus_header();

// Throws ParseError (with line number) on malformed records and
// ValidationError on out-of-vocabulary values. Gold classes are recomputed
// from the judge pair.
Dataset parse_corpus(std::istream& in);
Dataset parse_corpus(const std::string& text);
Dataset load_corpus(const std::string& path);  // IoError when unreadable

void write_corpus(const Dataset& d, std::ostream& out);
std::string write_corpus(const Dataset& d);
void save_corpus(const Dataset& d, const std::string& path);

}  // namespace cuephrase

#endif
