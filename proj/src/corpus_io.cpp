#include "cuephrase/corpus_io.hpp"

#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace cuephrase {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

FeatureValue parse_value(const FeatureDecl& decl, const std::string& text, std::size_t line_no) {
    if (decl.kind == FeatureKind::Numeric) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("trailing characters");
            if (v < 0)
                throw ParseError(line_no, "feature '" + decl.name + "' must be non-negative, got '" +
                                              text + "'");
            return FeatureValue{v};
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(line_no, "feature '" + decl.name + "' expects an integer, got '" +
                                          text + "'");
        }
    }
    if (std::find(decl.values.begin(), decl.values.end(), text) == decl.values.end())
        throw ValidationError("line " + std::to_string(line_no) + ": value '" + text +
                              "' is not in the vocabulary of feature '" + decl.name + "'");
    return FeatureValue{text};
}

}  // namespace

std::string corpus_header() {
    std::string header;
    for (const auto& decl : canonical_schema().decls()) {
        header += decl.name;
        header += ',';
    }
    header += "judge1,judge2,id";
    return header;
}

Dataset parse_corpus(std::istream& in) {
    const auto& schema = canonical_schema();
    const std::size_t n_features = schema.size();
    const std::size_t token_idx = schema.require(kTokenFeature);

    Dataset d;
    d.schema = schema;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != corpus_header())
        throw ParseError(1, "header does not match the canonical feature order");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (fields.size() != n_features + 3)
            throw ParseError(line_no, "expected " + std::to_string(n_features + 3) +
                                          " fields, got " + std::to_string(fields.size()));

        Example e;
        e.values.reserve(n_features);
        for (std::size_t i = 0; i < n_features; ++i)
            e.values.push_back(parse_value(schema.at(i), fields[i], line_no));
        try {
            e.judges.judge1 = judge_label_from_string(fields[n_features]);
            e.judges.judge2 = judge_label_from_string(fields[n_features + 1]);
        } catch (const ValidationError& err) {
            throw ParseError(line_no, err.what());
        }
        e.gold = classify_judgment(e.judges);
        e.id = fields[n_features + 2];
        e.token = as_symbol(e.values[token_idx]);
        d.examples.push_back(std::move(e));
    }
    return d;
}

Dataset parse_corpus(const std::string& text) {
    std::istringstream in(text);
    return parse_corpus(in);
}

Dataset load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file '" + path + "'");
    return parse_corpus(in);
}

void write_corpus(const Dataset& d, std::ostream& out) {
    if (d.schema != canonical_schema())
        throw ValidationError("only canonical-schema datasets can be written as corpus files");
    out << corpus_header() << '\n';
    for (const auto& e : d.examples) {
        for (const auto& v : e.values) out << value_to_string(v) << ',';
        out << to_string(e.judges.judge1) << ',' << to_string(e.judges.judge2) << ',' << e.id
            << '\n';
    }
}

std::string write_corpus(const Dataset& d) {
    std::ostringstream out;
    write_corpus(d, out);
    return out.str();
}

void save_corpus(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write corpus file '" + path + "'");
    write_corpus(d, out);
    if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace cuephrase
