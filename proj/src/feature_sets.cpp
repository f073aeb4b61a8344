#include "cuephrase/feature_sets.hpp"

#include <algorithm>
#include <sstream>

namespace cuephrase {

namespace {

std::vector<std::string> in_schema_order(std::vector<std::string> members) {
    const auto& schema = canonical_schema();
    std::sort(members.begin(), members.end(), [&](const std::string& a, const std::string& b) {
        return schema.require(a) < schema.require(b);
    });
    return members;
}

}  // namespace

FeatureSetRegistry::FeatureSetRegistry() {
    const auto& schema = canonical_schema();

    std::vector<FeatureSet> base;
    for (const auto& decl : schema.decls()) {
        if (decl.name == kTokenFeature) continue;
        base.push_back({decl.name, {decl.name}, false});
    }

    const std::vector<std::pair<std::string, std::vector<std::string>>> multiples = {
        {"prosody", {"P-L", "P-P", "I-L", "I-P", "I-C", "A", "A*"}},
        {"hl93features", {"I-P", "I-C", "A", "A*"}},
        {"phrasing", {"P-L", "P-P", "I-L", "I-P", "I-C"}},
        {"length", {"P-L", "I-L"}},
        {"position", {"P-P", "I-P"}},
        {"intonational", {"P-L", "P-P"}},
        {"intermediate", {"I-L", "I-P", "I-C"}},
        {"text", {"C-P", "C-S", "O-P", "O-P*", "O-S", "O-S*", "POS"}},
        {"adjacency", {"C-P", "C-S"}},
        {"orthography", {"O-P", "O-P*", "O-S", "O-S*"}},
        {"preceding", {"C-P", "O-P", "O-P*"}},
        {"succeeding", {"C-S", "O-S", "O-S*"}},
        {"speech-text",
         {"P-L", "P-P", "I-L", "I-P", "I-C", "A", "A*", "C-P", "C-S", "O-P", "O-P*", "O-S",
          "O-S*", "POS"}},
    };
    for (const auto& [name, members] : multiples)
        base.push_back({name, in_schema_order(members), false});

    sets_ = base;
    for (const auto& fs : base) {
        FeatureSet tokenized = fs;
        tokenized.name += "+";
        tokenized.members.push_back(std::string(kTokenFeature));
        tokenized.tokenized = true;
        sets_.push_back(std::move(tokenized));
    }
}

const FeatureSet& FeatureSetRegistry::resolve(std::string_view name) const {
    for (const auto& fs : sets_)
        if (fs.name == name) return fs;
    std::ostringstream msg;
    msg << "unknown feature set '" << name << "'; valid names:";
    for (const auto& fs : sets_) msg << " " << fs.name;
    throw UsageError(msg.str());
}

bool FeatureSetRegistry::contains(std::string_view name) const {
    return std::any_of(sets_.begin(), sets_.end(),
                       [&](const FeatureSet& fs) { return fs.name == name; });
}

std::vector<std::string> FeatureSetRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(sets_.size());
    for (const auto& fs : sets_) out.push_back(fs.name);
    return out;
}

const FeatureSetRegistry& default_registry() {
    static const FeatureSetRegistry registry;
    return registry;
}

const FeatureSet& resolve_feature_set(std::string_view name) {
    return default_registry().resolve(name);
}

Dataset project(const Dataset& d, const FeatureSet& fs) { return project(d, fs.members); }

Dataset project(const Dataset& d, const std::vector<std::string>& members) {
    std::vector<std::size_t> indices;
    std::vector<FeatureDecl> decls;
    indices.reserve(members.size());
    for (const auto& name : members) {
        auto idx = d.schema.index_of(name);
        if (!idx)
            throw ValidationError("cannot project: schema has no feature '" + name + "'");
        indices.push_back(*idx);
        decls.push_back(d.schema.at(*idx));
    }

    Dataset out;
    out.schema = FeatureSchema(std::move(decls));
    out.examples.reserve(d.examples.size());
    for (const auto& e : d.examples) {
        Example proj;
        proj.id = e.id;
        proj.judges = e.judges;
        proj.gold = e.gold;
        proj.token = e.token;
        proj.values.reserve(indices.size());
        for (std::size_t idx : indices) proj.values.push_back(e.values[idx]);
        out.examples.push_back(std::move(proj));
    }
    return out;
}

}  // namespace cuephrase
