#include "cuephrase/synthetic.hpp"

#include <algorithm>
#include <numeric>

#include "cuephrase/rng.hpp"

namespace cuephrase {

namespace {

const FeatureDecl& require_decl(std::string_view name) {
    const auto* decl = canonical_schema().find(name);
    if (!decl) throw ValidationError("spec references unknown feature '" + std::string(name) + "'");
    return *decl;
}

void check_prior(const std::string& feature, const FeaturePrior& prior) {
    const auto& decl = require_decl(feature);
    if (std::holds_alternative<NumericPrior>(prior)) {
        if (decl.kind != FeatureKind::Numeric)
            throw ValidationError("numeric prior on symbolic feature '" + feature + "'");
        const auto& p = std::get<NumericPrior>(prior);
        if (p.min < 0 || p.max < p.min)
            throw ValidationError("bad numeric prior range for feature '" + feature + "'");
        if (!p.weights.empty() &&
            p.weights.size() != static_cast<std::size_t>(p.max - p.min + 1))
            throw ValidationError("numeric prior weights for '" + feature +
                                  "' do not match the range");
    } else {
        if (decl.kind != FeatureKind::Symbolic)
            throw ValidationError("symbolic prior on numeric feature '" + feature + "'");
        const auto& p = std::get<SymbolicPrior>(prior);
        if (!p.weights.empty() && p.weights.size() != decl.values.size())
            throw ValidationError("symbolic prior weights for '" + feature +
                                  "' do not match its vocabulary");
    }
}

void check_spec(const SyntheticSpec& spec) {
    if (spec.total_count < 0) throw ValidationError("total_count must be non-negative");
    if (spec.noise_rate < 0.0 || spec.noise_rate > 1.0)
        throw ValidationError("noise_rate must lie in [0, 1]");

    for (const auto& rule : spec.planted_rules) {
        for (const auto& test : rule.tests) {
            const auto& decl = require_decl(test.feature);
            bool numeric_op = test.op == PlantedTest::Op::Le || test.op == PlantedTest::Op::Ge;
            if (numeric_op != (decl.kind == FeatureKind::Numeric))
                throw ValidationError("planted rule operator does not fit feature '" +
                                      test.feature + "'");
            if (decl.kind == FeatureKind::Symbolic) {
                const auto& sym = as_symbol(test.value);
                if (std::find(decl.values.begin(), decl.values.end(), sym) == decl.values.end())
                    throw ValidationError("planted rule uses value '" + sym +
                                          "' outside the vocabulary of '" + test.feature + "'");
            }
        }
    }

    for (const auto& [feature, prior] : spec.value_priors.base) check_prior(feature, prior);
    for (const auto& [cls, priors] : spec.value_priors.by_class)
        for (const auto& [feature, prior] : priors) check_prior(feature, prior);

    for (const auto& [cls, w] : spec.class_weights)
        if (w < 0.0) throw ValidationError("negative class weight");

    const auto& token_decl = require_decl(kTokenFeature);
    for (const auto& [token, w] : spec.token_weights) {
        if (w < 0.0) throw ValidationError("negative token weight");
        if (std::find(token_decl.values.begin(), token_decl.values.end(), token) ==
            token_decl.values.end())
            throw ValidationError("token weight names unknown token '" + token + "'");
    }

    if (!spec.pools.empty()) {
        if (spec.noise_rate != 0.0)
            throw ValidationError("plan-driven specs fix classes exactly; noise_rate must be 0");
        int total = 0;
        for (const auto& pool : spec.pools) {
            int judges = 0, tokens = 0;
            for (const auto& [p, n] : pool.judge_counts) {
                if (n < 0) throw ValidationError("negative judge-pair count");
                judges += n;
            }
            for (const auto& [t, n] : pool.token_counts) {
                if (n < 0) throw ValidationError("negative token count");
                if (std::find(token_decl.values.begin(), token_decl.values.end(), t) ==
                    token_decl.values.end())
                    throw ValidationError("pool names unknown token '" + t + "'");
                tokens += n;
            }
            if (judges != tokens)
                throw ValidationError("pool judge-pair counts and token counts disagree");
            total += judges;
        }
        if (total != spec.total_count)
            throw ValidationError("pool counts sum to " + std::to_string(total) +
                                  " but total_count is " + std::to_string(spec.total_count));
    }
}

bool test_holds(const PlantedTest& test, const FeatureSchema& schema, const Example& e) {
    const auto& v = e.values[schema.require(test.feature)];
    switch (test.op) {
        case PlantedTest::Op::Eq: return v == test.value;
        case PlantedTest::Op::Ne: return v != test.value;
        case PlantedTest::Op::Le: return as_int(v) <= as_int(test.value);
        case PlantedTest::Op::Ge: return as_int(v) >= as_int(test.value);
    }
    return false;
}

const FeaturePrior* lookup_prior(const ValuePriors& priors, Classification cls,
                                 bool class_conditional, const std::string& feature) {
    if (class_conditional) {
        auto by_cls = priors.by_class.find(cls);
        if (by_cls != priors.by_class.end()) {
            auto it = by_cls->second.find(feature);
            if (it != by_cls->second.end()) return &it->second;
        }
    }
    auto it = priors.base.find(feature);
    return it != priors.base.end() ? &it->second : nullptr;
}

FeatureValue sample_feature(const FeatureDecl& decl, const FeaturePrior* prior, Rng& rng) {
    if (decl.kind == FeatureKind::Numeric) {
        NumericPrior p;  // default uniform 1..10
        if (prior) p = std::get<NumericPrior>(*prior);
        if (p.weights.empty()) return FeatureValue{rng.int_in(p.min, p.max)};
        return FeatureValue{p.min + static_cast<int>(rng.weighted(p.weights))};
    }
    if (prior) {
        const auto& p = std::get<SymbolicPrior>(*prior);
        if (!p.weights.empty())
            return FeatureValue{decl.values[rng.weighted(p.weights)]};
    }
    return FeatureValue{decl.values[rng.below(decl.values.size())]};
}

std::string abstract_accent(const std::string& a) {
    if (a == "L*+H" || a == "L+H*" || a == "H*+L" || a == "H+L*") return "complex";
    return a;  // H*, L*, deaccented, ambiguous map to themselves
}

std::string abstract_orthography(const std::string& o) {
    if (o == "false" || o == "NA") return o;
    return "true";  // comma, dash, period, paragraph
}

// Joint draw of P-L, P-P, I-L, I-P and I-C: the cue phrase sits at position
// I-P of an intermediate phrase of I-L words, which starts at word `lead + 1`
// of an intonational phrase with `trail` words after it.
struct ProsodyShape {
    double p_inter_len_one;   // I-L == 1
    double p_first_in_inter;  // I-P == 1 when I-L > 1
    double p_phrase_initial;  // intermediate phrase starts the intonational one
    double p_only_cues;       // I-C == "only cue phrases" when I-L > 1
    int max_inter_len;
    int max_lead;
    int max_trail;
};

ProsodyShape shape_for(Classification cls) {
    switch (cls) {
        case Classification::Discourse: return {0.55, 0.85, 0.80, 0.10, 5, 4, 8};
        case Classification::Sentential: return {0.08, 0.35, 0.20, 0.02, 12, 6, 8};
        case Classification::Unknown: return {0.30, 0.60, 0.50, 0.05, 8, 5, 8};
    }
    return {0.3, 0.6, 0.5, 0.05, 8, 5, 8};
}

void sample_structured_prosody(Example& e, const FeatureSchema& schema, Classification cls,
                               Rng& rng) {
    ProsodyShape shape = shape_for(cls);
    int inter_len = rng.chance(shape.p_inter_len_one) ? 1 : rng.int_in(2, shape.max_inter_len);
    int inter_pos = 1;
    if (inter_len > 1 && !rng.chance(shape.p_first_in_inter))
        inter_pos = rng.int_in(2, inter_len);
    int lead = rng.chance(shape.p_phrase_initial) ? 0 : rng.int_in(1, shape.max_lead);
    int trail = rng.int_in(0, shape.max_trail);

    std::string composition = "other";
    if (inter_len == 1)
        composition = "only";
    else if (rng.chance(shape.p_only_cues))
        composition = "only cue phrases";

    e.values[schema.require("P-L")] = FeatureValue{lead + inter_len + trail};
    e.values[schema.require("P-P")] = FeatureValue{lead + inter_pos};
    e.values[schema.require("I-L")] = FeatureValue{inter_len};
    e.values[schema.require("I-P")] = FeatureValue{inter_pos};
    e.values[schema.require("I-C")] = FeatureValue{composition};
}

JudgePair judges_for(Classification cls) {
    switch (cls) {
        case Classification::Discourse:
            return {JudgeLabel::Discourse, JudgeLabel::Discourse};
        case Classification::Sentential:
            return {JudgeLabel::Sentential, JudgeLabel::Sentential};
        case Classification::Unknown:
            return {JudgeLabel::Ambiguous, JudgeLabel::Ambiguous};
    }
    return {JudgeLabel::Ambiguous, JudgeLabel::Ambiguous};
}

void sample_features(Example& e, const SyntheticSpec& spec, Classification cls,
                     bool class_conditional, Rng& rng) {
    const auto& schema = canonical_schema();
    bool structured = spec.structured_prosody && class_conditional;
    if (structured) sample_structured_prosody(e, schema, cls, rng);

    for (std::size_t i = 0; i < schema.size(); ++i) {
        const auto& decl = schema.at(i);
        if (decl.name == kTokenFeature) continue;  // set by the caller
        if (structured && (decl.name == "P-L" || decl.name == "P-P" || decl.name == "I-L" ||
                           decl.name == "I-P" || decl.name == "I-C"))
            continue;
        if (spec.derive_abstract_features &&
            (decl.name == "A*" || decl.name == "O-P*" || decl.name == "O-S*"))
            continue;
        const auto* prior = lookup_prior(spec.value_priors, cls, class_conditional, decl.name);
        e.values[i] = sample_feature(decl, prior, rng);
    }

    if (spec.derive_abstract_features) {
        e.values[schema.require("A*")] =
            FeatureValue{abstract_accent(as_symbol(e.values[schema.require("A")]))};
        e.values[schema.require("O-P*")] =
            FeatureValue{abstract_orthography(as_symbol(e.values[schema.require("O-P")]))};
        e.values[schema.require("O-S*")] =
            FeatureValue{abstract_orthography(as_symbol(e.values[schema.require("O-S")]))};
    }
}

Dataset generate_from_pools(const SyntheticSpec& spec, Rng& rng) {
    const auto& schema = canonical_schema();
    const std::size_t token_idx = schema.require(kTokenFeature);

    std::vector<std::pair<JudgePair, std::string>> plan;
    plan.reserve(static_cast<std::size_t>(spec.total_count));
    for (const auto& pool : spec.pools) {
        std::vector<JudgePair> judges;
        std::vector<std::string> tokens;
        for (const auto& [pair, n] : pool.judge_counts)
            judges.insert(judges.end(), static_cast<std::size_t>(n), pair);
        for (const auto& [token, n] : pool.token_counts)
            tokens.insert(tokens.end(), static_cast<std::size_t>(n), token);
        rng.shuffle(tokens);
        for (std::size_t i = 0; i < judges.size(); ++i)
            plan.emplace_back(judges[i], std::move(tokens[i]));
    }
    rng.shuffle(plan);

    Dataset d;
    d.schema = schema;
    d.examples.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        Example e;
        e.id = "synth-" + std::to_string(i);
        e.judges = plan[i].first;
        e.gold = classify_judgment(e.judges);
        e.token = plan[i].second;
        e.values.assign(schema.size(), FeatureValue{0});
        e.values[token_idx] = FeatureValue{e.token};
        sample_features(e, spec, e.gold, /*class_conditional=*/true, rng);
        d.examples.push_back(std::move(e));
    }
    return d;
}

Dataset generate_from_rules(const SyntheticSpec& spec, Rng& rng) {
    const auto& schema = canonical_schema();
    const auto& token_decl = schema.at(schema.require(kTokenFeature));
    const std::size_t token_idx = schema.require(kTokenFeature);

    // Classes a noisy flip may land on.
    std::vector<Classification> classes_in_play;
    auto add_class = [&](Classification c) {
        if (std::find(classes_in_play.begin(), classes_in_play.end(), c) ==
            classes_in_play.end())
            classes_in_play.push_back(c);
    };
    for (const auto& rule : spec.planted_rules) add_class(rule.cls);
    for (const auto& [cls, w] : spec.class_weights)
        if (w > 0.0) add_class(cls);
    if (classes_in_play.empty())
        throw ValidationError("spec needs planted rules or positive class weights");
    if (spec.noise_rate > 0.0 && classes_in_play.size() < 2)
        throw ValidationError("noise needs at least two classes in play");

    std::vector<double> class_w;
    for (Classification c : kAllClassifications) {
        auto it = spec.class_weights.find(c);
        class_w.push_back(it != spec.class_weights.end() ? it->second : 0.0);
    }
    bool has_fallback =
        std::any_of(class_w.begin(), class_w.end(), [](double w) { return w > 0.0; });

    Dataset d;
    d.schema = schema;
    d.examples.reserve(static_cast<std::size_t>(spec.total_count));
    for (int i = 0; i < spec.total_count; ++i) {
        Example e;
        e.id = "synth-" + std::to_string(i);
        e.values.assign(schema.size(), FeatureValue{0});

        if (spec.token_weights.empty()) {
            e.token = token_decl.values[rng.below(token_decl.values.size())];
        } else {
            std::vector<double> w;
            w.reserve(spec.token_weights.size());
            for (const auto& [t, weight] : spec.token_weights) w.push_back(weight);
            e.token = spec.token_weights[rng.weighted(w)].first;
        }
        e.values[token_idx] = FeatureValue{e.token};
        sample_features(e, spec, Classification::Unknown, /*class_conditional=*/false, rng);

        const PlantedRule* fired = nullptr;
        for (const auto& rule : spec.planted_rules) {
            bool all = std::all_of(rule.tests.begin(), rule.tests.end(),
                                   [&](const PlantedTest& t) { return test_holds(t, schema, e); });
            if (all) {
                fired = &rule;
                break;
            }
        }
        if (fired) {
            e.gold = fired->cls;
        } else if (has_fallback) {
            e.gold = kAllClassifications[rng.weighted(class_w)];
        } else {
            throw ValidationError("example matches no planted rule and there are no class weights");
        }

        if (spec.noise_rate > 0.0 && rng.chance(spec.noise_rate)) {
            std::vector<Classification> others;
            for (Classification c : classes_in_play)
                if (c != e.gold) others.push_back(c);
            e.gold = others[rng.below(others.size())];
        }

        e.judges = judges_for(e.gold);
        d.examples.push_back(std::move(e));
    }
    return d;
}

std::map<std::string, FeaturePrior> textual_priors_discourse() {
    // Vocabulary orders follow the canonical schema declarations. The NA
    // weights skew discourse so untranscribed slices carry the same signal
    // the textual models key on.
    return {
        {"A", SymbolicPrior{{0.14, 0.22, 0.05, 0.06, 0.06, 0.05, 0.36, 0.06}}},
        {"C-P", SymbolicPrior{{0.20, 0.70, 0.10}}},
        {"C-S", SymbolicPrior{{0.25, 0.65, 0.10}}},
        {"O-P", SymbolicPrior{{0.29, 0.04, 0.20, 0.22, 0.15, 0.10}}},
        {"O-S", SymbolicPrior{{0.27, 0.03, 0.06, 0.54, 0.10}}},
        {"POS", SymbolicPrior{{0.01, 0.24, 0.01, 0.06, 0.02, 0.03, 0.01, 0.01, 0.02, 0.50, 0.03, 0.06}}},
    };
}

std::map<std::string, FeaturePrior> textual_priors_sentential() {
    return {
        {"A", SymbolicPrior{{0.40, 0.05, 0.08, 0.10, 0.10, 0.05, 0.16, 0.06}}},
        {"C-P", SymbolicPrior{{0.10, 0.87, 0.03}}},
        {"C-S", SymbolicPrior{{0.08, 0.89, 0.03}}},
        {"O-P", SymbolicPrior{{0.12, 0.02, 0.04, 0.02, 0.77, 0.03}}},
        {"O-S", SymbolicPrior{{0.10, 0.02, 0.05, 0.80, 0.03}}},
        {"POS", SymbolicPrior{{0.04, 0.30, 0.01, 0.12, 0.08, 0.06, 0.04, 0.01, 0.03, 0.20, 0.05, 0.06}}},
    };
}

std::map<std::string, FeaturePrior> textual_priors_unknown() {
    return {
        {"A", SymbolicPrior{{0.25, 0.12, 0.07, 0.08, 0.08, 0.05, 0.38, 0.07}}},
        {"C-P", SymbolicPrior{{0.15, 0.75, 0.10}}},
        {"C-S", SymbolicPrior{{0.15, 0.75, 0.10}}},
        {"O-P", SymbolicPrior{{0.20, 0.03, 0.10, 0.10, 0.47, 0.10}}},
        {"O-S", SymbolicPrior{{0.18, 0.02, 0.06, 0.64, 0.10}}},
        {"POS", SymbolicPrior{{0.02, 0.26, 0.01, 0.09, 0.05, 0.05, 0.02, 0.01, 0.03, 0.35, 0.04, 0.07}}},
    };
}

}  // namespace

SyntheticSpec paper_shaped_preset() {
    SyntheticSpec spec;
    spec.total_count = 953;
    spec.derive_abstract_features = true;
    spec.structured_prosody = true;
    spec.value_priors.by_class[Classification::Discourse] = textual_priors_discourse();
    spec.value_priors.by_class[Classification::Sentential] = textual_priors_sentential();
    spec.value_priors.by_class[Classification::Unknown] = textual_priors_unknown();

    const JudgePair dd{JudgeLabel::Discourse, JudgeLabel::Discourse};
    const JudgePair ss{JudgeLabel::Sentential, JudgeLabel::Sentential};
    const JudgePair qq{JudgeLabel::Ambiguous, JudgeLabel::Ambiguous};
    const JudgePair ds{JudgeLabel::Discourse, JudgeLabel::Sentential};
    const JudgePair qd{JudgeLabel::Ambiguous, JudgeLabel::Discourse};
    const JudgePair qs{JudgeLabel::Ambiguous, JudgeLabel::Sentential};

    // Conjuncts: 444 examples, cell counts = full-corpus row minus the
    // non-conjunct row. "and" dominates; "or"/"but" split the remainder.
    PlanPool conjuncts;
    conjuncts.judge_counts = {{dd, 139}, {ss, 244}, {qq, 48}, {ds, 4}, {qd, 5}, {qs, 4}};
    conjuncts.token_counts = {{"and", 320}, {"or", 62}, {"but", 62}};

    // Non-conjuncts: 509 examples. Only "now" (69) and the four rarest
    // tokens (2 each) have source-fixed counts; the rest is a flat split.
    PlanPool rest;
    rest.judge_counts = {{dd, 202}, {ss, 293}, {qq, 11}, {ds, 1}, {qs, 2}};
    rest.token_counts = {{"now", 69}, {"like", 51},      {"so", 51},    {"essentially", 2},
                         {"otherwise", 2}, {"since", 2}, {"therefore", 2}};
    const std::vector<std::string> flat = {
        "actually", "also",  "although", "basically", "because", "except", "finally",
        "first",    "further", "generally", "however", "indeed",  "look",   "next",
        "no",       "ok",    "right",    "say",       "second",  "see",    "similarly",
        "then",     "well",  "yes"};
    for (std::size_t i = 0; i < flat.size(); ++i)
        rest.token_counts.emplace_back(flat[i], i < 18 ? 14 : 13);

    spec.pools = {std::move(conjuncts), std::move(rest)};
    return spec;
}

SyntheticSpec now_style_preset() {
    SyntheticSpec spec;
    spec.total_count = 100;
    spec.derive_abstract_features = true;
    spec.structured_prosody = true;
    spec.value_priors.by_class[Classification::Discourse] = textual_priors_discourse();
    spec.value_priors.by_class[Classification::Sentential] = textual_priors_sentential();

    PlanPool pool;
    pool.judge_counts = {{{JudgeLabel::Discourse, JudgeLabel::Discourse}, 52},
                         {{JudgeLabel::Sentential, JudgeLabel::Sentential}, 48}};
    pool.token_counts = {{"now", 100}};
    spec.pools = {std::move(pool)};
    return spec;
}

SyntheticSpec planted_preset(int total_count, double noise_rate) {
    SyntheticSpec spec;
    spec.total_count = total_count;
    spec.noise_rate = noise_rate;
    PlantedRule rule;
    rule.tests = {PlantedTest{"P-P", PlantedTest::Op::Ge, FeatureValue{2}}};
    rule.cls = Classification::Sentential;
    spec.planted_rules = {std::move(rule)};
    spec.class_weights = {{Classification::Discourse, 1.0}};
    // Keep discourse the majority class so Bayes-optimal models mirror the
    // "position >= 2 -> sentential, default discourse" shape.
    spec.value_priors.base["P-P"] = NumericPrior{1, 4, {0.58, 0.14, 0.14, 0.14}};
    spec.value_priors.base["I-P"] = NumericPrior{1, 6, {}};
    return spec;
}

Dataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    check_spec(spec);
    Rng rng(seed);
    if (!spec.pools.empty()) return generate_from_pools(spec, rng);
    return generate_from_rules(spec, rng);
}

}  // namespace cuephrase
