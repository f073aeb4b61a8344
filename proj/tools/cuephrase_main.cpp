// Command-line front end: corpus generation and stats, model training,
// prediction, experiment sweeps, and paper-style model rendering.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuephrase/baselines.hpp"
#include "cuephrase/corpus_io.hpp"
#include "cuephrase/experiments.hpp"
#include "cuephrase/feature_sets.hpp"
#include "cuephrase/model_io.hpp"
#include "cuephrase/synthetic.hpp"

namespace {

using namespace cuephrase;

SyntheticSpec preset_by_name(const std::string& name, int count, double noise) {
    if (name == "paper") return paper_shaped_preset();
    if (name == "now") return now_style_preset();
    if (name == "planted") return planted_preset(count, noise);
    throw UsageError("unknown preset '" + name + "' (expected paper, now or planted)");
}

void print_stats(const Dataset& d) {
    const std::vector<std::pair<std::string, JudgePair>> cells = {
        {"D/D", {JudgeLabel::Discourse, JudgeLabel::Discourse}},
        {"S/S", {JudgeLabel::Sentential, JudgeLabel::Sentential}},
        {"?/?", {JudgeLabel::Ambiguous, JudgeLabel::Ambiguous}},
        {"D/S", {JudgeLabel::Discourse, JudgeLabel::Sentential}},
        {"S/D", {JudgeLabel::Sentential, JudgeLabel::Discourse}},
        {"D/?", {JudgeLabel::Discourse, JudgeLabel::Ambiguous}},
        {"S/?", {JudgeLabel::Sentential, JudgeLabel::Ambiguous}},
        {"?/D", {JudgeLabel::Ambiguous, JudgeLabel::Discourse}},
        {"?/S", {JudgeLabel::Ambiguous, JudgeLabel::Sentential}},
    };

    auto row = [&](const char* label, const Dataset& data) {
        std::map<std::string, int> counts;
        for (const auto& e : data.examples)
            for (const auto& [name, pair] : cells)
                if (e.judges == pair) counts[name]++;
        std::printf("%-18s %6zu", label, data.size());
        for (const auto& [name, pair] : cells) std::printf(" %5d", counts[name]);
        std::printf("\n");
    };

    std::printf("%-18s %6s", "", "total");
    for (const auto& [name, pair] : cells) std::printf(" %5s", name.c_str());
    std::printf("\n");
    row("all cue phrases", d);
    auto non_conjuncts = filter_non_conjuncts(d);
    row("non-conjuncts", non_conjuncts);

    auto classifiable = filter_classifiable(d);
    auto classifiable_nc = filter_classifiable(non_conjuncts);
    std::printf("classifiable: %zu of %zu (%.1f%%)\n", classifiable.size(), d.size(),
                d.size() ? 100.0 * classifiable.size() / d.size() : 0.0);
    std::printf("classifiable non-conjuncts: %zu of %zu (%.1f%%)\n", classifiable_nc.size(),
                non_conjuncts.size(),
                non_conjuncts.size() ? 100.0 * classifiable_nc.size() / non_conjuncts.size()
                                     : 0.0);
}

int run(int argc, char** argv) {
    CLI::App app{"Cue phrase classification toolkit"};
    app.require_subcommand(1);

    // --- corpus gen / corpus stats ---
    auto* corpus_cmd = app.add_subcommand("corpus", "Corpus generation and statistics");
    corpus_cmd->require_subcommand(1);

    std::string gen_preset = "paper";
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    int gen_count = 1000;
    double gen_noise = 0.0;
    auto* gen = corpus_cmd->add_subcommand("gen", "Generate a synthetic corpus");
    gen->add_option("--preset", gen_preset, "paper, now or planted")->required();
    gen->add_option("--seed", gen_seed, "Generator seed")->required();
    gen->add_option("--out", gen_out, "Output corpus file")->required();
    gen->add_option("--count", gen_count, "Example count (planted preset only)");
    gen->add_option("--noise", gen_noise, "Label noise rate (planted preset only)");

    std::string stats_file;
    auto* stats = corpus_cmd->add_subcommand("stats", "Judge-pair cell counts of a corpus");
    stats->add_option("file", stats_file, "Corpus file")->required();

    // --- train ---
    std::string train_learner = "tree";
    std::string train_features;
    std::string train_in;
    std::string train_out;
    bool train_tokenized = false;
    bool train_three_class = false;
    auto* train = app.add_subcommand("train", "Train a model and save it as JSON");
    train->add_option("--learner", train_learner, "tree or rules")->required();
    train->add_option("--features", train_features, "Feature set name")->required();
    train->add_option("--in", train_in, "Training corpus file")->required();
    train->add_option("--out", train_out, "Model output file")->required();
    train->add_flag("--tokenized", train_tokenized, "Use the tokenized (+) variant");
    train->add_flag("--three-class", train_three_class,
                    "Learn discourse/sentential/unknown over the full corpus");

    // --- predict ---
    std::string predict_model_file;
    std::string predict_in;
    auto* predict_cmd = app.add_subcommand("predict", "Classify a corpus with a saved model");
    predict_cmd->add_option("--model", predict_model_file, "Model file")->required();
    predict_cmd->add_option("--in", predict_in, "Corpus file")->required();

    // --- experiment ---
    int exp_set = 2;
    std::string exp_learner = "tree";
    std::string exp_in;
    std::string exp_train;
    std::uint64_t exp_seed = 0;
    std::string exp_format = "text";
    int exp_k = 10;
    std::vector<std::string> exp_features;
    auto* experiment = app.add_subcommand("experiment", "Run an experiment sweep");
    experiment->add_option("--set", exp_set, "Experiment set 1-4")->required();
    experiment->add_option("--learner", exp_learner,
                           "tree, rules, baseline-prosodic, baseline-textual, baseline-default");
    experiment->add_option("--in", exp_in, "Evaluation corpus file")->required();
    experiment->add_option("--train", exp_train, "Training corpus file (set 1)");
    experiment->add_option("--seed", exp_seed, "Fold/shuffle seed");
    experiment->add_option("--format", exp_format, "text or csv");
    experiment->add_option("--k", exp_k, "Cross-validation folds");
    experiment->add_option("--features", exp_features, "Feature set names (default: full sweep)");
    bool exp_stratified = false;
    experiment->add_flag("--stratified", exp_stratified, "Class-balanced fold assignment");

    // --- render ---
    std::string render_model_file;
    std::string render_out;
    auto* render_cmd = app.add_subcommand("render", "Print a saved model in text form");
    render_cmd->add_option("--model", render_model_file, "Model file")->required();
    render_cmd->add_option("--out", render_out, "Write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (gen->parsed()) {
        auto spec = preset_by_name(gen_preset, gen_count, gen_noise);
        save_corpus(generate_synthetic(spec, gen_seed), gen_out);
        std::printf("wrote %s (%d examples, preset %s, seed %llu)\n", gen_out.c_str(),
                    spec.total_count, gen_preset.c_str(),
                    static_cast<unsigned long long>(gen_seed));
        return 0;
    }
    if (stats->parsed()) {
        print_stats(load_corpus(stats_file));
        return 0;
    }
    if (train->parsed()) {
        auto corpus = load_corpus(train_in);
        Dataset data = train_three_class ? corpus : filter_classifiable(corpus);
        std::string set_name = train_features;
        if (train_tokenized && (set_name.empty() || set_name.back() != '+')) set_name += "+";
        auto projected = project(data, resolve_feature_set(set_name));

        Model model;
        if (train_learner == "tree") {
            TreeOptions opts;
            if (train_three_class) opts.classes = ClassMode::ThreeClass;
            model = learn_tree(projected, opts);
        } else if (train_learner == "rules") {
            RuleOptions opts;
            if (train_three_class) opts.classes = ClassMode::ThreeClass;
            model = induce_rules(projected, opts);
        } else {
            throw UsageError("train supports learners 'tree' and 'rules', got '" +
                             train_learner + "'");
        }
        save_model(model, train_out);
        std::printf("wrote %s (%s over %s, %zu training examples)\n", train_out.c_str(),
                    train_learner.c_str(), set_name.c_str(), projected.size());
        return 0;
    }
    if (predict_cmd->parsed()) {
        Model model = load_model(predict_model_file);
        auto corpus = load_corpus(predict_in);
        std::vector<Classification> predictions, gold;
        for (const auto& e : corpus.examples) {
            auto p = predict_model(model, corpus.schema, e);
            predictions.push_back(p);
            gold.push_back(e.gold);
            std::printf("%s %s %s\n", e.id.c_str(), std::string(to_string(p)).c_str(),
                        std::string(to_string(e.gold)).c_str());
        }
        if (!predictions.empty())
            std::printf("error rate: %.4f (%zu examples)\n", error_rate(predictions, gold),
                        predictions.size());
        return 0;
    }
    if (experiment->parsed()) {
        ExperimentConfig config;
        config.set_id = exp_set;
        config.learner = learner_kind_from_string(exp_learner);
        config.seed = exp_seed;
        config.k = exp_k;
        config.stratified = exp_stratified;
        config.feature_sets = exp_features;

        auto corpus = load_corpus(exp_in);
        ReportTable table;
        if (!exp_train.empty()) {
            auto training = load_corpus(exp_train);
            table = run_experiment(config, corpus, &training);
        } else {
            table = run_experiment(config, corpus, nullptr);
        }
        if (exp_format != "text" && exp_format != "csv")
            throw UsageError("unknown format '" + exp_format + "' (expected text or csv)");
        std::fputs(render_report(table, exp_format == "csv" ? ReportFormat::Csv
                                                            : ReportFormat::Text)
                       .c_str(),
                   stdout);
        return 0;
    }
    if (render_cmd->parsed()) {
        std::string text = render_model(load_model(render_model_file));
        if (render_out.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            std::ofstream out(render_out);
            if (!out) throw IoError("cannot write '" + render_out + "'");
            out << text;
        }
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
