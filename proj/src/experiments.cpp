#include "cuephrase/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <sstream>

#include "cuephrase/baselines.hpp"
#include "cuephrase/feature_sets.hpp"

namespace cuephrase {

namespace {

const std::vector<std::string> kProsodicFeatures = {"P-L", "P-P", "I-L", "I-P", "I-C", "A", "A*"};
const std::vector<std::string> kTextualFeatures = {"C-P", "C-S", "O-P",
                                                   "O-P*", "O-S", "O-S*", "POS"};

bool in(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

bool prosodic_only(const FeatureSet& fs) {
    return std::all_of(fs.members.begin(), fs.members.end(), [](const std::string& m) {
        return m == kTokenFeature || in(kProsodicFeatures, m);
    });
}

bool textual_only(const FeatureSet& fs) {
    return std::all_of(fs.members.begin(), fs.members.end(), [](const std::string& m) {
        return m == kTokenFeature || in(kTextualFeatures, m);
    });
}

std::vector<std::string> masked_members(const FeatureSet& fs,
                                        const std::vector<std::string>& mask) {
    std::vector<std::string> members;
    for (const auto& m : fs.members)
        if (!in(mask, m)) members.push_back(m);
    return members;
}

Learner make_learner(LearnerKind kind, const ExperimentConfig& config) {
    switch (kind) {
        case LearnerKind::Tree:
            return [opts = config.tree_options](const Dataset& train) -> Predictor {
                auto tree = std::make_shared<DecisionTree>(learn_tree(train, opts));
                return [tree](const FeatureSchema& schema, const Example& e) {
                    return predict_tree(*tree, schema, e);
                };
            };
        case LearnerKind::Rules:
            return [opts = config.rule_options](const Dataset& train) -> Predictor {
                auto rs = std::make_shared<RuleSet>(induce_rules(train, opts));
                return [rs](const FeatureSchema& schema, const Example& e) {
                    return predict_rules(*rs, schema, e);
                };
            };
        case LearnerKind::BaselineProsodic:
            return [](const Dataset&) -> Predictor {
                return [](const FeatureSchema& schema, const Example& e) {
                    return hl93_prosodic(schema, e);
                };
            };
        case LearnerKind::BaselineTextual:
            return [](const Dataset&) -> Predictor {
                return [](const FeatureSchema& schema, const Example& e) {
                    return hl93_textual(schema, e);
                };
            };
        case LearnerKind::BaselineDefault:
            return [](const Dataset& train) -> Predictor {
                DefaultClassModel model = fit_default_class(train);
                return [model](const FeatureSchema&, const Example& e) {
                    return predict(model, e);
                };
            };
    }
    throw UsageError("unknown learner kind");
}

double holdout_error(const Predictor& model, const Dataset& test) {
    std::vector<Classification> predictions;
    std::vector<Classification> gold;
    predictions.reserve(test.size());
    gold.reserve(test.size());
    for (const auto& e : test.examples) {
        predictions.push_back(model(test.schema, e));
        gold.push_back(e.gold);
    }
    return error_rate(predictions, gold);
}

std::vector<std::string> default_feature_sets(int set_id,
                                              const std::vector<std::string>& mask) {
    std::vector<std::string> names;
    for (const auto& fs : default_registry().all()) {
        switch (set_id) {
            case 1:
                if (!fs.tokenized && prosodic_only(fs) && !masked_members(fs, mask).empty())
                    names.push_back(fs.name);
                break;
            case 2:
                if (!fs.tokenized) names.push_back(fs.name);
                break;
            case 3:
                if (fs.tokenized) names.push_back(fs.name);
                break;
            case 4: names.push_back(fs.name); break;
            default: break;
        }
    }
    return names;
}

}  // namespace

LearnerKind learner_kind_from_string(std::string_view s) {
    if (s == "tree") return LearnerKind::Tree;
    if (s == "rules") return LearnerKind::Rules;
    if (s == "baseline-prosodic") return LearnerKind::BaselineProsodic;
    if (s == "baseline-textual") return LearnerKind::BaselineTextual;
    if (s == "baseline-default") return LearnerKind::BaselineDefault;
    throw UsageError("unknown learner '" + std::string(s) +
                     "' (expected tree, rules, baseline-prosodic, baseline-textual or "
                     "baseline-default)");
}

std::string_view to_string(LearnerKind k) {
    switch (k) {
        case LearnerKind::Tree: return "tree";
        case LearnerKind::Rules: return "rules";
        case LearnerKind::BaselineProsodic: return "baseline-prosodic";
        case LearnerKind::BaselineTextual: return "baseline-textual";
        case LearnerKind::BaselineDefault: return "baseline-default";
    }
    return "tree";
}

ReportTable run_experiment(const ExperimentConfig& config, const Dataset& corpus,
                           const Dataset* train_corpus) {
    if (config.set_id < 1 || config.set_id > 4)
        throw UsageError("experiment set must be 1, 2, 3 or 4");
    if (config.k < 2) throw UsageError("experiment needs k >= 2 folds");
    if (config.set_id == 1 && train_corpus == nullptr)
        throw UsageError("experiment set 1 needs a separate training corpus");

    ExperimentConfig cfg = config;
    if (cfg.set_id == 1 && cfg.feature_mask.empty()) cfg.feature_mask = {"P-L", "I-L"};
    if (cfg.set_id == 4) {
        cfg.tree_options.classes = ClassMode::ThreeClass;
        cfg.rule_options.classes = ClassMode::ThreeClass;
    }

    std::vector<std::string> set_names =
        cfg.feature_sets.empty() ? default_feature_sets(cfg.set_id, cfg.feature_mask)
                                 : cfg.feature_sets;

    std::vector<const FeatureSet*> sets;
    for (const auto& name : set_names) {
        const FeatureSet& fs = default_registry().resolve(name);
        if (cfg.set_id == 1) {
            if (fs.tokenized || !prosodic_only(fs))
                throw UsageError("experiment set 1 admits only non-tokenized prosodic feature "
                                 "sets; '" + fs.name + "' is not one");
        } else if (cfg.set_id == 2) {
            if (fs.tokenized)
                throw UsageError("experiment set 2 uses non-tokenized feature sets; '" +
                                 fs.name + "' is tokenized");
        } else if (cfg.set_id == 3) {
            if (!fs.tokenized)
                throw UsageError("experiment set 3 uses tokenized feature sets; '" + fs.name +
                                 "' is not");
        }
        if (masked_members(fs, cfg.feature_mask).empty())
            throw UsageError("feature set '" + fs.name +
                             "' has no members left after masking");
        sets.push_back(&fs);
    }

    // Test subsets (columns).
    std::vector<std::pair<std::string, Dataset>> columns;
    if (cfg.set_id == 4) {
        columns.emplace_back("all cue phrases", corpus);
    } else {
        Dataset classifiable = filter_classifiable(corpus);
        columns.emplace_back("classifiable cue phrases", classifiable);
        columns.emplace_back("classifiable non-conjuncts", filter_non_conjuncts(classifiable));
    }

    ReportTable table;
    {
        std::ostringstream title;
        title << "Experiment Set " << cfg.set_id << " (" << to_string(cfg.learner);
        if (cfg.set_id == 1)
            title << ", train-and-test";
        else
            title << ", " << cfg.k << "-fold cross-validation";
        title << ", seed " << cfg.seed << ")";
        table.title = title.str();
    }
    for (const auto& [name, data] : columns)
        table.columns.push_back(name + " (N=" + std::to_string(data.size()) + ")");

    const bool baseline_learner = cfg.learner != LearnerKind::Tree &&
                                  cfg.learner != LearnerKind::Rules;
    Learner learner = make_learner(cfg.learner, cfg);

    auto evaluate = [&](const Dataset& column_data, const FeatureSet* fs) -> ConfidenceInterval {
        // Baselines read fixed features, so they see the unprojected subset.
        Dataset data = (baseline_learner || fs == nullptr)
                           ? column_data
                           : project(column_data, masked_members(*fs, cfg.feature_mask));
        if (cfg.set_id == 1) {
            Dataset train = (baseline_learner || fs == nullptr)
                                ? *train_corpus
                                : project(*train_corpus, masked_members(*fs, cfg.feature_mask));
            Predictor model = learner(train);
            return holdout_interval(holdout_error(model, data), static_cast<int>(data.size()));
        }
        return cv_interval(cross_validate(learner, data, cfg.k, cfg.seed, cfg.stratified));
    };

    if (baseline_learner) {
        ReportRow row;
        row.label = std::string(to_string(cfg.learner));
        row.learner = row.label;
        for (const auto& [name, data] : columns) row.cells.push_back({evaluate(data, nullptr)});
        table.rows.push_back(std::move(row));
    } else {
        for (const FeatureSet* fs : sets) {
            ReportRow row;
            row.label = fs->name;
            row.learner = std::string(to_string(cfg.learner));
            for (const auto& [name, data] : columns) row.cells.push_back({evaluate(data, fs)});
            table.rows.push_back(std::move(row));
        }
    }

    // Reference rows: the hand-derived models evaluated holdout on each
    // subset. Flags compare each learned row against the reference matching
    // its feature type (prosodic sets and mixed sets against the prosodic
    // model, textual sets against the textual one).
    ReportRow manual_prosodic{"manual prosodic", "manual prosodic", {}, true};
    ReportRow manual_textual{"manual textual", "manual textual", {}, true};
    for (const auto& [name, data] : columns) {
        Predictor prosodic = [](const FeatureSchema& s, const Example& e) {
            return hl93_prosodic(s, e);
        };
        Predictor textual = [](const FeatureSchema& s, const Example& e) {
            return hl93_textual(s, e);
        };
        manual_prosodic.cells.push_back({holdout_interval(holdout_error(prosodic, data),
                                                          static_cast<int>(data.size()))});
        manual_textual.cells.push_back({holdout_interval(holdout_error(textual, data),
                                                         static_cast<int>(data.size()))});
    }

    if (!baseline_learner) {
        for (std::size_t r = 0; r < sets.size(); ++r) {
            const ReportRow& ref =
                textual_only(*sets[r]) ? manual_textual : manual_prosodic;
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                auto& cell = table.rows[r].cells[c];
                if (significantly_lower(cell.ci, ref.cells[c].ci))
                    cell.flag = 1;
                else if (significantly_lower(ref.cells[c].ci, cell.ci))
                    cell.flag = -1;
            }
        }
    }

    table.rows.push_back(std::move(manual_prosodic));
    table.rows.push_back(std::move(manual_textual));
    return table;
}

namespace {

std::string format_cell(const ReportCell& cell) {
    if (!cell.present) return "-";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f \xc2\xb1 %.1f", cell.ci.point * 100.0,
                  cell.ci.margin * 100.0);
    std::string text = buf;
    if (cell.flag > 0) text += " *";
    if (cell.flag < 0) text = "(" + text + ")";
    return text;
}

// Column width bookkeeping treats the two-byte "±" as one glyph.
std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xc0) != 0x80) ++w;
    return w;
}

std::string render_text(const ReportTable& table) {
    std::ostringstream out;
    out << table.title << '\n';

    std::size_t label_width = std::string("feature set").size();
    for (const auto& row : table.rows) label_width = std::max(label_width, row.label.size());

    std::vector<std::size_t> widths;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::size_t w = display_width(table.columns[c]);
        for (const auto& row : table.rows)
            w = std::max(w, display_width(format_cell(row.cells[c])));
        widths.push_back(w);
    }

    auto pad = [](const std::string& s, std::size_t width) {
        return s + std::string(width - std::min(width, display_width(s)), ' ');
    };

    out << pad("feature set", label_width + 2);
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << pad(table.columns[c], widths[c] + 2);
    out << '\n';

    bool reference_break = false;
    for (const auto& row : table.rows) {
        if (row.reference && !reference_break) {
            out << std::string(label_width + 2, '-') << '\n';
            reference_break = true;
        }
        out << pad(row.label, label_width + 2);
        for (std::size_t c = 0; c < row.cells.size(); ++c)
            out << pad(format_cell(row.cells[c]), widths[c] + 2);
        out << '\n';
    }
    return out.str();
}

std::string render_csv(const ReportTable& table) {
    std::ostringstream out;
    out << "row,learner,subset,error_pct,margin_pct,lower_pct,upper_pct,flag,method,"
           "n_or_folds\n";
    char buf[160];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const auto& cell = row.cells[c];
            if (!cell.present) continue;
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f", cell.ci.point * 100.0,
                          cell.ci.margin * 100.0, cell.ci.lower() * 100.0,
                          cell.ci.upper() * 100.0);
            out << row.label << ',' << row.learner << ',' << table.columns[c] << ',' << buf
                << ',' << cell.flag << ','
                << (cell.ci.method == ConfidenceInterval::Method::CvT ? "cv-t" : "holdout-normal")
                << ',' << cell.ci.n_or_folds << '\n';
        }
    }
    return out.str();
}

}  // namespace

std::string render_report(const ReportTable& table, ReportFormat format) {
    return format == ReportFormat::Text ? render_text(table) : render_csv(table);
}

}  // namespace cuephrase
