// Command-line workbench: train, predict, evaluate, ablate, report.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sentiment/config.hpp"
#include "sentiment/corpus.hpp"
#include "sentiment/eval.hpp"
#include "sentiment/features.hpp"
#include "sentiment/io.hpp"
#include "sentiment/lexicon.hpp"
#include "sentiment/selection.hpp"
#include "sentiment/svm.hpp"
#include "sentiment/text.hpp"

namespace {

using namespace sentiment;

constexpr int kExitOk = 0;
constexpr int kExitBelowThreshold = 1;
constexpr int kExitError = 2;

const std::vector<std::string> kConfigKeys = {
    "train_corpus",      "test_corpus",
    "scored_lexicon",    "polar_lexicon_a",
    "polar_lexicon_b",   "negation_list",
    "intensifier_list",  "diminisher_list",
    "modal_list",        "contrast_list",
    "positive_emoticon_list", "negative_emoticon_list",
    "level",             "cost",
    "tolerance",         "max_epochs",
    "seed",              "select_mode",
    "select_on",         "dev_fraction",
    "output_dir",
};

struct CommonOpts {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_config_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration file");
  for (const std::string& key : kConfigKeys) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&opts, key](const std::string& v) { opts.overrides[key] = v; },
        "Override config key " + key);
  }
}

RunConfig resolve_config(const CommonOpts& opts) {
  std::map<std::string, std::string> file_kv;
  std::string base_dir = ".";
  if (!opts.config_path.empty()) {
    file_kv = parse_config_file(opts.config_path);
    std::filesystem::path parent =
        std::filesystem::path(opts.config_path).parent_path();
    if (!parent.empty()) base_dir = parent.string();
  }
  return make_run_config(file_kv, opts.overrides, base_dir);
}

int fail(const char* stage, const std::string& what) {
  std::cerr << "error[" << stage << "]: " << what << "\n";
  return kExitError;
}

std::string class_counts_text(const Dataset& d) {
  std::ostringstream out;
  std::map<Label, long> counts = d.class_counts();
  bool first = true;
  for (const auto& [label, n] : counts) {
    if (!first) out << ", ";
    out << to_string(label) << ": " << n;
    first = false;
  }
  out << " (total " << d.size() << ")";
  return out.str();
}

std::string mask_names(const FeatureMask& mask) {
  std::string s;
  for (FeatureId f : mask.features()) {
    if (!s.empty()) s += ",";
    s += feature_name(f);
  }
  return s;
}

std::string feature_dump_csv(const Dataset& d, const LexiconBundle& bundle) {
  std::ostringstream out;
  out << "tweet_id";
  for (const char* name : kFeatureNames) out << ',' << name;
  out << '\n';
  std::vector<std::string> emoticons = bundle.emoticon_strings();
  for (const Tweet& t : d.tweets) {
    FeatureVector v = extract(tokenize(normalize(t.text), emoticons, t.id), bundle);
    out << t.id;
    for (int i = 0; i < kFeatureCount; ++i) {
      double x = v.values[i];
      out << ',';
      if (x == static_cast<long>(x)) out << static_cast<long>(x);
      else out << fmt_double(x);
    }
    out << '\n';
  }
  return out.str();
}

struct Predictions {
  std::vector<Label> gold;
  std::vector<Label> pred;
};

Predictions predict_all(const MulticlassModel& model, const Dataset& d,
                        const LexiconBundle& bundle) {
  Predictions p;
  std::vector<std::string> emoticons = bundle.emoticon_strings();
  for (const Tweet& t : d.tweets) {
    if (t.label) p.gold.push_back(*t.label);
    p.pred.push_back(
        predict(model, tokenize(normalize(t.text), emoticons, t.id), bundle));
  }
  return p;
}

std::string report_text(const EvalReport& r) {
  std::ostringstream out;
  out << "n " << r.n << '\n';
  out << "accuracy " << fmt_double(r.accuracy) << '\n';
  out << "macro_f1 " << fmt_double(r.macro_f1) << '\n';
  out << "weighted_f1 " << fmt_double(r.weighted_f1) << '\n';
  out << "\nclass precision recall f1\n";
  for (size_t i = 0; i < r.labels.size(); ++i) {
    out << to_string(r.labels[i]) << ' ' << fmt_double(r.per_class[i].precision)
        << ' ' << fmt_double(r.per_class[i].recall) << ' '
        << fmt_double(r.per_class[i].f1) << '\n';
  }
  out << "\nchi_square (Pearson independence test, gold vs predicted labels)\n";
  out << "  statistic " << fmt_double(r.chi_square.statistic) << '\n';
  out << "  df " << r.chi_square.df << '\n';
  out << "  p_value " << fmt_double(r.chi_square.p_value) << '\n';
  out << "  significant_at_0.05 " << (r.chi_square.significant ? "yes" : "no")
      << '\n';
  if (r.chi_square.degenerate)
    out << "  note zero rows/columns dropped before testing\n";
  return out.str();
}

std::string report_kv(const EvalReport& r) {
  std::ostringstream out;
  out << "n = " << r.n << '\n';
  out << "accuracy = " << fmt_double(r.accuracy) << '\n';
  out << "macro_f1 = " << fmt_double(r.macro_f1) << '\n';
  out << "weighted_f1 = " << fmt_double(r.weighted_f1) << '\n';
  for (size_t i = 0; i < r.labels.size(); ++i) {
    const char* name = to_string(r.labels[i]);
    out << "precision_" << name << " = "
        << fmt_double(r.per_class[i].precision) << '\n';
    out << "recall_" << name << " = " << fmt_double(r.per_class[i].recall)
        << '\n';
    out << "f1_" << name << " = " << fmt_double(r.per_class[i].f1) << '\n';
  }
  out << "chi_square_statistic = " << fmt_double(r.chi_square.statistic) << '\n';
  out << "chi_square_df = " << r.chi_square.df << '\n';
  out << "chi_square_p = " << fmt_double(r.chi_square.p_value) << '\n';
  out << "chi_square_significant = " << (r.chi_square.significant ? 1 : 0)
      << '\n';
  out << "chi_square_degenerate = " << (r.chi_square.degenerate ? 1 : 0)
      << '\n';
  return out.str();
}

int cmd_train(const CommonOpts& opts) {
  RunConfig cfg;
  try {
    cfg = resolve_config(opts);
    require_file(cfg.train_corpus, "train_corpus");
  } catch (const std::exception& e) {
    return fail("config", e.what());
  }

  LexiconBundle bundle;
  Dataset train;
  try {
    bundle = load_bundle(cfg);
    train = filter_by_level(load_corpus(cfg.train_corpus), cfg.level);
  } catch (const std::exception& e) {
    return fail("load", e.what());
  }

  try {
    FeatureMask mask = mask_for_level(cfg.level);
    std::vector<TrainStats> stats;
    MulticlassModel model =
        train_multiclass(train, bundle, cfg.level, mask, cfg.train_config(),
                         &stats);
    std::filesystem::create_directories(cfg.output_dir);
    std::string model_path = cfg.output_dir + "/model.txt";
    save_model(model, model_path);

    std::ostringstream summary;
    summary << "level " << to_string(cfg.level) << '\n';
    summary << "classes " << class_counts_text(train) << '\n';
    summary << "features " << mask.count() << ": " << mask_names(mask) << '\n';
    for (size_t i = 0; i < model.pairwise.size(); ++i) {
      summary << "pair " << to_string(model.pairwise[i].positive_label) << "-"
              << to_string(model.pairwise[i].negative_label) << " epochs "
              << stats[i].epochs << '\n';
    }
    atomic_write_file(cfg.output_dir + "/train_summary.txt", summary.str());
    std::cout << "model written to " << model_path << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return fail("train", e.what());
  }
}

int cmd_evaluate(const CommonOpts& opts, const std::string& model_flag,
                 const std::string& dump_features,
                 std::optional<double> assert_f1) {
  RunConfig cfg;
  try {
    cfg = resolve_config(opts);
  } catch (const std::exception& e) {
    return fail("config", e.what());
  }

  std::string model_path =
      model_flag.empty() ? cfg.output_dir + "/model.txt" : model_flag;

  MulticlassModel model;
  LexiconBundle bundle;
  Dataset test;
  try {
    model = load_model(model_path);
    bundle = load_bundle(cfg);
    require_file(cfg.test_corpus, "test_corpus");
    test = load_corpus(cfg.test_corpus);
  } catch (const std::exception& e) {
    return fail("load", e.what());
  }

  try {
    for (const Tweet& t : test.tweets) {
      if (t.label && !level_contains(model.level, *t.label))
        throw SvmError(SvmError::Kind::LevelMismatch,
                       "test label outside model level: " +
                           std::string(to_string(*t.label)));
    }
    Predictions p = predict_all(model, test, bundle);
    if (p.gold.size() != p.pred.size())
      throw SvmError(SvmError::Kind::LevelMismatch,
                     "test corpus must be fully labeled for evaluation");
    EvalReport report = evaluate(confusion(p.gold, p.pred, model.level));

    std::filesystem::create_directories(cfg.output_dir);
    atomic_write_file(cfg.output_dir + "/eval_report.txt", report_text(report));
    atomic_write_file(cfg.output_dir + "/eval_report.kv", report_kv(report));
    if (!dump_features.empty())
      atomic_write_file(dump_features, feature_dump_csv(test, bundle));

    std::cout << "macro_f1 " << fmt_double(report.macro_f1) << "\n";
    if (assert_f1 && report.macro_f1 < *assert_f1) {
      std::cerr << "macro_f1 " << fmt_double(report.macro_f1)
                << " below threshold " << fmt_double(*assert_f1) << "\n";
      return kExitBelowThreshold;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return fail("evaluate", e.what());
  }
}

int cmd_ablate(const CommonOpts& opts) {
  RunConfig cfg;
  try {
    cfg = resolve_config(opts);
    require_file(cfg.train_corpus, "train_corpus");
  } catch (const std::exception& e) {
    return fail("config", e.what());
  }

  LexiconBundle bundle;
  Dataset train_full, sel_train, sel_eval;
  bool paper_protocol = cfg.select_on == "test";
  try {
    bundle = load_bundle(cfg);
    train_full = filter_by_level(load_corpus(cfg.train_corpus), cfg.level);
    if (paper_protocol) {
      require_file(cfg.test_corpus, "test_corpus");
      sel_train = train_full;
      sel_eval = filter_by_level(load_corpus(cfg.test_corpus), cfg.level);
    } else {
      auto [tr, dev] = stratified_split(train_full, cfg.dev_fraction, cfg.seed);
      sel_train = std::move(tr);
      sel_eval = std::move(dev);
    }
  } catch (const std::exception& e) {
    return fail("load", e.what());
  }

  try {
    FeatureMask mask = mask_for_level(cfg.level);
    std::vector<FeatureGroup> groups = default_groups(mask);
    TrainConfig tc = cfg.train_config();

    AblationTrace trace;
    switch (cfg.select_mode) {
      case SelectionMode::SinglePass: {
        trace.level = cfg.level;
        trace.mode = SelectionMode::SinglePass;
        trace.rounds.push_back(ablation_round(sel_train, sel_eval, bundle,
                                              cfg.level, mask, groups, tc));
        trace.final_mask = mask;
        trace.final_metric = trace.rounds.front().baseline.metric;
        break;
      }
      case SelectionMode::Batch:
        trace = batch_removal(sel_train, sel_eval, bundle, cfg.level, groups,
                              mask, tc);
        break;
      case SelectionMode::Greedy:
        trace = greedy_backward(sel_train, sel_eval, bundle, cfg.level, groups,
                                mask, tc);
        break;
    }

    std::filesystem::create_directories(cfg.output_dir);
    atomic_write_file(cfg.output_dir + "/ablation.csv",
                      ablation_csv(trace, paper_protocol));
    atomic_write_file(cfg.output_dir + "/ablation_plot.tsv",
                      ablation_plot_data(trace));
    MulticlassModel final_model =
        train_multiclass(train_full, bundle, cfg.level, trace.final_mask, tc);
    save_model(final_model, cfg.output_dir + "/model_final.txt");
    std::cout << "final_mask " << mask_names(trace.final_mask) << "\n";
    std::cout << "final_metric " << fmt_double(trace.final_metric) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return fail("ablate", e.what());
  }
}

int cmd_predict_cfg(const CommonOpts& opts, const std::string& model_flag,
                    const std::string& input_path) {
  RunConfig cfg;
  try {
    cfg = resolve_config(opts);
  } catch (const std::exception& e) {
    return fail("config", e.what());
  }
  std::string model_path =
      model_flag.empty() ? cfg.output_dir + "/model.txt" : model_flag;

  MulticlassModel model;
  LexiconBundle bundle;
  Dataset input;
  try {
    model = load_model(model_path);
    bundle = load_bundle(cfg);
    input = load_corpus(input_path, /*expect_labels=*/false);
  } catch (const CorpusError& e) {
    if (e.kind == CorpusError::Kind::EmptyCorpus) return kExitOk;
    return fail("load", e.what());
  } catch (const std::exception& e) {
    return fail("load", e.what());
  }

  try {
    std::vector<std::string> emoticons = bundle.emoticon_strings();
    std::ostringstream out;
    for (const Tweet& t : input.tweets) {
      Label l =
          predict(model, tokenize(normalize(t.text), emoticons, t.id), bundle);
      out << t.id << '\t' << to_string(l) << '\n';
    }
    std::cout << out.str();
    return kExitOk;
  } catch (const std::exception& e) {
    return fail("predict", e.what());
  }
}

int cmd_report(const std::string& input_path) {
  std::string content;
  try {
    content = read_file(input_path);
  } catch (const std::exception& e) {
    return fail("report", e.what());
  }
  // Render a CSV as an aligned text table.
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(content);
  std::string line;
  size_t ncols = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      cells.push_back(line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    ncols = std::max(ncols, cells.size());
    rows.push_back(std::move(cells));
  }
  std::vector<size_t> width(ncols, 0);
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      std::cout << row[c];
      if (c + 1 < row.size())
        std::cout << std::string(width[c] - row[c].size() + 2, ' ');
    }
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic tweet sentiment workbench"};
  app.require_subcommand(1);

  CommonOpts train_opts;
  CLI::App* train = app.add_subcommand("train", "Train a model");
  add_config_options(train, train_opts);

  CommonOpts eval_opts;
  std::string eval_model, dump_features;
  double assert_f1_value = -1;
  bool assert_f1_set = false;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a model");
  add_config_options(evaluate, eval_opts);
  evaluate->add_option("--model", eval_model, "Model file (default: <output_dir>/model.txt)");
  evaluate->add_option("--dump-features", dump_features,
                       "Write the test set's feature vectors to this CSV");
  evaluate
      ->add_option("--assert-f1", assert_f1_value,
                   "Exit 1 if macro-F1 falls below this threshold")
      ->each([&assert_f1_set](const std::string&) { assert_f1_set = true; });

  CommonOpts ablate_opts;
  CLI::App* ablate = app.add_subcommand("ablate", "Backward feature elimination");
  add_config_options(ablate, ablate_opts);

  CommonOpts predict_opts;
  std::string predict_model, predict_input;
  CLI::App* predict = app.add_subcommand("predict", "Label a corpus");
  add_config_options(predict, predict_opts);
  predict->add_option("--model", predict_model, "Model file (default: <output_dir>/model.txt)");
  predict->add_option("--input", predict_input, "Input corpus TSV (label field may be `-`)")
      ->required();

  std::string report_input;
  CLI::App* report = app.add_subcommand("report", "Render a CSV as a text table");
  report->add_option("--input", report_input, "CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) return cmd_train(train_opts);
  if (evaluate->parsed())
    return cmd_evaluate(eval_opts, eval_model, dump_features,
                        assert_f1_set ? std::optional<double>(assert_f1_value)
                                      : std::nullopt);
  if (ablate->parsed()) return cmd_ablate(ablate_opts);
  if (predict->parsed())
    return cmd_predict_cfg(predict_opts, predict_model, predict_input);
  if (report->parsed()) return cmd_report(report_input);
  return kExitError;
}
