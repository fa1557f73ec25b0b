#pragma once

// Flat `key = value` run configuration. Every key can be overridden by a
// command-line flag of the same name; relative paths resolve against the
// config file's directory.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sentiment/corpus.hpp"
#include "sentiment/lexicon.hpp"
#include "sentiment/selection.hpp"
#include "sentiment/svm.hpp"

namespace sentiment {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RunConfig {
  std::string train_corpus;
  std::string test_corpus;
  std::string scored_lexicon;
  std::string polar_lexicon_a;
  std::string polar_lexicon_b;
  std::string negation_list;
  std::string intensifier_list;
  std::string diminisher_list;
  std::string modal_list;
  std::string contrast_list;
  std::string positive_emoticon_list;
  std::string negative_emoticon_list;
  ClassificationLevel level = ClassificationLevel::TwoWay;
  double cost = 1.0;
  double tolerance = 1e-3;
  int max_epochs = 1000;
  uint64_t seed = 0;
  SelectionMode select_mode = SelectionMode::Greedy;
  std::string select_on = "dev";  // "dev" | "test"
  double dev_fraction = 0.10;
  std::string output_dir = "out";

  TrainConfig train_config() const {
    TrainConfig cfg;
    cfg.C = cost;
    cfg.tolerance = tolerance;
    cfg.max_epochs = max_epochs;
    cfg.seed = seed;
    return cfg;
  }
};

inline std::map<std::string, std::string> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected `key = value`");
    std::string key = detail::trim(t.substr(0, eq));
    std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

// Build a RunConfig from file values plus overrides (overrides win).
// base_dir anchors relative paths from the config file.
inline RunConfig make_run_config(
    const std::map<std::string, std::string>& file_kv,
    const std::map<std::string, std::string>& overrides,
    const std::string& base_dir = ".") {
  std::map<std::string, std::string> kv = file_kv;
  for (const auto& [k, v] : overrides) kv[k] = v;

  RunConfig cfg;
  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_path = [&](const char* key, std::string& out) {
    if (auto v = take(key)) {
      // Command-line overrides resolve against the cwd, config values
      // against the config directory.
      std::filesystem::path p(*v);
      if (p.is_relative() && !overrides.count(key))
        p = std::filesystem::path(base_dir) / p;
      out = p.string();
    }
  };
  auto take_double = [&](const char* key, double& out) {
    if (auto v = take(key)) {
      try {
        out = std::stod(*v);
      } catch (const std::exception&) {
        throw ConfigError(std::string("bad number for ") + key + ": " + *v);
      }
    }
  };

  take_path("train_corpus", cfg.train_corpus);
  take_path("test_corpus", cfg.test_corpus);
  take_path("scored_lexicon", cfg.scored_lexicon);
  take_path("polar_lexicon_a", cfg.polar_lexicon_a);
  take_path("polar_lexicon_b", cfg.polar_lexicon_b);
  take_path("negation_list", cfg.negation_list);
  take_path("intensifier_list", cfg.intensifier_list);
  take_path("diminisher_list", cfg.diminisher_list);
  take_path("modal_list", cfg.modal_list);
  take_path("contrast_list", cfg.contrast_list);
  take_path("positive_emoticon_list", cfg.positive_emoticon_list);
  take_path("negative_emoticon_list", cfg.negative_emoticon_list);
  take_path("output_dir", cfg.output_dir);

  if (auto v = take("level")) {
    std::optional<ClassificationLevel> l = parse_level(*v);
    if (!l) throw ConfigError("bad level: " + *v);
    cfg.level = *l;
  }
  take_double("cost", cfg.cost);
  take_double("tolerance", cfg.tolerance);
  if (auto v = take("max_epochs")) cfg.max_epochs = std::stoi(*v);
  if (auto v = take("seed")) cfg.seed = std::stoull(*v);
  if (auto v = take("select_mode")) {
    if (*v == "single") cfg.select_mode = SelectionMode::SinglePass;
    else if (*v == "batch") cfg.select_mode = SelectionMode::Batch;
    else if (*v == "greedy") cfg.select_mode = SelectionMode::Greedy;
    else throw ConfigError("bad select_mode: " + *v);
  }
  if (auto v = take("select_on")) {
    if (*v != "dev" && *v != "test") throw ConfigError("bad select_on: " + *v);
    cfg.select_on = *v;
  }
  take_double("dev_fraction", cfg.dev_fraction);

  if (!kv.empty()) throw ConfigError("unknown config key: " + kv.begin()->first);
  if (cfg.cost <= 0) throw ConfigError("cost must be positive");
  if (cfg.tolerance <= 0) throw ConfigError("tolerance must be positive");
  if (cfg.max_epochs <= 0) throw ConfigError("max_epochs must be positive");
  if (!(cfg.dev_fraction > 0 && cfg.dev_fraction < 1))
    throw ConfigError("dev_fraction must be in (0,1)");
  return cfg;
}

inline void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string("missing config key: ") + what);
  if (!std::filesystem::exists(path))
    throw ConfigError(std::string(what) + " not found: " + path);
}

inline LexiconBundle load_bundle(const RunConfig& cfg) {
  require_file(cfg.scored_lexicon, "scored_lexicon");
  require_file(cfg.polar_lexicon_a, "polar_lexicon_a");
  require_file(cfg.polar_lexicon_b, "polar_lexicon_b");
  require_file(cfg.negation_list, "negation_list");
  require_file(cfg.intensifier_list, "intensifier_list");
  require_file(cfg.diminisher_list, "diminisher_list");
  require_file(cfg.modal_list, "modal_list");
  require_file(cfg.contrast_list, "contrast_list");
  require_file(cfg.positive_emoticon_list, "positive_emoticon_list");
  require_file(cfg.negative_emoticon_list, "negative_emoticon_list");

  LexiconBundle bundle;
  bundle.scored = load_scored_lexicon(cfg.scored_lexicon);
  bundle.polar_a = load_polar_lexicon(cfg.polar_lexicon_a, "polar_a");
  bundle.polar_b = load_polar_lexicon(cfg.polar_lexicon_b, "polar_b");
  bundle.markers[MarkerKind::Negation] =
      load_marker_list(cfg.negation_list, MarkerKind::Negation);
  bundle.markers[MarkerKind::Intensifier] =
      load_marker_list(cfg.intensifier_list, MarkerKind::Intensifier);
  bundle.markers[MarkerKind::Diminisher] =
      load_marker_list(cfg.diminisher_list, MarkerKind::Diminisher);
  bundle.markers[MarkerKind::Modal] =
      load_marker_list(cfg.modal_list, MarkerKind::Modal);
  bundle.markers[MarkerKind::Contrast] =
      load_marker_list(cfg.contrast_list, MarkerKind::Contrast);
  bundle.markers[MarkerKind::PositiveEmoticon] =
      load_marker_list(cfg.positive_emoticon_list, MarkerKind::PositiveEmoticon);
  bundle.markers[MarkerKind::NegativeEmoticon] =
      load_marker_list(cfg.negative_emoticon_list, MarkerKind::NegativeEmoticon);
  validate_bundle(bundle);
  return bundle;
}

}  // namespace sentiment
