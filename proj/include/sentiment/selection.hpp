#pragma once

// Backward feature elimination over feature groups: single-pass ablation,
// simultaneous batch removal, and iterative greedy removal. The metric is
// macro-F1 on the supplied evaluation split; every candidate retraining in a
// round reuses the same seed so deltas reflect masks, not optimizer noise.

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sentiment/corpus.hpp"
#include "sentiment/eval.hpp"
#include "sentiment/features.hpp"
#include "sentiment/lexicon.hpp"
#include "sentiment/svm.hpp"

namespace sentiment {

struct SelectionError : std::runtime_error {
  enum class Kind { EmptyMask, InvalidGroups };
  Kind kind;
  SelectionError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

struct FeatureGroup {
  std::string name;
  std::vector<FeatureId> members;

  bool operator==(const FeatureGroup&) const = default;
};

// Default grouping: emoticon pair and word-count pair, everything else a
// singleton; restricted to the active mask.
inline std::vector<FeatureGroup> default_groups(const FeatureMask& mask) {
  std::vector<FeatureGroup> groups;
  auto paired = [&](FeatureId a, FeatureId b, const std::string& name) {
    if (mask.contains(a) && mask.contains(b)) groups.push_back({name, {a, b}});
    else if (mask.contains(a)) groups.push_back({feature_name(a), {a}});
    else if (mask.contains(b)) groups.push_back({feature_name(b), {b}});
  };
  paired(FeatureId::HasPositiveEmoticon, FeatureId::HasNegativeEmoticon,
         "emoticons");
  paired(FeatureId::PositiveWordCount, FeatureId::NegativeWordCount,
         "wordCounts");
  for (FeatureId f : mask.features()) {
    if (f == FeatureId::HasPositiveEmoticon ||
        f == FeatureId::HasNegativeEmoticon ||
        f == FeatureId::PositiveWordCount ||
        f == FeatureId::NegativeWordCount)
      continue;
    groups.push_back({feature_name(f), {f}});
  }
  std::sort(groups.begin(), groups.end(),
            [](const FeatureGroup& a, const FeatureGroup& b) {
              return static_cast<int>(a.members.front()) <
                     static_cast<int>(b.members.front());
            });
  return groups;
}

// Groups must be non-empty, disjoint, and cover the mask exactly.
inline void validate_groups(const FeatureMask& mask,
                            const std::vector<FeatureGroup>& groups) {
  FeatureMask seen;
  for (const FeatureGroup& g : groups) {
    if (g.members.empty())
      throw SelectionError(SelectionError::Kind::InvalidGroups,
                           "empty group: " + g.name);
    for (FeatureId f : g.members) {
      if (!mask.contains(f))
        throw SelectionError(SelectionError::Kind::InvalidGroups,
                             "group member outside mask: " +
                                 std::string(feature_name(f)));
      if (seen.contains(f))
        throw SelectionError(SelectionError::Kind::InvalidGroups,
                             "feature in two groups: " +
                                 std::string(feature_name(f)));
      seen.add(f);
    }
  }
  if (seen != mask)
    throw SelectionError(SelectionError::Kind::InvalidGroups,
                         "groups do not cover the mask");
}

enum class SelectionMode { SinglePass, Batch, Greedy };

inline const char* to_string(SelectionMode m) {
  switch (m) {
    case SelectionMode::SinglePass: return "single";
    case SelectionMode::Batch: return "batch";
    case SelectionMode::Greedy: return "greedy";
  }
  return "?";
}

struct AblationStep {
  std::optional<FeatureGroup> removed;  // nullopt = baseline
  double metric = 0;
  double delta = 0;  // vs the round's baseline
};

struct AblationRound {
  AblationStep baseline;
  std::vector<AblationStep> candidates;
  std::optional<FeatureGroup> chosen;  // nullopt = stop / no removal
};

struct AblationTrace {
  ClassificationLevel level = ClassificationLevel::TwoWay;
  SelectionMode mode = SelectionMode::SinglePass;
  std::vector<AblationRound> rounds;
  FeatureMask final_mask;
  double final_metric = 0;
};

// Retrain on `mask` and score macro-F1 on the evaluation split.
inline double train_and_score(const Dataset& train, const Dataset& eval,
                              const LexiconBundle& bundle,
                              ClassificationLevel level,
                              const FeatureMask& mask,
                              const TrainConfig& cfg) {
  MulticlassModel m = train_multiclass(train, bundle, level, mask, cfg);
  std::vector<std::string> emoticons = bundle.emoticon_strings();
  std::vector<Label> gold, pred;
  gold.reserve(eval.tweets.size());
  for (const Tweet& t : eval.tweets) {
    gold.push_back(*t.label);
    pred.push_back(
        predict(m, tokenize(normalize(t.text), emoticons, t.id), bundle));
  }
  return macro_f1(confusion(gold, pred, level));
}

inline AblationRound ablation_round(const Dataset& train, const Dataset& eval,
                                    const LexiconBundle& bundle,
                                    ClassificationLevel level,
                                    const FeatureMask& mask,
                                    const std::vector<FeatureGroup>& groups,
                                    const TrainConfig& cfg) {
  validate_groups(mask, groups);
  AblationRound round;
  round.baseline.metric =
      train_and_score(train, eval, bundle, level, mask, cfg);
  for (const FeatureGroup& g : groups) {
    FeatureMask reduced = mask.without(g.members);
    if (reduced.empty())
      throw SelectionError(SelectionError::Kind::EmptyMask,
                           "removing group '" + g.name +
                               "' would empty the feature mask");
    AblationStep step;
    step.removed = g;
    step.metric = train_and_score(train, eval, bundle, level, reduced, cfg);
    step.delta = step.metric - round.baseline.metric;
    round.candidates.push_back(std::move(step));
  }
  return round;
}

inline std::vector<AblationStep> single_pass(
    const Dataset& train, const Dataset& eval, const LexiconBundle& bundle,
    ClassificationLevel level, const std::vector<FeatureGroup>& groups,
    const FeatureMask& mask, const TrainConfig& cfg) {
  AblationRound round =
      ablation_round(train, eval, bundle, level, mask, groups, cfg);
  std::vector<AblationStep> steps;
  steps.push_back(round.baseline);
  for (AblationStep& s : round.candidates) steps.push_back(std::move(s));
  return steps;
}

namespace detail {

// Candidate preference: higher metric, then fewer members, then lowest
// minimal feature index. Content-based, so group order never matters.
inline bool better_candidate(const AblationStep& a, const AblationStep& b) {
  if (a.metric != b.metric) return a.metric > b.metric;
  size_t na = a.removed->members.size(), nb = b.removed->members.size();
  if (na != nb) return na < nb;
  auto min_idx = [](const FeatureGroup& g) {
    int m = kFeatureCount;
    for (FeatureId f : g.members) m = std::min(m, static_cast<int>(f));
    return m;
  };
  return min_idx(*a.removed) < min_idx(*b.removed);
}

}  // namespace detail

// Iterative remove-and-recheck: per round, take the best single-group
// removal; keep it only if it strictly improves the metric, else stop.
inline AblationTrace greedy_backward(const Dataset& train, const Dataset& eval,
                                     const LexiconBundle& bundle,
                                     ClassificationLevel level,
                                     std::vector<FeatureGroup> groups,
                                     const FeatureMask& mask,
                                     const TrainConfig& cfg) {
  AblationTrace trace;
  trace.level = level;
  trace.mode = SelectionMode::Greedy;
  trace.final_mask = mask;

  FeatureMask current = mask;
  while (true) {
    if (groups.size() <= 1) {
      // Removing the last group would empty the mask; record a terminal
      // baseline-only round.
      AblationRound round;
      round.baseline.metric =
          train_and_score(train, eval, bundle, level, current, cfg);
      trace.rounds.push_back(std::move(round));
      break;
    }
    AblationRound round =
        ablation_round(train, eval, bundle, level, current, groups, cfg);
    const AblationStep* best = nullptr;
    for (const AblationStep& s : round.candidates)
      if (!best || detail::better_candidate(s, *best)) best = &s;
    if (best && best->metric > round.baseline.metric) {
      round.chosen = best->removed;
      current = current.without(best->removed->members);
      groups.erase(std::find(groups.begin(), groups.end(), *best->removed));
      trace.rounds.push_back(std::move(round));
    } else {
      trace.rounds.push_back(std::move(round));
      break;
    }
  }
  trace.final_mask = current;
  trace.final_metric = trace.rounds.back().baseline.metric;
  return trace;
}

// One ablation pass, then simultaneous removal of every group whose removal
// improved the metric. The combined result may be worse than the best single
// removal; the trace exposes both.
inline AblationTrace batch_removal(const Dataset& train, const Dataset& eval,
                                   const LexiconBundle& bundle,
                                   ClassificationLevel level,
                                   const std::vector<FeatureGroup>& groups,
                                   const FeatureMask& mask,
                                   const TrainConfig& cfg) {
  AblationTrace trace;
  trace.level = level;
  trace.mode = SelectionMode::Batch;

  AblationRound pass =
      ablation_round(train, eval, bundle, level, mask, groups, cfg);
  FeatureMask reduced = mask;
  for (const AblationStep& s : pass.candidates)
    if (s.delta > 0) reduced = reduced.without(s.removed->members);
  if (reduced.empty())
    throw SelectionError(SelectionError::Kind::EmptyMask,
                         "batch removal would empty the feature mask");
  trace.rounds.push_back(std::move(pass));

  AblationRound result;
  result.baseline.metric =
      train_and_score(train, eval, bundle, level, reduced, cfg);
  trace.rounds.push_back(std::move(result));
  trace.final_mask = reduced;
  trace.final_metric = trace.rounds.back().baseline.metric;
  return trace;
}

// Machine-readable trace: `round,candidate,removed_group,metric,delta,chosen`.
inline std::string ablation_csv(const AblationTrace& trace,
                                bool paper_protocol = false) {
  std::ostringstream out;
  out << "round,candidate,removed_group,metric,delta,chosen";
  if (paper_protocol) out << ",protocol=paper";
  out << '\n';
  for (size_t r = 0; r < trace.rounds.size(); ++r) {
    const AblationRound& round = trace.rounds[r];
    out << r << ",0,-," << fmt_double(round.baseline.metric) << ",0,0\n";
    for (size_t c = 0; c < round.candidates.size(); ++c) {
      const AblationStep& s = round.candidates[c];
      bool chosen = round.chosen && *round.chosen == *s.removed;
      out << r << ',' << (c + 1) << ',' << s.removed->name << ','
          << fmt_double(s.metric) << ',' << fmt_double(s.delta) << ','
          << (chosen ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

// Bar-chart layout of the first pass: baseline first, then one line per
// removal candidate.
inline std::string ablation_plot_data(const AblationTrace& trace) {
  std::ostringstream out;
  if (trace.rounds.empty()) return {};
  const AblationRound& first = trace.rounds.front();
  out << "all_features\t" << fmt_double(first.baseline.metric) << '\n';
  for (const AblationStep& s : first.candidates)
    out << s.removed->name << '\t' << fmt_double(s.metric) << '\n';
  return out.str();
}

}  // namespace sentiment
