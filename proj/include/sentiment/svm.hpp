#pragma once

// L2-regularized hinge-loss linear SVM trained by dual coordinate descent,
// one-vs-one multiclass composition, and versioned text persistence.
//
// The bias is handled by an internal constant-1 coordinate, so the solved
// objective is min_{w,b} 1/2(||w||^2 + b^2) + sum_i C_i max(0, 1 - y_i(w.x_i + b)).

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sentiment/corpus.hpp"
#include "sentiment/features.hpp"
#include "sentiment/io.hpp"
#include "sentiment/lexicon.hpp"
#include "sentiment/text.hpp"

namespace sentiment {

struct SvmError : std::runtime_error {
  enum class Kind {
    SingleClassInput,
    DimensionMismatch,
    NonFiniteFeature,
    MissingClass,
    UnsupportedVersion,
    CorruptModel,
    LevelMismatch,
  };
  Kind kind;
  SvmError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct TrainConfig {
  double C = 1.0;
  double tolerance = 1e-3;
  int max_epochs = 1000;
  uint64_t seed = 0;
  // Optional per-class cost multipliers for imbalance experiments.
  std::map<Label, double> class_cost;

  double cost_for(Label l) const {
    auto it = class_cost.find(l);
    return C * (it == class_cost.end() ? 1.0 : it->second);
  }
};

struct TrainStats {
  int epochs = 0;
  // Primal objective of the incumbent (best-so-far) iterate after each
  // epoch; non-increasing by construction of the pocket step in
  // train_binary.
  std::vector<double> primal_per_epoch;
  std::vector<double> alphas;
  double final_violation = 0;
};

struct BinaryLinearModel {
  std::vector<double> weights;
  double bias = 0;
  double cost = 1.0;
  Label positive_label = Label::Positive;
  Label negative_label = Label::Negative;
};

inline double decision(const BinaryLinearModel& m, std::span<const double> x) {
  if (x.size() != m.weights.size())
    throw SvmError(SvmError::Kind::DimensionMismatch,
                   "decision: vector dimension != model dimension");
  double d = m.bias;
  for (size_t i = 0; i < x.size(); ++i) d += m.weights[i] * x[i];
  return d;
}

// Dual coordinate descent for the L1-loss dual:
//   min_a 1/2 a'Qa - e'a,  0 <= a_i <= C_i,  Q_ij = y_i y_j xb_i.xb_j
// with xb the bias-augmented inputs. Instance order is reshuffled every
// epoch from cfg.seed; termination when the max projected-gradient
// violation over an epoch drops below cfg.tolerance.
//
// Dual descent does not make the *primal* monotone on its own, so the
// solver carries a pocket: after every epoch the iterate with the lowest
// primal seen so far is retained, and that incumbent is what gets
// returned and reported. Near convergence pocket and last iterate
// coincide.
inline BinaryLinearModel train_binary(
    const std::vector<std::vector<double>>& X, const std::vector<int>& y,
    const TrainConfig& cfg, TrainStats* stats = nullptr,
    const std::vector<double>& instance_cost = {}) {
  if (X.empty() || X.size() != y.size())
    throw SvmError(SvmError::Kind::DimensionMismatch,
                   "train_binary: |X| must equal |y| and be >= 1");
  const size_t n = X.size();
  const size_t dim = X[0].size();
  bool has_pos = false, has_neg = false;
  for (size_t i = 0; i < n; ++i) {
    if (X[i].size() != dim)
      throw SvmError(SvmError::Kind::DimensionMismatch,
                     "train_binary: ragged feature matrix");
    for (double v : X[i])
      if (!std::isfinite(v))
        throw SvmError(SvmError::Kind::NonFiniteFeature,
                       "train_binary: non-finite feature value");
    if (y[i] > 0) has_pos = true;
    else has_neg = true;
  }
  if (!has_pos || !has_neg)
    throw SvmError(SvmError::Kind::SingleClassInput,
                   "train_binary: both classes must be present");

  std::vector<double> cost(n, cfg.C);
  if (!instance_cost.empty()) {
    if (instance_cost.size() != n)
      throw SvmError(SvmError::Kind::DimensionMismatch,
                     "train_binary: instance cost size mismatch");
    cost = instance_cost;
  }

  // Q_ii over augmented vectors (constant-1 bias coordinate).
  std::vector<double> qdiag(n);
  for (size_t i = 0; i < n; ++i) {
    double q = 1.0;
    for (double v : X[i]) q += v * v;
    qdiag[i] = q;
  }

  std::vector<double> w(dim + 1, 0.0);  // w[dim] is the bias
  std::vector<double> alpha(n, 0.0);
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;

  auto wx = [&](size_t i) {
    double d = w[dim];
    for (size_t k = 0; k < dim; ++k) d += w[k] * X[i][k];
    return d;
  };
  auto primal = [&]() {
    double obj = 0;
    for (double v : w) obj += v * v;
    obj *= 0.5;
    for (size_t i = 0; i < n; ++i)
      obj += cost[i] * std::max(0.0, 1.0 - y[i] * wx(i));
    return obj;
  };

  SplitMix64 rng(cfg.seed);
  std::vector<double> best_w = w;
  std::vector<double> best_alpha = alpha;
  double best_primal = primal();
  int epoch = 0;
  for (; epoch < cfg.max_epochs; ++epoch) {
    for (size_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    double violation = 0;
    for (size_t idx : order) {
      const double g = y[idx] * wx(idx) - 1.0;
      double pg = g;
      if (alpha[idx] <= 0.0 && g > 0) pg = 0;
      else if (alpha[idx] >= cost[idx] && g < 0) pg = 0;
      violation = std::max(violation, std::fabs(pg));
      if (std::fabs(pg) > 1e-14) {
        double a_new =
            std::min(std::max(alpha[idx] - g / qdiag[idx], 0.0), cost[idx]);
        double delta = (a_new - alpha[idx]) * y[idx];
        alpha[idx] = a_new;
        for (size_t k = 0; k < dim; ++k) w[k] += delta * X[idx][k];
        w[dim] += delta;
      }
    }
    if (double p = primal(); p < best_primal) {
      best_primal = p;
      best_w = w;
      best_alpha = alpha;
    }
    if (stats) stats->primal_per_epoch.push_back(best_primal);
    if (violation < cfg.tolerance) {
      ++epoch;
      break;
    }
  }

  w = best_w;
  alpha = best_alpha;
  if (stats) {
    stats->epochs = epoch;
    stats->alphas = alpha;
    // projected-gradient violation of the returned (pocket) iterate
    double violation = 0;
    for (size_t i = 0; i < n; ++i) {
      const double g = y[i] * wx(i) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0 && g > 0) pg = 0;
      else if (alpha[i] >= cost[i] && g < 0) pg = 0;
      violation = std::max(violation, std::fabs(pg));
    }
    stats->final_violation = violation;
  }

  BinaryLinearModel m;
  m.weights.assign(w.begin(), w.begin() + static_cast<long>(dim));
  m.bias = w[dim];
  m.cost = cfg.C;
  return m;
}

struct MulticlassModel {
  ClassificationLevel level = ClassificationLevel::TwoWay;
  FeatureMask mask;
  Scaler scaler;
  // One model per unordered label pair of the level, pairs enumerated in
  // canonical label order; the pair's first label is the +1 class.
  std::vector<BinaryLinearModel> pairwise;
};

inline std::vector<FeatureVector> extract_all(const Dataset& d,
                                              const LexiconBundle& bundle) {
  std::vector<std::string> emoticons = bundle.emoticon_strings();
  std::vector<FeatureVector> out;
  out.reserve(d.tweets.size());
  for (const Tweet& t : d.tweets)
    out.push_back(extract(tokenize(normalize(t.text), emoticons, t.id), bundle));
  return out;
}

inline MulticlassModel train_multiclass(const Dataset& train,
                                        const LexiconBundle& bundle,
                                        ClassificationLevel level,
                                        const FeatureMask& mask,
                                        const TrainConfig& cfg,
                                        std::vector<TrainStats>* pair_stats =
                                            nullptr) {
  const std::vector<Label> labels = labels_of(level);
  std::map<Label, long> counts = train.class_counts();
  for (Label l : labels) {
    if (counts[l] < 1)
      throw SvmError(SvmError::Kind::MissingClass,
                     std::string("no training examples for class ") +
                         to_string(l));
  }
  for (const Tweet& t : train.tweets) {
    if (!t.label || !level_contains(level, *t.label))
      throw SvmError(SvmError::Kind::LevelMismatch,
                     "training tweet unlabeled or outside level");
  }

  std::vector<FeatureVector> vectors = extract_all(train, bundle);
  MulticlassModel m;
  m.level = level;
  m.mask = mask;
  m.scaler = fit_scaler(vectors, mask);

  std::vector<std::vector<double>> scaled(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i)
    scaled[i] = apply_scaler(m.scaler, vectors[i], mask);

  uint64_t pair_index = 0;
  for (size_t a = 0; a < labels.size(); ++a) {
    for (size_t b = a + 1; b < labels.size(); ++b) {
      std::vector<std::vector<double>> X;
      std::vector<int> y;
      std::vector<double> inst_cost;
      for (size_t i = 0; i < train.tweets.size(); ++i) {
        Label l = *train.tweets[i].label;
        if (l == labels[a]) {
          X.push_back(scaled[i]);
          y.push_back(+1);
          inst_cost.push_back(cfg.cost_for(l));
        } else if (l == labels[b]) {
          X.push_back(scaled[i]);
          y.push_back(-1);
          inst_cost.push_back(cfg.cost_for(l));
        }
      }
      TrainConfig pair_cfg = cfg;
      pair_cfg.seed = cfg.seed ^ pair_index;
      TrainStats stats;
      BinaryLinearModel bm = train_binary(
          X, y, pair_cfg, pair_stats ? &stats : nullptr, inst_cost);
      if (pair_stats) pair_stats->push_back(std::move(stats));
      bm.positive_label = labels[a];
      bm.negative_label = labels[b];
      m.pairwise.push_back(std::move(bm));
      ++pair_index;
    }
  }
  return m;
}

// One-vs-one vote over pairwise decisions. Ties broken by the larger sum of
// |decision| over the pairs each tied label won, then by canonical order.
inline Label predict_scaled(const MulticlassModel& m,
                            std::span<const double> x) {
  const std::vector<Label> labels = labels_of(m.level);
  std::map<Label, int> votes;
  std::map<Label, double> margin;
  for (Label l : labels) {
    votes[l] = 0;
    margin[l] = 0;
  }
  for (const BinaryLinearModel& bm : m.pairwise) {
    double d = decision(bm, x);
    Label winner = d >= 0 ? bm.positive_label : bm.negative_label;
    ++votes[winner];
    margin[winner] += std::fabs(d);
  }
  Label best = labels[0];
  for (Label l : labels) {
    if (votes[l] > votes[best] ||
        (votes[l] == votes[best] && margin[l] > margin[best]))
      best = l;  // canonical order wins remaining ties (first seen kept)
  }
  return best;
}

inline Label predict(const MulticlassModel& m, const TokenizedTweet& t,
                     const LexiconBundle& bundle) {
  FeatureVector v = extract(t, bundle);
  std::vector<double> x = apply_scaler(m.scaler, v, m.mask);
  return predict_scaled(m, x);
}

inline Label predict_text(const MulticlassModel& m, const std::string& text,
                          const LexiconBundle& bundle) {
  return predict(m, tokenize(normalize(text), bundle.emoticon_strings()),
                 bundle);
}

// ---- persistence -----------------------------------------------------------

inline constexpr const char* kModelMagic = "sentiment-model";
inline constexpr const char* kModelVersion = "v1";

inline std::string serialize_model(const MulticlassModel& m) {
  std::ostringstream out;
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "level " << to_string(m.level) << '\n';
  out << "features ";
  bool first = true;
  for (FeatureId f : m.mask.features()) {
    if (!first) out << ',';
    out << feature_name(f);
    first = false;
  }
  out << '\n';
  std::vector<FeatureId> numeric;
  for (FeatureId f : m.mask.features())
    if (is_numeric_feature(f)) numeric.push_back(f);
  out << "scaler " << numeric.size() << '\n';
  for (FeatureId f : numeric) {
    const auto& r = m.scaler.ranges[static_cast<int>(f)];
    out << feature_name(f) << ' ' << fmt_double(r.min) << ' '
        << fmt_double(r.max) << '\n';
  }
  out << "pairs " << m.pairwise.size() << '\n';
  for (const BinaryLinearModel& bm : m.pairwise) {
    out << "pair " << to_string(bm.positive_label) << ' '
        << to_string(bm.negative_label) << ' ' << fmt_double(bm.cost) << ' '
        << fmt_double(bm.bias) << ' ' << bm.weights.size();
    for (double w : bm.weights) out << ' ' << fmt_double(w);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

inline void save_model(const MulticlassModel& m, const std::string& path) {
  atomic_write_file(path, serialize_model(m));
}

inline MulticlassModel deserialize_model(const std::string& content) {
  auto corrupt = [](const std::string& why) -> SvmError {
    return SvmError(SvmError::Kind::CorruptModel, "corrupt model: " + why);
  };
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) throw corrupt("empty file");
  {
    std::istringstream hs(line);
    std::string magic, version;
    hs >> magic >> version;
    if (magic != kModelMagic) throw corrupt("bad magic line");
    if (version != kModelVersion)
      throw SvmError(SvmError::Kind::UnsupportedVersion,
                     "unsupported model version: " + version);
  }

  MulticlassModel m;
  std::string key;

  if (!(in >> key) || key != "level") throw corrupt("expected level");
  std::string level_str;
  in >> level_str;
  std::optional<ClassificationLevel> level = parse_level(level_str);
  if (!level) throw corrupt("bad level: " + level_str);
  m.level = *level;

  if (!(in >> key) || key != "features") throw corrupt("expected features");
  std::string feature_csv;
  in >> feature_csv;
  {
    size_t start = 0;
    while (start <= feature_csv.size()) {
      size_t comma = feature_csv.find(',', start);
      std::string name = feature_csv.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      std::optional<FeatureId> f = feature_from_name(name);
      if (!f) throw corrupt("unknown feature: " + name);
      m.mask.add(*f);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (m.mask.empty()) throw corrupt("empty feature mask");
  m.scaler.mask = m.mask;

  size_t n_scaler = 0;
  if (!(in >> key >> n_scaler) || key != "scaler")
    throw corrupt("expected scaler");
  for (size_t i = 0; i < n_scaler; ++i) {
    std::string name;
    double lo = 0, hi = 0;
    if (!(in >> name >> lo >> hi)) throw corrupt("truncated scaler block");
    std::optional<FeatureId> f = feature_from_name(name);
    if (!f || !is_numeric_feature(*f) || !m.mask.contains(*f))
      throw corrupt("bad scaler feature: " + name);
    m.scaler.ranges[static_cast<int>(*f)] = {lo, hi};
  }

  size_t n_pairs = 0;
  if (!(in >> key >> n_pairs) || key != "pairs") throw corrupt("expected pairs");
  for (size_t p = 0; p < n_pairs; ++p) {
    std::string pos_str, neg_str;
    BinaryLinearModel bm;
    size_t dim = 0;
    if (!(in >> key >> pos_str >> neg_str >> bm.cost >> bm.bias >> dim) ||
        key != "pair")
      throw corrupt("truncated pair block");
    std::optional<Label> pos = parse_label(pos_str);
    std::optional<Label> neg = parse_label(neg_str);
    if (!pos || !neg) throw corrupt("bad pair labels");
    bm.positive_label = *pos;
    bm.negative_label = *neg;
    if (dim != m.mask.count()) throw corrupt("pair dimension != mask size");
    bm.weights.resize(dim);
    for (size_t i = 0; i < dim; ++i)
      if (!(in >> bm.weights[i])) throw corrupt("truncated weights");
    m.pairwise.push_back(std::move(bm));
  }
  if (!(in >> key) || key != "end") throw corrupt("missing end marker");

  const size_t k = labels_of(m.level).size();
  if (m.pairwise.size() != k * (k - 1) / 2)
    throw corrupt("pair count inconsistent with level");
  return m;
}

inline MulticlassModel load_model(const std::string& path) {
  return deserialize_model(read_file(path));
}

}  // namespace sentiment
