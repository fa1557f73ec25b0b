#include "doctest.h"
#include "oracles.hpp"
#include "sentiment/svm.hpp"
#include "test_support.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace sentiment;
using testsupport::make_test_bundle;
using testsupport::tok;

namespace {

TrainConfig tight_config(uint64_t seed = 1) {
  TrainConfig cfg;
  cfg.C = 10.0;
  cfg.tolerance = 1e-7;
  cfg.max_epochs = 50000;
  cfg.seed = seed;
  return cfg;
}

Dataset three_class_fixture() {
  // Separable by TweetScore alone under the test bundle.
  Dataset d;
  d.level = ClassificationLevel::ThreeWay;
  int i = 0;
  auto add = [&](const char* text, Label l) {
    d.tweets.push_back({"t" + std::to_string(i++), text, l});
  };
  add("جميل رائع", Label::Positive);
  add("ممتاز سعيد جميل", Label::Positive);
  add("حلو جميل", Label::Positive);
  add("رائع رائع سعيد", Label::Positive);
  add("سيء حزين", Label::Negative);
  add("قبيح رديء مزعج", Label::Negative);
  add("سيء سيء", Label::Negative);
  add("حزين رديء", Label::Negative);
  add("يوم عادي", Label::Neutral);
  add("كتاب مدرسه", Label::Neutral);
  add("سياره طريق بيت", Label::Neutral);
  add("قهوه خبر", Label::Neutral);
  return d;
}

}  // namespace

TEST_CASE("train_binary: symmetric 2-point problem matches the QP oracle") {
  std::vector<std::vector<double>> X = {{1.0}, {-1.0}};
  std::vector<int> y = {+1, -1};
  TrainConfig cfg = tight_config();
  TrainStats stats;
  BinaryLinearModel m = train_binary(X, y, cfg, &stats);

  CHECK(m.weights[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(m.bias == doctest::Approx(0.0).scale(1).epsilon(1e-3));

  std::vector<double> oracle = oracles::grid_minimize(
      [&](const std::vector<double>& p) {
        return oracles::svm_primal(X, y, cfg.C, p);
      },
      2);
  CHECK(m.weights[0] == doctest::Approx(oracle[0]).scale(1).epsilon(1e-3));
  CHECK(m.bias == doctest::Approx(oracle[1]).scale(1).epsilon(1e-3));
}

TEST_CASE("train_binary: random 2-D problems match the QP oracle") {
  std::mt19937 gen(77);
  std::normal_distribution<double> noise(0.0, 0.6);
  for (int problem = 0; problem < 2; ++problem) {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
      int label = i % 2 == 0 ? +1 : -1;
      X.push_back({label * 1.0 + noise(gen), label * 0.5 + noise(gen)});
      y.push_back(label);
    }
    TrainConfig cfg = tight_config(100 + problem);
    cfg.C = 1.0;
    BinaryLinearModel m = train_binary(X, y, cfg);
    std::vector<double> oracle = oracles::grid_minimize(
        [&](const std::vector<double>& p) {
          return oracles::svm_primal(X, y, cfg.C, p);
        },
        3);
    CHECK(m.weights[0] == doctest::Approx(oracle[0]).scale(1).epsilon(1e-3));
    CHECK(m.weights[1] == doctest::Approx(oracle[1]).scale(1).epsilon(1e-3));
    CHECK(m.bias == doctest::Approx(oracle[2]).scale(1).epsilon(1e-3));
  }
}

TEST_CASE("train_binary: primal monotone per epoch, duals within [0, C]") {
  std::mt19937 gen(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::vector<double>> X;
  std::vector<int> y;
  for (int i = 0; i < 30; ++i) {
    int label = i % 2 == 0 ? +1 : -1;
    X.push_back({label + noise(gen), noise(gen)});
    y.push_back(label);
  }
  TrainConfig cfg;
  cfg.C = 2.0;
  cfg.tolerance = 1e-6;
  cfg.max_epochs = 20000;
  cfg.seed = 3;
  TrainStats stats;
  train_binary(X, y, cfg, &stats);

  for (size_t e = 1; e < stats.primal_per_epoch.size(); ++e)
    CHECK(stats.primal_per_epoch[e] <= stats.primal_per_epoch[e - 1] + 1e-9);
  for (double a : stats.alphas) {
    CHECK(a >= 0.0);
    CHECK(a <= cfg.C);
  }
  CHECK(stats.final_violation < cfg.tolerance);
}

TEST_CASE("train_binary: duplicated data with halved C is equivalent") {
  std::vector<std::vector<double>> X = {{1.2, 0.3}, {-0.8, 0.1},
                                        {0.4, -1.0}, {-0.2, 0.9}};
  std::vector<int> y = {+1, -1, -1, +1};
  std::vector<std::vector<double>> X2 = X;
  X2.insert(X2.end(), X.begin(), X.end());
  std::vector<int> y2 = y;
  y2.insert(y2.end(), y.begin(), y.end());

  // objective equivalence at arbitrary parameter points
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> p = {u(gen), u(gen), u(gen)};
    CHECK(oracles::svm_primal(X, y, 3.0, p) ==
          doctest::Approx(oracles::svm_primal(X2, y2, 1.5, p)).epsilon(1e-12));
  }

  TrainConfig a = tight_config(42);
  a.C = 3.0;
  TrainConfig b = tight_config(42);
  b.C = 1.5;
  BinaryLinearModel ma = train_binary(X, y, a);
  BinaryLinearModel mb = train_binary(X2, y2, b);
  CHECK(ma.weights[0] == doctest::Approx(mb.weights[0]).scale(1).epsilon(1e-3));
  CHECK(ma.weights[1] == doctest::Approx(mb.weights[1]).scale(1).epsilon(1e-3));
  CHECK(ma.bias == doctest::Approx(mb.bias).scale(1).epsilon(1e-3));
}

TEST_CASE("train_binary: error cases") {
  TrainConfig cfg;
  CHECK_THROWS_AS(
      train_binary({{1.0}, {2.0}}, {+1, +1}, cfg), SvmError);
  CHECK_THROWS_AS(train_binary({{1.0}, {2.0, 3.0}}, {+1, -1}, cfg), SvmError);
  CHECK_THROWS_AS(train_binary({}, {}, cfg), SvmError);
  double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(train_binary({{inf}, {1.0}}, {+1, -1}, cfg), SvmError);
}

TEST_CASE("decision: plain dot product plus bias") {
  BinaryLinearModel zero;
  zero.weights = {0.0, 0.0};
  zero.bias = 0.0;
  CHECK(decision(zero, std::vector<double>{3.0, -4.0}) == 0.0);

  BinaryLinearModel m;
  m.weights = {1.0, 2.0};
  m.bias = -1.0;
  CHECK(decision(m, std::vector<double>{1.0, 1.0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(decision(m, std::vector<double>{1.0}), SvmError);
}

TEST_CASE("decision of the symmetric model at the origin is ~0") {
  std::vector<std::vector<double>> X = {{1.0}, {-1.0}};
  std::vector<int> y = {+1, -1};
  BinaryLinearModel m = train_binary(X, y, tight_config());
  CHECK(decision(m, std::vector<double>{0.0}) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-3));
}

TEST_CASE("train_multiclass: pair counts per level") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  TrainConfig cfg;
  cfg.seed = 1;

  Dataset two = filter_by_level(d, ClassificationLevel::TwoWay);
  MulticlassModel m2 =
      train_multiclass(two, bundle, ClassificationLevel::TwoWay,
                       mask_for_level(ClassificationLevel::TwoWay), cfg);
  CHECK(m2.pairwise.size() == 1);

  MulticlassModel m3 =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);
  CHECK(m3.pairwise.size() == 3);
}

TEST_CASE("train_multiclass: four-way has 6 pairwise models") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  d.level = ClassificationLevel::FourWay;
  int i = 100;
  d.tweets.push_back({"m1", "جميل لكن سيء", Label::Mixed});
  d.tweets.push_back({"m2", "رائع لكن حزين", Label::Mixed});
  (void)i;
  TrainConfig cfg;
  MulticlassModel m =
      train_multiclass(d, bundle, ClassificationLevel::FourWay,
                       mask_for_level(ClassificationLevel::FourWay), cfg);
  CHECK(m.pairwise.size() == 6);
}

TEST_CASE("train_multiclass: missing class rejected") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  std::erase_if(d.tweets,
                [](const Tweet& t) { return t.label == Label::Neutral; });
  TrainConfig cfg;
  try {
    train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                     mask_for_level(ClassificationLevel::ThreeWay), cfg);
    FAIL("expected MissingClass");
  } catch (const SvmError& e) {
    CHECK(e.kind == SvmError::Kind::MissingClass);
  }
}

TEST_CASE("train_multiclass: separable fixture reaches 100% train accuracy") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  TrainConfig cfg;
  cfg.seed = 9;
  MulticlassModel m =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);
  for (const Tweet& t : d.tweets)
    CHECK(predict_text(m, t.text, bundle) == *t.label);
}

TEST_CASE("predict: zero-weight models fall back to the canonical label") {
  MulticlassModel m;
  m.level = ClassificationLevel::ThreeWay;
  m.mask.add(FeatureId::TweetScore);
  m.scaler.mask = m.mask;
  auto zero_pair = [](Label pos, Label neg) {
    BinaryLinearModel bm;
    bm.weights = {0.0};
    bm.bias = 0.0;
    bm.positive_label = pos;
    bm.negative_label = neg;
    return bm;
  };
  m.pairwise = {zero_pair(Label::Positive, Label::Negative),
                zero_pair(Label::Positive, Label::Neutral),
                zero_pair(Label::Negative, Label::Neutral)};
  CHECK(predict_scaled(m, std::vector<double>{0.0}) == Label::Positive);
}

TEST_CASE("predict: cyclic vote resolved by margin sums") {
  MulticlassModel m;
  m.level = ClassificationLevel::ThreeWay;
  m.mask.add(FeatureId::TweetScore);
  m.scaler.mask = m.mask;
  auto biased_pair = [](Label pos, Label neg, double bias) {
    BinaryLinearModel bm;
    bm.weights = {0.0};
    bm.bias = bias;
    bm.positive_label = pos;
    bm.negative_label = neg;
    return bm;
  };
  // P beats N (+0.5), U beats P (-0.2), N beats U (+0.3): one vote each.
  // Margin sums: P 0.5, N 0.3, U 0.2 -> P wins.
  m.pairwise = {biased_pair(Label::Positive, Label::Negative, 0.5),
                biased_pair(Label::Positive, Label::Neutral, -0.2),
                biased_pair(Label::Negative, Label::Neutral, 0.3)};
  CHECK(predict_scaled(m, std::vector<double>{0.0}) == Label::Positive);

  // N beats P (-0.7), P beats U (+0.2), U beats N (-0.4): sums N .7, U .4,
  // P .2 -> N wins.
  m.pairwise = {biased_pair(Label::Positive, Label::Negative, -0.7),
                biased_pair(Label::Positive, Label::Neutral, 0.2),
                biased_pair(Label::Negative, Label::Neutral, -0.4)};
  CHECK(predict_scaled(m, std::vector<double>{0.0}) == Label::Negative);
}

TEST_CASE("model persistence: round trip preserves predictions exactly") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  TrainConfig cfg;
  cfg.seed = 4;
  MulticlassModel m =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);

  std::string path =
      (std::filesystem::temp_directory_path() / "model_rt.txt").string();
  save_model(m, path);
  MulticlassModel loaded = load_model(path);

  for (const Tweet& t : d.tweets)
    CHECK(predict_text(loaded, t.text, bundle) ==
          predict_text(m, t.text, bundle));
  CHECK(serialize_model(loaded) == serialize_model(m));
}

TEST_CASE("model persistence: determinism across retrains") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  TrainConfig cfg;
  cfg.seed = 21;
  MulticlassModel a =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);
  MulticlassModel b =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);
  CHECK(serialize_model(a) == serialize_model(b));
}

TEST_CASE("model persistence: corrupt and unsupported files rejected") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  TrainConfig cfg;
  MulticlassModel m =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);
  std::string content = serialize_model(m);

  // truncation
  try {
    deserialize_model(content.substr(0, content.size() / 2));
    FAIL("expected CorruptModel");
  } catch (const SvmError& e) {
    CHECK(e.kind == SvmError::Kind::CorruptModel);
  }

  // future version
  std::string v999 = content;
  v999.replace(v999.find("v1"), 2, "v999");
  try {
    deserialize_model(v999);
    FAIL("expected UnsupportedVersion");
  } catch (const SvmError& e) {
    CHECK(e.kind == SvmError::Kind::UnsupportedVersion);
  }

  CHECK_THROWS_AS(deserialize_model(""), SvmError);
  CHECK_THROWS_AS(deserialize_model("garbage file\n"), SvmError);
}

TEST_CASE("predict ignores tweet ids") {
  LexiconBundle bundle = make_test_bundle();
  Dataset d = three_class_fixture();
  TrainConfig cfg;
  MulticlassModel m =
      train_multiclass(d, bundle, ClassificationLevel::ThreeWay,
                       mask_for_level(ClassificationLevel::ThreeWay), cfg);
  std::vector<std::string> emoticons = bundle.emoticon_strings();
  Label a = predict(m, tokenize(normalize("جميل رائع"), emoticons, "id1"), bundle);
  Label b = predict(m, tokenize(normalize("جميل رائع"), emoticons, "zzz"), bundle);
  CHECK(a == b);
}
