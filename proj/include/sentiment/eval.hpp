#pragma once

// Confusion matrices, per-class precision/recall/F1, macro and weighted F1,
// accuracy, and the Pearson chi-square independence test with a built-in
// regularized incomplete gamma for p-values.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sentiment/corpus.hpp"

namespace sentiment {

struct EvalError : std::runtime_error {
  enum class Kind { LengthMismatch, LabelOutOfLevel, EmptyMatrix };
  Kind kind;
  EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct ConfusionMatrix {
  std::vector<Label> labels;                 // canonical order of the level
  std::vector<std::vector<long>> counts;     // rows = gold, columns = predicted

  long total() const {
    long n = 0;
    for (const auto& row : counts)
      for (long c : row) n += c;
    return n;
  }
};

inline ConfusionMatrix confusion(const std::vector<Label>& gold,
                                 const std::vector<Label>& pred,
                                 ClassificationLevel level) {
  if (gold.size() != pred.size() || gold.empty())
    throw EvalError(EvalError::Kind::LengthMismatch,
                    "confusion: gold/pred length mismatch or empty");
  ConfusionMatrix m;
  m.labels = labels_of(level);
  const size_t k = m.labels.size();
  m.counts.assign(k, std::vector<long>(k, 0));
  auto index_of = [&](Label l) -> size_t {
    for (size_t i = 0; i < k; ++i)
      if (m.labels[i] == l) return i;
    throw EvalError(EvalError::Kind::LabelOutOfLevel,
                    std::string("label outside level: ") + to_string(l));
  };
  for (size_t t = 0; t < gold.size(); ++t)
    ++m.counts[index_of(gold[t])][index_of(pred[t])];
  return m;
}

struct ClassScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Zero-denominator convention: precision of an empty column and recall of an
// empty row are 0; F1 of (0,0) is 0. A class absent from both gold and
// predictions therefore contributes 0 to the macro mean.
inline std::vector<ClassScores> per_class_scores(const ConfusionMatrix& m) {
  if (m.total() == 0)
    throw EvalError(EvalError::Kind::EmptyMatrix, "empty confusion matrix");
  const size_t k = m.labels.size();
  std::vector<ClassScores> out(k);
  for (size_t i = 0; i < k; ++i) {
    long tp = m.counts[i][i];
    long col = 0, row = 0;
    for (size_t r = 0; r < k; ++r) col += m.counts[r][i];
    for (size_t c = 0; c < k; ++c) row += m.counts[i][c];
    double p = col == 0 ? 0.0 : static_cast<double>(tp) / col;
    double r = row == 0 ? 0.0 : static_cast<double>(tp) / row;
    double f1 = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    out[i] = {p, r, f1};
  }
  return out;
}

inline double macro_f1(const ConfusionMatrix& m) {
  std::vector<ClassScores> scores = per_class_scores(m);
  double sum = 0;
  for (const ClassScores& s : scores) sum += s.f1;
  return sum / static_cast<double>(scores.size());
}

// Support-weighted mean of per-class F1 (reported alongside macro-F1).
inline double weighted_f1(const ConfusionMatrix& m) {
  std::vector<ClassScores> scores = per_class_scores(m);
  double sum = 0;
  long n = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    long row = 0;
    for (long c : m.counts[i]) row += c;
    sum += scores[i].f1 * static_cast<double>(row);
    n += row;
  }
  return sum / static_cast<double>(n);
}

inline double accuracy(const ConfusionMatrix& m) {
  long n = m.total();
  if (n == 0)
    throw EvalError(EvalError::Kind::EmptyMatrix, "empty confusion matrix");
  long diag = 0;
  for (size_t i = 0; i < m.labels.size(); ++i) diag += m.counts[i][i];
  return static_cast<double>(diag) / static_cast<double>(n);
}

namespace gamma_detail {

// Regularized lower incomplete gamma P(a,x): series for x < a+1,
// continued fraction (Lentz) otherwise. Absolute accuracy ~1e-14.
inline double gamma_p(double a, double x) {
  if (x <= 0) return 0.0;
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

}  // namespace gamma_detail

// Upper tail of the chi-square distribution with df degrees of freedom.
inline double chi_square_sf(double statistic, int df) {
  if (statistic <= 0) return 1.0;
  return gamma_detail::gamma_q(df / 2.0, statistic / 2.0);
}

struct ChiSquareResult {
  double statistic = 0;
  int df = 0;
  double p_value = 1.0;
  bool degenerate = false;  // zero rows/columns were dropped
  bool significant = false; // p < 0.05
};

// Pearson independence test on the gold-vs-predicted contingency table.
// All-zero rows and columns are dropped first; df = (r-1)(c-1) over the
// remaining sub-table.
inline ChiSquareResult chi_square_test(const ConfusionMatrix& m) {
  const long n = m.total();
  if (n == 0)
    throw EvalError(EvalError::Kind::EmptyMatrix, "empty confusion matrix");
  const size_t k = m.labels.size();
  std::vector<long> row_sum(k, 0), col_sum(k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      row_sum[i] += m.counts[i][j];
      col_sum[j] += m.counts[i][j];
    }
  std::vector<size_t> rows, cols;
  for (size_t i = 0; i < k; ++i)
    if (row_sum[i] > 0) rows.push_back(i);
  for (size_t j = 0; j < k; ++j)
    if (col_sum[j] > 0) cols.push_back(j);

  ChiSquareResult res;
  res.degenerate = rows.size() < k || cols.size() < k;
  int df = static_cast<int>(rows.size() - 1) * static_cast<int>(cols.size() - 1);
  if (df <= 0) {
    res.statistic = 0;
    res.df = 0;
    res.p_value = 1.0;
    res.degenerate = true;
    return res;
  }
  double stat = 0;
  for (size_t i : rows)
    for (size_t j : cols) {
      double e = static_cast<double>(row_sum[i]) *
                 static_cast<double>(col_sum[j]) / static_cast<double>(n);
      double o = static_cast<double>(m.counts[i][j]);
      stat += (o - e) * (o - e) / e;
    }
  res.statistic = stat;
  res.df = df;
  res.p_value = chi_square_sf(stat, df);
  res.significant = res.p_value < 0.05;
  return res;
}

struct EvalReport {
  std::vector<Label> labels;
  std::vector<ClassScores> per_class;
  double macro_f1 = 0;
  double weighted_f1 = 0;
  double accuracy = 0;
  ChiSquareResult chi_square;
  long n = 0;
};

inline EvalReport evaluate(const ConfusionMatrix& m) {
  EvalReport r;
  r.labels = m.labels;
  r.per_class = per_class_scores(m);
  r.macro_f1 = macro_f1(m);
  r.weighted_f1 = weighted_f1(m);
  r.accuracy = accuracy(m);
  r.chi_square = chi_square_test(m);
  r.n = m.total();
  return r;
}

}  // namespace sentiment
