#pragma once

#include <cstddef>

namespace mbsp {

// Match counts behind precision/recall; kept as integers so the derived
// ratios are exact at print time.
struct PrfCounts {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;

  PrfCounts& operator+=(const PrfCounts& o) {
    gold += o.gold;
    predicted += o.predicted;
    correct += o.correct;
    return *this;
  }
};

// Empty prediction against a non-empty gold side scores 0; two empty sides
// count as a perfect match.
inline double precision(const PrfCounts& c) {
  if (c.predicted == 0) return c.gold == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.correct) / static_cast<double>(c.predicted);
}

inline double recall(const PrfCounts& c) {
  if (c.gold == 0) return c.predicted == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.correct) / static_cast<double>(c.gold);
}

inline double f_beta(double prec, double rec, double beta = 1.0) {
  const double b2 = beta * beta;
  const double denom = b2 * prec + rec;
  if (denom == 0.0) return 0.0;
  return (b2 + 1.0) * prec * rec / denom;
}

inline double f_beta(const PrfCounts& c, double beta = 1.0) {
  return f_beta(precision(c), recall(c), beta);
}

}  // namespace mbsp
