#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mbsp/classifier.hpp"
#include "mbsp/instance.hpp"

namespace mbsp {

// Per-feature mismatch cost. Missing matches only missing; a numeric gap is
// scaled into [0,1] by the training range (zero when the range is degenerate).
inline double value_delta(FeatureKind kind, const FeatureValue& a, const FeatureValue& b,
                          double range_lo, double range_hi) {
  const bool am = a.is_missing();
  const bool bm = b.is_missing();
  if (am || bm) return (am && bm) ? 0.0 : 1.0;
  if (kind == FeatureKind::Symbolic) return a.symbol() == b.symbol() ? 0.0 : 1.0;
  const double range = range_hi - range_lo;
  if (range <= 0.0) return 0.0;
  const double d = std::fabs(a.number() - b.number()) / range;
  return d > 1.0 ? 1.0 : d;
}

// Weighted overlap distance between two value vectors under a trained base.
inline double distance(const InstanceBase& base, std::span<const FeatureValue> a,
                       std::span<const FeatureValue> b) {
  const FeatureSchema& schema = base.schema();
  if (a.size() != schema.size() || b.size() != schema.size())
    throw std::invalid_argument("distance: value list length does not match schema");
  double d = 0.0;
  for (std::size_t f = 0; f < schema.size(); ++f) {
    const auto [lo, hi] = base.numeric_range(f);
    d += schema.weights()[f] * value_delta(schema.feature(f).kind, a[f], b[f], lo, hi);
  }
  return d;
}

struct Ib1Result {
  std::string label;
  double dist = 0.0;
  std::size_t neighbor_count = 0;  // instances tied at the minimum distance
};

// IB1-IG: exhaustive 1-nearest-neighbour search over the stored instances.
// The whole set tied at minimum distance votes by majority; remaining ties
// fall back to global class frequency, then the smallest label.
//
// Instances are re-packed column-wise with interned symbols at construction,
// so one classifier can serve many queries cheaply and concurrently.
class Ib1Classifier final : public Classifier {
 public:
  explicit Ib1Classifier(const InstanceBase& base) : schema_(base.schema()) {
    if (base.empty()) throw std::runtime_error("classify_ib1: empty instance base");
    const std::size_t nf = schema_.size();
    const std::size_t n = base.size();
    n_ = n;

    const auto& domain = schema_.class_domain();
    std::unordered_map<std::string, std::uint32_t> class_id;
    for (std::size_t i = 0; i < domain.size(); ++i)
      class_id[domain[i]] = static_cast<std::uint32_t>(i);
    global_freq_.assign(domain.size(), 0);
    for (const auto& [label, count] : base.class_frequencies())
      global_freq_[class_id.at(label)] = count;

    labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels_[i] = class_id.at(base.instances()[i].label);

    columns_.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      Column& col = columns_[f];
      col.numeric = schema_.feature(f).kind == FeatureKind::Numeric;
      if (col.numeric) {
        const auto [lo, hi] = base.numeric_range(f);
        col.lo = lo;
        col.hi = hi;
        col.nums.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          const FeatureValue& v = base.instances()[i].values[f];
          col.nums[i] = v.is_missing() ? std::numeric_limits<double>::quiet_NaN() : v.number();
        }
      } else {
        col.ids.resize(n);
        for (std::size_t i = 0; i < n; ++i)
          col.ids[i] = intern(col, base.instances()[i].values[f].key());
      }
    }
  }

  const FeatureSchema& schema() const override { return schema_; }

  std::string classify(std::span<const FeatureValue> query) const override {
    return classify_full(query).label;
  }

  Ib1Result classify_full(std::span<const FeatureValue> query) const {
    check_conforms(schema_, query);
    static thread_local std::vector<double> dist;
    dist.assign(n_, 0.0);

    for (std::size_t f = 0; f < schema_.size(); ++f) {
      const double w = schema_.weights()[f];
      if (w == 0.0) continue;  // cannot change any distance
      const Column& col = columns_[f];
      if (col.numeric) {
        accumulate_numeric(col, query[f], w, dist);
      } else {
        const std::uint32_t qid = lookup(col, query[f].key());
        const std::uint32_t* ids = col.ids.data();
        for (std::size_t i = 0; i < n_; ++i) dist[i] += w * (ids[i] != qid ? 1.0 : 0.0);
      }
    }

    double best = dist[0];
    for (std::size_t i = 1; i < n_; ++i)
      if (dist[i] < best) best = dist[i];

    std::vector<std::size_t> votes(global_freq_.size(), 0);
    std::size_t ties = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (dist[i] == best) {
        ++votes[labels_[i]];
        ++ties;
      }

    std::size_t pick = 0;
    bool have = false;
    for (std::size_t c = 0; c < votes.size(); ++c) {
      if (votes[c] == 0) continue;
      if (!have || votes[c] > votes[pick] ||
          (votes[c] == votes[pick] && global_freq_[c] > global_freq_[pick])) {
        pick = c;
        have = true;
      }
    }
    return Ib1Result{schema_.class_domain()[pick], best, ties};
  }

 private:
  struct Column {
    bool numeric = false;
    double lo = 0.0, hi = 0.0;
    std::vector<std::uint32_t> ids;   // symbolic: interned values (missing included)
    std::vector<double> nums;         // numeric: raw values, NaN = missing
    std::unordered_map<std::string, std::uint32_t> dict;
  };

  static constexpr std::uint32_t kNoMatch = std::numeric_limits<std::uint32_t>::max();

  static std::uint32_t intern(Column& col, const std::string& key) {
    auto [it, fresh] = col.dict.emplace(key, static_cast<std::uint32_t>(col.dict.size()));
    return it->second;
  }
  static std::uint32_t lookup(const Column& col, const std::string& key) {
    auto it = col.dict.find(key);
    return it == col.dict.end() ? kNoMatch : it->second;
  }

  void accumulate_numeric(const Column& col, const FeatureValue& q, double w,
                          std::vector<double>& dist) const {
    const double range = col.hi - col.lo;
    const double* nums = col.nums.data();
    if (q.is_missing()) {
      for (std::size_t i = 0; i < n_; ++i)
        dist[i] += w * (std::isnan(nums[i]) ? 0.0 : 1.0);
      return;
    }
    const double qv = q.number();
    for (std::size_t i = 0; i < n_; ++i) {
      double d;
      if (std::isnan(nums[i])) {
        d = 1.0;
      } else if (range <= 0.0) {
        d = 0.0;
      } else {
        d = std::fabs(nums[i] - qv) / range;
        if (d > 1.0) d = 1.0;
      }
      dist[i] += w * d;
    }
  }

  FeatureSchema schema_;
  std::size_t n_ = 0;
  std::vector<Column> columns_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> global_freq_;
};

// One-shot form of the operation; building the classifier dominates the cost,
// so loops should construct Ib1Classifier once instead.
inline Ib1Result classify_ib1(const InstanceBase& base, std::span<const FeatureValue> query) {
  return Ib1Classifier(base).classify_full(query);
}

}  // namespace mbsp
