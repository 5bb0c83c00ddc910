// Brute-force 1-NN reference used to cross-check the library classifier.
// Self-contained on purpose: own value type, own distance, own tie handling.
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace oracle {

struct OValue {
  enum Kind { Missing, Symbol, Number } kind = Missing;
  std::string sym;
  double num = 0.0;

  static OValue missing() { return OValue{}; }
  static OValue symbol(std::string s) { return OValue{Symbol, std::move(s), 0.0}; }
  static OValue number(double v) { return OValue{Number, {}, v}; }
};

struct OFeature {
  bool numeric = false;
  double weight = 0.0;
  double lo = 0.0, hi = 0.0;  // observed training range, numeric only
};

struct ODataset {
  std::vector<OFeature> features;
  std::vector<std::vector<OValue>> rows;
  std::vector<std::string> labels;
};

inline double nn_delta(const OFeature& f, const OValue& a, const OValue& b) {
  const bool am = a.kind == OValue::Missing;
  const bool bm = b.kind == OValue::Missing;
  if (am || bm) return (am && bm) ? 0.0 : 1.0;
  if (!f.numeric) return a.sym == b.sym ? 0.0 : 1.0;
  const double range = f.hi - f.lo;
  if (range <= 0.0) return 0.0;
  double d = std::fabs(a.num - b.num) / range;
  return d > 1.0 ? 1.0 : d;
}

inline double nn_distance(const ODataset& ds, const std::vector<OValue>& a,
                          const std::vector<OValue>& b) {
  double d = 0.0;
  for (std::size_t f = 0; f < ds.features.size(); ++f)
    d += ds.features[f].weight * nn_delta(ds.features[f], a[f], b[f]);
  return d;
}

struct NnAnswer {
  std::string label;
  double dist = 0.0;
  std::size_t ties = 0;
};

// Scans every row, keeps the whole set tied at minimum distance, then picks
// the majority class; ties broken by global class frequency, then by the
// lexicographically smallest label.
inline NnAnswer nn_classify(const ODataset& ds, const std::vector<OValue>& query) {
  std::vector<double> dist(ds.rows.size());
  for (std::size_t i = 0; i < ds.rows.size(); ++i)
    dist[i] = nn_distance(ds, ds.rows[i], query);

  double best = dist[0];
  for (double d : dist)
    if (d < best) best = d;

  std::map<std::string, std::size_t> global;
  for (const auto& l : ds.labels) ++global[l];

  std::map<std::string, std::size_t> tied;
  std::size_t nties = 0;
  for (std::size_t i = 0; i < ds.rows.size(); ++i)
    if (dist[i] == best) {
      ++tied[ds.labels[i]];
      ++nties;
    }

  std::string pick;
  for (const auto& [label, count] : tied) {
    if (pick.empty()) {
      pick = label;
      continue;
    }
    const std::size_t pc = tied[pick];
    if (count > pc || (count == pc && global[label] > global[pick]))
      pick = label;
    // equal count and equal global frequency: keep the earlier (smaller) label
  }
  return NnAnswer{pick, best, nties};
}

}  // namespace oracle
