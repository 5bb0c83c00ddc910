#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mbsp/instance.hpp"

namespace mbsp {

// Entropy in bits of a class count distribution.
inline double entropy_bits(const std::vector<std::size_t>& counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

// Information gain per feature: H(C) - sum_v P(v) H(C|v), base-2 logs.
// Numeric features are weighed on their exact value sets, like symbols.
// The result is also stored into the base's schema.
inline std::vector<double> compute_information_gain(InstanceBase& base) {
  if (base.empty()) throw std::runtime_error("empty training data");

  const std::size_t n = base.size();
  const std::size_t nf = base.schema().size();
  const auto& domain = base.schema().class_domain();

  std::unordered_map<std::string, std::size_t> class_id;
  for (std::size_t i = 0; i < domain.size(); ++i) class_id[domain[i]] = i;

  std::vector<std::size_t> prior(domain.size(), 0);
  for (const auto& [label, count] : base.class_frequencies()) prior[class_id[label]] = count;
  const double hc = entropy_bits(prior, n);

  std::vector<double> gains(nf, 0.0);
  for (std::size_t f = 0; f < nf; ++f) {
    // class counts per observed value of this feature
    std::unordered_map<std::string, std::vector<std::size_t>> per_value;
    for (const Instance& inst : base.instances()) {
      auto& counts = per_value[inst.values[f].key()];
      if (counts.empty()) counts.assign(domain.size(), 0);
      ++counts[class_id.at(inst.label)];
    }
    double cond = 0.0;
    for (const auto& [key, counts] : per_value) {
      std::size_t nv = 0;
      for (std::size_t c : counts) nv += c;
      cond += (static_cast<double>(nv) / static_cast<double>(n)) * entropy_bits(counts, nv);
    }
    double g = hc - cond;
    if (g < 0.0) g = 0.0;  // guard against rounding just below zero
    gains[f] = g;
  }

  base.schema().set_weights(gains);
  return gains;
}

}  // namespace mbsp
