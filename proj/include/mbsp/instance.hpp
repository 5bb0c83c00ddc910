#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mbsp/feature.hpp"

namespace mbsp {

// One feature vector with its class label; the unit of memory.
struct Instance {
  std::vector<FeatureValue> values;
  std::string label;
};

inline void check_conforms(const FeatureSchema& schema, std::span<const FeatureValue> values) {
  if (values.size() != schema.size())
    throw std::invalid_argument("instance has " + std::to_string(values.size()) +
                                " values, schema expects " + std::to_string(schema.size()));
  for (std::size_t f = 0; f < values.size(); ++f) {
    const bool numeric_slot = schema.feature(f).kind == FeatureKind::Numeric;
    if (values[f].is_number() && !numeric_slot)
      throw std::invalid_argument("numeric value in symbolic feature '" +
                                  schema.feature(f).name + "'");
    if (values[f].is_symbol() && numeric_slot)
      throw std::invalid_argument("symbolic value in numeric feature '" +
                                  schema.feature(f).name + "'");
    if (values[f].is_number() && !std::isfinite(values[f].number()))
      throw std::invalid_argument("non-finite value in numeric feature '" +
                                  schema.feature(f).name + "'");
  }
}

// The full training memory: schema, stored instances, class frequencies and
// the observed min/max per numeric feature. Immutable once training is done.
class InstanceBase {
 public:
  InstanceBase() = default;
  explicit InstanceBase(FeatureSchema schema) : schema_(std::move(schema)) {
    ranges_.assign(schema_.size(), Range{});
  }

  void add(Instance inst) {
    check_conforms(schema_, inst.values);
    schema_.add_class(inst.label);
    ++class_freq_[inst.label];
    for (std::size_t f = 0; f < inst.values.size(); ++f)
      if (inst.values[f].is_number()) {
        Range& r = ranges_[f];
        const double x = inst.values[f].number();
        if (!r.seen) {
          r.lo = r.hi = x;
          r.seen = true;
        } else {
          if (x < r.lo) r.lo = x;
          if (x > r.hi) r.hi = x;
        }
      }
    instances_.push_back(std::move(inst));
  }

  const FeatureSchema& schema() const { return schema_; }
  FeatureSchema& schema() { return schema_; }

  const std::vector<Instance>& instances() const { return instances_; }
  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }

  const std::map<std::string, std::size_t>& class_frequencies() const { return class_freq_; }
  std::size_t class_frequency(const std::string& label) const {
    auto it = class_freq_.find(label);
    return it == class_freq_.end() ? 0 : it->second;
  }

  // Observed training range of a numeric feature; (0,0) before any value.
  std::pair<double, double> numeric_range(std::size_t f) const {
    const Range& r = ranges_.at(f);
    return r.seen ? std::make_pair(r.lo, r.hi) : std::make_pair(0.0, 0.0);
  }

 private:
  struct Range {
    double lo = 0.0, hi = 0.0;
    bool seen = false;
  };

  FeatureSchema schema_;
  std::vector<Instance> instances_;
  std::map<std::string, std::size_t> class_freq_;
  std::vector<Range> ranges_;
};

}  // namespace mbsp
