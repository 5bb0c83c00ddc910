#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbsp {

enum class FeatureKind { Symbolic, Numeric };

// One cell of an instance: a symbol, a number, or the missing marker.
// Missing behaves like a distinct symbolic value (it matches only itself).
class FeatureValue {
 public:
  enum class Kind { Missing, Symbol, Number };

  FeatureValue() = default;

  static FeatureValue missing() { return FeatureValue(); }
  static FeatureValue symbol(std::string s) {
    FeatureValue v;
    v.kind_ = Kind::Symbol;
    v.sym_ = std::move(s);
    return v;
  }
  static FeatureValue number(double x) {
    FeatureValue v;
    v.kind_ = Kind::Number;
    v.num_ = x;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_missing() const { return kind_ == Kind::Missing; }
  bool is_symbol() const { return kind_ == Kind::Symbol; }
  bool is_number() const { return kind_ == Kind::Number; }

  const std::string& symbol() const {
    if (!is_symbol()) throw std::logic_error("FeatureValue: not a symbol");
    return sym_;
  }
  double number() const {
    if (!is_number()) throw std::logic_error("FeatureValue: not a number");
    return num_;
  }

  friend bool operator==(const FeatureValue& a, const FeatureValue& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::Missing: return true;
      case Kind::Symbol: return a.sym_ == b.sym_;
      case Kind::Number: return a.num_ == b.num_;
    }
    return false;
  }
  friend bool operator!=(const FeatureValue& a, const FeatureValue& b) { return !(a == b); }

  // Exact string form usable as a hash key; distinct kinds never collide.
  std::string key() const {
    switch (kind_) {
      case Kind::Missing: return "\x01";
      case Kind::Symbol: return "=" + sym_;
      case Kind::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "#%.17g", num_);
        return buf;
      }
    }
    return {};
  }

 private:
  Kind kind_ = Kind::Missing;
  std::string sym_;
  double num_ = 0.0;
};

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Symbolic;
};

// Fixed, ordered feature layout shared by training and classification,
// plus the class label domain and the learned per-feature weights.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureSpec> features) : features_(std::move(features)) {
    weights_.assign(features_.size(), 0.0);
    for (std::size_t i = 0; i < features_.size(); ++i)
      for (std::size_t j = i + 1; j < features_.size(); ++j)
        if (features_[i].name == features_[j].name)
          throw std::invalid_argument("FeatureSchema: duplicate feature name '" +
                                      features_[i].name + "'");
  }

  std::size_t size() const { return features_.size(); }
  const FeatureSpec& feature(std::size_t i) const { return features_.at(i); }
  const std::vector<FeatureSpec>& features() const { return features_; }

  const std::vector<double>& weights() const { return weights_; }
  void set_weights(std::vector<double> w) {
    if (w.size() != features_.size())
      throw std::invalid_argument("FeatureSchema: weight count mismatch");
    for (double x : w)
      if (!(x >= 0.0)) throw std::invalid_argument("FeatureSchema: negative weight");
    weights_ = std::move(w);
  }

  // Sorted label set; grows as training data is added.
  const std::vector<std::string>& class_domain() const { return class_domain_; }
  void add_class(const std::string& label) {
    auto it = std::lower_bound(class_domain_.begin(), class_domain_.end(), label);
    if (it == class_domain_.end() || *it != label) class_domain_.insert(it, label);
  }
  bool has_class(const std::string& label) const {
    return std::binary_search(class_domain_.begin(), class_domain_.end(), label);
  }

 private:
  std::vector<FeatureSpec> features_;
  std::vector<std::string> class_domain_;
  std::vector<double> weights_;
};

}  // namespace mbsp
