#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "mbsp/feature.hpp"

namespace mbsp {

enum class Algorithm { Ib1Ig, IgTree, Unanimous };

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Ib1Ig: return "ib1ig";
    case Algorithm::IgTree: return "igtree";
    case Algorithm::Unanimous: return "unanimous";
  }
  return {};
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "ib1ig") return Algorithm::Ib1Ig;
  if (s == "igtree") return Algorithm::IgTree;
  if (s == "unanimous") return Algorithm::Unanimous;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

// Common face of a trained model. Implementations are immutable after
// construction, so one instance may serve concurrent classification calls.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual const FeatureSchema& schema() const = 0;
  virtual std::string classify(std::span<const FeatureValue> values) const = 0;
};

}  // namespace mbsp
