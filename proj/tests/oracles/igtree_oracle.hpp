// Reference oblivious decision tree, grown and walked independently of the
// library code. Map-based and slow; only meant for cross-checks.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "nn_oracle.hpp"

namespace oracle {

// Every value is keyed by an exact string form; numerics are not scaled.
inline std::string tree_key(const OValue& v) {
  switch (v.kind) {
    case OValue::Missing: return "\x01";
    case OValue::Symbol: return "=" + v.sym;
    case OValue::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "#%.17g", v.num);
      return buf;
    }
  }
  return {};
}

struct TreeNode {
  std::string default_label;
  std::map<std::string, std::unique_ptr<TreeNode>> children;
};

struct OTree {
  std::vector<std::size_t> order;  // features by descending weight, ties by index
  std::unique_ptr<TreeNode> root;
};

inline std::string majority_label(const ODataset& ds, const std::vector<std::size_t>& subset) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t i : subset) ++counts[ds.labels[i]];
  std::string best;
  std::size_t n = 0;
  for (const auto& [label, c] : counts)
    if (c > n) {
      best = label;
      n = c;
    }  // first (smallest) label wins ties
  return best;
}

inline std::unique_ptr<TreeNode> grow(const ODataset& ds, const OTree& t,
                                      const std::vector<std::size_t>& subset,
                                      std::size_t depth) {
  auto node = std::make_unique<TreeNode>();
  node->default_label = majority_label(ds, subset);
  bool uniform = true;
  for (std::size_t i : subset)
    if (ds.labels[i] != ds.labels[subset.front()]) {
      uniform = false;
      break;
    }
  if (uniform || depth == t.order.size()) return node;

  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i : subset)
    buckets[tree_key(ds.rows[i][t.order[depth]])].push_back(i);
  for (auto& [key, rows] : buckets)
    node->children[key] = grow(ds, t, rows, depth + 1);
  return node;
}

inline OTree build_tree(const ODataset& ds) {
  OTree t;
  t.order.resize(ds.features.size());
  std::iota(t.order.begin(), t.order.end(), std::size_t{0});
  std::stable_sort(t.order.begin(), t.order.end(), [&](std::size_t a, std::size_t b) {
    return ds.features[a].weight > ds.features[b].weight;
  });
  std::vector<std::size_t> all(ds.rows.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  t.root = grow(ds, t, all, 0);
  return t;
}

inline std::string tree_classify(const OTree& t, const std::vector<OValue>& query) {
  const TreeNode* node = t.root.get();
  for (std::size_t depth = 0; depth < t.order.size(); ++depth) {
    if (node->children.empty()) break;
    auto it = node->children.find(tree_key(query[t.order[depth]]));
    if (it == node->children.end()) break;
    node = it->second.get();
  }
  return node->default_label;
}

}  // namespace oracle
