#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mbsp/classifier.hpp"
#include "mbsp/info_gain.hpp"
#include "mbsp/instance.hpp"

namespace mbsp {

// Oblivious decision tree over the training instances: level d tests the
// feature with the d-th highest information gain, every node carries the
// majority class of its subset as a default, and lookup falls back to that
// default as soon as a query value has no matching branch.
class IgTreeModel final : public Classifier {
 public:
  static IgTreeModel build(const InstanceBase& base) {
    if (base.empty()) throw std::runtime_error("build_igtree: empty instance base");
    IgTreeModel m;
    m.schema_ = base.schema();
    const std::size_t nf = m.schema_.size();
    const std::size_t n = base.size();

    m.order_.resize(nf);
    std::iota(m.order_.begin(), m.order_.end(), std::size_t{0});
    const auto& w = m.schema_.weights();
    std::stable_sort(m.order_.begin(), m.order_.end(),
                     [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

    const auto& domain = m.schema_.class_domain();
    std::unordered_map<std::string, std::uint32_t> class_id;
    for (std::size_t i = 0; i < domain.size(); ++i)
      class_id[domain[i]] = static_cast<std::uint32_t>(i);

    std::vector<std::uint32_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = class_id.at(base.instances()[i].label);

    m.dicts_.resize(nf);
    std::vector<std::vector<std::uint32_t>> cols(nf, std::vector<std::uint32_t>(n));
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t i = 0; i < n; ++i)
        cols[f][i] = m.dicts_[f].intern(base.instances()[i].values[f]);

    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::uint32_t{0});
    m.grow(idx, 0, n, 0, cols, labels, domain.size());
    return m;
  }

  const FeatureSchema& schema() const override { return schema_; }

  // Features by descending information gain; ties keep schema order.
  const std::vector<std::size_t>& feature_order() const { return order_; }

  std::size_t node_count() const { return nodes_.size(); }

  std::string classify(std::span<const FeatureValue> query) const override {
    check_conforms(schema_, query);
    std::uint32_t cur = 0;
    for (std::size_t depth = 0; depth < order_.size(); ++depth) {
      const Node& node = nodes_[cur];
      if (node.children.empty()) break;
      const auto id = dicts_[order_[depth]].find(query[order_[depth]]);
      if (!id.second) return schema_.class_domain()[node.default_class];
      auto it = std::lower_bound(node.children.begin(), node.children.end(), id.first,
                                 [](const auto& c, std::uint32_t v) { return c.first < v; });
      if (it == node.children.end() || it->first != id.first)
        return schema_.class_domain()[node.default_class];
      cur = it->second;
    }
    return schema_.class_domain()[nodes_[cur].default_class];
  }

  // Preorder walk; fn(depth, edge, default_label, leaf) where edge is null
  // for the root. Used by serialization and by the structural tests.
  template <class Fn>
  void visit(Fn&& fn) const {
    visit_rec(0, 0, nullptr, fn);
  }

 private:
  struct ValueDict {
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<FeatureValue> values;

    std::uint32_t intern(const FeatureValue& v) {
      auto [it, fresh] = ids.emplace(v.key(), static_cast<std::uint32_t>(values.size()));
      if (fresh) values.push_back(v);
      return it->second;
    }
    std::pair<std::uint32_t, bool> find(const FeatureValue& v) const {
      auto it = ids.find(v.key());
      if (it == ids.end()) return {0, false};
      return {it->second, true};
    }
  };

  struct Node {
    std::uint32_t default_class = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // (value id, node) sorted
  };

  // Builds the subtree over idx[lo,hi) at the given depth; returns node index.
  std::uint32_t grow(std::vector<std::uint32_t>& idx, std::size_t lo, std::size_t hi,
                     std::size_t depth, const std::vector<std::vector<std::uint32_t>>& cols,
                     const std::vector<std::uint32_t>& labels, std::size_t nclasses) {
    const auto node_at = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();

    std::vector<std::size_t> counts(nclasses, 0);
    for (std::size_t i = lo; i < hi; ++i) ++counts[labels[idx[i]]];
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < counts.size(); ++c)
      if (counts[c] > counts[best]) best = c;  // ties keep the smaller label
    nodes_[node_at].default_class = best;

    const bool uniform = counts[best] == hi - lo;
    if (uniform || depth == order_.size()) return node_at;

    const auto& col = cols[order_[depth]];
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(lo),
              idx.begin() + static_cast<std::ptrdiff_t>(hi),
              [&](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });

    std::size_t run = lo;
    while (run < hi) {
      const std::uint32_t value = col[idx[run]];
      std::size_t stop = run + 1;
      while (stop < hi && col[idx[stop]] == value) ++stop;
      const std::uint32_t child = grow(idx, run, stop, depth + 1, cols, labels, nclasses);
      nodes_[node_at].children.emplace_back(value, child);
      run = stop;
    }
    return node_at;
  }

  template <class Fn>
  void visit_rec(std::uint32_t node, std::size_t depth, const FeatureValue* edge, Fn& fn) const {
    const Node& nd = nodes_[node];
    fn(depth, edge, schema_.class_domain()[nd.default_class], nd.children.empty());
    for (const auto& [value, child] : nd.children)
      visit_rec(child, depth + 1, &dicts_[order_[depth]].values[value], fn);
  }

  friend class IgTreeBuilder;

  FeatureSchema schema_;
  std::vector<std::size_t> order_;
  std::vector<ValueDict> dicts_;
  std::vector<Node> nodes_;
};

// Reassembles a tree from a preorder dump (depth, edge value, default label).
class IgTreeBuilder {
 public:
  IgTreeBuilder(FeatureSchema schema, std::vector<std::size_t> order) {
    if (order.size() != schema.size())
      throw std::invalid_argument("IgTreeBuilder: order size does not match schema");
    model_.schema_ = std::move(schema);
    model_.order_ = std::move(order);
    model_.dicts_.resize(model_.order_.size());
  }

  void add_root(const std::string& default_label) {
    if (!model_.nodes_.empty()) throw std::logic_error("IgTreeBuilder: root already added");
    model_.nodes_.push_back(IgTreeModel::Node{class_of(default_label), {}});
    path_.assign(1, 0);
  }

  void add_node(std::size_t depth, const FeatureValue& edge, const std::string& default_label) {
    if (depth == 0 || depth > path_.size())
      throw std::runtime_error("IgTreeBuilder: node depth out of sequence");
    path_.resize(depth);
    const std::uint32_t parent = path_.back();
    const std::uint32_t id = model_.dicts_[model_.order_[depth - 1]].intern(edge);
    const auto node_at = static_cast<std::uint32_t>(model_.nodes_.size());
    model_.nodes_.push_back(IgTreeModel::Node{class_of(default_label), {}});
    model_.nodes_[parent].children.emplace_back(id, node_at);
    path_.push_back(node_at);
  }

  IgTreeModel finish() {
    if (model_.nodes_.empty()) throw std::runtime_error("IgTreeBuilder: empty tree");
    for (auto& node : model_.nodes_)
      std::sort(node.children.begin(), node.children.end());
    return std::move(model_);
  }

 private:
  // The full class domain must be in the schema up front; growing it here
  // would renumber ids already baked into earlier nodes.
  std::uint32_t class_of(const std::string& label) const {
    const auto& domain = model_.schema_.class_domain();
    const auto it = std::lower_bound(domain.begin(), domain.end(), label);
    if (it == domain.end() || *it != label)
      throw std::runtime_error("IgTreeBuilder: label '" + label + "' not in class domain");
    return static_cast<std::uint32_t>(it - domain.begin());
  }

  IgTreeModel model_;
  std::vector<std::uint32_t> path_;
};

// Convenience wrapper matching the training pipeline: weight, then grow.
inline IgTreeModel build_igtree(InstanceBase& base) {
  compute_information_gain(base);
  return IgTreeModel::build(base);
}

}  // namespace mbsp
