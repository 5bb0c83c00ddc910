#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsp/ib1.hpp"
#include "mbsp/igtree.hpp"
#include "mbsp/instance.hpp"

namespace mbsp {

enum class ModelKind { Ib1, IgTree };

namespace detail {

// Tab-separated fields; backslash escaping keeps tab/newline/backslash and a
// leading space representable. "\-" (never produced by escaping) marks the
// missing value, so the empty string stays a legal symbol.
inline std::string escape_field(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\\')
      out += "\\\\";
    else if (c == '\t')
      out += "\\t";
    else if (c == '\n')
      out += "\\n";
    else if (c == '\r')
      out += "\\r";
    else if (c == ' ' && i == 0)
      out += "\\s";
    else
      out += c;
  }
  return out;
}

inline std::string unescape_field(const std::string& s, const std::string& where) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw std::runtime_error(where + ": dangling backslash");
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 's': out += ' '; break;
      default: throw std::runtime_error(where + ": bad escape '\\" + s[i] + "'");
    }
  }
  return out;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error(where + ": bad number '" + s + "'");
  return x;
}

inline std::string encode_value(const FeatureValue& v) {
  switch (v.kind()) {
    case FeatureValue::Kind::Missing: return "\\-";
    case FeatureValue::Kind::Symbol: return escape_field(v.symbol());
    case FeatureValue::Kind::Number: return format_double(v.number());
  }
  return {};
}

inline FeatureValue decode_value(const std::string& field, FeatureKind kind,
                                 const std::string& where) {
  if (field == "\\-") return FeatureValue::missing();
  if (kind == FeatureKind::Numeric) return FeatureValue::number(parse_double(field, where));
  return FeatureValue::symbol(unescape_field(field, where));
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++lineno_;
    return true;
  }
  std::string need(const std::string& what) {
    std::string line;
    if (!next(line)) throw std::runtime_error(where() + ": unexpected end of file, expected " + what);
    return line;
  }
  std::string where() const { return path_ + ":" + std::to_string(lineno_); }

 private:
  std::istream& in_;
  std::string path_;
  std::size_t lineno_ = 0;
};

inline void write_schema(std::ostream& out, const FeatureSchema& schema) {
  out << "classes";
  for (const auto& label : schema.class_domain()) out << '\t' << escape_field(label);
  out << '\n';
  out << "features\t" << schema.size() << '\n';
  for (std::size_t f = 0; f < schema.size(); ++f) {
    const FeatureSpec& spec = schema.feature(f);
    out << "feature\t" << escape_field(spec.name) << '\t'
        << (spec.kind == FeatureKind::Numeric ? "numeric" : "symbolic") << '\t'
        << format_double(schema.weights()[f]) << '\n';
  }
}

inline FeatureSchema read_schema(LineReader& in) {
  auto fields = split_tabs(in.need("classes line"));
  if (fields.empty() || fields[0] != "classes")
    throw std::runtime_error(in.where() + ": expected 'classes' line");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i < fields.size(); ++i)
    labels.push_back(unescape_field(fields[i], in.where()));

  fields = split_tabs(in.need("features line"));
  if (fields.size() != 2 || fields[0] != "features")
    throw std::runtime_error(in.where() + ": expected 'features <count>' line");
  const long nf = std::strtol(fields[1].c_str(), nullptr, 10);
  if (nf < 0) throw std::runtime_error(in.where() + ": bad feature count");

  std::vector<FeatureSpec> specs;
  std::vector<double> weights;
  for (long i = 0; i < nf; ++i) {
    fields = split_tabs(in.need("feature line"));
    if (fields.size() != 4 || fields[0] != "feature")
      throw std::runtime_error(in.where() + ": expected 'feature <name> <kind> <weight>'");
    FeatureSpec spec;
    spec.name = unescape_field(fields[1], in.where());
    if (fields[2] == "numeric")
      spec.kind = FeatureKind::Numeric;
    else if (fields[2] == "symbolic")
      spec.kind = FeatureKind::Symbolic;
    else
      throw std::runtime_error(in.where() + ": bad feature kind '" + fields[2] + "'");
    specs.push_back(std::move(spec));
    weights.push_back(parse_double(fields[3], in.where()));
  }
  FeatureSchema schema(std::move(specs));
  for (const auto& label : labels) schema.add_class(label);
  schema.set_weights(std::move(weights));
  return schema;
}

}  // namespace detail

inline constexpr const char* kModelHeader = "MBSP-MODEL v1";

// IB1 models persist the full instance memory.
inline void save_model(const InstanceBase& base, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
  out << kModelHeader << '\n' << "kind\tib1\n";
  detail::write_schema(out, base.schema());
  for (std::size_t f = 0; f < base.schema().size(); ++f)
    if (base.schema().feature(f).kind == FeatureKind::Numeric) {
      const auto [lo, hi] = base.numeric_range(f);
      out << "range\t" << f << '\t' << detail::format_double(lo) << '\t'
          << detail::format_double(hi) << '\n';
    }
  out << "instances\t" << base.size() << '\n';
  for (const Instance& inst : base.instances()) {
    for (const FeatureValue& v : inst.values) out << detail::encode_value(v) << '\t';
    out << detail::escape_field(inst.label) << '\n';
  }
  if (!out) throw std::runtime_error("write error on '" + path + "'");
}

// IGTree models persist the grown tree as an indented preorder dump.
inline void save_model(const IgTreeModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
  out << kModelHeader << '\n' << "kind\tigtree\n";
  detail::write_schema(out, model.schema());
  out << "order";
  for (std::size_t f : model.feature_order()) out << '\t' << f;
  out << '\n' << "tree\n";
  model.visit([&](std::size_t depth, const FeatureValue* edge, const std::string& label, bool) {
    for (std::size_t i = 0; i < depth; ++i) out << "  ";
    if (edge == nullptr)
      out << "root";
    else
      out << detail::encode_value(*edge);
    out << '\t' << detail::escape_field(label) << '\n';
  });
  if (!out) throw std::runtime_error("write error on '" + path + "'");
}

// A deserialized model of either kind, ready to hand out classifiers.
class LoadedModel {
 public:
  LoadedModel(InstanceBase base) : kind_(ModelKind::Ib1), base_(std::move(base)) {}
  LoadedModel(IgTreeModel tree) : kind_(ModelKind::IgTree), tree_(std::move(tree)) {}

  ModelKind kind() const { return kind_; }

  const InstanceBase& ib1_base() const {
    if (!base_) throw std::logic_error("not an ib1 model");
    return *base_;
  }
  const IgTreeModel& igtree() const {
    if (!tree_) throw std::logic_error("not an igtree model");
    return *tree_;
  }
  const FeatureSchema& schema() const {
    return kind_ == ModelKind::Ib1 ? base_->schema() : tree_->schema();
  }

  // Self-contained classifier; the LoadedModel may be discarded afterwards.
  std::unique_ptr<Classifier> make_classifier() const {
    if (kind_ == ModelKind::Ib1) return std::make_unique<Ib1Classifier>(*base_);
    return std::make_unique<IgTreeModel>(*tree_);
  }

 private:
  ModelKind kind_;
  std::optional<InstanceBase> base_;
  std::optional<IgTreeModel> tree_;
};

inline LoadedModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open model file '" + path + "'");
  detail::LineReader in(file, path);

  const std::string header = in.need("header");
  if (header != kModelHeader) {
    const std::string prefix = "MBSP-MODEL ";
    if (header.compare(0, prefix.size(), prefix) == 0)
      throw std::runtime_error(in.where() + ": unsupported model version '" +
                               header.substr(prefix.size()) + "' (expected v1)");
    throw std::runtime_error(in.where() + ": not an MBSP model file");
  }

  auto fields = detail::split_tabs(in.need("kind line"));
  if (fields.size() != 2 || fields[0] != "kind")
    throw std::runtime_error(in.where() + ": expected 'kind' line");
  const std::string kind = fields[1];
  if (kind != "ib1" && kind != "igtree")
    throw std::runtime_error(in.where() + ": unknown model kind '" + kind + "'");

  FeatureSchema schema = detail::read_schema(in);

  if (kind == "ib1") {
    std::string line = in.need("range or instances line");
    while (true) {
      fields = detail::split_tabs(line);
      if (!fields.empty() && fields[0] == "range") {
        if (fields.size() != 4) throw std::runtime_error(in.where() + ": bad range line");
        line = in.need("range or instances line");  // ranges are recomputed from data
        continue;
      }
      break;
    }
    if (fields.size() != 2 || fields[0] != "instances")
      throw std::runtime_error(in.where() + ": expected 'instances <count>' line");
    const long n = std::strtol(fields[1].c_str(), nullptr, 10);
    const std::vector<double> weights = schema.weights();
    InstanceBase base(std::move(schema));
    for (long i = 0; i < n; ++i) {
      fields = detail::split_tabs(in.need("instance line"));
      if (fields.size() != base.schema().size() + 1)
        throw std::runtime_error(in.where() + ": instance has " +
                                 std::to_string(fields.size() - 1) + " values, expected " +
                                 std::to_string(base.schema().size()));
      Instance inst;
      for (std::size_t f = 0; f < base.schema().size(); ++f)
        inst.values.push_back(
            detail::decode_value(fields[f], base.schema().feature(f).kind, in.where()));
      inst.label = detail::unescape_field(fields.back(), in.where());
      base.add(std::move(inst));
    }
    base.schema().set_weights(weights);
    return LoadedModel(std::move(base));
  }

  fields = detail::split_tabs(in.need("order line"));
  if (fields.empty() || fields[0] != "order" || fields.size() != schema.size() + 1)
    throw std::runtime_error(in.where() + ": expected 'order' line with one entry per feature");
  std::vector<std::size_t> order;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const long f = std::strtol(fields[i].c_str(), nullptr, 10);
    if (f < 0 || static_cast<std::size_t>(f) >= schema.size())
      throw std::runtime_error(in.where() + ": feature index out of range in order line");
    order.push_back(static_cast<std::size_t>(f));
  }
  if (in.need("tree line") != "tree")
    throw std::runtime_error(in.where() + ": expected 'tree' line");

  IgTreeBuilder builder(schema, order);
  std::string line;
  bool saw_root = false;
  while (in.next(line)) {
    if (line.empty()) continue;
    std::size_t spaces = 0;
    while (spaces < line.size() && line[spaces] == ' ') ++spaces;
    if (spaces % 2 != 0) throw std::runtime_error(in.where() + ": odd indentation");
    const std::size_t depth = spaces / 2;
    fields = detail::split_tabs(line.substr(spaces));
    if (fields.size() != 2) throw std::runtime_error(in.where() + ": expected '<edge>\\t<class>'");
    const std::string label = detail::unescape_field(fields[1], in.where());
    if (depth == 0) {
      if (fields[0] != "root" || saw_root)
        throw std::runtime_error(in.where() + ": malformed root line");
      builder.add_root(label);
      saw_root = true;
    } else {
      if (!saw_root) throw std::runtime_error(in.where() + ": node before root");
      if (depth > schema.size())
        throw std::runtime_error(in.where() + ": node deeper than feature count");
      const FeatureValue edge =
          detail::decode_value(fields[0], schema.feature(order[depth - 1]).kind, in.where());
      builder.add_node(depth, edge, label);
    }
  }
  if (!saw_root) throw std::runtime_error(path + ": tree dump has no root");
  return LoadedModel(builder.finish());
}

}  // namespace mbsp
