#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsp/classifier.hpp"
#include "mbsp/instance.hpp"
#include "mbsp/iob.hpp"
#include "mbsp/metrics.hpp"
#include "mbsp/sentence.hpp"

namespace mbsp {

// Window layout for the per-token tagging task. The default follows the
// two-left/one-right context with both words and POS tags; the wide preset
// (5 left / 3 right) is the alternative tuning.
struct ChunkerConfig {
  int left = 2;
  int right = 1;
  bool use_words = true;
  bool use_pos = true;
  Algorithm algorithm = Algorithm::Ib1Ig;
};

inline FeatureSchema make_chunker_schema(const ChunkerConfig& cfg) {
  if (cfg.left < 0 || cfg.right < 0)
    throw std::invalid_argument("chunker window bounds must be non-negative");
  if (!cfg.use_words && !cfg.use_pos)
    throw std::invalid_argument("chunker needs words or POS tags as features");
  auto position_name = [](const char* prefix, int pos) {
    if (pos == 0) return std::string(prefix) + "[0]";
    return std::string(prefix) + "[" + (pos > 0 ? "+" : "") + std::to_string(pos) + "]";
  };
  std::vector<FeatureSpec> specs;
  if (cfg.use_words)
    for (int pos = -cfg.left; pos <= cfg.right; ++pos)
      specs.push_back({position_name("w", pos), FeatureKind::Symbolic});
  if (cfg.use_pos)
    for (int pos = -cfg.left; pos <= cfg.right; ++pos)
      specs.push_back({position_name("p", pos), FeatureKind::Symbolic});
  return FeatureSchema(std::move(specs));
}

// One instance per token: the window's words and/or POS tags around the
// focus, with missing padding beyond the sentence; label = gold chunk tag.
inline std::vector<Instance> make_window_instances(const Sentence& sentence,
                                                   const ChunkerConfig& cfg, bool labeled) {
  const auto n = static_cast<int>(sentence.size());
  std::vector<Instance> out;
  out.reserve(sentence.size());
  for (int i = 0; i < n; ++i) {
    Instance inst;
    if (cfg.use_words)
      for (int pos = -cfg.left; pos <= cfg.right; ++pos) {
        const int at = i + pos;
        inst.values.push_back(at < 0 || at >= n
                                  ? FeatureValue::missing()
                                  : FeatureValue::symbol(sentence.tokens[at].word));
      }
    if (cfg.use_pos)
      for (int pos = -cfg.left; pos <= cfg.right; ++pos) {
        const int at = i + pos;
        inst.values.push_back(at < 0 || at >= n
                                  ? FeatureValue::missing()
                                  : FeatureValue::symbol(sentence.tokens[at].pos));
      }
    if (labeled) {
      const auto& tag = sentence.tokens[i].chunk;
      if (!tag)
        throw std::runtime_error("token '" + sentence.tokens[i].word +
                                 "' has no chunk tag to train on");
      inst.label = to_string(*tag);
    }
    out.push_back(std::move(inst));
  }
  return out;
}

inline InstanceBase collect_chunker_instances(const SentenceView& sentences,
                                              const ChunkerConfig& cfg) {
  InstanceBase base(make_chunker_schema(cfg));
  for (const Sentence* s : sentences)
    for (Instance& inst : make_window_instances(*s, cfg, true)) base.add(std::move(inst));
  return base;
}

inline void check_chunker_model(const Classifier& model, const ChunkerConfig& cfg) {
  const FeatureSchema expected = make_chunker_schema(cfg);
  const FeatureSchema& got = model.schema();
  bool ok = got.size() == expected.size();
  for (std::size_t f = 0; ok && f < got.size(); ++f)
    ok = got.feature(f).name == expected.feature(f).name &&
         got.feature(f).kind == expected.feature(f).kind;
  if (!ok)
    throw std::runtime_error("model schema does not match the chunker window configuration");
}

struct ChunkResult {
  std::vector<ChunkTag> tags;
  std::vector<Chunk> chunks;
};

// Tags every token independently from its window, then decodes the tag
// sequence into chunks.
inline ChunkResult chunk_sentence(const Classifier& model, const Sentence& sentence,
                                  const ChunkerConfig& cfg) {
  check_chunker_model(model, cfg);
  ChunkResult result;
  result.tags.reserve(sentence.size());
  for (const Instance& inst : make_window_instances(sentence, cfg, false)) {
    const std::string label = model.classify(inst.values);
    const auto tag = parse_chunk_tag(label);
    if (!tag) throw std::runtime_error("model produced non-tag class '" + label + "'");
    result.tags.push_back(*tag);
  }
  result.chunks = decode_tags_to_chunks(result.tags);
  return result;
}

struct ChunkEval {
  std::size_t tokens = 0;
  std::size_t correct_tags = 0;
  PrfCounts np, vp, all;

  double accuracy() const {
    return tokens == 0 ? 1.0 : static_cast<double>(correct_tags) / static_cast<double>(tokens);
  }
  ChunkEval& operator+=(const ChunkEval& o) {
    tokens += o.tokens;
    correct_tags += o.correct_tags;
    np += o.np;
    vp += o.vp;
    all += o.all;
    return *this;
  }
};

// A predicted chunk is correct only when kind, start and end all match a
// gold chunk. Tag accuracy counts every token.
inline ChunkEval evaluate_chunk_tags(std::span<const ChunkTag> gold,
                                     std::span<const ChunkTag> predicted) {
  if (gold.size() != predicted.size())
    throw std::invalid_argument("evaluate_chunks: token counts differ");
  ChunkEval ev;
  ev.tokens = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (gold[i] == predicted[i]) ++ev.correct_tags;

  const std::vector<Chunk> gold_chunks = decode_tags_to_chunks(gold);
  const std::vector<Chunk> pred_chunks = decode_tags_to_chunks(predicted);
  for (const Chunk& c : gold_chunks) {
    ++ev.all.gold;
    ++(c.kind == ChunkKind::NP ? ev.np : ev.vp).gold;
  }
  for (const Chunk& c : pred_chunks) {
    ++ev.all.predicted;
    ++(c.kind == ChunkKind::NP ? ev.np : ev.vp).predicted;
    for (const Chunk& g : gold_chunks)
      if (g == c) {
        ++ev.all.correct;
        ++(c.kind == ChunkKind::NP ? ev.np : ev.vp).correct;
        break;
      }
  }
  return ev;
}

inline std::vector<ChunkTag> require_tags(const Sentence& s) {
  std::vector<ChunkTag> tags;
  tags.reserve(s.size());
  for (const Token& t : s.tokens) {
    if (!t.chunk) throw std::runtime_error("token '" + t.word + "' has no chunk tag");
    tags.push_back(*t.chunk);
  }
  return tags;
}

inline ChunkEval evaluate_chunks(const CorpusDocument& gold, const CorpusDocument& predicted) {
  if (gold.sentences.size() != predicted.sentences.size())
    throw std::invalid_argument("evaluate_chunks: sentence counts differ");
  ChunkEval ev;
  for (std::size_t i = 0; i < gold.sentences.size(); ++i)
    ev += evaluate_chunk_tags(require_tags(gold.sentences[i]),
                              require_tags(predicted.sentences[i]));
  return ev;
}

}  // namespace mbsp
