#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsp/classifier.hpp"
#include "mbsp/instance.hpp"
#include "mbsp/iob.hpp"
#include "mbsp/metrics.hpp"
#include "mbsp/sentence.hpp"

namespace mbsp {

inline constexpr const char* kNoRelationLabel = "-";

enum class HeadSource : unsigned char { NpHead, VpHead, BareToken };

// One element of the reduced sentence: a chunk collapsed to its rightmost
// word, or a token outside any chunk.
struct HeadItem {
  std::size_t token_index = 0;
  std::string word;
  std::string pos;
  HeadSource source = HeadSource::BareToken;
};

inline std::vector<HeadItem> reduce_to_heads(const Sentence& sentence,
                                             const std::vector<Chunk>& chunks) {
  std::vector<HeadItem> items;
  std::size_t next_chunk = 0;
  std::vector<Chunk> sorted = chunks;
  std::sort(sorted.begin(), sorted.end(),
            [](const Chunk& a, const Chunk& b) { return a.begin < b.begin; });
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (next_chunk < sorted.size() && i == sorted[next_chunk].begin) {
      const Chunk& c = sorted[next_chunk];
      const Token& head = sentence.tokens[c.end];
      items.push_back(HeadItem{c.end, head.word, head.pos,
                               c.kind == ChunkKind::NP ? HeadSource::NpHead
                                                       : HeadSource::VpHead});
      i = c.end;
      ++next_chunk;
    } else {
      const Token& t = sentence.tokens[i];
      items.push_back(HeadItem{i, t.word, t.pos, HeadSource::BareToken});
    }
  }
  return items;
}

// Candidates are any items except verbs themselves and punctuation; both
// still occupy positions for distances, contexts and comma counts.
inline bool is_punctuation_pos(const std::string& pos) {
  static const std::array<const char*, 9> kPunct = {".", ",",     ":",     "``",  "''",
                                                    "$", "-LRB-", "-RRB-", "#"};
  for (const char* p : kPunct)
    if (pos == p) return true;
  return false;
}

struct CandidatePair {
  std::size_t verb_item = 0;  // index into the item list
  std::size_t head_item = 0;
};

// Every (baseVP head, candidate) pair with at most one other baseVP head
// strictly between them.
inline std::vector<CandidatePair> generate_pairs(const std::vector<HeadItem>& items) {
  std::vector<CandidatePair> pairs;
  for (std::size_t v = 0; v < items.size(); ++v) {
    if (items[v].source != HeadSource::VpHead) continue;
    for (std::size_t h = 0; h < items.size(); ++h) {
      if (h == v) continue;
      if (items[h].source == HeadSource::VpHead) continue;
      if (is_punctuation_pos(items[h].pos)) continue;
      const std::size_t lo = std::min(v, h);
      const std::size_t hi = std::max(v, h);
      std::size_t between = 0;
      for (std::size_t k = lo + 1; k < hi; ++k)
        if (items[k].source == HeadSource::VpHead) ++between;
      if (between <= 1) pairs.push_back(CandidatePair{v, h});
    }
  }
  return pairs;
}

// Feature layout of the detection task: distance, intervening baseVPs and
// commas (numeric), then verb, two left context items, head and one right
// context item as word/POS pairs.
inline FeatureSchema make_relation_schema() {
  std::vector<FeatureSpec> specs = {
      {"distance", FeatureKind::Numeric},  {"vps_between", FeatureKind::Numeric},
      {"commas_between", FeatureKind::Numeric}, {"verb_w", FeatureKind::Symbolic},
      {"verb_p", FeatureKind::Symbolic},   {"left2_w", FeatureKind::Symbolic},
      {"left2_p", FeatureKind::Symbolic},  {"left1_w", FeatureKind::Symbolic},
      {"left1_p", FeatureKind::Symbolic},  {"head_w", FeatureKind::Symbolic},
      {"head_p", FeatureKind::Symbolic},   {"right_w", FeatureKind::Symbolic},
      {"right_p", FeatureKind::Symbolic}};
  return FeatureSchema(std::move(specs));
}

struct RelationInstance {
  std::size_t verb_token = 0;  // token indices, usable as RelationPair fields
  std::size_t head_token = 0;
  Instance instance;
};

// Gold class of a candidate: the relation recorded on the head token for
// this verb, or "-" when there is none.
inline std::string gold_relation_class(const Sentence& sentence, std::size_t verb_token,
                                       std::size_t head_token) {
  for (const Relation& rel : sentence.tokens[head_token].relations)
    if (rel.verb_index == verb_token) return to_string(rel.cls);
  return kNoRelationLabel;
}

inline RelationInstance build_relation_instance(const std::vector<HeadItem>& items,
                                                CandidatePair pair,
                                                const Sentence* gold = nullptr) {
  const HeadItem& verb = items[pair.verb_item];
  const HeadItem& head = items[pair.head_item];

  const auto signed_distance =
      static_cast<double>(static_cast<std::ptrdiff_t>(pair.head_item) -
                          static_cast<std::ptrdiff_t>(pair.verb_item));
  const std::size_t lo = std::min(pair.verb_item, pair.head_item);
  const std::size_t hi = std::max(pair.verb_item, pair.head_item);
  std::size_t vps = 0, commas = 0;
  for (std::size_t k = lo + 1; k < hi; ++k) {
    if (items[k].source == HeadSource::VpHead) ++vps;
    if (items[k].word == ",") ++commas;
  }

  auto word_at = [&](std::ptrdiff_t at) {
    if (at < 0 || at >= static_cast<std::ptrdiff_t>(items.size())) return FeatureValue::missing();
    return FeatureValue::symbol(items[static_cast<std::size_t>(at)].word);
  };
  auto pos_at = [&](std::ptrdiff_t at) {
    if (at < 0 || at >= static_cast<std::ptrdiff_t>(items.size())) return FeatureValue::missing();
    return FeatureValue::symbol(items[static_cast<std::size_t>(at)].pos);
  };
  const auto h = static_cast<std::ptrdiff_t>(pair.head_item);

  RelationInstance out;
  out.verb_token = verb.token_index;
  out.head_token = head.token_index;
  out.instance.values = {FeatureValue::number(signed_distance),
                         FeatureValue::number(static_cast<double>(vps)),
                         FeatureValue::number(static_cast<double>(commas)),
                         FeatureValue::symbol(verb.word),
                         FeatureValue::symbol(verb.pos),
                         word_at(h - 2),
                         pos_at(h - 2),
                         word_at(h - 1),
                         pos_at(h - 1),
                         FeatureValue::symbol(head.word),
                         FeatureValue::symbol(head.pos),
                         word_at(h + 1),
                         pos_at(h + 1)};
  if (gold != nullptr)
    out.instance.label = gold_relation_class(*gold, verb.token_index, head.token_index);
  return out;
}

// All candidate instances of one sentence; chunks come from its tag column.
inline std::vector<RelationInstance> sentence_relation_instances(const Sentence& sentence,
                                                                 bool labeled) {
  const std::vector<Chunk> chunks = sentence_chunks(sentence);
  const std::vector<HeadItem> items = reduce_to_heads(sentence, chunks);
  std::vector<RelationInstance> out;
  for (const CandidatePair& pair : generate_pairs(items))
    out.push_back(build_relation_instance(items, pair, labeled ? &sentence : nullptr));
  return out;
}

inline InstanceBase collect_relation_instances(const SentenceView& sentences) {
  InstanceBase base(make_relation_schema());
  base.schema().add_class(kNoRelationLabel);  // keep "-" present even on tiny corpora
  for (const Sentence* s : sentences)
    for (RelationInstance& ri : sentence_relation_instances(*s, true))
      base.add(std::move(ri.instance));
  return base;
}

inline std::optional<RelClass> parse_relation_label(const std::string& label) {
  if (label == "S") return RelClass::Subject;
  if (label == "O") return RelClass::Object;
  return std::nullopt;
}

// Classifies every candidate; in Unanimous mode a pair is kept only when
// both models output the same non-"-" class.
inline std::vector<RelationPair> predict_relations(const Classifier* ib1,
                                                   const Classifier* igtree, Algorithm mode,
                                                   const Sentence& sentence) {
  const Classifier* first = nullptr;
  const Classifier* second = nullptr;
  switch (mode) {
    case Algorithm::Ib1Ig:
      if (ib1 == nullptr) throw std::invalid_argument("predict_relations: ib1 model missing");
      first = ib1;
      break;
    case Algorithm::IgTree:
      if (igtree == nullptr)
        throw std::invalid_argument("predict_relations: igtree model missing");
      first = igtree;
      break;
    case Algorithm::Unanimous:
      if (ib1 == nullptr || igtree == nullptr)
        throw std::invalid_argument("predict_relations: unanimous mode needs both models");
      first = ib1;
      second = igtree;
      break;
  }

  std::vector<RelationPair> pairs;
  for (const RelationInstance& ri : sentence_relation_instances(sentence, false)) {
    std::string label = first->classify(ri.instance.values);
    if (second != nullptr && label != kNoRelationLabel) {
      if (second->classify(ri.instance.values) != label) label = kNoRelationLabel;
    }
    const auto cls = parse_relation_label(label);
    if (cls) pairs.push_back(RelationPair{ri.verb_token, ri.head_token, *cls});
  }
  return pairs;
}

// (Pro)noun right before the verb is its subject, right after it its object.
inline std::vector<RelationPair> heuristic_baseline(const std::vector<HeadItem>& items) {
  auto nominal = [](const std::string& pos) {
    return pos.rfind("NN", 0) == 0 || pos.rfind("PRP", 0) == 0;
  };
  std::vector<RelationPair> pairs;
  for (std::size_t v = 0; v < items.size(); ++v) {
    if (items[v].source != HeadSource::VpHead) continue;
    if (v > 0 && nominal(items[v - 1].pos))
      pairs.push_back(RelationPair{items[v].token_index, items[v - 1].token_index,
                                   RelClass::Subject});
    if (v + 1 < items.size() && nominal(items[v + 1].pos))
      pairs.push_back(RelationPair{items[v].token_index, items[v + 1].token_index,
                                   RelClass::Object});
  }
  return pairs;
}

// Draws a class for every candidate instance from the training distribution.
class RandomRelationAssigner {
 public:
  RandomRelationAssigner(const std::map<std::string, std::size_t>& class_frequencies,
                         std::uint64_t seed)
      : engine_(seed) {
    double total = 0.0;
    for (const auto& [label, count] : class_frequencies)
      total += static_cast<double>(count);
    if (total <= 0.0)
      throw std::invalid_argument("random baseline needs a non-empty class distribution");
    double cum = 0.0;
    for (const auto& [label, count] : class_frequencies) {
      cum += static_cast<double>(count) / total;
      cumulative_.emplace_back(cum, label);
    }
    cumulative_.back().first = 1.0;
  }

  std::string draw() {
    const double r = static_cast<double>(engine_()) / (static_cast<double>(engine_.max()) + 1.0);
    for (const auto& [cum, label] : cumulative_)
      if (r < cum) return label;
    return cumulative_.back().second;
  }

  std::vector<RelationPair> assign(const std::vector<RelationInstance>& instances) {
    std::vector<RelationPair> pairs;
    for (const RelationInstance& ri : instances) {
      const auto cls = parse_relation_label(draw());
      if (cls) pairs.push_back(RelationPair{ri.verb_token, ri.head_token, *cls});
    }
    return pairs;
  }

 private:
  std::mt19937_64 engine_;
  std::vector<std::pair<double, std::string>> cumulative_;
};

struct RelationEval {
  std::size_t instances = 0;
  std::size_t correct_instances = 0;
  PrfCounts together, subjects, objects;

  double accuracy() const {
    return instances == 0
               ? 1.0
               : static_cast<double>(correct_instances) / static_cast<double>(instances);
  }
  RelationEval& operator+=(const RelationEval& o) {
    instances += o.instances;
    correct_instances += o.correct_instances;
    together += o.together;
    subjects += o.subjects;
    objects += o.objects;
    return *this;
  }
};

// Pair-level precision/recall plus instance-level accuracy for one sentence.
// Gold pairs outside the candidate set still count as recall misses; the
// accuracy denominator is the candidate set itself.
inline RelationEval evaluate_relations(const std::vector<RelationPair>& gold,
                                       const std::vector<RelationPair>& predicted,
                                       const std::vector<CandidatePair>& candidates,
                                       const std::vector<HeadItem>& items) {
  RelationEval ev;
  auto class_of = [](const std::vector<RelationPair>& pairs, std::size_t v,
                     std::size_t h) -> std::string {
    for (const RelationPair& p : pairs)
      if (p.verb_index == v && p.head_index == h) return to_string(p.cls);
    return kNoRelationLabel;
  };

  ev.instances = candidates.size();
  for (const CandidatePair& c : candidates) {
    const std::size_t v = items[c.verb_item].token_index;
    const std::size_t h = items[c.head_item].token_index;
    if (class_of(gold, v, h) == class_of(predicted, v, h)) ++ev.correct_instances;
  }

  for (const RelationPair& g : gold) {
    ++ev.together.gold;
    ++(g.cls == RelClass::Subject ? ev.subjects : ev.objects).gold;
  }
  for (const RelationPair& p : predicted) {
    ++ev.together.predicted;
    ++(p.cls == RelClass::Subject ? ev.subjects : ev.objects).predicted;
    if (std::find(gold.begin(), gold.end(), p) != gold.end()) {
      ++ev.together.correct;
      ++(p.cls == RelClass::Subject ? ev.subjects : ev.objects).correct;
    }
  }
  return ev;
}

// Corpus-level evaluation; candidates are regenerated from the predicted
// document's chunk column.
inline RelationEval evaluate_relation_documents(const CorpusDocument& gold,
                                                const CorpusDocument& predicted) {
  if (gold.sentences.size() != predicted.sentences.size())
    throw std::invalid_argument("evaluate_relations: sentence counts differ");
  RelationEval ev;
  for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
    const Sentence& gs = gold.sentences[i];
    const Sentence& ps = predicted.sentences[i];
    if (gs.size() != ps.size())
      throw std::invalid_argument("evaluate_relations: sentence " + std::to_string(i) +
                                  " token counts differ");
    const std::vector<Chunk> chunks = sentence_chunks(ps);
    const std::vector<HeadItem> items = reduce_to_heads(ps, chunks);
    ev += evaluate_relations(gold_pairs(gs), gold_pairs(ps), generate_pairs(items), items);
  }
  return ev;
}

}  // namespace mbsp
