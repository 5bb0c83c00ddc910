#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbsp {

// Five-tag scheme: I_X inside a chunk of kind X, B_X inside a chunk of kind X
// whose preceding word ends another X chunk, O outside any chunk.
enum class ChunkTag : unsigned char { I_NP, O, B_NP, I_VP, B_VP };

enum class ChunkKind : unsigned char { NP, VP };

inline const char* to_string(ChunkTag t) {
  switch (t) {
    case ChunkTag::I_NP: return "I_NP";
    case ChunkTag::O: return "O";
    case ChunkTag::B_NP: return "B_NP";
    case ChunkTag::I_VP: return "I_VP";
    case ChunkTag::B_VP: return "B_VP";
  }
  return "?";
}

inline const char* to_string(ChunkKind k) { return k == ChunkKind::NP ? "NP" : "VP"; }

inline std::optional<ChunkTag> parse_chunk_tag(const std::string& s) {
  if (s == "I_NP") return ChunkTag::I_NP;
  if (s == "O") return ChunkTag::O;
  if (s == "B_NP") return ChunkTag::B_NP;
  if (s == "I_VP") return ChunkTag::I_VP;
  if (s == "B_VP") return ChunkTag::B_VP;
  return std::nullopt;
}

// Chunk kind a tag refers to; O has none.
inline std::optional<ChunkKind> tag_kind(ChunkTag t) {
  switch (t) {
    case ChunkTag::I_NP:
    case ChunkTag::B_NP: return ChunkKind::NP;
    case ChunkTag::I_VP:
    case ChunkTag::B_VP: return ChunkKind::VP;
    case ChunkTag::O: return std::nullopt;
  }
  return std::nullopt;
}

inline ChunkTag inside_tag(ChunkKind k) { return k == ChunkKind::NP ? ChunkTag::I_NP : ChunkTag::I_VP; }
inline ChunkTag begin_tag(ChunkKind k) { return k == ChunkKind::NP ? ChunkTag::B_NP : ChunkTag::B_VP; }

enum class RelClass : unsigned char { Subject, Object };

inline const char* to_string(RelClass c) { return c == RelClass::Subject ? "S" : "O"; }

// A gold or predicted grammatical relation carried on the head token:
// this token stands in the given relation to the verb at verb_index.
struct Relation {
  std::size_t verb_index = 0;
  RelClass cls = RelClass::Subject;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.verb_index == b.verb_index && a.cls == b.cls;
  }
};

struct Token {
  std::string word;
  std::string pos;
  std::optional<ChunkTag> chunk;
  std::vector<Relation> relations;

  friend bool operator==(const Token& a, const Token& b) {
    return a.word == b.word && a.pos == b.pos && a.chunk == b.chunk && a.relations == b.relations;
  }
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const Sentence& a, const Sentence& b) { return a.tokens == b.tokens; }
};

// Non-recursive, non-overlapping span; both ends inclusive.
struct Chunk {
  ChunkKind kind = ChunkKind::NP;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Chunk& a, const Chunk& b) {
    return a.kind == b.kind && a.begin == b.begin && a.end == b.end;
  }
};

struct CorpusDocument {
  std::vector<Sentence> sentences;
  std::string source_path;
};

using SentenceView = std::vector<const Sentence*>;

inline SentenceView full_view(const CorpusDocument& doc) {
  SentenceView view;
  view.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) view.push_back(&s);
  return view;
}

// A verb–head pair with its relation class; indices are token positions.
struct RelationPair {
  std::size_t verb_index = 0;
  std::size_t head_index = 0;
  RelClass cls = RelClass::Subject;

  friend bool operator==(const RelationPair& a, const RelationPair& b) {
    return a.verb_index == b.verb_index && a.head_index == b.head_index && a.cls == b.cls;
  }
  friend bool operator<(const RelationPair& a, const RelationPair& b) {
    if (a.verb_index != b.verb_index) return a.verb_index < b.verb_index;
    if (a.head_index != b.head_index) return a.head_index < b.head_index;
    return static_cast<int>(a.cls) < static_cast<int>(b.cls);
  }
};

inline std::vector<RelationPair> gold_pairs(const Sentence& sentence) {
  std::vector<RelationPair> pairs;
  for (std::size_t h = 0; h < sentence.size(); ++h)
    for (const Relation& rel : sentence.tokens[h].relations)
      pairs.push_back(RelationPair{rel.verb_index, h, rel.cls});
  return pairs;
}

}  // namespace mbsp
