#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "mbsp/sentence.hpp"

namespace mbsp {

// Chunk set -> per-token tags. A chunk-initial token gets B_X only when the
// token right before it ends a chunk of the same kind; everything else inside
// a chunk is I_X, everything outside is O.
inline std::vector<ChunkTag> encode_chunks_to_tags(std::size_t n_tokens,
                                                   std::vector<Chunk> chunks) {
  std::sort(chunks.begin(), chunks.end(),
            [](const Chunk& a, const Chunk& b) { return a.begin < b.begin; });
  std::size_t prev_end = 0;
  bool first = true;
  for (const Chunk& c : chunks) {
    if (c.begin > c.end || c.end >= n_tokens)
      throw std::invalid_argument("encode_chunks_to_tags: chunk out of range");
    if (!first && c.begin <= prev_end)
      throw std::invalid_argument("encode_chunks_to_tags: overlapping chunks");
    prev_end = c.end;
    first = false;
  }

  std::vector<ChunkTag> tags(n_tokens, ChunkTag::O);
  const Chunk* prev = nullptr;
  for (const Chunk& c : chunks) {
    const bool adjacent_same_kind =
        prev != nullptr && prev->kind == c.kind && prev->end + 1 == c.begin;
    tags[c.begin] = adjacent_same_kind ? begin_tag(c.kind) : inside_tag(c.kind);
    for (std::size_t i = c.begin + 1; i <= c.end; ++i) tags[i] = inside_tag(c.kind);
    prev = &c;
  }
  return tags;
}

// Tags -> chunk set. Classifier output need not be consistent; B_X after O
// and I_X after a chunk of the other kind both open a fresh chunk.
inline std::vector<Chunk> decode_tags_to_chunks(std::span<const ChunkTag> tags) {
  std::vector<Chunk> chunks;
  bool open = false;
  Chunk cur;
  auto close = [&]() {
    if (open) chunks.push_back(cur);
    open = false;
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const ChunkTag t = tags[i];
    const auto kind = tag_kind(t);
    if (!kind) {  // O
      close();
      continue;
    }
    const bool is_begin = t == ChunkTag::B_NP || t == ChunkTag::B_VP;
    if (!is_begin && open && cur.kind == *kind) {
      cur.end = i;
      continue;
    }
    close();
    open = true;
    cur = Chunk{*kind, i, i};
  }
  close();
  return chunks;
}

inline std::vector<Chunk> sentence_chunks(const Sentence& sentence) {
  std::vector<ChunkTag> tags;
  tags.reserve(sentence.size());
  for (const Token& t : sentence.tokens) {
    if (!t.chunk)
      throw std::runtime_error("sentence_chunks: token '" + t.word + "' has no chunk tag");
    tags.push_back(*t.chunk);
  }
  return decode_tags_to_chunks(tags);
}

}  // namespace mbsp
