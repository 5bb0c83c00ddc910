#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsp/iob.hpp"
#include "mbsp/sentence.hpp"

namespace mbsp {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline bool looks_like_conll_tag(const std::string& s) {
  if (s.size() < 3 || (s[0] != 'B' && s[0] != 'I') || s[1] != '-') return false;
  for (std::size_t i = 2; i < s.size(); ++i)
    if (!std::isupper(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

struct RawToken {
  std::string word, pos, chunk, rels;
  std::size_t lineno = 0;
};

inline void parse_relations(Token& token, const std::string& field, std::size_t lineno,
                            const std::string& path) {
  if (field == "_" || field.empty()) return;
  std::stringstream ss(field);
  std::string entry;
  while (std::getline(ss, entry, ',')) {
    auto fail = [&]() {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad relation '" +
                               entry + "' (expected S:<idx> or O:<idx>)");
    };
    if (entry.size() < 3 || entry[1] != ':') fail();
    RelClass cls;
    if (entry[0] == 'S')
      cls = RelClass::Subject;
    else if (entry[0] == 'O')
      cls = RelClass::Object;
    else {
      fail();
      return;
    }
    const std::string idx = entry.substr(2);
    for (char c : idx)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    if (idx.empty()) fail();
    token.relations.push_back(Relation{std::strtoull(idx.c_str(), nullptr, 10) == 0 && idx != "0"
                                           ? 0
                                           : static_cast<std::size_t>(
                                                 std::strtoull(idx.c_str(), nullptr, 10)),
                                       cls});
  }
}

// CoNLL-style chunk tags -> NP/VP extents; chunk kinds other than NP and VP
// count as outside.
inline std::vector<Chunk> conll_tags_to_chunks(const std::vector<std::string>& tags) {
  std::vector<Chunk> chunks;
  bool open = false;
  Chunk cur;
  auto close = [&]() {
    if (open) chunks.push_back(cur);
    open = false;
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string& t = tags[i];
    if (!looks_like_conll_tag(t)) {
      close();
      continue;
    }
    const std::string kind_s = t.substr(2);
    if (kind_s != "NP" && kind_s != "VP") {
      close();
      continue;
    }
    const ChunkKind kind = kind_s == "NP" ? ChunkKind::NP : ChunkKind::VP;
    if (t[0] == 'I' && open && cur.kind == kind) {
      cur.end = i;
      continue;
    }
    close();
    open = true;
    cur = Chunk{kind, i, i};
  }
  close();
  return chunks;
}

}  // namespace detail

// One token per line: WORD POS [CHUNKTAG] [RELS], blank line between
// sentences. CHUNKTAG is one of the five tags or "_"; RELS is "_" or
// comma-separated CLASS:VERBINDEX entries with 0-based in-sentence indices.
// Files carrying CoNLL-style B-NP/I-NP/... tags in the third column are
// accepted and re-encoded into the five-tag scheme.
inline CorpusDocument read_corpus(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open corpus file '" + path + "'");

  std::vector<std::vector<detail::RawToken>> raw_sentences;
  std::vector<detail::RawToken> current;
  bool saw_native = false, saw_conll = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = detail::split_ws(line);
    if (fields.empty()) {
      if (!current.empty()) raw_sentences.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (fields.size() < 2 || fields.size() > 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 2-4 columns, got " +
                               std::to_string(fields.size()));
    detail::RawToken raw;
    raw.word = fields[0];
    raw.pos = fields[1];
    if (fields.size() > 2) raw.chunk = fields[2];
    if (fields.size() > 3) raw.rels = fields[3];
    raw.lineno = lineno;

    if (!raw.chunk.empty() && raw.chunk != "_" && raw.chunk != "O") {
      if (detail::looks_like_conll_tag(raw.chunk))
        saw_conll = true;
      else if (parse_chunk_tag(raw.chunk))
        saw_native = true;
      else
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad chunk tag '" +
                                 raw.chunk + "'");
    }
    current.push_back(std::move(raw));
  }
  if (!current.empty()) raw_sentences.push_back(std::move(current));
  if (saw_native && saw_conll)
    throw std::runtime_error(path + ": mixes five-tag and CoNLL chunk tag styles");

  CorpusDocument doc;
  doc.source_path = path;
  for (const auto& raw : raw_sentences) {
    Sentence sentence;
    std::vector<std::string> conll_tags;
    bool any_chunk = false;
    for (const auto& rt : raw) {
      Token token;
      token.word = rt.word;
      token.pos = rt.pos;
      detail::parse_relations(token, rt.rels, rt.lineno, path);
      if (saw_conll) {
        conll_tags.push_back(rt.chunk);
        if (!rt.chunk.empty() && rt.chunk != "_") any_chunk = true;
      } else if (!rt.chunk.empty() && rt.chunk != "_") {
        token.chunk = *parse_chunk_tag(rt.chunk);
        any_chunk = true;
      }
      sentence.tokens.push_back(std::move(token));
    }
    if (saw_conll && any_chunk) {
      const auto tags =
          encode_chunks_to_tags(sentence.size(), detail::conll_tags_to_chunks(conll_tags));
      for (std::size_t i = 0; i < tags.size(); ++i) sentence.tokens[i].chunk = tags[i];
    }
    for (const auto& rt : raw)
      for (const Relation& rel : sentence.tokens[&rt - raw.data()].relations)
        if (rel.verb_index >= sentence.size())
          throw std::runtime_error(path + ":" + std::to_string(rt.lineno) +
                                   ": relation verb index " + std::to_string(rel.verb_index) +
                                   " out of range (sentence has " +
                                   std::to_string(sentence.size()) + " tokens)");
    doc.sentences.push_back(std::move(sentence));
  }
  return doc;
}

struct CorpusColumns {
  bool chunks = true;
  bool relations = true;
};

inline void write_corpus(const CorpusDocument& doc, std::ostream& out,
                         CorpusColumns columns = {}) {
  for (const Sentence& sentence : doc.sentences) {
    for (const Token& token : sentence.tokens) {
      out << token.word << ' ' << token.pos;
      if (columns.chunks) out << ' ' << (token.chunk ? to_string(*token.chunk) : "_");
      if (columns.relations) {
        out << ' ';
        if (token.relations.empty()) {
          out << '_';
        } else {
          for (std::size_t r = 0; r < token.relations.size(); ++r) {
            if (r > 0) out << ',';
            out << to_string(token.relations[r].cls) << ':' << token.relations[r].verb_index;
          }
        }
      }
      out << '\n';
    }
    out << '\n';
  }
}

inline void write_corpus(const CorpusDocument& doc, const std::string& path,
                         CorpusColumns columns = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus file '" + path + "'");
  write_corpus(doc, out, columns);
  if (!out) throw std::runtime_error("write error on '" + path + "'");
}

}  // namespace mbsp
