#pragma once

// Gloss compiler: per-clause category extraction, [time, topic, verb,
// feelings, wh] reordering, and surface formatting (SIGN, fs-NAME, #LEX).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aslgloss/lexicon.hpp"
#include "aslgloss/textnorm.hpp"
#include "aslgloss/unicode.hpp"

namespace aslgloss {

struct CompilerConfig {
  bool topicalize_object = false;  // move the first post-verb noun to the front of the topic
  bool clause_marker = false;      // render "//" between clauses
};

/// Output slot of a word. Ranks follow the gloss order; Dropped never renders.
enum class Slot : int { Time = 0, Topic = 1, Verb = 2, Feelings = 3, Wh = 4, Dropped = 5 };

inline const char* to_string(Slot s) {
  switch (s) {
    case Slot::Time: return "time";
    case Slot::Topic: return "topic";
    case Slot::Verb: return "verb";
    case Slot::Feelings: return "feelings";
    case Slot::Wh: return "wh";
    case Slot::Dropped: return "dropped";
  }
  return "dropped";
}

struct CategorizedClause {
  std::vector<std::string> time;
  std::vector<std::string> topic;
  std::vector<std::string> verb;
  std::vector<std::string> feelings;
  std::vector<std::string> wh;
  std::vector<std::string> dropped;

  std::size_t size() const {
    return time.size() + topic.size() + verb.size() + feelings.size() + wh.size() + dropped.size();
  }
  bool operator==(const CategorizedClause&) const = default;
};

struct SlottedWord {
  std::string word;
  Slot slot = Slot::Dropped;
};

enum class GlossKind { Sign, Fingerspell, Lexicalized };

inline const char* to_string(GlossKind k) {
  switch (k) {
    case GlossKind::Sign: return "sign";
    case GlossKind::Fingerspell: return "fingerspell";
    case GlossKind::Lexicalized: return "lexicalized";
  }
  return "sign";
}

struct GlossToken {
  std::string surface;
  GlossKind kind = GlossKind::Sign;
  // Provenance, used for order checks and clause-marker rendering.
  Slot slot = Slot::Topic;
  std::size_t clause = 0;
};

struct GlossSentence {
  std::vector<GlossToken> tokens;
  CleanSentence source;

  bool empty() const { return tokens.empty(); }

  std::string str(bool clause_marker = false) const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) {
        out.push_back(' ');
        if (clause_marker && tokens[i].clause != tokens[i - 1].clause) out += "// ";
      }
      out += tokens[i].surface;
    }
    return out;
  }
};

/// Called for tokens the lexicon does not know; returns a replacement word
/// (typically a vocabulary word chosen by embedding similarity) or nullopt.
using WordMapper = std::function<std::optional<std::string>(std::string_view)>;

/// Routes each clause token to one slot. Pronouns and nouns go to the topic;
/// unknown words go to the topic before the first verb (proper-noun
/// subjects) and are dropped after it; function words are dropped.
inline CategorizedClause extract_categories(const std::vector<std::string>& clause, const Lexicon& lex,
                                            const CompilerConfig& config = {}) {
  CategorizedClause out;
  std::vector<WordCategory> cats;
  cats.reserve(clause.size());
  std::size_t first_verb = clause.size();
  for (std::size_t i = 0; i < clause.size(); ++i) {
    cats.push_back(classify(clause[i], lex));
    if (cats.back() == WordCategory::Verb && first_verb == clause.size()) first_verb = i;
  }

  std::optional<std::size_t> object_at;  // index into out.topic
  for (std::size_t i = 0; i < clause.size(); ++i) {
    const auto& tok = clause[i];
    switch (cats[i]) {
      case WordCategory::Temporal: out.time.push_back(tok); break;
      case WordCategory::Wh: out.wh.push_back(tok); break;
      case WordCategory::Pronoun: out.topic.push_back(tok); break;
      case WordCategory::Function: out.dropped.push_back(tok); break;
      case WordCategory::Verb: out.verb.push_back(tok); break;
      case WordCategory::Descriptor: out.feelings.push_back(tok); break;
      case WordCategory::Noun:
        if (i > first_verb && !object_at) object_at = out.topic.size();
        out.topic.push_back(tok);
        break;
      case WordCategory::Unknown:
        if (i < first_verb)
          out.topic.push_back(tok);
        else
          out.dropped.push_back(tok);
        break;
    }
  }
  if (config.topicalize_object && object_at && *object_at > 0) {
    auto it = out.topic.begin() + static_cast<std::ptrdiff_t>(*object_at);
    std::rotate(out.topic.begin(), it, it + 1);
  }
  return out;
}

inline std::vector<SlottedWord> assemble_gloss(const CategorizedClause& cat) {
  std::vector<SlottedWord> out;
  out.reserve(cat.size() - cat.dropped.size());
  auto append = [&](const std::vector<std::string>& words, Slot slot) {
    for (const auto& w : words) out.push_back({w, slot});
  };
  append(cat.time, Slot::Time);
  append(cat.topic, Slot::Topic);
  append(cat.verb, Slot::Verb);
  append(cat.feelings, Slot::Feelings);
  append(cat.wh, Slot::Wh);
  return out;
}

/// Renders one lowercase word. Returns nullopt when nothing spellable is left.
inline std::optional<GlossToken> format_word(std::string_view word, const Lexicon& lex) {
  if (word.size() > 1 && word.front() == '#') {
    std::string form = "#";
    for (char c : unicode::ascii_upper(word.substr(1)))
      if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) form.push_back(c);
    if (form.size() > 1) return GlossToken{form, GlossKind::Lexicalized};
    return std::nullopt;
  }
  if (const auto* form = lex.lexicalized_form(word)) return GlossToken{*form, GlossKind::Lexicalized};
  if (is_number_token(word)) return GlossToken{std::string(word), GlossKind::Sign};
  if (auto base = lex.vocabulary_form(word)) return GlossToken{unicode::to_upper(*base), GlossKind::Sign};

  std::string letters;
  for (UChar32 c : unicode::decode(word))
    if (unicode::is_letter(c)) unicode::append(letters, c);
  if (letters.empty()) return std::nullopt;
  return GlossToken{"fs-" + unicode::to_upper(letters), GlossKind::Fingerspell};
}

inline GlossSentence apply_gloss_formatting(const std::vector<SlottedWord>& words, const Lexicon& lex,
                                            std::size_t clause_index = 0) {
  GlossSentence out;
  out.tokens.reserve(words.size());
  for (const auto& w : words) {
    if (auto tok = format_word(w.word, lex)) {
      tok->slot = w.slot;
      tok->clause = clause_index;
      out.tokens.push_back(std::move(*tok));
    }
  }
  return out;
}

/// clean_text -> split_into_clauses -> per-clause extract/assemble/format,
/// with clause outputs concatenated in order. When `mapper` is set, words
/// the lexicon cannot classify are offered to it before extraction.
inline GlossSentence gloss_sentence(std::string_view raw, const Lexicon& lex,
                                    const NormalizationTables& tables = default_tables(),
                                    const CompilerConfig& config = {}, const WordMapper& mapper = nullptr) {
  GlossSentence result;
  result.source = clean_text(raw, tables.contractions);
  const auto clauses = split_into_clauses(result.source, tables.splitters);
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    std::vector<std::string> words = clauses[ci].tokens;
    if (mapper) {
      for (auto& w : words) {
        if (classify(w, lex) != WordCategory::Unknown) continue;
        if (auto mapped = mapper(w)) w = std::move(*mapped);
      }
    }
    auto formatted = apply_gloss_formatting(assemble_gloss(extract_categories(words, lex, config)), lex, ci);
    for (auto& t : formatted.tokens) result.tokens.push_back(std::move(t));
  }
  return result;
}

/// Kind of a rendered gloss surface: `fs-` prefix, `#` prefix, or plain sign.
inline GlossKind kind_of_surface(std::string_view surface) {
  if (surface.starts_with("fs-")) return GlossKind::Fingerspell;
  if (surface.size() > 1 && surface.front() == '#') return GlossKind::Lexicalized;
  return GlossKind::Sign;
}

/// Parses a rendered gloss line back into tokens. `//` markers advance the
/// clause index and are not kept.
inline GlossSentence parse_gloss(std::string_view line) {
  GlossSentence out;
  std::size_t clause = 0;
  for (auto& word : detail::split_ws(line)) {
    if (word == "//") {
      ++clause;
      continue;
    }
    GlossToken t;
    t.kind = kind_of_surface(word);
    t.surface = std::move(word);
    t.clause = clause;
    out.tokens.push_back(std::move(t));
  }
  return out;
}

}  // namespace aslgloss
