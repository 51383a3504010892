#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aslgloss/error.hpp"
#include "aslgloss/lemmatizer.hpp"
#include "aslgloss/textnorm.hpp"

namespace aslgloss {

enum class WordCategory { Temporal, Wh, Pronoun, Verb, Descriptor, Noun, Function, Unknown };

inline const char* to_string(WordCategory c) {
  switch (c) {
    case WordCategory::Temporal: return "temporal";
    case WordCategory::Wh: return "wh";
    case WordCategory::Pronoun: return "pronoun";
    case WordCategory::Verb: return "verb";
    case WordCategory::Descriptor: return "descriptor";
    case WordCategory::Noun: return "noun";
    case WordCategory::Function: return "function";
    case WordCategory::Unknown: return "unknown";
  }
  return "unknown";
}

struct LexiconStats {
  std::size_t entries = 0;
  std::size_t duplicates = 0;
  std::size_t category_overlaps = 0;
};

/// Curated sign vocabulary plus the word-category tables that drive clause
/// extraction. `vocabulary` is the union of every content category (vocab,
/// temporal, wh, pronoun, verb, descriptor); function words never belong to
/// it. Lexicalized entries map a word to its `#`-form and sit outside the
/// vocabulary.
struct Lexicon {
  WordSet vocabulary;
  WordSet temporal;
  WordSet wh;
  WordSet pronouns;
  WordSet verbs;
  WordSet descriptors;
  WordSet function_words;
  std::unordered_map<std::string, std::string, detail::StringHash, std::equal_to<>> lexicalized;
  LexiconStats stats;

  bool in_vocabulary(std::string_view w) const { return vocabulary.contains(w); }

  const std::string* lexicalized_form(std::string_view w) const {
    auto it = lexicalized.find(w);
    return it == lexicalized.end() ? nullptr : &it->second;
  }

  /// Base form of `w` that is in the vocabulary, trying inflection rules
  /// when the surface form is absent.
  std::optional<std::string> vocabulary_form(std::string_view w) const {
    if (vocabulary.contains(w)) return std::string(w);
    auto lemma = lemmatize(w, [this](std::string_view c) { return vocabulary.contains(c); });
    if (vocabulary.contains(lemma)) return lemma;
    return std::nullopt;
  }

  bool operator==(const Lexicon& o) const {
    return vocabulary == o.vocabulary && temporal == o.temporal && wh == o.wh && pronouns == o.pronouns &&
           verbs == o.verbs && descriptors == o.descriptors && function_words == o.function_words &&
           lexicalized == o.lexicalized;
  }
};

inline bool is_number_token(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline bool is_lexicalized_form(std::string_view s) {
  return s.size() >= 2 && s[0] == '#' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); });
}

/// Single category per token, first match wins:
/// Temporal > Wh > Pronoun > Function > Verb > Descriptor > Noun > Unknown.
/// Verbs also match through their lemma; nouns are the in-vocabulary residue
/// (plus lexicalized items, digit strings and pre-glossed `#` tokens).
inline WordCategory classify(std::string_view w, const Lexicon& lex) {
  if (lex.temporal.contains(w)) return WordCategory::Temporal;
  if (lex.wh.contains(w)) return WordCategory::Wh;
  if (lex.pronouns.contains(w)) return WordCategory::Pronoun;
  if (lex.function_words.contains(w)) return WordCategory::Function;
  if (lex.verbs.contains(w)) return WordCategory::Verb;
  if (lex.descriptors.contains(w)) return WordCategory::Descriptor;
  if (lex.vocabulary.contains(w) || lex.lexicalized.contains(w) || is_number_token(w)) return WordCategory::Noun;
  if (w.size() > 1 && w.front() == '#') return WordCategory::Noun;

  auto lemma = lemmatize(w, [&](std::string_view c) { return lex.vocabulary.contains(c); });
  if (lemma != w) {
    if (lex.verbs.contains(lemma)) return WordCategory::Verb;
    if (lex.vocabulary.contains(lemma) && !lex.function_words.contains(lemma)) {
      if (lex.descriptors.contains(lemma)) return WordCategory::Descriptor;
      if (lex.temporal.contains(lemma)) return WordCategory::Temporal;
      return WordCategory::Noun;
    }
  }
  return WordCategory::Unknown;
}

namespace detail {

enum class LexCategory { Vocab, Temporal, Wh, Pronoun, Verb, Descriptor, Function, Lexicalized };

inline std::optional<LexCategory> parse_lex_category(std::string_view s) {
  static const std::map<std::string_view, LexCategory> names{
      {"vocab", LexCategory::Vocab},       {"temporal", LexCategory::Temporal},
      {"wh", LexCategory::Wh},             {"pronoun", LexCategory::Pronoun},
      {"verb", LexCategory::Verb},         {"descriptor", LexCategory::Descriptor},
      {"function", LexCategory::Function}, {"lexicalized", LexCategory::Lexicalized},
  };
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

inline std::vector<std::string_view> split_tabs(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = s.find('\t', start);
    out.push_back(s.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace detail

/// Builds a lexicon from `word<TAB>category[<TAB>#FORM]` lines. Blank lines
/// and lines starting with `#` are skipped.
inline Lexicon parse_lexicon(std::istream& in, const std::string& origin = "<lexicon>") {
  Lexicon lex;
  std::unordered_map<std::string, int, detail::StringHash, std::equal_to<>> membership;  // category bitmask
  std::string line;
  long long lineno = 0;
  auto malformed = [&](const char* why) {
    return Error(ErrorCode::MalformedLine, origin + ":" + std::to_string(lineno) + ": " + why, lineno);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = detail::split_tabs(view);
    if (fields.size() < 2 || fields.size() > 3) throw malformed("expected word<TAB>category[<TAB>canonical]");
    std::string word(detail::trim(fields[0]));
    unicode::ascii_lower_inplace(word);
    if (word.empty() || word.find(' ') != std::string::npos) throw malformed("bad word field");
    auto category = detail::parse_lex_category(detail::trim(fields[1]));
    if (!category) throw malformed("unknown category");
    const bool lexicalized = *category == detail::LexCategory::Lexicalized;
    if (lexicalized != (fields.size() == 3)) throw malformed("canonical form only allowed (and required) for lexicalized");

    ++lex.stats.entries;
    const int bit = 1 << static_cast<int>(*category);
    int& mask = membership[word];
    if (mask & bit) {
      ++lex.stats.duplicates;
      if (!lexicalized) continue;
    } else if (mask != 0) {
      ++lex.stats.category_overlaps;
    }
    mask |= bit;

    using C = detail::LexCategory;
    switch (*category) {
      case C::Vocab: lex.vocabulary.insert(word); break;
      case C::Temporal: lex.temporal.insert(word); lex.vocabulary.insert(word); break;
      case C::Wh: lex.wh.insert(word); lex.vocabulary.insert(word); break;
      case C::Pronoun: lex.pronouns.insert(word); lex.vocabulary.insert(word); break;
      case C::Verb: lex.verbs.insert(word); lex.vocabulary.insert(word); break;
      case C::Descriptor: lex.descriptors.insert(word); lex.vocabulary.insert(word); break;
      case C::Function: lex.function_words.insert(word); break;
      case C::Lexicalized: {
        std::string form(detail::trim(fields[2]));
        if (!is_lexicalized_form(form))
          throw Error(ErrorCode::InvalidEntry, origin + ":" + std::to_string(lineno) + ": bad lexicalized form " + form,
                      lineno);
        lex.lexicalized[word] = std::move(form);
        break;
      }
    }
  }

  for (const auto& w : lex.function_words) {
    if (lex.vocabulary.contains(w))
      throw Error(ErrorCode::InvalidEntry, origin + ": '" + w + "' is both a function word and a content word");
  }
  if (lex.vocabulary.empty()) throw Error(ErrorCode::EmptyLexicon, origin + " has no vocabulary entries");
  if (lex.vocabulary.size() > 10000)
    throw Error(ErrorCode::InvalidEntry, origin + ": vocabulary exceeds 10000 entries");
  return lex;
}

inline Lexicon load_lexicon(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_lexicon(in, path.string());
}

/// Writes one line per (word, category) membership, sorted, so that
/// `load_lexicon(save_lexicon(x)) == x`.
inline void save_lexicon(const Lexicon& lex, std::ostream& out) {
  std::vector<std::string> lines;
  auto emit = [&](const WordSet& set, std::string_view name) {
    for (const auto& w : set) lines.push_back(w + "\t" + std::string(name));
  };
  emit(lex.temporal, "temporal");
  emit(lex.wh, "wh");
  emit(lex.pronouns, "pronoun");
  emit(lex.verbs, "verb");
  emit(lex.descriptors, "descriptor");
  emit(lex.function_words, "function");
  for (const auto& w : lex.vocabulary) {
    if (!lex.temporal.contains(w) && !lex.wh.contains(w) && !lex.pronouns.contains(w) && !lex.verbs.contains(w) &&
        !lex.descriptors.contains(w))
      lines.push_back(w + "\tvocab");
  }
  for (const auto& [w, form] : lex.lexicalized) lines.push_back(w + "\tlexicalized\t" + form);
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << '\n';
}

inline void save_lexicon(const Lexicon& lex, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::UnwritableOutput, "cannot write " + path.string());
  save_lexicon(lex, out);
}

}  // namespace aslgloss
