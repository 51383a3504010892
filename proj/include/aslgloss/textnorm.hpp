#pragma once

// Text cleanup and clause splitting ahead of gloss compilation.

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "aslgloss/error.hpp"
#include "aslgloss/unicode.hpp"

namespace aslgloss {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == '\n')) ++i;
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\r' || s[j] == '\n')) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  return in;
}

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

}  // namespace detail

using WordSet = std::unordered_set<std::string, detail::StringHash, std::equal_to<>>;

/// Whole-token contraction expansions, keyed by the lowercase contracted form.
class ContractionTable {
 public:
  ContractionTable() = default;

  void add(std::string_view contraction, std::string_view expansion) {
    std::string key(contraction);
    unicode::ascii_lower_inplace(key);
    std::string value(expansion);
    unicode::ascii_lower_inplace(value);
    entries_[std::move(key)] = detail::split_ws(value);
  }

  const std::vector<std::string>* find(std::string_view token) const {
    auto it = entries_.find(token);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(std::string_view token) const { return entries_.find(token) != entries_.end(); }
  std::size_t size() const { return entries_.size(); }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::unordered_map<std::string, std::vector<std::string>, detail::StringHash, std::equal_to<>> entries_;
};

/// Clause boundary words. `retained` subordinators open the next clause
/// instead of being dropped.
struct SplitterTable {
  WordSet splitters;
  WordSet retained;
  // Unambiguously nominative pronouns. Inside a clause opened by a retained
  // subordinator, one of these after the subordinate's own subject and verb
  // starts the main clause ("when she arrived we left").
  WordSet subject_pronouns;
};

struct NormalizationTables;

inline constexpr std::pair<std::string_view, std::string_view> kDefaultContractions[] = {
    {"ain't", "is not"},       {"aren't", "are not"},     {"can't", "can not"},      {"cannot", "can not"},
    {"couldn't", "could not"}, {"didn't", "did not"},     {"doesn't", "does not"},   {"don't", "do not"},
    {"hadn't", "had not"},     {"hasn't", "has not"},     {"haven't", "have not"},   {"isn't", "is not"},
    {"mightn't", "might not"}, {"mustn't", "must not"},   {"needn't", "need not"},   {"shan't", "shall not"},
    {"shouldn't", "should not"}, {"wasn't", "was not"},   {"weren't", "were not"},   {"won't", "will not"},
    {"wouldn't", "would not"}, {"i'm", "i am"},           {"i've", "i have"},        {"i'll", "i will"},
    {"i'd", "i would"},        {"you're", "you are"},     {"you've", "you have"},    {"you'll", "you will"},
    {"you'd", "you would"},    {"he's", "he is"},         {"he'll", "he will"},      {"he'd", "he would"},
    {"she's", "she is"},       {"she'll", "she will"},    {"she'd", "she would"},    {"it's", "it is"},
    {"it'll", "it will"},      {"it'd", "it would"},      {"we're", "we are"},       {"we've", "we have"},
    {"we'll", "we will"},      {"we'd", "we would"},      {"they're", "they are"},   {"they've", "they have"},
    {"they'll", "they will"},  {"they'd", "they would"},  {"that's", "that is"},     {"that'll", "that will"},
    {"there's", "there is"},   {"there'll", "there will"}, {"here's", "here is"},    {"what's", "what is"},
    {"what're", "what are"},   {"what'll", "what will"},  {"who's", "who is"},       {"who'll", "who will"},
    {"who'd", "who would"},    {"where's", "where is"},   {"when's", "when is"},     {"why's", "why is"},
    {"how's", "how is"},       {"let's", "let us"},       {"y'all", "you all"},      {"could've", "could have"},
    {"should've", "should have"}, {"would've", "would have"}, {"might've", "might have"}, {"must've", "must have"},
    {"gonna", "going to"},     {"wanna", "want to"},      {"gotta", "got to"},       {"ma'am", "madam"},
};

inline const ContractionTable& default_contractions() {
  static const ContractionTable table = [] {
    ContractionTable t;
    for (const auto& [k, v] : kDefaultContractions) t.add(k, v);
    return t;
  }();
  return table;
}

inline constexpr std::array<std::string_view, 9> kDefaultSplitters{
    "and", "but", "or", "because", "when", "while", "if", "so", "then"};
inline constexpr std::array<std::string_view, 2> kRetainedSubordinators{"if", "when"};
inline constexpr std::array<std::string_view, 5> kSubjectPronouns{"i", "he", "she", "we", "they"};

inline SplitterTable make_splitter_table(const std::vector<std::string>& words) {
  SplitterTable t;
  for (const auto& w : words) t.splitters.insert(w);
  for (auto w : kRetainedSubordinators)
    if (t.splitters.contains(w)) t.retained.emplace(w);
  for (auto w : kSubjectPronouns) t.subject_pronouns.emplace(w);
  return t;
}

inline const SplitterTable& default_splitters() {
  static const SplitterTable table =
      make_splitter_table(std::vector<std::string>(kDefaultSplitters.begin(), kDefaultSplitters.end()));
  return table;
}

/// Reads `contraction<TAB>expansion` lines; `#` lines and blank lines are skipped.
inline ContractionTable load_contractions(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  ContractionTable table;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto tab = view.find('\t');
    if (tab == std::string_view::npos || tab == 0 || detail::trim(view.substr(tab + 1)).empty())
      throw Error(ErrorCode::MalformedLine, path.string() + ":" + std::to_string(lineno), lineno);
    table.add(detail::trim(view.substr(0, tab)), detail::trim(view.substr(tab + 1)));
  }
  return table;
}

inline SplitterTable load_splitters(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::string w(view);
    unicode::ascii_lower_inplace(w);
    words.push_back(std::move(w));
  }
  return make_splitter_table(words);
}

struct NormalizationTables {
  ContractionTable contractions = default_contractions();
  SplitterTable splitters = default_splitters();
};

inline const NormalizationTables& default_tables() {
  static const NormalizationTables tables{};
  return tables;
}

/// Cleaned sentence. `breaks` lists token indices that were preceded by
/// sentence-internal clause punctuation in the raw text (sorted, unique).
struct CleanSentence {
  std::vector<std::string> tokens;
  std::vector<std::size_t> breaks;

  bool empty() const { return tokens.empty(); }
};

/// A contiguous run `tokens == sentence.tokens[start, end)`.
struct Clause {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  std::size_t end = 0;
};

namespace detail {

enum class CharKind { Word, Apostrophe, Hyphen, Hash, SoftBreak, HardBreak, Separator };

inline CharKind char_kind(UChar32 c) {
  if (c < 0x80) {
    if (unicode::is_alnum(c)) return CharKind::Word;
    switch (c) {
      case '\'': return CharKind::Apostrophe;
      case '-': return CharKind::Hyphen;
      case '#': return CharKind::Hash;
      case '.': case ',': case ':': return CharKind::SoftBreak;
      case ';': case '!': case '?': case '(': case ')': case '[': case ']': case '{': case '}':
        return CharKind::HardBreak;
      default: return CharKind::Separator;
    }
  }
  if (c == 0x2019 || c == 0x2018 || c == 0x02BC) return CharKind::Apostrophe;
  if (unicode::is_letter(c)) return CharKind::Word;
  if (c == 0x2026) return CharKind::HardBreak;  // ellipsis
  const auto mask = U_GET_GC_MASK(c);
  if (mask & U_GC_PD_MASK) return CharKind::HardBreak;  // em/en dashes
  return CharKind::Separator;
}

// Post-processes one raw whitespace-delimited token and appends the result(s).
inline void finish_token(std::string& raw, const ContractionTable& contractions, std::vector<std::string>& out) {
  auto strip_hyphens = [](std::string& s) {
    std::size_t b = 0;
    while (b < s.size() && s[b] == '-') ++b;
    std::size_t e = s.size();
    while (e > b && s[e - 1] == '-') --e;
    s = s.substr(b, e - b);
  };
  strip_hyphens(raw);
  if (raw.empty()) return;
  if (const auto* expansion = contractions.find(raw)) {
    for (const auto& t : *expansion) out.push_back(t);
    return;
  }
  if (raw.size() > 2 && raw.ends_with("'s")) raw.resize(raw.size() - 2);
  std::string cleaned;
  cleaned.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '\'') continue;
    if (c == '#' && !cleaned.empty()) continue;
    cleaned.push_back(c);
  }
  strip_hyphens(cleaned);
  if (cleaned.empty() || cleaned == "#") return;
  if (cleaned.size() > 1 && cleaned[0] == '#' && cleaned[1] == '-') return;
  out.push_back(std::move(cleaned));
}

}  // namespace detail

/// Lowercases, expands contractions, strips punctuation and collapses
/// whitespace. Expansion happens on whole raw tokens before any stripping.
inline CleanSentence clean_text(std::string_view raw, const ContractionTable& contractions = default_contractions()) {
  CleanSentence sentence;
  std::vector<UChar32> cps;
  if (unicode::is_ascii(raw)) {
    cps.reserve(raw.size());
    for (char c : raw) cps.push_back(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : static_cast<unsigned char>(c));
  } else {
    cps = unicode::decode(unicode::nfc_lower(raw));
  }

  std::string current;
  bool pending_break = false;
  auto flush = [&] {
    if (current.empty()) return;
    const std::size_t before = sentence.tokens.size();
    detail::finish_token(current, contractions, sentence.tokens);
    current.clear();
    if (sentence.tokens.size() > before) {
      if (pending_break && before > 0) sentence.breaks.push_back(before);
      pending_break = false;
    }
  };
  auto mark_break = [&] {
    flush();
    pending_break = true;
  };

  const std::size_t n = cps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const UChar32 c = cps[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || (c >= 0x80 && u_isUWhiteSpace(c))) {
      flush();
      continue;
    }
    switch (detail::char_kind(c)) {
      case detail::CharKind::Word:
        unicode::append(current, c);
        break;
      case detail::CharKind::Apostrophe:
        current.push_back('\'');
        break;
      case detail::CharKind::Hash:
        current.push_back('#');
        break;
      case detail::CharKind::Hyphen:
        if (i + 1 < n && cps[i + 1] == '-') {
          while (i + 1 < n && cps[i + 1] == '-') ++i;
          mark_break();
        } else if (current.empty() && (i + 1 >= n || !unicode::is_alnum(cps[i + 1]))) {
          mark_break();  // free-standing " - " dash
        } else {
          current.push_back('-');
        }
        break;
      case detail::CharKind::SoftBreak: {
        const bool internal = !current.empty() && i > 0 && unicode::is_alnum(cps[i - 1]) && i + 1 < n &&
                              unicode::is_alnum(cps[i + 1]);
        if (!internal) mark_break();
        break;
      }
      case detail::CharKind::HardBreak:
        mark_break();
        break;
      case detail::CharKind::Separator:
        flush();
        break;
    }
  }
  flush();
  return sentence;
}

/// Splits at recorded punctuation breaks and at splitter words. Splitters
/// are dropped except retained subordinators, which open the next clause.
/// Returns at least one clause for nonempty input.
inline std::vector<Clause> split_into_clauses(const CleanSentence& sentence,
                                              const SplitterTable& splitters = default_splitters()) {
  std::vector<Clause> clauses;
  const auto& tokens = sentence.tokens;
  Clause current;
  bool subordinate = false;
  auto close = [&](std::size_t at) {
    if (!current.tokens.empty()) {
      current.end = at;
      clauses.push_back(std::move(current));
    }
    current = Clause{};
    current.start = at;
    subordinate = false;
  };

  std::size_t next_break = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    while (next_break < sentence.breaks.size() && sentence.breaks[next_break] < i) ++next_break;
    if (next_break < sentence.breaks.size() && sentence.breaks[next_break] == i) close(i);

    const std::string& tok = tokens[i];
    if (splitters.splitters.contains(tok)) {
      close(i);
      if (splitters.retained.contains(tok)) {
        current.tokens.push_back(tok);
        subordinate = true;
      } else {
        current.start = i + 1;
      }
      continue;
    }
    if (subordinate && current.tokens.size() >= 3 && splitters.subject_pronouns.contains(tok)) close(i);
    if (current.tokens.empty()) current.start = i;
    current.tokens.push_back(tok);
  }
  close(tokens.size());
  if (clauses.empty() && !tokens.empty()) clauses.push_back(Clause{{}, tokens.size(), tokens.size()});
  return clauses;
}

}  // namespace aslgloss
