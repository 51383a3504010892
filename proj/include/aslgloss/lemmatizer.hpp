#pragma once

#include <array>
#include <iterator>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aslgloss {

inline constexpr std::pair<std::string_view, std::string_view> kIrregularVerbs[] = {
    {"went", "go"},          {"gone", "go"},          {"goes", "go"},          {"ate", "eat"},
    {"eaten", "eat"},        {"saw", "see"},          {"seen", "see"},         {"came", "come"},
    {"took", "take"},        {"taken", "take"},       {"gave", "give"},        {"given", "give"},
    {"made", "make"},        {"said", "say"},         {"says", "say"},         {"got", "get"},
    {"gotten", "get"},       {"knew", "know"},        {"known", "know"},       {"thought", "think"},
    {"told", "tell"},        {"found", "find"},       {"felt", "feel"},        {"left", "leave"},
    {"kept", "keep"},        {"began", "begin"},      {"begun", "begin"},      {"brought", "bring"},
    {"bought", "buy"},       {"wrote", "write"},      {"written", "write"},    {"sat", "sit"},
    {"stood", "stand"},      {"ran", "run"},          {"met", "meet"},         {"paid", "pay"},
    {"heard", "hear"},       {"held", "hold"},        {"lost", "lose"},        {"meant", "mean"},
    {"sent", "send"},        {"spent", "spend"},      {"built", "build"},      {"understood", "understand"},
    {"taught", "teach"},     {"caught", "catch"},     {"fought", "fight"},     {"sought", "seek"},
    {"slept", "sleep"},      {"drove", "drive"},      {"driven", "drive"},     {"rode", "ride"},
    {"ridden", "ride"},      {"flew", "fly"},         {"flown", "fly"},        {"flies", "fly"},
    {"drew", "draw"},        {"drawn", "draw"},       {"drank", "drink"},      {"drunk", "drink"},
    {"sang", "sing"},        {"sung", "sing"},        {"swam", "swim"},        {"swum", "swim"},
    {"spoke", "speak"},      {"spoken", "speak"},     {"broke", "break"},      {"broken", "break"},
    {"chose", "choose"},     {"chosen", "choose"},    {"wore", "wear"},        {"worn", "wear"},
    {"threw", "throw"},      {"thrown", "throw"},     {"grew", "grow"},        {"grown", "grow"},
    {"blew", "blow"},        {"blown", "blow"},       {"forgot", "forget"},    {"forgotten", "forget"},
    {"forgave", "forgive"},  {"forgiven", "forgive"}, {"hid", "hide"},         {"hidden", "hide"},
    {"fell", "fall"},        {"fallen", "fall"},      {"woke", "wake"},        {"woken", "wake"},
    {"sold", "sell"},        {"led", "lead"},         {"fed", "feed"},         {"bled", "bleed"},
    {"won", "win"},          {"lent", "lend"},        {"bent", "bend"},        {"dug", "dig"},
    {"stuck", "stick"},      {"struck", "strike"},    {"hung", "hang"},        {"shot", "shoot"},
    {"shook", "shake"},      {"shaken", "shake"},     {"stole", "steal"},      {"stolen", "steal"},
    {"froze", "freeze"},     {"frozen", "freeze"},    {"rose", "rise"},        {"risen", "rise"},
    {"bit", "bite"},         {"bitten", "bite"},      {"lay", "lie"},          {"lain", "lie"},
    {"laid", "lay"},         {"dealt", "deal"},       {"swept", "sweep"},      {"wept", "weep"},
    {"crept", "creep"},      {"dreamt", "dream"},     {"learnt", "learn"},     {"burnt", "burn"},
    {"spelt", "spell"},      {"spilt", "spill"},      {"became", "become"},    {"overcame", "overcome"},
    {"did", "do"},           {"done", "do"},          {"does", "do"},          {"had", "have"},
    {"has", "have"},         {"having", "have"},      {"was", "be"},           {"were", "be"},
    {"been", "be"},          {"is", "be"},            {"am", "be"},            {"are", "be"},
    {"could", "can"},        {"would", "will"},       {"should", "shall"},     {"might", "may"},
    {"tore", "tear"},        {"torn", "tear"},        {"bore", "bear"},        {"born", "bear"},
    {"swore", "swear"},      {"sworn", "swear"},      {"beat", "beat"},        {"beaten", "beat"},
    {"fled", "flee"},        {"slid", "slide"},
};

inline const std::unordered_map<std::string_view, std::string_view>& irregular_verbs() {
  static const std::unordered_map<std::string_view, std::string_view> table(std::begin(kIrregularVerbs),
                                                                            std::end(kIrregularVerbs));
  return table;
}

namespace detail {

inline bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Candidate base forms for an inflected token, most specific first.
inline std::vector<std::string> lemma_candidates(std::string_view w) {
  std::vector<std::string> out;
  auto stem = [&](std::size_t cut) { return std::string(w.substr(0, w.size() - cut)); };
  auto undouble = [](const std::string& s) -> std::string {
    const auto n = s.size();
    if (n >= 3 && s[n - 1] == s[n - 2] && !is_vowel(s[n - 1]) && s[n - 1] != 'l' && s[n - 1] != 's')
      return s.substr(0, n - 1);
    return {};
  };

  if (w.size() > 4 && w.ends_with("ing")) {
    const auto base = stem(3);
    if (auto u = undouble(base); !u.empty()) out.push_back(u);
    out.push_back(base);
    out.push_back(base + "e");
    if (base.ends_with("y")) out.push_back(base.substr(0, base.size() - 1) + "ie");
  }
  if (w.size() > 3 && w.ends_with("ed")) {
    if (w.ends_with("ied")) out.push_back(stem(3) + "y");
    const auto base = stem(2);
    if (auto u = undouble(base); !u.empty()) out.push_back(u);
    out.push_back(base);
    out.push_back(stem(1));
  }
  if (w.size() > 3 && w.ends_with("ies")) out.push_back(stem(3) + "y");
  if (w.size() > 3 && w.ends_with("es")) out.push_back(stem(2));
  if (w.size() > 2 && w.ends_with('s') && !w.ends_with("ss")) out.push_back(stem(1));
  return out;
}

}  // namespace detail

/// Maps an inflected word to its base form. Irregular forms come from the
/// bundled table; regular inflections (-s, -es, -ies, -ed, -ing, consonant
/// doubling) are accepted only if `known(candidate)` holds. Returns the
/// input unchanged when nothing applies.
template <class KnownPredicate>
std::string lemmatize(std::string_view word, KnownPredicate&& known) {
  if (auto it = irregular_verbs().find(word); it != irregular_verbs().end()) return std::string(it->second);
  if (known(word)) return std::string(word);
  for (auto& candidate : detail::lemma_candidates(word)) {
    if (known(std::string_view(candidate))) return candidate;
  }
  return std::string(word);
}

}  // namespace aslgloss
