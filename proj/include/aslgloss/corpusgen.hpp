#pragma once

// Streams an English corpus (one sentence per line) through the gloss
// compiler and writes `english<TAB>gloss` lines.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aslgloss/error.hpp"
#include "aslgloss/glossc.hpp"
#include "aslgloss/lexicon.hpp"
#include "aslgloss/parallel.hpp"
#include "aslgloss/textnorm.hpp"

namespace aslgloss {

struct CorpusOptions {
  CompilerConfig compiler;
  std::size_t jobs = 1;
  bool drop_empty = false;                 // omit lines whose gloss is empty
  std::optional<std::size_t> max_tokens;   // lines with more clean tokens get an empty gloss
  std::size_t batch_lines = 8192;          // lines held in memory at once
};

struct CorpusStats {
  std::size_t sentences_in = 0;
  std::size_t glosses_out = 0;   // lines with a nonempty gloss
  std::size_t empty_gloss = 0;   // lines whose gloss came out empty
  std::size_t over_length = 0;   // lines skipped by max_tokens
  std::size_t skipped = 0;       // empty_gloss + over_length
  std::size_t emitted_tokens = 0;
  std::size_t fingerspelled_tokens = 0;
  std::size_t content_tokens = 0;
  std::size_t covered_tokens = 0;
  double fingerspell_rate = 0.0;
  double vocab_coverage = 0.0;
};

namespace detail {

struct CorpusLineResult {
  std::string gloss;
  bool over_length = false;
  std::size_t emitted = 0;
  std::size_t fingerspelled = 0;
  std::size_t content = 0;
  std::size_t covered = 0;
};

inline CorpusLineResult gloss_corpus_line(const std::string& line, const Lexicon& lex,
                                          const NormalizationTables& tables, const CorpusOptions& options) {
  CorpusLineResult r;
  auto sentence = gloss_sentence(line, lex, tables, options.compiler);
  if (options.max_tokens && sentence.source.tokens.size() > *options.max_tokens) {
    r.over_length = true;
    return r;
  }
  for (const auto& w : sentence.source.tokens) {
    const auto cat = classify(w, lex);
    if (cat == WordCategory::Function) continue;
    ++r.content;
    if (cat != WordCategory::Unknown) ++r.covered;
  }
  r.emitted = sentence.tokens.size();
  for (const auto& t : sentence.tokens)
    if (t.kind == GlossKind::Fingerspell) ++r.fingerspelled;
  r.gloss = sentence.str(options.compiler.clause_marker);
  return r;
}

// English column: the raw line with CR/LF stripped and tabs turned into spaces.
inline std::string english_column(std::string line) {
  for (char& c : line)
    if (c == '\t') c = ' ';
  return line;
}

}  // namespace detail

/// Streaming corpus build. Memory is bounded by `batch_lines`; output order
/// always matches input order regardless of `jobs`.
inline CorpusStats build_gloss_corpus(std::istream& in, std::ostream& out, const Lexicon& lex,
                                      const NormalizationTables& tables = default_tables(),
                                      const CorpusOptions& options = {}) {
  CorpusStats stats;
  std::vector<std::string> batch;
  batch.reserve(options.batch_lines);
  std::string line;

  auto flush = [&] {
    auto results = parallel_map<detail::CorpusLineResult>(
        batch.size(), options.jobs,
        [&](std::size_t i) { return detail::gloss_corpus_line(batch[i], lex, tables, options); });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& r = results[i];
      ++stats.sentences_in;
      if (r.over_length) {
        ++stats.over_length;
      } else {
        stats.emitted_tokens += r.emitted;
        stats.fingerspelled_tokens += r.fingerspelled;
        stats.content_tokens += r.content;
        stats.covered_tokens += r.covered;
        if (r.gloss.empty())
          ++stats.empty_gloss;
        else
          ++stats.glosses_out;
      }
      if (options.drop_empty && r.gloss.empty()) continue;
      out << detail::english_column(std::move(batch[i])) << '\t' << r.gloss << '\n';
    }
    batch.clear();
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    batch.push_back(std::move(line));
    if (batch.size() >= options.batch_lines) flush();
  }
  flush();
  if (!out) throw Error(ErrorCode::UnwritableOutput, "write failed");

  stats.skipped = stats.empty_gloss + stats.over_length;
  stats.fingerspell_rate =
      stats.emitted_tokens ? static_cast<double>(stats.fingerspelled_tokens) / static_cast<double>(stats.emitted_tokens)
                           : 0.0;
  stats.vocab_coverage =
      stats.content_tokens ? static_cast<double>(stats.covered_tokens) / static_cast<double>(stats.content_tokens) : 0.0;
  return stats;
}

inline CorpusStats build_gloss_corpus(const std::filesystem::path& input, const std::filesystem::path& output,
                                      const Lexicon& lex, const NormalizationTables& tables = default_tables(),
                                      const CorpusOptions& options = {}) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + input.string());
  std::ofstream out(output, std::ios::binary);
  if (!out) throw Error(ErrorCode::UnwritableOutput, "cannot write " + output.string());
  auto stats = build_gloss_corpus(in, out, lex, tables, options);
  out.flush();
  if (!out) throw Error(ErrorCode::UnwritableOutput, "write failed for " + output.string());
  return stats;
}

}  // namespace aslgloss
