#pragma once

// Text lines -> gloss -> (optional word mapping) -> animation timelines.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aslgloss/error.hpp"
#include "aslgloss/glossc.hpp"
#include "aslgloss/lexicon.hpp"
#include "aslgloss/parallel.hpp"
#include "aslgloss/synthesis.hpp"
#include "aslgloss/textnorm.hpp"
#include "aslgloss/wordmap.hpp"

namespace aslgloss {

struct PipelineConfig {
  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> embeddings;
  std::filesystem::path clips;
  double fps = 24.0;
  double gap = 0.25;
  std::size_t stride = 1;
  double tau = 0.35;
  CompilerConfig compiler;
  std::size_t jobs = 1;

  /// Throws InvalidConfig naming the first problem found.
  void validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); };
    if (lexicon.empty() || !std::filesystem::is_regular_file(lexicon))
      fail("lexicon file not found: '" + lexicon.string() + "'");
    if (embeddings && !std::filesystem::is_regular_file(*embeddings))
      fail("embeddings file not found: '" + embeddings->string() + "'");
    if (clips.empty() || !std::filesystem::is_directory(clips)) fail("clip directory not found: '" + clips.string() + "'");
    if (!(fps > 0.0)) fail("fps must be > 0");
    if (!(gap >= 0.0)) fail("gap must be >= 0");
    if (stride < 1) fail("stride must be >= 1");
    if (jobs < 1) fail("jobs must be >= 1");
  }

  SynthesisOptions synthesis() const {
    SynthesisOptions o;
    o.stitch.fps_out = fps;
    o.stitch.gap = gap;
    o.stitch.stride = stride;
    return o;
  }
};

/// Word vectors plus the vocabulary index built over them.
struct WordMapping {
  std::unique_ptr<EmbeddingTable> table;
  std::unique_ptr<VocabularyIndex> index;
  MappingOptions options;
};

inline std::shared_ptr<const WordMapping> load_word_mapping(const std::filesystem::path& embeddings,
                                                            const Lexicon& lex, double tau) {
  auto m = std::make_shared<WordMapping>();
  m->table = std::make_unique<EmbeddingTable>(load_embeddings(embeddings));
  m->index = std::make_unique<VocabularyIndex>(lex.vocabulary, *m->table);
  m->options.similarity_floor = tau;
  return m;
}

/// Mapper for the compiler's unknown-word hook. Every attempt is appended to
/// `log` when given.
inline WordMapper make_word_mapper(const WordMapping& mapping, std::vector<MappingResult>* log = nullptr) {
  return [&mapping, log](std::string_view token) -> std::optional<std::string> {
    auto r = mapping.index->map(token, mapping.options);
    const bool hit = r.method != MappingMethod::FingerspellFallback;
    std::optional<std::string> out = hit ? std::optional<std::string>(r.gloss) : std::nullopt;
    if (log) log->push_back(std::move(r));
    return out;
  };
}

struct PipelineResources {
  Lexicon lexicon;
  NormalizationTables tables;
  std::shared_ptr<const WordMapping> mapping;
  ClipStore clips;
};

inline PipelineResources load_pipeline_resources(const PipelineConfig& config) {
  config.validate();
  PipelineResources r;
  try {
    r.lexicon = load_lexicon(config.lexicon);
    if (config.embeddings) r.mapping = load_word_mapping(*config.embeddings, r.lexicon, config.tau);
    r.clips = load_clip_store(config.clips);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  return r;
}

struct LineResult {
  std::size_t index = 0;
  std::string text;
  GlossSentence gloss;
  std::string gloss_text;
  std::optional<AnimationTimeline> timeline;
  std::vector<MissingSign> missing;
  std::vector<MappingResult> mappings;
  std::optional<std::string> error;
};

struct PipelineReport {
  std::size_t lines = 0;
  std::size_t ok = 0;
  std::size_t empty = 0;
  std::size_t errors = 0;
  std::size_t timelines = 0;
  std::size_t similarity_mappings = 0;
  std::size_t fingerspell_fallbacks = 0;
  std::size_t missing_signs = 0;

  /// 0 when every line succeeded, 2 when some lines failed.
  int exit_code() const { return errors == 0 ? 0 : 2; }
};

struct PipelineRun {
  std::vector<LineResult> lines;
  PipelineReport report;
};

inline LineResult run_pipeline_line(std::size_t index, const std::string& text, const PipelineResources& res,
                                    const PipelineConfig& config) {
  LineResult r;
  r.index = index;
  r.text = text;
  try {
    WordMapper mapper = res.mapping ? make_word_mapper(*res.mapping, &r.mappings) : WordMapper{};
    r.gloss = gloss_sentence(text, res.lexicon, res.tables, config.compiler, mapper);
    r.gloss_text = r.gloss.str(config.compiler.clause_marker);
    if (r.gloss.empty()) return r;
    try {
      auto synth = synthesize(r.gloss, res.clips, config.synthesis());
      r.timeline = std::move(synth.timeline);
      r.missing = std::move(synth.missing);
    } catch (const UnresolvedGlossError& e) {
      r.missing = e.missing();
      throw;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

/// Runs every line independently; a failing line is recorded and never
/// affects the others. Output order matches input order.
inline PipelineRun run_pipeline(const std::vector<std::string>& lines, const PipelineResources& res,
                                const PipelineConfig& config) {
  PipelineRun run;
  run.lines = parallel_map<LineResult>(lines.size(), config.jobs,
                                       [&](std::size_t i) { return run_pipeline_line(i, lines[i], res, config); });
  auto& rep = run.report;
  for (const auto& l : run.lines) {
    ++rep.lines;
    if (l.error)
      ++rep.errors;
    else
      ++rep.ok;
    if (l.gloss.empty() && !l.error) ++rep.empty;
    if (l.timeline) ++rep.timelines;
    rep.missing_signs += l.missing.size();
    for (const auto& m : l.mappings) {
      if (m.method == MappingMethod::Similarity) ++rep.similarity_mappings;
      if (m.method == MappingMethod::FingerspellFallback) ++rep.fingerspell_fallbacks;
    }
  }
  return run;
}

inline nlohmann::json to_json(const PipelineRun& run) {
  const auto& r = run.report;
  nlohmann::json j{{"lines", r.lines},
                   {"ok", r.ok},
                   {"empty", r.empty},
                   {"errors", r.errors},
                   {"timelines", r.timelines},
                   {"similarity_mappings", r.similarity_mappings},
                   {"fingerspell_fallbacks", r.fingerspell_fallbacks},
                   {"missing_signs", r.missing_signs}};
  auto details = nlohmann::json::array();
  for (const auto& l : run.lines) {
    nlohmann::json d{{"line", l.index + 1}, {"gloss", l.gloss_text}};
    if (l.error) d["error"] = *l.error;
    if (!l.missing.empty()) {
      auto miss = nlohmann::json::array();
      for (const auto& m : l.missing) miss.push_back({{"token", m.token}, {"missing_clips", m.missing_clips}});
      d["missing"] = std::move(miss);
    }
    if (!l.mappings.empty()) {
      auto maps = nlohmann::json::array();
      for (const auto& m : l.mappings)
        maps.push_back({{"word", m.source}, {"gloss", m.gloss}, {"score", m.score}, {"method", to_string(m.method)}});
      d["mappings"] = std::move(maps);
    }
    details.push_back(std::move(d));
  }
  j["details"] = std::move(details);
  return j;
}

}  // namespace aslgloss
