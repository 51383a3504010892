// aslgloss: command-line front end for the gloss compiler, word mapping,
// animation synthesis, corpus building and metrics.
//
// Exit codes: 0 success, 2 partial success (some lines or signs failed),
// 1 fatal error (bad arguments, unreadable inputs, invalid config).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aslgloss/aslgloss.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aslgloss;

namespace {

constexpr int kOk = 0;
constexpr int kFatal = 1;
constexpr int kPartial = 2;

#ifdef ASLGLOSS_DEFAULT_DATA_DIR
const fs::path kDataDir = ASLGLOSS_DEFAULT_DATA_DIR;
#else
const fs::path kDataDir = "data";
#endif

std::string default_lexicon() { return (kDataDir / "lexicon.tsv").string(); }

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> read_lines(const fs::path& path) {
  auto in = detail::open_input(path);
  return read_lines(in);
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

std::vector<Tokens> tokenized_lines(const fs::path& path) {
  std::vector<Tokens> out;
  for (const auto& line : read_lines(path)) out.push_back(detail::split_ws(line));
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json missing_json(const std::vector<MissingSign>& missing) {
  auto arr = json::array();
  for (const auto& m : missing) arr.push_back({{"token", m.token}, {"missing_clips", m.missing_clips}});
  return arr;
}

// Shared text-side options: lexicon, normalization tables, compiler flags,
// optional word mapping.
struct TextOptions {
  std::string lexicon = default_lexicon();
  std::string contractions;
  std::string splitters;
  std::string embeddings;
  double tau = 0.35;
  CompilerConfig compiler;

  void attach(CLI::App* cmd, bool with_embeddings) {
    cmd->add_option("--lexicon", lexicon, "Lexicon TSV (word<TAB>category[<TAB>#FORM])")->capture_default_str();
    cmd->add_option("--contractions", contractions, "Contraction table replacing the built-in one");
    cmd->add_option("--splitters", splitters, "Clause splitter list replacing the built-in one");
    cmd->add_flag("--topicalize-object", compiler.topicalize_object, "Move the first post-verb noun to the topic front");
    cmd->add_flag("--clause-marker", compiler.clause_marker, "Print // between clauses");
    if (with_embeddings) {
      cmd->add_option("--embeddings", embeddings, "word2vec text file used to map unknown words");
      cmd->add_option("--tau", tau, "Similarity floor for word mapping")->capture_default_str();
    }
  }

  NormalizationTables tables() const {
    NormalizationTables t;
    if (!contractions.empty()) t.contractions = load_contractions(contractions);
    if (!splitters.empty()) t.splitters = load_splitters(splitters);
    return t;
  }
};

int run_gloss(const TextOptions& opt, const std::vector<std::string>& text, bool from_stdin, bool as_json) {
  const auto lex = load_lexicon(opt.lexicon);
  const auto tables = opt.tables();
  std::shared_ptr<const WordMapping> mapping;
  if (!opt.embeddings.empty()) mapping = load_word_mapping(opt.embeddings, lex, opt.tau);

  std::vector<std::string> lines = from_stdin ? read_lines(std::cin) : std::vector<std::string>{join(text)};
  auto out = json::array();
  for (const auto& line : lines) {
    std::vector<MappingResult> log;
    WordMapper mapper = mapping ? make_word_mapper(*mapping, &log) : WordMapper{};
    const auto g = gloss_sentence(line, lex, tables, opt.compiler, mapper);
    const auto text_out = g.str(opt.compiler.clause_marker);
    if (!as_json) {
      std::cout << text_out << '\n';
      continue;
    }
    auto toks = json::array();
    for (const auto& t : g.tokens)
      toks.push_back({{"surface", t.surface}, {"kind", to_string(t.kind)}, {"slot", to_string(t.slot)},
                      {"clause", t.clause}});
    out.push_back({{"text", line}, {"gloss", text_out}, {"tokens", std::move(toks)}});
  }
  if (as_json) emit(out);
  return kOk;
}

int run_map(const TextOptions& opt, const std::vector<std::string>& words, bool as_json) {
  const auto lex = load_lexicon(opt.lexicon);
  const auto mapping = load_word_mapping(opt.embeddings, lex, opt.tau);
  auto out = json::array();
  for (const auto& raw : words) {
    auto word = unicode::nfc_lower(raw);
    const auto r = mapping->index->map(word, mapping->options);
    if (as_json)
      out.push_back({{"word", r.source}, {"gloss", r.gloss}, {"score", r.score}, {"method", to_string(r.method)}});
    else
      std::cout << r.source << '\t' << r.gloss << '\t' << format_double(r.score) << '\t' << to_string(r.method) << '\n';
  }
  if (as_json) emit(out);
  return kOk;
}

struct MotionOptions {
  std::string clips;
  double fps = 24.0;
  double gap = 0.25;
  std::size_t stride = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--clips", clips, "Directory of clip JSON files")->required();
    cmd->add_option("--fps", fps, "Output frame rate")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--gap", gap, "Transition time between signs, seconds")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    cmd->add_option("--stride", stride, "Keep every n-th clip frame as a spline knot")->capture_default_str()->check(
        CLI::PositiveNumber);
  }

  SynthesisOptions synthesis() const {
    SynthesisOptions o;
    o.stitch = {fps, gap, stride};
    return o;
  }
};

int run_animate(const MotionOptions& opt, const std::vector<std::string>& gloss_words, const std::string& out_path,
                const std::string& csv_path, bool as_json) {
  const auto store = load_clip_store(opt.clips);
  const auto gloss = parse_gloss(join(gloss_words));
  SynthesisResult result;
  try {
    result = synthesize(gloss, store, opt.synthesis());
  } catch (const UnresolvedGlossError& e) {
    if (as_json) emit({{"error", e.what()}, {"missing", missing_json(e.missing())}});
    throw;
  }
  if (out_path.empty() || out_path == "-")
    std::cout << timeline_to_string(result.timeline) << '\n';
  else
    save_timeline(result.timeline, out_path);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error(ErrorCode::UnwritableOutput, "cannot write " + csv_path);
    write_timeline_csv(result.timeline, csv);
  }
  for (const auto& m : result.missing) {
    std::cerr << "missing sign: " << m.token;
    if (m.missing_clips.size() != 1 || m.missing_clips[0] != m.token) std::cerr << " (no clip for " << join(m.missing_clips) << ')';
    std::cerr << '\n';
  }
  if (as_json && !out_path.empty() && out_path != "-") {
    auto segs = json::array();
    for (const auto& s : result.timeline.segments) segs.push_back({{"gloss", s.gloss}, {"start", s.start}, {"end", s.end}});
    emit({{"frames", result.timeline.frames.size()}, {"segments", segs}, {"missing", missing_json(result.missing)}});
  }
  return result.missing.empty() ? kOk : kPartial;
}

int run_reconstruct(const std::string& clip_path, std::size_t stride, std::optional<double> fps_out,
                    const std::string& out_path, bool as_json) {
  const auto clip = load_clip(clip_path);
  const double fps = fps_out.value_or(clip.fps);
  const auto keys = downsample(clip, stride);
  AnimationTimeline tl;
  tl.gloss = clip.gloss;
  tl.fps = fps;
  tl.frames = reconstruct(keys, fps, clip.duration());
  tl.segments.push_back({clip.gloss, 0, tl.frames.size()});
  if (!out_path.empty()) save_timeline(tl, out_path);

  json report{{"gloss", clip.gloss}, {"stride", stride}, {"keyframes", keys.size()}, {"frames", tl.frames.size()}};
  // Per-frame errors need a ground-truth frame at every output time.
  if (fps == clip.fps && tl.frames.size() == clip.frames.size()) {
    const auto linear = reconstruct_linear(keys, fps, clip.duration());
    const auto cubic_err = mpjpe(tl.frames, clip.frames);
    const auto linear_err = mpjpe(linear, clip.frames);
    std::vector<Pose> sk_cubic, sk_linear, sk_truth;
    const auto kept = downsample_indices(clip.frames.size(), stride);
    for (std::size_t f = 0, k = 0; f < clip.frames.size(); ++f) {
      if (k < kept.size() && kept[k] == f) {
        ++k;
        continue;
      }
      sk_cubic.push_back(tl.frames[f]);
      sk_linear.push_back(linear[f]);
      sk_truth.push_back(clip.frames[f]);
    }
    report["mpjpe_cubic"] = cubic_err.mpjpe;
    report["mpjpe_linear"] = linear_err.mpjpe;
    report["skipped_frames"] = sk_truth.size();
    if (!sk_truth.empty()) {
      report["mpjpe_cubic_skipped"] = mpjpe(sk_cubic, sk_truth).mpjpe;
      report["mpjpe_linear_skipped"] = mpjpe(sk_linear, sk_truth).mpjpe;
    }
    report["per_frame_cubic"] = cubic_err.per_frame;
    report["per_frame_linear"] = linear_err.per_frame;
    if (!as_json) {
      std::cout << "frame\tcubic\tlinear\n";
      for (std::size_t f = 0; f < cubic_err.per_frame.size(); ++f)
        std::cout << f << '\t' << format_double(cubic_err.per_frame[f]) << '\t'
                  << format_double(linear_err.per_frame[f]) << '\n';
      std::cout << "mpjpe\t" << format_double(cubic_err.mpjpe) << '\t' << format_double(linear_err.mpjpe) << '\n';
    }
  } else if (!as_json) {
    std::cout << "reconstructed " << tl.frames.size() << " frames at " << format_double(fps)
              << " fps (no ground truth at this rate)\n";
  }
  if (as_json) emit(report);
  return kOk;
}

json corpus_stats_json(const CorpusStats& s) {
  return {{"sentences_in", s.sentences_in},
          {"glosses_out", s.glosses_out},
          {"empty_gloss", s.empty_gloss},
          {"over_length", s.over_length},
          {"skipped", s.skipped},
          {"emitted_tokens", s.emitted_tokens},
          {"fingerspelled_tokens", s.fingerspelled_tokens},
          {"fingerspell_rate", s.fingerspell_rate},
          {"vocab_coverage", s.vocab_coverage}};
}

json bleu_json(const BleuReport& r) {
  auto prec = json::array();
  for (double p : r.per_n_precision) prec.push_back(std::isnan(p) ? json(nullptr) : json(p));
  return {{"bleu", r.bleu},
          {"per_n_precision", prec},
          {"matches", r.matches},
          {"totals", r.totals},
          {"brevity_penalty", r.brevity_penalty},
          {"candidate_length", r.candidate_length},
          {"reference_length", r.reference_length}};
}

int run_pipeline_cmd(const PipelineConfig& config, const std::string& transcript, const std::string& out_dir,
                     bool as_json) {
  PipelineResources res;
  std::vector<std::string> lines;
  try {
    res = load_pipeline_resources(config);
    lines = transcript.empty() || transcript == "-" ? read_lines(std::cin) : read_lines(transcript);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  if (!out_dir.empty()) fs::create_directories(out_dir);
  const auto run = run_pipeline(lines, res, config);
  for (const auto& l : run.lines) {
    if (!as_json) std::cout << l.gloss_text << '\n';
    if (l.error) std::cerr << "line " << l.index + 1 << ": " << *l.error << '\n';
    if (l.timeline && !out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "line_%04zu.json", l.index + 1);
      save_timeline(*l.timeline, fs::path(out_dir) / name);
    }
  }
  if (as_json) emit(to_json(run));
  return run.report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"English text to ASL gloss and sign animation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style key/value file; options go under a [subcommand] section");
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output on stdout")->configurable(false);

  // gloss
  auto* gloss_cmd = app.add_subcommand("gloss", "Compile English text to ASL gloss");
  TextOptions gloss_opt;
  gloss_opt.attach(gloss_cmd, true);
  bool gloss_stdin = false;
  std::vector<std::string> gloss_text;
  gloss_cmd->add_flag("--stdin", gloss_stdin, "Read one sentence per line from standard input");
  gloss_cmd->add_option("text", gloss_text, "Sentence to compile");

  // map
  auto* map_cmd = app.add_subcommand("map", "Map words to the nearest vocabulary gloss");
  TextOptions map_opt;
  map_cmd->add_option("--embeddings", map_opt.embeddings, "word2vec text file")->required();
  map_cmd->add_option("--lexicon", map_opt.lexicon, "Lexicon TSV")->capture_default_str();
  map_cmd->add_option("--tau", map_opt.tau, "Similarity floor; -1 disables it")->capture_default_str();
  std::vector<std::string> map_words;
  map_cmd->add_option("words", map_words, "Words to map")->required();

  // animate
  auto* animate_cmd = app.add_subcommand("animate", "Stitch sign clips for a gloss into one timeline");
  MotionOptions animate_opt;
  animate_opt.attach(animate_cmd);
  std::string animate_out, animate_csv;
  std::vector<std::string> animate_gloss;
  animate_cmd->add_option("-o,--out", animate_out, "Timeline JSON output (default: stdout)");
  animate_cmd->add_option("--csv", animate_csv, "Also write frame,joint,x,y,z CSV");
  animate_cmd->add_option("gloss", animate_gloss, "Gloss tokens, e.g. YESTERDAY I SCHOOL GO")->required();

  // reconstruct
  auto* recon_cmd = app.add_subcommand("reconstruct", "Downsample a clip and rebuild it with splines");
  std::string recon_clip, recon_out;
  std::size_t recon_stride = 4;
  std::optional<double> recon_fps;
  recon_cmd->add_option("--clip", recon_clip, "Clip JSON file")->required();
  recon_cmd->add_option("--stride", recon_stride, "Keyframe stride")->capture_default_str()->check(CLI::PositiveNumber);
  recon_cmd->add_option("--fps", recon_fps, "Output frame rate (default: the clip's)")->check(CLI::PositiveNumber);
  recon_cmd->add_option("-o,--out", recon_out, "Write the reconstruction as a timeline JSON");

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "Build an english<TAB>gloss parallel corpus");
  TextOptions corpus_text;
  corpus_text.attach(corpus_cmd, false);
  std::string corpus_in, corpus_out;
  CorpusOptions corpus_opt;
  std::optional<std::size_t> max_tokens;
  corpus_cmd->add_option("--in", corpus_in, "Input text, one sentence per line")->required();
  corpus_cmd->add_option("--out", corpus_out, "Output TSV")->required();
  corpus_cmd->add_option("--jobs", corpus_opt.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  corpus_cmd->add_flag("--drop-empty", corpus_opt.drop_empty, "Omit lines whose gloss is empty");
  corpus_cmd->add_option("--max-tokens", max_tokens, "Give longer sentences an empty gloss");

  // eval-bleu
  auto* bleu_cmd = app.add_subcommand("eval-bleu", "Corpus BLEU over line-aligned token files");
  std::string bleu_cand;
  std::vector<std::string> bleu_refs;
  BleuOptions bleu_opt;
  bleu_opt.max_n = 2;
  std::string bleu_mode = "cumulative", bleu_smoothing = "none";
  bleu_cmd->add_option("--candidates", bleu_cand, "Candidate file")->required();
  bleu_cmd->add_option("--references", bleu_refs, "Reference file (repeat for several references)")->required();
  bleu_cmd->add_option("--max-n", bleu_opt.max_n, "Highest n-gram order")->capture_default_str()->check(
      CLI::PositiveNumber);
  bleu_cmd->add_option("--mode", bleu_mode, "cumulative or individual")->capture_default_str()->check(
      CLI::IsMember({"cumulative", "individual"}));
  bleu_cmd->add_option("--smoothing", bleu_smoothing, "none or add_one")->capture_default_str()->check(
      CLI::IsMember({"none", "add_one", "add-one"}));

  // eval-mpjpe
  auto* mpjpe_cmd = app.add_subcommand("eval-mpjpe", "Mean per-joint position error between two timelines");
  std::string mpjpe_pred, mpjpe_truth;
  mpjpe_cmd->add_option("--pred", mpjpe_pred, "Predicted timeline or clip JSON")->required();
  mpjpe_cmd->add_option("--truth", mpjpe_truth, "Ground-truth timeline or clip JSON")->required();

  // pipeline
  auto* pipe_cmd = app.add_subcommand("pipeline", "Transcript lines to gloss and animation timelines");
  PipelineConfig pipe;
  pipe.lexicon = default_lexicon();
  std::string pipe_lexicon = pipe.lexicon.string(), pipe_embeddings, pipe_clips, pipe_transcript, pipe_out;
  pipe_cmd->add_option("--transcript", pipe_transcript, "Text file, one utterance per line (default: stdin)");
  pipe_cmd->add_option("--lexicon", pipe_lexicon, "Lexicon TSV")->capture_default_str();
  pipe_cmd->add_option("--embeddings", pipe_embeddings, "word2vec text file for unknown words");
  pipe_cmd->add_option("--clips", pipe_clips, "Directory of clip JSON files")->required();
  pipe_cmd->add_option("--out-dir", pipe_out, "Write one timeline JSON per line here");
  pipe_cmd->add_option("--fps", pipe.fps, "Output frame rate")->capture_default_str();
  pipe_cmd->add_option("--gap", pipe.gap, "Transition time between signs, seconds")->capture_default_str();
  pipe_cmd->add_option("--stride", pipe.stride, "Keyframe stride")->capture_default_str();
  pipe_cmd->add_option("--tau", pipe.tau, "Similarity floor for word mapping")->capture_default_str();
  pipe_cmd->add_option("--jobs", pipe.jobs, "Worker threads")->capture_default_str();
  pipe_cmd->add_flag("--topicalize-object", pipe.compiler.topicalize_object, "Move the first post-verb noun forward");
  pipe_cmd->add_flag("--clause-marker", pipe.compiler.clause_marker, "Print // between clauses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFatal;
  }

  try {
    if (*gloss_cmd) {
      if (!gloss_stdin && gloss_text.empty()) throw CLI::ValidationError("gloss", "give text or --stdin");
      return run_gloss(gloss_opt, gloss_text, gloss_stdin, as_json);
    }
    if (*map_cmd) return run_map(map_opt, map_words, as_json);
    if (*animate_cmd) return run_animate(animate_opt, animate_gloss, animate_out, animate_csv, as_json);
    if (*recon_cmd) return run_reconstruct(recon_clip, recon_stride, recon_fps, recon_out, as_json);
    if (*corpus_cmd) {
      corpus_opt.compiler = corpus_text.compiler;
      corpus_opt.max_tokens = max_tokens;
      const auto lex = load_lexicon(corpus_text.lexicon);
      const auto stats = build_gloss_corpus(corpus_in, corpus_out, lex, corpus_text.tables(), corpus_opt);
      emit(corpus_stats_json(stats));
      return kOk;
    }
    if (*bleu_cmd) {
      bleu_opt.mode = bleu_mode == "individual" ? BleuMode::Individual : BleuMode::Cumulative;
      bleu_opt.smoothing = bleu_smoothing == "none" ? BleuSmoothing::None : BleuSmoothing::AddOne;
      const auto cands = tokenized_lines(bleu_cand);
      std::vector<std::vector<Tokens>> refs(cands.size());
      for (const auto& path : bleu_refs) {
        auto lines = tokenized_lines(path);
        if (lines.size() != cands.size())
          throw Error(ErrorCode::LengthMismatch, path + " has " + std::to_string(lines.size()) + " lines, candidates have " +
                                                     std::to_string(cands.size()));
        for (std::size_t i = 0; i < lines.size(); ++i) refs[i].push_back(std::move(lines[i]));
      }
      emit(bleu_json(bleu(cands, refs, bleu_opt)));
      return kOk;
    }
    if (*mpjpe_cmd) {
      const auto pred = load_timeline(mpjpe_pred);
      const auto truth = load_timeline(mpjpe_truth);
      const auto r = mpjpe(pred.frames, truth.frames);
      emit({{"mpjpe", r.mpjpe}, {"per_joint", r.per_joint}, {"per_frame", r.per_frame}});
      return kOk;
    }
    if (*pipe_cmd) {
      pipe.lexicon = pipe_lexicon;
      pipe.clips = pipe_clips;
      if (!pipe_embeddings.empty()) pipe.embeddings = pipe_embeddings;
      return run_pipeline_cmd(pipe, pipe_transcript, pipe_out, as_json);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFatal;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFatal;
  }
  return kFatal;
}
