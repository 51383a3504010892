#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aslgloss/clip_io.hpp"
#include "aslgloss/error.hpp"
#include "aslgloss/glossc.hpp"
#include "aslgloss/motion.hpp"

namespace aslgloss {

/// Read-only gloss -> clip index.
class ClipStore {
 public:
  ClipStore() = default;

  /// Returns false when the gloss is already present (first one wins).
  bool add(SignClip clip) {
    auto gloss = clip.gloss;
    return clips_.emplace(std::move(gloss), std::move(clip)).second;
  }

  const SignClip* find(const std::string& gloss) const {
    auto it = clips_.find(gloss);
    return it == clips_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return clips_.size(); }
  std::size_t duplicates = 0;

 private:
  std::map<std::string, SignClip> clips_;
};

/// Loads every `*.json` clip in `dir`, in file-name order.
inline ClipStore load_clip_store(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::MissingFile, "clip directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  ClipStore store;
  for (const auto& f : files)
    if (!store.add(load_clip(f))) ++store.duplicates;
  return store;
}

struct MissingSign {
  std::string token;
  std::vector<std::string> missing_clips;
};

/// NoResolvableSigns, carrying the per-token misses.
class UnresolvedGlossError : public Error {
 public:
  UnresolvedGlossError(const std::string& message, std::vector<MissingSign> missing)
      : Error(ErrorCode::NoResolvableSigns, message, static_cast<long long>(missing.size())),
        missing_(std::move(missing)) {}
  const std::vector<MissingSign>& missing() const { return missing_; }

 private:
  std::vector<MissingSign> missing_;
};

struct SynthesisResult {
  AnimationTimeline timeline;
  std::vector<MissingSign> missing;
};

struct SynthesisOptions {
  StitchOptions stitch;
  bool normalize = true;  // normalize_skeleton every frame before stitching
};

/// Resolves gloss tokens to clips and stitches them. Sign and lexicalized
/// tokens look up their surface; fingerspelled tokens expand to one clip per
/// letter and are reported missing unless every letter clip exists.
inline SynthesisResult synthesize(const GlossSentence& gloss, const ClipStore& store,
                                  const SynthesisOptions& options = {}) {
  SynthesisResult result;
  std::vector<SignClip> clips;
  for (const auto& tok : gloss.tokens) {
    if (tok.kind == GlossKind::Fingerspell) {
      std::vector<const SignClip*> letters;
      MissingSign miss{tok.surface, {}};
      for (UChar32 c : unicode::decode(std::string_view(tok.surface).substr(3))) {
        std::string letter;
        unicode::append(letter, c);
        const auto* clip = store.find(letter);
        if (clip)
          letters.push_back(clip);
        else if (std::find(miss.missing_clips.begin(), miss.missing_clips.end(), letter) == miss.missing_clips.end())
          miss.missing_clips.push_back(letter);
      }
      if (!miss.missing_clips.empty() || letters.empty()) {
        result.missing.push_back(std::move(miss));
        continue;
      }
      for (const auto* clip : letters) clips.push_back(*clip);
    } else if (const auto* clip = store.find(tok.surface)) {
      clips.push_back(*clip);
    } else {
      result.missing.push_back({tok.surface, {tok.surface}});
    }
  }
  if (clips.empty()) {
    std::string list;
    for (const auto& m : result.missing) list += (list.empty() ? "" : ", ") + m.token;
    throw UnresolvedGlossError("no clips for: " + (list.empty() ? std::string("<empty gloss>") : list),
                               std::move(result.missing));
  }
  if (options.normalize)
    for (auto& c : clips) c = normalize_clip(std::move(c));
  result.timeline = stitch(clips, options.stitch);
  return result;
}

}  // namespace aslgloss
