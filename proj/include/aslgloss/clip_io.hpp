#pragma once

// JSON clip/timeline files and CSV export.
//
// Clip:     {"gloss": str, "fps": num, "layout": [133 names], "frames": [[[x,y,z] x133], ...]}
// Timeline: clip fields plus "segments": [{"gloss": str, "start": int, "end": int}, ...]
//
// Doubles are written in shortest round-trip form, so save/load is bit-exact.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "aslgloss/error.hpp"
#include "aslgloss/motion.hpp"
#include "aslgloss/skeleton.hpp"

namespace aslgloss {

namespace detail {

// Permutation mapping file joint order to canonical order; throws on any
// name outside the canonical layout.
inline std::vector<std::size_t> layout_permutation(const nlohmann::json& layout, const std::string& origin) {
  if (!layout.is_array()) throw Error(ErrorCode::MalformedClip, origin + ": 'layout' must be an array");
  if (layout.size() != kJointCount)
    throw Error(ErrorCode::BadJointCount, origin + ": layout has " + std::to_string(layout.size()) + " joints",
                static_cast<long long>(layout.size()));
  static const std::unordered_map<std::string, std::size_t> canonical_index = [] {
    std::unordered_map<std::string, std::size_t> m;
    const auto& names = canonical_layout();
    for (std::size_t i = 0; i < names.size(); ++i) m.emplace(names[i], i);
    return m;
  }();
  std::vector<std::size_t> perm(kJointCount);
  std::vector<bool> seen(kJointCount, false);
  for (std::size_t i = 0; i < kJointCount; ++i) {
    if (!layout[i].is_string()) throw Error(ErrorCode::MalformedClip, origin + ": layout names must be strings");
    auto it = canonical_index.find(layout[i].get<std::string>());
    if (it == canonical_index.end() || seen[it->second])
      throw Error(ErrorCode::LayoutMismatch, origin + ": unknown or repeated joint '" + layout[i].get<std::string>() + "'",
                  static_cast<long long>(i));
    seen[it->second] = true;
    perm[i] = it->second;
  }
  return perm;
}

inline std::vector<Pose> frames_from_json(const nlohmann::json& frames, const std::vector<std::size_t>& perm,
                                          const std::string& origin) {
  if (!frames.is_array()) throw Error(ErrorCode::MalformedClip, origin + ": 'frames' must be an array");
  std::vector<Pose> out;
  out.reserve(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const auto& row = frames[f];
    if (!row.is_array()) throw Error(ErrorCode::MalformedClip, origin + ": frame " + std::to_string(f) + " is not an array");
    if (row.size() != kJointCount)
      throw Error(ErrorCode::BadJointCount,
                  origin + ": frame " + std::to_string(f) + " has " + std::to_string(row.size()) + " joints",
                  static_cast<long long>(row.size()));
    Pose pose;
    for (std::size_t j = 0; j < kJointCount; ++j) {
      const auto& p = row[j];
      if (!p.is_array() || p.size() != 3)
        throw Error(ErrorCode::MalformedClip, origin + ": frame " + std::to_string(f) + " joint " + std::to_string(j) +
                                                  " is not an [x, y, z] triple");
      Vec3 v;
      for (std::size_t a = 0; a < 3; ++a) {
        if (!p[a].is_number())
          throw Error(ErrorCode::NonFiniteCoordinate,
                      origin + ": frame " + std::to_string(f) + " joint " + std::to_string(j) + " is not finite",
                      static_cast<long long>(f * kJointCount + j));
        v[a] = p[a].get<double>();
      }
      if (!v.finite())
        throw Error(ErrorCode::NonFiniteCoordinate,
                    origin + ": frame " + std::to_string(f) + " joint " + std::to_string(j) + " is not finite",
                    static_cast<long long>(f * kJointCount + j));
      pose[perm[j]] = v;
    }
    out.push_back(pose);
  }
  return out;
}

inline nlohmann::json frames_to_json(const std::vector<Pose>& frames) {
  auto out = nlohmann::json::array();
  for (const auto& pose : frames) {
    auto row = nlohmann::json::array();
    for (const auto& v : pose) row.push_back(nlohmann::json::array({v.x, v.y, v.z}));
    out.push_back(std::move(row));
  }
  return out;
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedClip, path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::UnwritableOutput, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::UnwritableOutput, "write failed for " + path.string());
}

}  // namespace detail

inline SignClip clip_from_json(const nlohmann::json& j, const std::string& origin = "<clip>") {
  if (!j.is_object()) throw Error(ErrorCode::MalformedClip, origin + ": expected a JSON object");
  for (const char* field : {"gloss", "fps", "layout", "frames"})
    if (!j.contains(field)) throw Error(ErrorCode::MalformedClip, origin + ": missing field '" + field + "'");
  if (!j["gloss"].is_string() || !j["fps"].is_number())
    throw Error(ErrorCode::MalformedClip, origin + ": 'gloss' must be a string and 'fps' a number");
  SignClip clip;
  clip.gloss = j["gloss"].get<std::string>();
  clip.fps = j["fps"].get<double>();
  const auto perm = detail::layout_permutation(j["layout"], origin);
  clip.frames = detail::frames_from_json(j["frames"], perm, origin);
  validate_clip(clip);
  return clip;
}

inline nlohmann::json clip_to_json(const SignClip& clip) {
  nlohmann::json j;
  j["gloss"] = clip.gloss;
  j["fps"] = clip.fps;
  j["layout"] = canonical_layout();
  j["frames"] = detail::frames_to_json(clip.frames);
  return j;
}

inline SignClip load_clip(const std::filesystem::path& path) {
  return clip_from_json(detail::read_json_file(path), path.string());
}

inline void save_clip(const SignClip& clip, const std::filesystem::path& path) {
  detail::write_text_file(path, clip_to_json(clip).dump());
}

inline nlohmann::json timeline_to_json(const AnimationTimeline& tl) {
  nlohmann::json j;
  j["gloss"] = tl.gloss;
  j["fps"] = tl.fps;
  j["layout"] = canonical_layout();
  j["frames"] = detail::frames_to_json(tl.frames);
  auto segs = nlohmann::json::array();
  for (const auto& s : tl.segments) segs.push_back({{"gloss", s.gloss}, {"start", s.start}, {"end", s.end}});
  j["segments"] = std::move(segs);
  return j;
}

/// Reads a timeline; a plain clip file is accepted and gets one segment.
inline AnimationTimeline timeline_from_json(const nlohmann::json& j, const std::string& origin = "<timeline>") {
  if (!j.is_object()) throw Error(ErrorCode::MalformedClip, origin + ": expected a JSON object");
  for (const char* field : {"fps", "layout", "frames"})
    if (!j.contains(field)) throw Error(ErrorCode::MalformedClip, origin + ": missing field '" + field + "'");
  AnimationTimeline tl;
  tl.gloss = j.value("gloss", std::string{});
  tl.fps = j["fps"].get<double>();
  if (!(tl.fps > 0.0)) throw Error(ErrorCode::InvalidArgument, origin + ": fps must be positive");
  tl.frames = detail::frames_from_json(j["frames"], detail::layout_permutation(j["layout"], origin), origin);
  if (j.contains("segments")) {
    for (const auto& s : j["segments"]) {
      tl.segments.push_back(
          {s.at("gloss").get<std::string>(), s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>()});
    }
  } else {
    tl.segments.push_back({tl.gloss, 0, tl.frames.size()});
  }
  return tl;
}

inline std::string timeline_to_string(const AnimationTimeline& tl) { return timeline_to_json(tl).dump(); }

inline AnimationTimeline load_timeline(const std::filesystem::path& path) {
  return timeline_from_json(detail::read_json_file(path), path.string());
}

inline void save_timeline(const AnimationTimeline& tl, const std::filesystem::path& path) {
  detail::write_text_file(path, timeline_to_string(tl));
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// `frame,joint,x,y,z` rows, shortest round-trip number formatting.
inline void write_timeline_csv(const AnimationTimeline& tl, std::ostream& out) {
  out << "frame,joint,x,y,z\n";
  for (std::size_t f = 0; f < tl.frames.size(); ++f)
    for (std::size_t j = 0; j < kJointCount; ++j) {
      const auto& v = tl.frames[f][j];
      out << f << ',' << j << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(v.z)
          << '\n';
    }
}

}  // namespace aslgloss
