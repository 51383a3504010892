#pragma once

// Sign clips, temporal downsampling, spline reconstruction and stitching of
// per-sign clips onto one global timeline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aslgloss/error.hpp"
#include "aslgloss/skeleton.hpp"
#include "aslgloss/spline.hpp"

namespace aslgloss {

struct SignClip {
  std::string gloss;
  double fps = 24.0;
  std::vector<Pose> frames;

  double duration() const { return frames.empty() ? 0.0 : static_cast<double>(frames.size() - 1) / fps; }
  double time_of(std::size_t frame) const { return static_cast<double>(frame) / fps; }
};

inline void validate_clip(const SignClip& clip) {
  if (!(clip.fps > 0.0) || !std::isfinite(clip.fps))
    throw Error(ErrorCode::InvalidArgument, "clip '" + clip.gloss + "': fps must be positive");
  if (clip.frames.size() < 2)
    throw Error(ErrorCode::TooFewFrames, "clip '" + clip.gloss + "' has " + std::to_string(clip.frames.size()) +
                                             " frame(s), need >= 2",
                static_cast<long long>(clip.frames.size()));
  for (std::size_t f = 0; f < clip.frames.size(); ++f)
    for (std::size_t j = 0; j < kJointCount; ++j)
      if (!clip.frames[f][j].finite())
        throw Error(ErrorCode::NonFiniteCoordinate,
                    "clip '" + clip.gloss + "' frame " + std::to_string(f) + " joint " + std::to_string(j),
                    static_cast<long long>(f * kJointCount + j));
}

/// Moves the mid-shoulder point to the origin and scales uniformly so the
/// shoulders are one unit apart. No rotation is applied.
inline Pose normalize_skeleton(const Pose& pose) {
  const Vec3& l = pose[joints::kLeftShoulder];
  const Vec3& r = pose[joints::kRightShoulder];
  if (!l.finite() || !r.finite()) throw Error(ErrorCode::DegenerateSkeleton, "non-finite shoulder joints");
  const double width = distance(l, r);
  if (width < 1e-9) throw Error(ErrorCode::DegenerateSkeleton, "shoulder joints coincide");
  const Vec3 mid{(l.x + r.x) / 2.0, (l.y + r.y) / 2.0, (l.z + r.z) / 2.0};
  const double scale = 1.0 / width;
  Pose out;
  for (std::size_t j = 0; j < kJointCount; ++j) out[j] = (pose[j] - mid) * scale;
  return out;
}

inline SignClip normalize_clip(SignClip clip) {
  for (auto& p : clip.frames) p = normalize_skeleton(p);
  return clip;
}

struct Keyframe {
  double time = 0.0;
  Pose pose;
};

/// Frame indices 0, stride, 2*stride, ... plus the final frame.
inline std::vector<std::size_t> downsample_indices(std::size_t frame_count, std::size_t stride) {
  if (stride == 0) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  std::vector<std::size_t> idx;
  if (frame_count == 0) return idx;
  for (std::size_t i = 0; i < frame_count; i += stride) idx.push_back(i);
  if (idx.back() != frame_count - 1) idx.push_back(frame_count - 1);
  return idx;
}

inline std::vector<Keyframe> downsample(const SignClip& clip, std::size_t stride) {
  std::vector<Keyframe> out;
  for (auto i : downsample_indices(clip.frames.size(), stride)) out.push_back({clip.time_of(i), clip.frames[i]});
  return out;
}

/// One natural spline per (joint, axis) over shared knot times.
class MotionCurve {
 public:
  explicit MotionCurve(std::span<const Keyframe> keyframes) {
    if (keyframes.size() < 2) throw Error(ErrorCode::InvalidArgument, "motion curve needs >= 2 keyframes");
    std::vector<double> times;
    times.reserve(keyframes.size());
    for (const auto& k : keyframes) times.push_back(k.time);
    NaturalSplineSolver solver(times);
    std::vector<double> values(keyframes.size());
    tracks_.reserve(kJointCount * 3);
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t axis = 0; axis < 3; ++axis) {
        for (std::size_t k = 0; k < keyframes.size(); ++k) values[k] = keyframes[k].pose[j][axis];
        tracks_.push_back(solver.fit(values));
      }
    }
    knots_ = std::move(times);
  }

  const std::vector<double>& knots() const { return knots_; }
  double start_time() const { return knots_.front(); }
  double end_time() const { return knots_.back(); }

  const CubicSpline& track(std::size_t joint, std::size_t axis) const { return tracks_[joint * 3 + axis]; }

  Pose evaluate(double t) const {
    Pose p;
    for (std::size_t j = 0; j < kJointCount; ++j)
      for (std::size_t axis = 0; axis < 3; ++axis) p[j][axis] = tracks_[j * 3 + axis].value(t);
    return p;
  }

 private:
  std::vector<double> knots_;
  std::vector<CubicSpline> tracks_;
};

/// Number of output frames k with k / fps <= t_end.
inline std::size_t frame_count_for(double fps_out, double t_end) {
  if (!(fps_out > 0.0)) throw Error(ErrorCode::InvalidArgument, "output fps must be positive");
  if (t_end < 0.0) return 0;
  return static_cast<std::size_t>(std::floor(t_end * fps_out + 1e-9)) + 1;
}

/// Dense poses at t = k / fps_out for every k with t <= t_end.
inline std::vector<Pose> reconstruct(std::span<const Keyframe> keyframes, double fps_out, double t_end) {
  const MotionCurve curve(keyframes);
  const auto n = frame_count_for(fps_out, t_end);
  std::vector<Pose> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(curve.evaluate(static_cast<double>(k) / fps_out));
  return out;
}

/// Piecewise-linear counterpart of `reconstruct`, the comparison baseline.
inline std::vector<Pose> reconstruct_linear(std::span<const Keyframe> keyframes, double fps_out, double t_end) {
  if (keyframes.size() < 2) throw Error(ErrorCode::InvalidArgument, "linear reconstruction needs >= 2 keyframes");
  std::vector<double> times;
  for (const auto& k : keyframes) times.push_back(k.time);
  const auto n = frame_count_for(fps_out, t_end);
  std::vector<Pose> out(n);
  std::vector<double> values(keyframes.size());
  for (std::size_t j = 0; j < kJointCount; ++j) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
      for (std::size_t k = 0; k < keyframes.size(); ++k) values[k] = keyframes[k].pose[j][axis];
      for (std::size_t f = 0; f < n; ++f)
        out[f][j][axis] = linear_interpolate(times, values, static_cast<double>(f) / fps_out);
    }
  }
  return out;
}

inline const std::string kTransitionGloss = "⟨transition⟩";

struct Segment {
  std::string gloss;
  std::size_t start = 0;  // first frame
  std::size_t end = 0;    // one past the last frame
  bool operator==(const Segment&) const = default;
};

struct AnimationTimeline {
  std::string gloss;
  double fps = 24.0;
  std::vector<Pose> frames;
  std::vector<Segment> segments;
};

struct StitchOptions {
  double fps_out = 24.0;
  double gap = 0.25;        // seconds between one clip's last frame and the next clip's first
  std::size_t stride = 1;   // keyframe stride applied to every clip
};

/// Where a clip sits on the global time axis.
struct ClipPlacement {
  std::string gloss;
  double start = 0.0;
  double end = 0.0;
};

/// Global spline motion over every clip's keyframes, before sampling.
struct StitchedMotion {
  MotionCurve curve;
  std::vector<ClipPlacement> placements;
};

inline StitchedMotion build_stitched_motion(std::span<const SignClip> clips, const StitchOptions& options) {
  if (clips.empty()) throw Error(ErrorCode::EmptyClipList, "nothing to stitch");
  if (!(options.gap >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gap must be >= 0");
  std::vector<Keyframe> keys;
  std::vector<ClipPlacement> placements;
  double offset = 0.0;
  for (std::size_t i = 0; i < clips.size(); ++i) {
    const auto& clip = clips[i];
    validate_clip(clip);
    if (i > 0) offset = placements.back().end + options.gap;
    for (auto& k : downsample(clip, options.stride)) {
      k.time += offset;
      keys.push_back(std::move(k));
    }
    placements.push_back({clip.gloss, offset, offset + clip.duration()});
  }
  return StitchedMotion{MotionCurve(keys), std::move(placements)};
}

/// Samples the stitched motion at `fps_out` from t = 0 to the last clip's end
/// and labels frames with clip and transition segments that tile the frames.
inline AnimationTimeline sample_timeline(const StitchedMotion& motion, double fps_out) {
  AnimationTimeline tl;
  tl.fps = fps_out;
  const auto n = frame_count_for(fps_out, motion.placements.back().end);
  tl.frames.reserve(n);
  for (std::size_t k = 0; k < n; ++k) tl.frames.push_back(motion.curve.evaluate(static_cast<double>(k) / fps_out));

  std::size_t cursor = 0;
  for (const auto& p : motion.placements) {
    auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(p.start * fps_out - 1e-9)));
    auto last_excl = std::min(n, static_cast<std::size_t>(std::floor(p.end * fps_out + 1e-9)) + 1);
    first = std::max(first, cursor);
    if (first >= last_excl) continue;
    if (first > cursor) tl.segments.push_back({kTransitionGloss, cursor, first});
    tl.segments.push_back({p.gloss, first, last_excl});
    cursor = last_excl;
  }
  if (cursor < n) tl.segments.push_back({kTransitionGloss, cursor, n});

  for (std::size_t i = 0; i < motion.placements.size(); ++i) {
    if (i > 0) tl.gloss.push_back(' ');
    tl.gloss += motion.placements[i].gloss;
  }
  return tl;
}

/// Places clips on one time axis with `gap` seconds between consecutive
/// clips and fits a single natural spline per coordinate through all of
/// their keyframes, so transitions are C2 like the signs themselves.
inline AnimationTimeline stitch(std::span<const SignClip> clips, const StitchOptions& options = {}) {
  return sample_timeline(build_stitched_motion(clips, options), options.fps_out);
}

}  // namespace aslgloss
