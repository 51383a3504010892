#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace aslgloss;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_coord_diff(const Pose& a, const Pose& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < kJointCount; ++j)
    for (std::size_t k = 0; k < 3; ++k) m = std::max(m, std::abs(a[j][k] - b[j][k]));
  return m;
}

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ValidateClip, Errors) {
  auto clip = testkit::toy_clip("A", 1);
  EXPECT_EQ(error_of([&] { validate_clip(clip); }), ErrorCode::TooFewFrames);
  clip = testkit::toy_clip("A", 3);
  clip.frames[1][7].y = std::numeric_limits<double>::infinity();
  EXPECT_EQ(error_of([&] { validate_clip(clip); }), ErrorCode::NonFiniteCoordinate);
  clip = testkit::toy_clip("A", 3);
  clip.fps = 0;
  EXPECT_EQ(error_of([&] { validate_clip(clip); }), ErrorCode::InvalidArgument);
}

TEST(NormalizeSkeleton, FixedPoint) {
  std::mt19937_64 rng(1);
  auto p = normalize_skeleton(testkit::random_pose(rng));
  EXPECT_LE(max_coord_diff(normalize_skeleton(p), p), 1e-12);
}

TEST(NormalizeSkeleton, ShoulderScale) {
  Pose p = testkit::constant_pose(0.0);
  p[joints::kLeftShoulder] = {-2, 0, 0};
  p[joints::kRightShoulder] = {2, 0, 0};
  p[0] = {0, 4, 0};
  auto n = normalize_skeleton(p);
  EXPECT_EQ(n[joints::kLeftShoulder], (Vec3{-0.5, 0, 0}));
  EXPECT_EQ(n[joints::kRightShoulder], (Vec3{0.5, 0, 0}));
  EXPECT_EQ(n[0], (Vec3{0, 1, 0}));
}

TEST(NormalizeSkeleton, TranslationInvariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> off(-100, 100);
  for (int i = 0; i < 100; ++i) {
    auto p = testkit::random_pose(rng);
    const Vec3 v{off(rng), off(rng), off(rng)};
    Pose q;
    for (std::size_t j = 0; j < kJointCount; ++j) q[j] = p[j] + v;
    EXPECT_LE(max_coord_diff(normalize_skeleton(p), normalize_skeleton(q)), 1e-12);
  }
  Pose p = testkit::constant_pose(5.0);
  p[joints::kLeftShoulder] = {5, 5, 5};
  p[joints::kRightShoulder] = {7, 5, 5};
  p[3] = {6, 6, 5};
  Pose base = testkit::constant_pose(0.0);
  base[joints::kLeftShoulder] = {0, 0, 0};
  base[joints::kRightShoulder] = {2, 0, 0};
  base[3] = {1, 1, 0};
  EXPECT_LE(max_coord_diff(normalize_skeleton(p), normalize_skeleton(base)), 1e-12);
}

TEST(NormalizeSkeleton, Degenerate) {
  Pose p = testkit::constant_pose(1.0);
  EXPECT_EQ(error_of([&] { normalize_skeleton(p); }), ErrorCode::DegenerateSkeleton);
}

TEST(Downsample, Indices) {
  using V = std::vector<std::size_t>;
  EXPECT_EQ(downsample_indices(9, 4), (V{0, 4, 8}));
  EXPECT_EQ(downsample_indices(10, 4), (V{0, 4, 8, 9}));
  EXPECT_EQ(downsample_indices(5, 1), (V{0, 1, 2, 3, 4}));
  EXPECT_EQ(downsample_indices(2, 8), (V{0, 1}));
  EXPECT_THROW(downsample_indices(5, 0), Error);
}

TEST(Downsample, TimesAreIndexOverFps) {
  auto clip = testkit::toy_clip("A", 10, 30.0);
  auto keys = downsample(clip, 4);
  ASSERT_EQ(keys.size(), 4u);
  EXPECT_DOUBLE_EQ(keys[3].time, 9.0 / 30.0);
  EXPECT_EQ(keys[2].pose, clip.frames[8]);
}

TEST(Reconstruct, StrideOneIsIdentity) {
  std::mt19937_64 rng(3);
  auto clip = testkit::smooth_clip("A", 20, 24.0, rng);
  auto out = reconstruct(downsample(clip, 1), clip.fps, clip.duration());
  ASSERT_EQ(out.size(), clip.frames.size());
  for (std::size_t f = 0; f < out.size(); ++f) EXPECT_LE(max_coord_diff(out[f], clip.frames[f]), 1e-9);
  EXPECT_NEAR(mpjpe(out, clip.frames).mpjpe, 0.0, 1e-9);
}

TEST(Reconstruct, KnotsExactAtAnyStride) {
  std::mt19937_64 rng(4);
  auto clip = testkit::smooth_clip("A", 37, 24.0, rng);
  for (std::size_t stride : {2u, 3u, 4u, 8u}) {
    auto out = reconstruct(downsample(clip, stride), clip.fps, clip.duration());
    for (auto f : downsample_indices(clip.frames.size(), stride))
      EXPECT_LE(max_coord_diff(out[f], clip.frames[f]), 1e-9);
  }
}

TEST(Reconstruct, LinearMotionIsExact) {
  auto clip = testkit::function_clip("A", 30, 24.0, [](std::size_t j, std::size_t a, double t) {
    return 0.1 * static_cast<double>(j) - 0.5 * static_cast<double>(a) + (1.0 + static_cast<double>(a)) * t;
  });
  auto out = reconstruct(downsample(clip, 4), clip.fps, clip.duration());
  for (std::size_t f = 0; f < out.size(); ++f) EXPECT_LE(max_coord_diff(out[f], clip.frames[f]), 1e-9);
}

TEST(Reconstruct, SinusoidErrorBound) {
  auto clip = testkit::function_clip("A", 49, 24.0,
                                     [](std::size_t, std::size_t, double t) { return std::sin(kTwoPi * t); });
  auto keys = downsample(clip, 4);
  auto out = reconstruct(keys, clip.fps, clip.duration());
  // Oracle: the same spline from the dense solver, evaluated directly.
  std::vector<double> t, y;
  for (const auto& k : keys) {
    t.push_back(k.time);
    y.push_back(std::sin(kTwoPi * k.time));
  }
  testkit::OracleSpline oracle(t, y);
  double worst = 0.0;
  for (std::size_t f = 0; f < out.size(); ++f) {
    const double tf = static_cast<double>(f) / 24.0;
    EXPECT_NEAR(out[f][40].x, oracle(tf), 1e-9);
    worst = std::max(worst, std::abs(oracle(tf) - std::sin(kTwoPi * tf)));
  }
  EXPECT_LT(worst, 0.01);
  auto linear = reconstruct_linear(keys, clip.fps, clip.duration());
  EXPECT_LT(mpjpe(out, clip.frames).mpjpe, mpjpe(linear, clip.frames).mpjpe);
}

TEST(Reconstruct, FrameCount) {
  EXPECT_EQ(frame_count_for(24.0, 1.0), 25u);
  EXPECT_EQ(frame_count_for(24.0, 39.0 / 24.0), 40u);
  EXPECT_EQ(frame_count_for(30.0, 0.0), 1u);
}

TEST(Stitch, EmptyList) {
  std::vector<SignClip> none;
  EXPECT_EQ(error_of([&] { stitch(none); }), ErrorCode::EmptyClipList);
}

TEST(Stitch, SingleClipEqualsReconstruct) {
  std::mt19937_64 rng(5);
  std::vector<SignClip> clips{testkit::smooth_clip("HELLO", 17, 24.0, rng)};
  StitchOptions opt;
  opt.stride = 3;
  auto tl = stitch(clips, opt);
  auto ref = reconstruct(downsample(clips[0], 3), 24.0, clips[0].duration());
  ASSERT_EQ(tl.frames.size(), ref.size());
  for (std::size_t f = 0; f < ref.size(); ++f) EXPECT_EQ(tl.frames[f], ref[f]);
  ASSERT_EQ(tl.segments.size(), 1u);
  EXPECT_EQ(tl.segments[0], (Segment{"HELLO", 0, ref.size()}));
  EXPECT_EQ(tl.gloss, "HELLO");
}

TEST(Stitch, BoundaryFramesEqualBoundaryPoses) {
  std::mt19937_64 rng(6);
  std::vector<SignClip> clips{testkit::smooth_clip("A", 12, 24.0, rng), testkit::smooth_clip("B", 9, 24.0, rng)};
  clips[1].frames.front() = clips[0].frames.back();
  auto tl = stitch(clips);  // gap 0.25 s = 6 frames at 24 fps
  ASSERT_EQ(tl.segments.size(), 3u);
  EXPECT_EQ(tl.segments[0], (Segment{"A", 0, 12}));
  EXPECT_EQ(tl.segments[1], (Segment{kTransitionGloss, 12, 17}));
  EXPECT_EQ(tl.segments[2], (Segment{"B", 17, 26}));
  EXPECT_LE(max_coord_diff(tl.frames[11], clips[0].frames.back()), 1e-9);
  EXPECT_LE(max_coord_diff(tl.frames[17], clips[1].frames.front()), 1e-9);
  EXPECT_LE(max_coord_diff(tl.frames[25], clips[1].frames.back()), 1e-9);
}

TEST(Stitch, TwoConstantClipsTransition) {
  std::vector<SignClip> clips{testkit::function_clip("A", 2, 24.0, [](auto, auto, double) { return 0.0; }),
                              testkit::function_clip("B", 2, 24.0, [](auto, auto, double) { return 1.0; })};
  StitchOptions opt;
  opt.gap = 0.5;
  auto tl = stitch(clips, opt);
  // Knots at 0, 1/24, 13/24, 14/24: twelve frame intervals between the
  // clips, eleven interior transition frames.
  ASSERT_EQ(tl.frames.size(), 15u);
  ASSERT_EQ(tl.segments.size(), 3u);
  EXPECT_EQ(tl.segments[1], (Segment{kTransitionGloss, 2, 13}));
  testkit::OracleSpline oracle({0.0, 1.0 / 24, 13.0 / 24, 14.0 / 24}, {0.0, 0.0, 1.0, 1.0});
  for (std::size_t f = 0; f < tl.frames.size(); ++f) {
    EXPECT_NEAR(tl.frames[f][50].z, oracle(static_cast<double>(f) / 24.0), 1e-9) << f;
    if (f >= 2 && f <= 13) { EXPECT_GE(tl.frames[f][50].z, tl.frames[f - 1][50].z) << f; }
  }
}

TEST(Stitch, ZeroGapRepeatsKnotTime) {
  std::vector<SignClip> clips{testkit::toy_clip("A"), testkit::toy_clip("B")};
  StitchOptions opt;
  opt.gap = 0.0;
  EXPECT_EQ(error_of([&] { stitch(clips, opt); }), ErrorCode::DuplicateKnotTime);
}

TEST(Stitch, SegmentsTileFrames) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> nclips(1, 5), frames(2, 30), stride(1, 5);
  std::uniform_real_distribution<double> gap(0.01, 0.7), fps(10, 60);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SignClip> clips;
    const int n = nclips(rng);
    for (int i = 0; i < n; ++i) clips.push_back(testkit::toy_clip("S" + std::to_string(i),
                                                                  static_cast<std::size_t>(frames(rng)), fps(rng), i));
    StitchOptions opt{fps(rng), gap(rng), static_cast<std::size_t>(stride(rng))};
    auto tl = stitch(clips, opt);
    std::size_t cursor = 0, signs = 0;
    for (std::size_t s = 0; s < tl.segments.size(); ++s) {
      const auto& seg = tl.segments[s];
      EXPECT_EQ(seg.start, cursor);
      EXPECT_LT(seg.start, seg.end);
      cursor = seg.end;
      if (seg.gloss != kTransitionGloss) ++signs;
      if (s > 0 && seg.gloss == kTransitionGloss) { EXPECT_NE(tl.segments[s - 1].gloss, kTransitionGloss); }
    }
    EXPECT_EQ(cursor, tl.frames.size());
    EXPECT_LE(signs, clips.size());
  }
}

TEST(Stitch, ContinuousDerivativesAcrossClipBoundaries) {
  std::mt19937_64 rng(8);
  std::vector<SignClip> clips{testkit::smooth_clip("A", 10, 24.0, rng), testkit::smooth_clip("B", 14, 24.0, rng),
                              testkit::smooth_clip("C", 8, 24.0, rng)};
  auto motion = build_stitched_motion(clips, StitchOptions{});
  // Tiny offset: the true derivative barely moves, so a jump would show.
  const double eps = 1e-9;
  for (const auto& p : motion.placements) {
    for (double t : {p.start, p.end}) {
      for (std::size_t j : {0u, 9u, 100u}) {
        const auto& s = motion.curve.track(j, 1);
        EXPECT_NEAR(s.first_derivative(t - eps), s.first_derivative(t + eps), 1e-6);
        EXPECT_NEAR(s.second_derivative(t - eps), s.second_derivative(t + eps), 1e-4);
      }
    }
  }
}
