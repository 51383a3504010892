#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace aslgloss {

inline constexpr std::size_t kJointCount = 133;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  bool operator==(const Vec3&) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// 133 whole-body joints: 17 body, 6 feet, 68 face, 21 left hand, 21 right hand.
using Pose = std::array<Vec3, kJointCount>;

namespace joints {
inline constexpr std::size_t kLeftShoulder = 5;
inline constexpr std::size_t kRightShoulder = 6;
inline constexpr std::size_t kFaceBegin = 23;
inline constexpr std::size_t kLeftHandBegin = 91;
inline constexpr std::size_t kRightHandBegin = 112;
}  // namespace joints

/// Canonical joint names in COCO-WholeBody order.
inline const std::vector<std::string>& canonical_layout() {
  static const std::vector<std::string> layout = [] {
    std::vector<std::string> names = {
        "nose",           "left_eye",        "right_eye",      "left_ear",        "right_ear",
        "left_shoulder",  "right_shoulder",  "left_elbow",     "right_elbow",     "left_wrist",
        "right_wrist",    "left_hip",        "right_hip",      "left_knee",       "right_knee",
        "left_ankle",     "right_ankle",     "left_big_toe",   "left_small_toe",  "left_heel",
        "right_big_toe",  "right_small_toe", "right_heel",
    };
    for (int i = 0; i < 68; ++i) names.push_back("face_" + std::to_string(i));
    static constexpr std::array<std::string_view, 21> hand = {
        "wrist",       "thumb1",        "thumb2",        "thumb3",        "thumb4",
        "forefinger1", "forefinger2",   "forefinger3",   "forefinger4",   "middle_finger1",
        "middle_finger2", "middle_finger3", "middle_finger4", "ring_finger1", "ring_finger2",
        "ring_finger3",   "ring_finger4",   "pinky_finger1",  "pinky_finger2", "pinky_finger3",
        "pinky_finger4",
    };
    for (auto side : {"left_hand_", "right_hand_"})
      for (auto h : hand) names.push_back(std::string(side) + std::string(h));
    return names;
  }();
  return layout;
}

}  // namespace aslgloss
