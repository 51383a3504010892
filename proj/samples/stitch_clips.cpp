// Builds three synthetic sign clips, stitches them with spline transitions
// and reports where each sign lands on the output timeline.
#include <cmath>
#include <iostream>
#include <numbers>

#include "aslgloss/aslgloss.hpp"

using namespace aslgloss;

namespace {

SignClip wave(const std::string& gloss, double hz) {
  SignClip clip{gloss, 24.0, {}};
  for (int f = 0; f < 24; ++f) {
    const double t = f / 24.0;
    Pose p{};
    p[joints::kLeftShoulder] = {-0.5, 0, 0};
    p[joints::kRightShoulder] = {0.5, 0, 0};
    p[joints::kRightHandBegin] = {0.4, 0.3 + 0.2 * std::sin(2 * std::numbers::pi * hz * t), 0.1};
    clip.frames.push_back(p);
  }
  return clip;
}

}  // namespace

int main() {
  const std::vector<SignClip> clips{wave("HELLO", 1.0), wave("MY", 0.5), wave("FRIEND", 2.0)};
  const auto tl = stitch(clips, StitchOptions{30.0, 0.3, 2});
  std::cout << tl.frames.size() << " frames at " << tl.fps << " fps for \"" << tl.gloss << "\"\n";
  for (const auto& s : tl.segments) std::cout << "  [" << s.start << ", " << s.end << ")  " << s.gloss << '\n';
  const auto& hand = tl.frames[tl.frames.size() / 2][joints::kRightHandBegin];
  std::cout << "mid-timeline right wrist: " << hand.x << ' ' << hand.y << ' ' << hand.z << '\n';
}
