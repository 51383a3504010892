// Scores gloss output with BLEU and a spline reconstruction with MPJPE.
#include <cmath>
#include <iostream>
#include <numbers>

#include "aslgloss/aslgloss.hpp"

using namespace aslgloss;

int main() {
  const std::vector<Tokens> hyp{{"YESTERDAY", "I", "SCHOOL", "GO"}, {"YOU", "GO", "WHERE"}};
  const std::vector<Tokens> ref{{"YESTERDAY", "I", "GO", "SCHOOL"}, {"YOU", "GO", "WHERE"}};
  for (auto mode : {BleuMode::Cumulative, BleuMode::Individual}) {
    const auto r = bleu(hyp, ref, {2, mode});
    std::cout << (mode == BleuMode::Cumulative ? "cumulative" : "individual") << " BLEU-2: " << r.bleu << '\n';
  }

  SignClip clip{"ARC", 24.0, {}};
  for (int f = 0; f < 49; ++f) {
    Pose p{};
    for (std::size_t j = 0; j < kJointCount; ++j) p[j] = {0.01 * j, std::sin(2 * std::numbers::pi * f / 24.0), 0};
    clip.frames.push_back(p);
  }
  const auto keys = downsample(clip, 4);
  const auto cubic = reconstruct(keys, clip.fps, clip.duration());
  const auto linear = reconstruct_linear(keys, clip.fps, clip.duration());
  std::cout << "MPJPE at stride 4: cubic " << mpjpe(cubic, clip.frames).mpjpe << ", linear "
            << mpjpe(linear, clip.frames).mpjpe << '\n';
}
